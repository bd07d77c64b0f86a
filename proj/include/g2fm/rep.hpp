#pragma once

#include "g2fm/exalg.hpp"
#include "g2fm/linalg.hpp"

#include <string>
#include <vector>

namespace g2fm {

// Infinitesimal action of A in gl(n) on forms, extended as a derivation from
// A.dx^i = -sum_k A(i,k) dx^k (the dual of the defining representation).
Form act(const RMatrix& a, const Form& f);

// Matrix of act(a, .) on Lambda^degree in basis_masks order.
RMatrix action_matrix(const RMatrix& a, const FramePtr& frame, int degree);

std::vector<RMatrix> so_basis(int n);

// Basis of {A in so(n) : A.f = 0}.
std::vector<RMatrix> stabilizer_algebra(const Form& f);

bool closed_under_bracket(const std::vector<RMatrix>& algebra);

// Linear map Lambda^k -> Lambda^{k+d}, beta -> gamma ^ beta, as a matrix.
RMatrix wedge_matrix(const Form& gamma, int degree);
RMatrix hodge_matrix(const FramePtr& frame, int degree);

struct IsotypicPiece {
    std::string label;
    int dim = 0;
    Rational casimir;
    RMatrix basis;      // columns span the piece
    RMatrix projector;  // exact orthogonal projector
};

// Quadratic Casimir of the algebra acting on Lambda^degree, with exact eigenspaces.
// Eigenvalues are located in double precision, clustered at cluster_tol, then rationalized
// and confirmed by exact kernel dimensions.
RMatrix casimir_matrix(const std::vector<RMatrix>& algebra, const FramePtr& frame, int degree);
std::vector<IsotypicPiece> casimir_decomposition(const std::vector<RMatrix>& algebra, const FramePtr& frame,
                                                 int degree, double cluster_tol = 1e-8);

RMatrix commutator(const RMatrix& a, const RMatrix& b);

}  // namespace g2fm
