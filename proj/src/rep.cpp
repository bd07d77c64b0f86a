#include "g2fm/rep.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace g2fm {

Form act(const RMatrix& a, const Form& f) {
    int n = f.frame()->dim;
    if (a.rows() != n || a.cols() != n) throw std::invalid_argument("act: matrix size");
    Form r(f.frame(), f.degree());
    for (const auto& [mask, c] : f.terms()) {
        auto idx = indices_of(mask);
        for (std::size_t p = 0; p < idx.size(); ++p) {
            int i = idx[p];
            for (int k = 0; k < n; ++k) {
                if (a(i, k) == 0) continue;
                Mask rest = mask & ~(Mask(1) << i);
                if (rest & (Mask(1) << k)) continue;
                auto replaced = idx;
                replaced[p] = k;
                int s = permutation_sign(replaced);
                Rational v = -c * a(i, k);
                r.add(rest | (Mask(1) << k), s > 0 ? v : Rational(-v));
            }
        }
    }
    return r;
}

RMatrix action_matrix(const RMatrix& a, const FramePtr& frame, int degree) {
    auto basis = basis_masks(frame->dim, degree);
    int n = static_cast<int>(basis.size());
    RMatrix m(n, n);
    for (int c = 0; c < n; ++c) {
        Form e(frame, degree);
        e.add(basis[c], Rational(1));
        auto col = to_coords(act(a, e));
        for (int r = 0; r < n; ++r) m(r, c) = col[r];
    }
    return m;
}

std::vector<RMatrix> so_basis(int n) {
    std::vector<RMatrix> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            RMatrix m(n, n);
            m(a, b) = 1;
            m(b, a) = -1;
            out.push_back(std::move(m));
        }
    return out;
}

std::vector<RMatrix> stabilizer_algebra(const Form& f) {
    int n = f.frame()->dim;
    auto gens = so_basis(n);
    auto basis = basis_masks(n, f.degree());
    RMatrix sys(static_cast<int>(basis.size()), static_cast<int>(gens.size()));
    for (std::size_t g = 0; g < gens.size(); ++g) {
        auto col = to_coords(act(gens[g], f));
        for (std::size_t r = 0; r < col.size(); ++r) sys(static_cast<int>(r), static_cast<int>(g)) = col[r];
    }
    std::vector<RMatrix> out;
    for (const auto& v : nullspace(sys)) {
        RMatrix m(n, n);
        for (std::size_t g = 0; g < gens.size(); ++g)
            if (v[g] != 0) m = m + v[g] * gens[g];
        out.push_back(std::move(m));
    }
    return out;
}

RMatrix commutator(const RMatrix& a, const RMatrix& b) { return a * b - b * a; }

namespace {

std::vector<Rational> flatten(const RMatrix& m) {
    std::vector<Rational> v;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
    return v;
}

Rational frob(const RMatrix& a, const RMatrix& b) {
    Rational s(0);
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (a(r, c) != 0 && b(r, c) != 0) s += a(r, c) * b(r, c);
    return s;
}

}  // namespace

bool closed_under_bracket(const std::vector<RMatrix>& algebra) {
    if (algebra.empty()) return true;
    std::vector<std::vector<Rational>> cols;
    for (const auto& a : algebra) cols.push_back(flatten(a));
    int len = static_cast<int>(cols[0].size());
    int base_rank = rank(RMatrix::from_columns(cols, len));
    for (std::size_t i = 0; i < algebra.size(); ++i)
        for (std::size_t j = i + 1; j < algebra.size(); ++j) {
            auto ext = cols;
            ext.push_back(flatten(commutator(algebra[i], algebra[j])));
            if (rank(RMatrix::from_columns(ext, len)) != base_rank) return false;
        }
    return true;
}

RMatrix wedge_matrix(const Form& gamma, int degree) {
    const auto& frame = gamma.frame();
    auto src = basis_masks(frame->dim, degree);
    int out_deg = degree + gamma.degree();
    int rows = static_cast<int>(basis_masks(frame->dim, out_deg).size());
    RMatrix m(rows, static_cast<int>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
        Form e(frame, degree);
        e.add(src[c], Rational(1));
        auto col = to_coords(wedge(gamma, e));
        for (int r = 0; r < rows; ++r) m(r, static_cast<int>(c)) = col[r];
    }
    return m;
}

RMatrix hodge_matrix(const FramePtr& frame, int degree) {
    auto src = basis_masks(frame->dim, degree);
    int rows = static_cast<int>(basis_masks(frame->dim, frame->dim - degree).size());
    RMatrix m(rows, static_cast<int>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
        Form e(frame, degree);
        e.add(src[c], Rational(1));
        auto col = to_coords(hodge(e));
        for (int r = 0; r < rows; ++r) m(r, static_cast<int>(c)) = col[r];
    }
    return m;
}

RMatrix casimir_matrix(const std::vector<RMatrix>& algebra, const FramePtr& frame, int degree) {
    // Gram-Schmidt for the invariant trace form, then C = sum rho(A)^2 / |A|^2.
    std::vector<RMatrix> ortho;
    for (const auto& a : algebra) {
        RMatrix v = a;
        for (const auto& u : ortho) v = v - (frob(v, u) / frob(u, u)) * u;
        if (!v.is_zero()) ortho.push_back(std::move(v));
    }
    int n = static_cast<int>(basis_masks(frame->dim, degree).size());
    RMatrix c(n, n);
    for (const auto& u : ortho) {
        RMatrix rho = action_matrix(u, frame, degree);
        c = c + (Rational(1) / frob(u, u)) * (rho * rho);
    }
    return c;
}

std::vector<IsotypicPiece> casimir_decomposition(const std::vector<RMatrix>& algebra, const FramePtr& frame,
                                                 int degree, double cluster_tol) {
    RMatrix c = casimir_matrix(algebra, frame, degree);
    int n = c.rows();
    Eigen::MatrixXd cd(n, n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) cd(r, k) = c(r, k).get_d();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cd, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end());

    std::vector<std::pair<double, int>> clusters;
    for (double v : ev) {
        if (!clusters.empty() && std::abs(v - clusters.back().first / clusters.back().second) < cluster_tol) {
            clusters.back().first += v;
            clusters.back().second += 1;
        } else {
            clusters.push_back({v, 1});
        }
    }
    std::vector<IsotypicPiece> pieces;
    for (const auto& [sum, count] : clusters) {
        Rational lambda = rationalize(sum / count, 100000);
        RMatrix shifted = c - lambda * RMatrix::identity(n);
        auto ker = nullspace(shifted);
        if (static_cast<int>(ker.size()) != count)
            throw std::runtime_error("Casimir eigenvalue " + to_string(lambda) + " not confirmed exactly");
        IsotypicPiece p;
        p.dim = count;
        p.label = std::to_string(count);
        p.casimir = lambda;
        p.basis = RMatrix::from_columns(ker, n);
        p.projector = projector_onto(p.basis);
        pieces.push_back(std::move(p));
    }
    std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) { return a.dim < b.dim; });
    return pieces;
}

}  // namespace g2fm
