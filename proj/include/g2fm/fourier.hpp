#pragma once

#include "g2fm/cycles.hpp"
#include "g2fm/exalg.hpp"

#include <string>
#include <vector>

namespace g2fm {

// coassociative-t4: M = (x1,x2,x3, y0..y3) fibred over x by T^4; W = (x1,x2,x3, y_0..y_3).
// associative-t3:   M = (x1,x2,x3, y0..y3) fibred over y by T^3; W = (x_1,x_2,x_3, y0..y3).
enum class Fibration { CoassociativeT4, AssociativeT3 };

Fibration parse_fibration(const std::string& name);
std::string to_string(Fibration f);

struct FourierSetup {
    Fibration kind;
    FramePtr m;        // primal total space (G2 layout)
    FramePtr w;        // dual total space (G2 layout)
    FramePtr product;  // M x_B W: base + fibre + dual fibre
    Form poincare;     // curvature of the Poincare bundle on the product
    std::vector<int> m_to_product;
    std::vector<int> fiber;     // product indices of the primal fibre, in orientation order
    std::vector<int> base_map;  // product index -> W index, -1 on the primal fibre
};

// Fibre lattice scales are diagonal; the dual fibre gets the reciprocal scales.
FourierSetup make_fourier_setup(Fibration kind, const std::vector<Rational>& fiber_scales = {});
const FourierSetup& fourier_setup(Fibration kind);

// Sum_j dy^j ^ dy_j (T^4 case) or sum_i dx^i ^ dx_i (T^3 case).
Form poincare_curvature(Fibration kind);

// int_{M/B} p*(a) ^ e^F.
Polyform transform_form(const Polyform& a, const FourierSetup& setup);
Polyform transform_form(const Polyform& a, Fibration kind);

// e^{Theta} and *e^{Theta} on the M or W frame of a setup.
Polyform exp_theta(const FramePtr& frame);
Polyform star_exp_theta(const FramePtr& frame);

// Exchanges graph functions and fibre connection coefficients; the base data a is unchanged.
// Applying it twice returns the input.
SemiFlatCoassocCycle transform_semiflat_cycle(const SemiFlatCoassocCycle& c);
SemiFlatAssocCycle transform_semiflat_cycle(const SemiFlatAssocCycle& c);

// Abelian connection on W: one polynomial coefficient per W coordinate, depending on the base
// variables only (x1..x3 for the T^4 case, y0..y3 for the T^3 case).
struct ConnectionOnW {
    FramePtr w;
    std::vector<Poly> coeff;
    std::vector<int> var_of;  // W coordinate -> base variable index, -1 along the fibre

    Form curvature(const std::vector<Rational>& base_point) const;
};

// Associative section f over T^3 base with connection a: D' = d + a_i dx^i + f^k dy_k.
// Coassociative section g over T^4 base with connection a: D' = d + a_j dy^j + g^b dx_b.
ConnectionOnW transform_section(const SectionCycle& s);

// Hodge star on 2-forms in the parameters y0..y3 of a coassociative graph, for the induced metric
// G = I + J^T J and the calibrated orientation. Exact because sqrt(det G) = |Theta| on the graph
// plane; throws if the jet is not coassociative. Matrix in basis_masks(4, 2) order.
RMatrix induced_hodge_two_forms(const Jet& coassoc_jet);

// Points of a flat torus and flat connections on its dual. Holonomy coordinates are the
// phases theta in exp(2 pi i theta), reduced to [0, 1).
struct FlatTorusObject {
    enum class Kind { Point, Connection } kind = Kind::Point;
    std::vector<Rational> coords;  // point: coordinates mod scale; connection: phases mod 1
    std::vector<Rational> scales;  // lattice scales of the torus carrying the object
};

FlatTorusObject transform_flat_torus(const FlatTorusObject& x);
// Holonomy exp(2 pi i theta) around each circle, as (cos, sin).
std::vector<std::pair<double, double>> holonomy(const FlatTorusObject& connection);

}  // namespace g2fm
