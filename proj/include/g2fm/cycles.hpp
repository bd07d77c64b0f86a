#pragma once

#include "g2fm/field.hpp"
#include "g2fm/g2core.hpp"
#include "g2fm/quaternion.hpp"

#include <array>
#include <string>
#include <vector>

namespace g2fm {

// Which fibration side a semi-flat cycle lives on: M (fibre y^0..y^3) or its dual W (fibre y_0..y_3).
enum class Side { M, W };

// Coassociative cycle over the base plane {x3 = 0}: two fibre coordinates are graphs over (x1, x2),
// the other two are free. On M the graphs are y0 = B0, y3 = B3 and the connection is
// a1 dx1 + a2 dx2 + D1 dy1 + D2 dy2; on W the roles of the two pairs are exchanged.
struct SemiFlatCoassocCycle {
    Side side = Side::M;
    std::array<Field, 2> graph;  // M: (B0, B3)   W: (D1, D2)
    std::array<Field, 2> conn;   // M: (D1, D2)   W: (B0, B3)
    Field a1, a2;

    std::array<int, 2> graph_pair() const { return side == Side::M ? std::array<int, 2>{0, 3} : std::array<int, 2>{1, 2}; }
    std::array<int, 2> conn_pair() const { return side == Side::M ? std::array<int, 2>{1, 2} : std::array<int, 2>{0, 3}; }
};

SemiFlatCoassocCycle make_coassoc_semiflat(Field B0, Field B3, Field a1, Field a2, Field D1, Field D2);

// Associative cycle over the line {x2 = x3 = 0}. On M: y2 = B2(x1), y3 = B3(x1) with connection
// a dx1 + D0 dy0 + D1 dy1. On W: y_0 = D0, y_1 = D1 with connection a dx1 + B2 dy_2 + B3 dy_3.
struct SemiFlatAssocCycle {
    Side side = Side::M;
    std::array<Field, 2> graph;  // M: (B2, B3)   W: (D0, D1)
    std::array<Field, 2> conn;   // M: (D0, D1)   W: (B2, B3)
    Field a;
};

SemiFlatAssocCycle make_assoc_semiflat(Field B2, Field B3, Field a, Field D0, Field D1);

struct ResidualChannel {
    std::string name;
    std::string group;  // "cycle", "flatness", "asd"
    Field residual;
    double sup = 0;
    double l2 = 0;
};

struct ResidualReport {
    std::vector<ResidualChannel> channels;
    bool vanishes(double tol = 1e-9) const;
    bool group_vanishes(const std::string& group, double tol = 1e-9) const;
    double sup() const;
};

// Coassociativity of the graph (2 channels), curl of (a1, a2), and the self-duality equations of the
// fibre connection (2 channels) in the calibrated orientation.
ResidualReport coassoc_semiflat_residual(const SemiFlatCoassocCycle& c);
// d/dx1 of the five functions.
ResidualReport assoc_semiflat_residual(const SemiFlatAssocCycle& c);

// Tangent vectors of the graph at a point, for the plane oracle. Derivatives are the exact
// partials of the graph functions (polynomial data only).
Plane coassoc_semiflat_tangent(const SemiFlatCoassocCycle& c, const std::vector<Rational>& base_point);

// First partial derivatives of a section at one point.
template <class T>
struct BasicJet {
    std::array<BasicQuaternion<T>, 3> d;  // (f_x1, f_x2, f_x3) or (grad g1, grad g2, grad g3)
};
using Jet = BasicJet<Rational>;
using JetD = BasicJet<double>;

enum class SectionKind { Associative, Coassociative };

// triple_cross(f1, f2, f3) + f1 i + f2 j + f3 k.
template <class T>
BasicQuaternion<T> assoc_section_residual(const BasicJet<T>& j) {
    using Q = BasicQuaternion<T>;
    Q r = triple_cross(j.d[0], j.d[1], j.d[2]);
    for (int b = 0; b < 3; ++b) r = r + j.d[b] * Q::unit(b + 1);
    return r;
}

// sum_b grad g^b * e_b + triple_cross(grad g1, grad g2, grad g3).
template <class T>
BasicQuaternion<T> coassoc_section_residual(const BasicJet<T>& j) {
    using Q = BasicQuaternion<T>;
    Q r = triple_cross(j.d[0], j.d[1], j.d[2]);
    for (int b = 0; b < 3; ++b) r = r + j.d[b] * Q::unit(b + 1);
    return r;
}

// Both residuals are affine in the third derivative; solve for it so that the residual vanishes.
// Returns false when the 4x4 system is singular.
bool complete_jet(Jet& j, SectionKind kind);

// Spanning vectors of the graph tangent plane in the G2 frame.
template <class T>
BasicPlane<T> graph_plane(const BasicJet<T>& j, SectionKind kind) {
    BasicPlane<T> p;
    if (kind == SectionKind::Associative) {
        for (int i = 0; i < 3; ++i) {
            std::vector<T> v(7, T(0));
            v[i] = T(1);
            for (int k = 0; k < 4; ++k) v[3 + k] = j.d[i][k];
            p.span.push_back(v);
        }
    } else {
        for (int a = 0; a < 4; ++a) {
            std::vector<T> v(7, T(0));
            v[3 + a] = T(1);
            for (int b = 0; b < 3; ++b) v[b] = j.d[b][a];
            p.span.push_back(v);
        }
    }
    return p;
}

// Left-hand side -f_x1 i - f_x2 j - f_x3 k of the associative equation, expanded by components:
// (f1_1 + f2_2 + f3_3) + (-f0_1 + f3_2 - f2_3) i + (-f3_1 - f0_2 + f1_3) j + (f2_1 - f1_2 - f0_3) k,
// where fk_i = d f^k / d x^i. The residual is triple_cross minus this.
template <class T>
BasicQuaternion<T> assoc_linear_expansion(const BasicJet<T>& j) {
    auto f = [&](int k, int i) { return j.d[i - 1][k]; };
    return BasicQuaternion<T>(T(f(1, 1) + f(2, 2) + f(3, 3)), T(-f(0, 1) + f(3, 2) - f(2, 3)),
                              T(-f(3, 1) - f(0, 2) + f(1, 3)), T(f(2, 1) - f(1, 2) - f(0, 3)));
}

// Section of the fibration, polynomial in the base variables.
struct SectionCycle {
    SectionKind kind = SectionKind::Associative;
    std::vector<Poly> fiber;       // f^0..f^3 over (x1,x2,x3) or g^1..g^3 over (y0..y3)
    std::vector<Poly> connection;  // a_1..a_3 or a_0..a_3
};

Jet section_jet(const SectionCycle& s, const std::vector<Rational>& point);

// Chern-Simons functional of an associative semi-flat pair relative to a reference pair, along
// the linear path between them. The path parameter is integrated by 3-point Gauss-Legendre, the
// base line by the periodic trapezoid rule with central differences; fibres have unit covolume.
struct CSQuadrature {
    int points = 64;
    double period = 1.0;
};

double chern_simons(const SemiFlatAssocCycle& pair, const SemiFlatAssocCycle& reference, const CSQuadrature& q);
// Same-side reference with zero functions.
SemiFlatAssocCycle zero_assoc_semiflat(Side side, const CSQuadrature& q);
// The same functional against the zero reference, reduced by hand to one-variable integrals:
// on M, 1/2 int (B2' B3 - B2 B3') + 1/2 int (D0 D1' - D1 D0'); on W the two pairs swap roles.
// Uses the same differences and quadrature as chern_simons.
double chern_simons_reduced(const SemiFlatAssocCycle& pair, const CSQuadrature& q);

}  // namespace g2fm
