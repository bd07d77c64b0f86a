#include "g2fm/cycles.hpp"

#include <cmath>
#include <stdexcept>

namespace g2fm {

namespace {

void require_semiflat(const std::vector<const Field*>& fs, int nvars, const char* what) {
    for (const Field* f : fs) {
        if (f->nvars() != nvars) throw std::invalid_argument(std::string(what) + ": functions must depend on " +
                                                             std::to_string(nvars) + " base variable(s)");
        if (!f->compatible(*fs.front())) throw std::invalid_argument(std::string(what) + ": grid sizes differ");
    }
}

ResidualChannel channel(std::string name, std::string group, Field r) {
    ResidualChannel c{std::move(name), std::move(group), std::move(r), 0, 0};
    c.sup = c.residual.sup_norm();
    c.l2 = c.residual.l2_norm();
    return c;
}

// Cauchy-Riemann type pair for two graph functions (or connection coefficients) over (x1, x2).
// The pair (0,3) and the pair (1,2) enter with the orientations induced by Omega.
std::array<Field, 2> pair_equations(const std::array<Field, 2>& u, const std::array<int, 2>& pair) {
    Field d1u = u[0].derivative(0), d2u = u[0].derivative(1);
    Field d1v = u[1].derivative(0), d2v = u[1].derivative(1);
    if (pair == std::array<int, 2>{0, 3}) return {d1u - d2v, d1v + d2u};
    return {d1v - d2u, d1u + d2v};
}

std::string fibre_name(Side side, int k) {
    return (side == Side::M ? "y" : "y_") + std::to_string(k);
}

}  // namespace

SemiFlatCoassocCycle make_coassoc_semiflat(Field B0, Field B3, Field a1, Field a2, Field D1, Field D2) {
    SemiFlatCoassocCycle c;
    c.side = Side::M;
    c.graph = {std::move(B0), std::move(B3)};
    c.conn = {std::move(D1), std::move(D2)};
    c.a1 = std::move(a1);
    c.a2 = std::move(a2);
    require_semiflat({&c.graph[0], &c.graph[1], &c.conn[0], &c.conn[1], &c.a1, &c.a2}, 2, "coassociative semi-flat cycle");
    return c;
}

SemiFlatAssocCycle make_assoc_semiflat(Field B2, Field B3, Field a, Field D0, Field D1) {
    SemiFlatAssocCycle c;
    c.side = Side::M;
    c.graph = {std::move(B2), std::move(B3)};
    c.conn = {std::move(D0), std::move(D1)};
    c.a = std::move(a);
    require_semiflat({&c.graph[0], &c.graph[1], &c.conn[0], &c.conn[1], &c.a}, 1, "associative semi-flat cycle");
    return c;
}

bool ResidualReport::vanishes(double tol) const {
    for (const auto& c : channels)
        if (!c.residual.vanishes(tol)) return false;
    return true;
}

bool ResidualReport::group_vanishes(const std::string& group, double tol) const {
    for (const auto& c : channels)
        if (c.group == group && !c.residual.vanishes(tol)) return false;
    return true;
}

double ResidualReport::sup() const {
    double m = 0;
    for (const auto& c : channels) m = std::max(m, c.sup);
    return m;
}

ResidualReport coassoc_semiflat_residual(const SemiFlatCoassocCycle& c) {
    require_semiflat({&c.graph[0], &c.graph[1], &c.conn[0], &c.conn[1], &c.a1, &c.a2}, 2, "coassoc_semiflat_residual");
    ResidualReport r;
    auto g = pair_equations(c.graph, c.graph_pair());
    auto d = pair_equations(c.conn, c.conn_pair());
    r.channels.push_back(channel("coassoc.1", "cycle", g[0]));
    r.channels.push_back(channel("coassoc.2", "cycle", g[1]));
    r.channels.push_back(channel("flat.curl", "flatness", c.a1.derivative(1) - c.a2.derivative(0)));
    r.channels.push_back(channel("asd.1", "asd", d[0]));
    r.channels.push_back(channel("asd.2", "asd", d[1]));
    return r;
}

ResidualReport assoc_semiflat_residual(const SemiFlatAssocCycle& c) {
    require_semiflat({&c.graph[0], &c.graph[1], &c.conn[0], &c.conn[1], &c.a}, 1, "assoc_semiflat_residual");
    bool m = c.side == Side::M;
    ResidualReport r;
    r.channels.push_back(channel("d " + fibre_name(c.side, m ? 2 : 0), "cycle", c.graph[0].derivative(0)));
    r.channels.push_back(channel("d " + fibre_name(c.side, m ? 3 : 1), "cycle", c.graph[1].derivative(0)));
    r.channels.push_back(channel("d a", "flatness", c.a.derivative(0)));
    r.channels.push_back(channel("d D" + std::to_string(m ? 0 : 2), "flatness", c.conn[0].derivative(0)));
    r.channels.push_back(channel("d D" + std::to_string(m ? 1 : 3), "flatness", c.conn[1].derivative(0)));
    return r;
}

Plane coassoc_semiflat_tangent(const SemiFlatCoassocCycle& c, const std::vector<Rational>& base_point) {
    if (!c.graph[0].is_poly() || !c.graph[1].is_poly())
        throw std::invalid_argument("coassoc_semiflat_tangent: needs polynomial graph functions");
    auto gp = c.graph_pair();
    Plane p;
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<Rational> v(7, 0);
        v[axis] = 1;
        for (int k = 0; k < 2; ++k) v[3 + gp[k]] = c.graph[k].poly().derivative(axis).eval(base_point);
        p.span.push_back(v);
    }
    for (int y = 0; y < 4; ++y) {
        if (y == gp[0] || y == gp[1]) continue;
        std::vector<Rational> v(7, 0);
        v[3 + y] = 1;
        p.span.push_back(v);
    }
    return p;
}

Jet section_jet(const SectionCycle& s, const std::vector<Rational>& point) {
    Jet j;
    if (s.kind == SectionKind::Associative) {
        if (s.fiber.size() != 4) throw std::invalid_argument("section_jet: associative section needs f^0..f^3");
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 4; ++k) j.d[i][k] = s.fiber[k].derivative(i).eval(point);
    } else {
        if (s.fiber.size() != 3) throw std::invalid_argument("section_jet: coassociative section needs g^1..g^3");
        for (int b = 0; b < 3; ++b)
            for (int a = 0; a < 4; ++a) j.d[b][a] = s.fiber[b].derivative(a).eval(point);
    }
    return j;
}

namespace {

struct SampledPair {
    std::array<Grid, 2> g, c;
    Grid a;
    std::array<Grid, 2> dg, dc;
};

SampledPair sample(const SemiFlatAssocCycle& p, const CSQuadrature& q) {
    require_semiflat({&p.graph[0], &p.graph[1], &p.conn[0], &p.conn[1], &p.a}, 1, "chern_simons");
    std::vector<int> shape{q.points};
    std::vector<double> period{q.period};
    SampledPair s;
    for (int k = 0; k < 2; ++k) {
        s.g[k] = p.graph[k].to_grid(shape, period);
        s.c[k] = p.conn[k].to_grid(shape, period);
        s.dg[k] = s.g[k].derivative(0);
        s.dc[k] = s.c[k].derivative(0);
    }
    s.a = p.a.to_grid(shape, period);
    return s;
}

FramePtr path_frame(Side side) {
    static const FramePtr m = make_frame("AxI", {"x1", "y0", "y1", "s"});
    static const FramePtr w = make_frame("A'xI", {"x1", "y_3", "y_2", "s"});
    return side == Side::M ? m : w;
}

double sum_pairwise(std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return sum_pairwise(v, lo, mid) + sum_pairwise(v, mid, hi);
}

}  // namespace

SemiFlatAssocCycle zero_assoc_semiflat(Side side, const CSQuadrature& q) {
    Grid z({q.points}, {q.period});
    SemiFlatAssocCycle c = make_assoc_semiflat(z, z, z, z, z);
    c.side = side;
    return c;
}

double chern_simons(const SemiFlatAssocCycle& pair, const SemiFlatAssocCycle& reference, const CSQuadrature& q) {
    if (pair.side != reference.side) throw std::invalid_argument("chern_simons: pair and reference on different sides");
    if (q.points < 8) throw std::invalid_argument("chern_simons: resolution below 8");
    SampledPair p = sample(pair, q), r = sample(reference, q);
    const bool m = pair.side == Side::M;
    const FramePtr target = path_frame(pair.side);
    static const FormD theta = to_double_form(g2_theta());
    // Source indices in the 7-dimensional frame: graph coordinates and the fibre of the cycle.
    const int graph_src[2] = {m ? 5 : 3, m ? 6 : 4};
    const int fibre_src[2] = {m ? 3 : 6, m ? 4 : 5};  // mapped to target slots 1 and 2
    // Target slot of the fibre coordinate paired with each connection coefficient.
    const int conn_slot[2] = {m ? 1 : 2, m ? 2 : 1};

    const double nodes[3] = {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
    const double weights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    const Mask top = 0b1111;

    std::vector<double> values(static_cast<std::size_t>(q.points));
    for (int i = 0; i < q.points; ++i) {
        double acc = 0;
        for (int n = 0; n < 3; ++n) {
            double s = nodes[n];
            std::vector<std::vector<double>> jac(7, std::vector<double>(4, 0.0));
            jac[0][0] = 1;
            jac[fibre_src[0]][1] = 1;
            jac[fibre_src[1]][2] = 1;
            for (int k = 0; k < 2; ++k) {
                double dG = r.dg[k][i] + s * (p.dg[k][i] - r.dg[k][i]);
                jac[graph_src[k]][0] = dG;
                jac[graph_src[k]][3] = p.g[k][i] - r.g[k][i];
            }
            FormD ft = pullback(theta, jac, target);

            FormD dir(target, 1);
            dir.add(Mask(1) << 0, p.a[i] - r.a[i]);
            FormD curv(target, 2);
            for (int k = 0; k < 2; ++k) {
                dir.add(Mask(1) << conn_slot[k], p.c[k][i] - r.c[k][i]);
                double dC = r.dc[k][i] + s * (p.dc[k][i] - r.dc[k][i]);
                curv += FormD::monomial(target, {0, conn_slot[k]}, dC);
            }
            FormD ds = FormD::monomial(target, {3});
            FormD F = wedge(ds, dir) + curv;
            FormD deg4 = ft + 0.5 * wedge(F, F);
            acc += weights[n] * deg4.coeff(top);
        }
        values[static_cast<std::size_t>(i)] = acc;
    }
    double h = q.period / q.points;
    return sum_pairwise(values, 0, values.size()) * h;
}

double chern_simons_reduced(const SemiFlatAssocCycle& pair, const CSQuadrature& q) {
    SampledPair p = sample(pair, q);
    Grid g = p.dg[0] * p.g[1] - p.g[0] * p.dg[1];  // G0' G1 - G0 G1'
    Grid c = p.c[0] * p.dc[1] - p.c[1] * p.dc[0];  // C0 C1' - C1 C0'
    if (pair.side == Side::M) return 0.5 * g.integral() + 0.5 * c.integral();
    return -0.5 * g.integral() - 0.5 * c.integral();
}

}  // namespace g2fm

namespace g2fm {

bool complete_jet(Jet& j, SectionKind kind) {
    auto residual = [&](const Jet& x) {
        return kind == SectionKind::Associative ? assoc_section_residual(x) : coassoc_section_residual(x);
    };
    Jet base = j;
    base.d[2] = Quaternion();
    Quaternion r0 = residual(base);
    RMatrix l(4, 4);
    for (int k = 0; k < 4; ++k) {
        Jet e = base;
        e.d[2] = Quaternion::unit(k);
        Quaternion rk = residual(e);
        for (int c = 0; c < 4; ++c) l(c, k) = rk[c] - r0[c];
    }
    if (rank(l) < 4) return false;
    std::vector<Rational> rhs(4);
    for (int c = 0; c < 4; ++c) rhs[c] = -r0[c];
    auto x = solve(l, rhs);
    j.d[2] = Quaternion::from(x);
    return true;
}

}  // namespace g2fm
