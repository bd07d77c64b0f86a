#include "g2fm/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace g2fm {

Fibration parse_fibration(const std::string& name) {
    if (name == "coassociative-t4") return Fibration::CoassociativeT4;
    if (name == "associative-t3") return Fibration::AssociativeT3;
    throw std::invalid_argument("unknown fibration: " + name);
}

std::string to_string(Fibration f) {
    return f == Fibration::CoassociativeT4 ? "coassociative-t4" : "associative-t3";
}

FourierSetup make_fourier_setup(Fibration kind, const std::vector<Rational>& fiber_scales) {
    FourierSetup s;
    s.kind = kind;
    const bool t4 = kind == Fibration::CoassociativeT4;
    const int nf = t4 ? 4 : 3;
    std::vector<Rational> scales = fiber_scales.empty() ? std::vector<Rational>(nf, 1) : fiber_scales;
    if (static_cast<int>(scales.size()) != nf) throw std::invalid_argument("fourier: wrong number of fibre scales");
    for (const auto& l : scales)
        if (l <= 0) throw std::invalid_argument("fourier: fibre scales must be positive");

    std::vector<Rational> mcov(7, 1), wcov(7, 1);
    const int f0 = t4 ? 3 : 0;  // first fibre index in the G2 layout
    for (int k = 0; k < nf; ++k) {
        mcov[f0 + k] = scales[k];
        wcov[f0 + k] = 1 / scales[k];
    }
    s.m = make_g2_frame(t4 ? "M" : "M3", {"x1", "x2", "x3", "y0", "y1", "y2", "y3"}, mcov);
    if (t4)
        s.w = make_g2_frame("W", {"x1", "x2", "x3", "y_0", "y_1", "y_2", "y_3"}, wcov);
    else
        s.w = make_g2_frame("W3", {"x_1", "x_2", "x_3", "y0", "y1", "y2", "y3"}, wcov);

    std::vector<std::string> labels{"x1", "x2", "x3", "y0", "y1", "y2", "y3"};
    std::vector<Rational> pcov = mcov;
    for (int k = 0; k < nf; ++k) {
        labels.push_back(t4 ? "y_" + std::to_string(k) : "x_" + std::to_string(k + 1));
        pcov.push_back(1 / scales[k]);
    }
    s.product = make_frame(t4 ? "MxW" : "MxW3", labels, {}, pcov);
    s.m_to_product = {0, 1, 2, 3, 4, 5, 6};
    s.poincare = Form(s.product, 2);
    for (int k = 0; k < nf; ++k) {
        s.poincare += Form::monomial(s.product, {f0 + k, 7 + k});
        s.fiber.push_back(f0 + k);
    }
    s.base_map.assign(7 + nf, -1);
    for (int i = 0; i < 7; ++i)
        if (i < f0 || i >= f0 + nf) s.base_map[i] = i;
    for (int k = 0; k < nf; ++k) s.base_map[7 + k] = f0 + k;
    return s;
}

const FourierSetup& fourier_setup(Fibration kind) {
    static const FourierSetup t4 = make_fourier_setup(Fibration::CoassociativeT4);
    static const FourierSetup t3 = make_fourier_setup(Fibration::AssociativeT3);
    return kind == Fibration::CoassociativeT4 ? t4 : t3;
}

Form poincare_curvature(Fibration kind) { return fourier_setup(kind).poincare; }

Polyform transform_form(const Polyform& a, const FourierSetup& setup) {
    if (a.frame() && !Form::same_frame(a.frame(), setup.m)) throw std::invalid_argument("transform_form: not a form on M");
    Polyform pulled(setup.product);
    for (const auto& [d, f] : a.parts()) pulled.add(relabel(f, setup.m_to_product, setup.product));
    Polyform kernel = exp_trunc(Polyform(setup.poincare), setup.product->dim);
    return fiber_integrate(wedge(pulled, kernel), setup.fiber, setup.base_map, setup.w);
}

Polyform transform_form(const Polyform& a, Fibration kind) { return transform_form(a, fourier_setup(kind)); }

Polyform exp_theta(const FramePtr& frame) {
    Polyform p(Form::scalar(frame, 1));
    p.add(g2_theta(frame));
    return p;
}

Polyform star_exp_theta(const FramePtr& frame) { return hodge(exp_theta(frame)); }

SemiFlatCoassocCycle transform_semiflat_cycle(const SemiFlatCoassocCycle& c) {
    for (const Field* f : {&c.graph[0], &c.graph[1], &c.conn[0], &c.conn[1], &c.a1, &c.a2})
        if (f->nvars() != 2) throw std::invalid_argument("transform_semiflat_cycle: input is not semi-flat");
    SemiFlatCoassocCycle out = c;
    out.side = c.side == Side::M ? Side::W : Side::M;
    out.graph = c.conn;
    out.conn = c.graph;
    return out;
}

SemiFlatAssocCycle transform_semiflat_cycle(const SemiFlatAssocCycle& c) {
    for (const Field* f : {&c.graph[0], &c.graph[1], &c.conn[0], &c.conn[1], &c.a})
        if (f->nvars() != 1) throw std::invalid_argument("transform_semiflat_cycle: input is not semi-flat");
    SemiFlatAssocCycle out = c;
    out.side = c.side == Side::M ? Side::W : Side::M;
    out.graph = c.conn;
    out.conn = c.graph;
    return out;
}

Form ConnectionOnW::curvature(const std::vector<Rational>& base_point) const {
    Form f(w, 2);
    const int n = w->dim;
    auto partial = [&](int mu, int nu) -> Rational {
        // d_mu A_nu
        if (var_of[mu] < 0) return 0;
        return coeff[nu].derivative(var_of[mu]).eval(base_point);
    };
    for (int mu = 0; mu < n; ++mu)
        for (int nu = mu + 1; nu < n; ++nu) f.add(mask_of({mu, nu}), partial(mu, nu) - partial(nu, mu));
    return f;
}

ConnectionOnW transform_section(const SectionCycle& s) {
    ConnectionOnW c;
    if (s.kind == SectionKind::Associative) {
        if (s.fiber.size() != 4 || s.connection.size() != 3)
            throw std::invalid_argument("transform_section: associative section needs f^0..f^3 and a_1..a_3");
        c.w = fourier_setup(Fibration::CoassociativeT4).w;
        c.coeff.assign(7, Poly(3));
        c.var_of.assign(7, -1);
        for (int i = 0; i < 3; ++i) {
            c.coeff[i] = s.connection[i];
            c.var_of[i] = i;
        }
        for (int k = 0; k < 4; ++k) c.coeff[3 + k] = s.fiber[k];
    } else {
        if (s.fiber.size() != 3 || s.connection.size() != 4)
            throw std::invalid_argument("transform_section: coassociative section needs g^1..g^3 and a_0..a_3");
        c.w = fourier_setup(Fibration::AssociativeT3).w;
        c.coeff.assign(7, Poly(4));
        c.var_of.assign(7, -1);
        for (int b = 0; b < 3; ++b) c.coeff[b] = s.fiber[b];
        for (int a = 0; a < 4; ++a) {
            c.coeff[3 + a] = s.connection[a];
            c.var_of[3 + a] = a;
        }
    }
    int nvars = c.coeff[0].nvars();
    for (const auto& p : c.coeff)
        if (p.nvars() != nvars) throw std::invalid_argument("transform_section: coefficient arity mismatch");
    return c;
}

namespace {

Rational frac_mod(const Rational& x, const Rational& period) {
    Rational q = x / period;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = x - Rational(fl) * period;
    r.canonicalize();
    return r;
}

}  // namespace

FlatTorusObject transform_flat_torus(const FlatTorusObject& x) {
    if (x.coords.size() != x.scales.size()) throw std::invalid_argument("transform_flat_torus: coordinate count");
    FlatTorusObject out;
    out.kind = x.kind == FlatTorusObject::Kind::Point ? FlatTorusObject::Kind::Connection : FlatTorusObject::Kind::Point;
    for (std::size_t k = 0; k < x.coords.size(); ++k) {
        const Rational& l = x.scales[k];
        if (l <= 0) throw std::invalid_argument("transform_flat_torus: scales must be positive");
        out.scales.push_back(1 / l);
        if (x.kind == FlatTorusObject::Kind::Point)
            out.coords.push_back(frac_mod(x.coords[k] / l, 1));
        else
            out.coords.push_back(frac_mod(x.coords[k] * out.scales.back(), out.scales.back()));
    }
    return out;
}

std::vector<std::pair<double, double>> holonomy(const FlatTorusObject& connection) {
    if (connection.kind != FlatTorusObject::Kind::Connection) throw std::invalid_argument("holonomy: not a connection");
    std::vector<std::pair<double, double>> h;
    for (const auto& t : connection.coords) {
        double a = 2 * std::numbers::pi * t.get_d();
        h.emplace_back(std::cos(a), std::sin(a));
    }
    return h;
}

}  // namespace g2fm

namespace g2fm {

RMatrix induced_hodge_two_forms(const Jet& jet) {
    Plane p = graph_plane(jet, SectionKind::Coassociative);
    auto verdict = calibrate_plane(p);
    if (!verdict.coassociative) throw std::invalid_argument("induced_hodge_two_forms: graph is not coassociative");
    Rational vol = evaluate(g2_theta(), p.span);  // signed: calibrated orientation times sqrt(det G)
    RMatrix g(4, 4);
    auto gm = gram(p.span);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) g(a, b) = gm[a][b];
    RMatrix gi = inverse(g);
    auto basis = basis_masks(4, 2);
    auto inner2 = [&](Mask x, Mask y) -> Rational {
        auto i = indices_of(x), j = indices_of(y);
        return gi(i[0], j[0]) * gi(i[1], j[1]) - gi(i[0], j[1]) * gi(i[1], j[0]);
    };
    // alpha ^ *beta = <alpha, beta>_G vol_G, with vol_G = vol dy^{0123}.
    RMatrix wedge_pair(6, 6);  // (alpha ^ gamma)_{0123}
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            wedge_pair(r, c) = (basis[r] & basis[c]) ? 0 : wedge_sign(basis[r], basis[c]);
    RMatrix rhs(6, 6);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) rhs(r, c) = inner2(basis[r], basis[c]) * vol;
    return inverse(wedge_pair) * rhs;
}

}  // namespace g2fm
