#include "doctest.h"

#include "g2fm/cycles.hpp"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace g2fm;

namespace {

Quaternion random_q(std::mt19937_64& rng) {
    return {random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
}

std::vector<Rational> embed_fibre(const Quaternion& q) {
    std::vector<Rational> v(7, 0);
    for (int k = 0; k < 4; ++k) v[3 + k] = q[k];
    return v;
}

Poly affine2(const Rational& c1, const Rational& c2, const Rational& c0 = 0) {
    return Poly::constant(2, c0) + Poly::var(2, 0, c1) + Poly::var(2, 1, c2);
}

Form restrict_to_plane(const Form& f, const Plane& p, const FramePtr& target) {
    std::vector<std::vector<Rational>> jac(7, std::vector<Rational>(4, 0));
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 7; ++i) jac[i][j] = p.span[j][i];
    return pullback(f, jac, target);
}

}  // namespace

TEST_CASE("quaternion algebra") {
    std::mt19937_64 rng(21);
    Quaternion i = Quaternion::unit(1), j = Quaternion::unit(2), k = Quaternion::unit(3);
    CHECK(i * i == Quaternion::real(-1));
    CHECK(i * j * k == Quaternion::real(-1));
    CHECK(i * j == k);
    for (int t = 0; t < 1000; ++t) {
        Quaternion a = random_q(rng), b = random_q(rng), c = random_q(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).conj() == b.conj() * a.conj());
        CHECK((a * b).norm2() == a.norm2() * b.norm2());
    }
}

TEST_CASE("triple cross") {
    Quaternion one = Quaternion::unit(0), i = Quaternion::unit(1), j = Quaternion::unit(2), k = Quaternion::unit(3);
    CHECK(triple_cross(i, j, k) == one);
    CHECK(triple_cross(j, i, k) == -one);
    std::mt19937_64 rng(22);
    const Form theta = g2_theta();
    int global_sign = 0;
    for (int t = 0; t < 1000; ++t) {
        Quaternion u = random_q(rng), v = random_q(rng), w = random_q(rng), z = random_q(rng);
        CHECK(triple_cross(u, u, w).is_zero());
        CHECK(triple_cross(v, u, w) == -triple_cross(u, v, w));
        CHECK(triple_cross(u, w, v) == -triple_cross(u, v, w));
        // fibre 4-form pairing
        CHECK(dot(triple_cross(u, v, w), z) ==
              evaluate(theta, {embed_fibre(z), embed_fibre(u), embed_fibre(v), embed_fibre(w)}));
        Quaternion alt = Rational(1, 2) * (u * (v.conj() * w) - w * (v.conj() * u));
        Quaternion tc = triple_cross(u, v, w);
        if (tc.is_zero()) continue;
        if (global_sign == 0) global_sign = (alt == tc) ? 1 : (alt == -tc ? -1 : 2);
        CHECK(global_sign != 2);
        CHECK(alt == Rational(global_sign) * tc);
    }
}

TEST_CASE("coassociative semi-flat residual") {
    Poly zero(2);
    auto c = make_coassoc_semiflat(Poly::constant(2, 3), Poly::constant(2, -1), zero, zero, Poly::constant(2, 2), zero);
    CHECK(coassoc_semiflat_residual(c).vanishes());
    c = make_coassoc_semiflat(Poly::var(2, 0), Poly::var(2, 1), zero, zero, zero, zero);
    CHECK(coassoc_semiflat_residual(c).vanishes());
    c = make_coassoc_semiflat(Poly::var(2, 1), zero, zero, zero, zero, zero);
    auto r = coassoc_semiflat_residual(c);
    CHECK(r.channels[0].residual.poly().is_zero());
    CHECK(r.channels[1].residual.poly() == Poly::constant(2, 1));
    CHECK_FALSE(calibrate_plane(coassoc_semiflat_tangent(c, {0, 0})).coassociative);
    CHECK_THROWS(make_coassoc_semiflat(Poly::var(1, 0), zero, zero, zero, zero, zero));
}

TEST_CASE("coassociative semi-flat residual agrees with the plane oracle on both sides") {
    std::mt19937_64 rng(23);
    Poly zero(2);
    for (int t = 0; t < 200; ++t) {
        Rational p = random_rational(rng), q = random_rational(rng);
        bool conform = t % 2 == 0;
        Poly u = affine2(p, q, random_rational(rng));
        Poly v = conform ? affine2(-q, p) : affine2(random_rational(rng), random_rational(rng));
        for (Side side : {Side::M, Side::W}) {
            SemiFlatCoassocCycle c = make_coassoc_semiflat(u, v, zero, zero, zero, zero);
            if (side == Side::W) {
                // graph on the (1,2) pair: the equations are those of the M-side connection
                Poly w = conform ? affine2(q, -p) : v;
                c = make_coassoc_semiflat(zero, zero, zero, zero, u, w);
                std::swap(c.graph, c.conn);
                c.side = Side::W;
            }
            auto rep = coassoc_semiflat_residual(c);
            auto verdict = calibrate_plane(coassoc_semiflat_tangent(c, {random_rational(rng), random_rational(rng)}));
            CHECK(rep.group_vanishes("cycle") == verdict.coassociative);
            if (conform) CHECK(verdict.coassociative);
        }
    }
}

TEST_CASE("connection equations are self-duality in the calibrated orientation") {
    std::mt19937_64 rng(24);
    Poly zero(2);
    const Form theta = g2_theta();
    for (Side side : {Side::M, Side::W}) {
        for (int t = 0; t < 60; ++t) {
            Rational p = random_rational(rng), q = random_rational(rng);
            bool conform = t % 3 != 0;
            Poly u = affine2(p, q);
            Poly v = side == Side::M ? affine2(q, -p) : affine2(-q, p);
            if (!conform) v = affine2(random_rational(rng), random_rational(rng));
            Rational curl = (t % 5 == 0) ? random_rational(rng) : Rational(0);
            Poly a1 = Poly::var(2, 1, -curl);
            SemiFlatCoassocCycle c = make_coassoc_semiflat(zero, zero, a1, zero, u, v);
            if (side == Side::W) {
                c = make_coassoc_semiflat(u, v, a1, zero, zero, zero);
                std::swap(c.graph, c.conn);
                c.side = Side::W;
            }
            auto rep = coassoc_semiflat_residual(c);
            Plane tangent = coassoc_semiflat_tangent(c, {0, 0});
            auto verdict = calibrate_plane(tangent);
            REQUIRE(verdict.coassociative);
            // curvature of a1 dx1 + a2 dx2 + sum conn_k dy^{pair_k} on the horizontal plane
            auto fr = make_frame("C", {"t0", "t1", "t2", "t3"},
                                 verdict.orientation > 0 ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{1, 0, 2, 3});
            Form F(fr, 2);
            Rational dcurl = c.a2.poly().derivative(0).eval(std::vector<Rational>{0, 0}) - c.a1.poly().derivative(1).eval(std::vector<Rational>{0, 0});
            F += Form::monomial(fr, {0, 1}, dcurl);
            auto cp = c.conn_pair();
            for (int k = 0; k < 2; ++k) {
                int slot = -1;
                for (int s = 2; s < 4; ++s)
                    if (tangent.span[s][3 + cp[k]] == 1) slot = s;
                REQUIRE(slot >= 2);
                for (int axis = 0; axis < 2; ++axis)
                    F += Form::monomial(fr, {axis, slot}, c.conn[k].poly().derivative(axis).eval(std::vector<Rational>{0, 0}));
            }
            CHECK(restrict_to_plane(theta, tangent, fr).coeff(0b1111) * verdict.orientation > 0);
            bool sd = F == hodge(F);
            CHECK(sd == (rep.group_vanishes("asd") && rep.group_vanishes("flatness")));
        }
    }
}

TEST_CASE("associative semi-flat residual") {
    Poly z(1);
    auto c = make_assoc_semiflat(Poly::constant(1, 2), z, Poly::constant(1, 1), z, z);
    CHECK(assoc_semiflat_residual(c).vanishes());
    c = make_assoc_semiflat(Poly::var(1, 0), z, z, z, z);
    auto r = assoc_semiflat_residual(c);
    CHECK(r.channels[0].residual.poly() == Poly::constant(1, 1));
    CHECK(r.sup() == 1.0);
    const double tau = 2 * std::numbers::pi;
    Grid zero({64}, {1.0});
    Grid d0 = Grid::sample({64}, {1.0}, [&](const std::vector<double>& x) { return std::sin(tau * x[0]); });
    auto g = make_assoc_semiflat(zero, zero, zero, d0, zero);
    auto rg = assoc_semiflat_residual(g);
    CHECK_FALSE(rg.vanishes());
    Grid fd = d0.derivative(0);
    for (std::size_t i = 0; i < fd.size(); ++i) CHECK(rg.channels[3].residual.grid()[i] == fd[i]);
    CHECK(std::abs(rg.channels[3].sup - tau) < 0.02 * tau);
}

TEST_CASE("section residual examples") {
    Quaternion i = Quaternion::unit(1), j = Quaternion::unit(2), k = Quaternion::unit(3);
    Jet zero;
    CHECK(assoc_section_residual(zero).is_zero());
    CHECK(coassoc_section_residual(zero).is_zero());
    Jet f1{{i, Quaternion(), Quaternion()}};
    CHECK(assoc_section_residual(f1) == Quaternion::real(-1));
    auto v = calibrate_plane(graph_plane(f1, SectionKind::Associative));
    CHECK_FALSE(v.associative);
    CHECK(v.ratio == doctest::Approx(1 / std::sqrt(2.0)));
    Jet g1{{Quaternion::real(1), Quaternion(), Quaternion()}};
    CHECK(coassoc_section_residual(g1) == i);
    for (Rational t : {Rational(0), Rational(1), Rational(2), Rational(-3, 2), Rational(7, 5)}) {
        Jet d{{t * i, t * j, t * k}};
        CHECK(assoc_section_residual(d) == Quaternion::real(t * t * t - 3 * t));
    }
    double s3 = std::sqrt(3.0);
    JetD dd{{QuaternionD(0, s3, 0, 0), QuaternionD(0, 0, s3, 0), QuaternionD(0, 0, 0, s3)}};
    auto rd = assoc_section_residual(dd);
    CHECK(std::sqrt(rd.norm2()) < 1e-12);
    CHECK(calibrate_plane(graph_plane(dd, SectionKind::Associative)).associative);
    CHECK(graph_plane(zero, SectionKind::Associative).span[0] == basis_vector<Rational>(7, 0));
    CHECK(graph_plane(zero, SectionKind::Coassociative).span[3] == basis_vector<Rational>(7, 6));
    auto pf = graph_plane(f1, SectionKind::Associative);
    CHECK(pf.span[0] == std::vector<Rational>{1, 0, 0, 0, 1, 0, 0});
}

TEST_CASE("linear side matches the displayed component expansion") {
    std::mt19937_64 rng(25);
    for (int t = 0; t < 100; ++t) {
        Jet jt{{random_q(rng), random_q(rng), random_q(rng)}};
        CHECK(assoc_section_residual(jt) == triple_cross(jt.d[0], jt.d[1], jt.d[2]) - assoc_linear_expansion(jt));
    }
}

TEST_CASE("section residual agrees with the plane oracle") {
    std::mt19937_64 rng(26);
    for (SectionKind kind : {SectionKind::Associative, SectionKind::Coassociative}) {
        int calibrated = 0;
        for (int t = 0; t < 500; ++t) {
            Jet jt{{random_q(rng), random_q(rng), random_q(rng)}};
            if (t % 2 == 0 && !complete_jet(jt, kind)) continue;
            auto r = kind == SectionKind::Associative ? assoc_section_residual(jt) : coassoc_section_residual(jt);
            auto verdict = calibrate_plane(graph_plane(jt, kind));
            bool cal = kind == SectionKind::Associative ? verdict.associative : verdict.coassociative;
            CHECK(r.is_zero() == cal);
            calibrated += cal;
            JetD jd;
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 4; ++c) jd.d[b][c] = jt.d[b][c].get_d();
            auto rd = kind == SectionKind::Associative ? assoc_section_residual(jd) : coassoc_section_residual(jd);
            PlaneD pd;
            for (const auto& vec : graph_plane(jt, kind).span) {
                std::vector<double> dv;
                for (const auto& x : vec) dv.push_back(x.get_d());
                pd.span.push_back(dv);
            }
            auto vd = calibrate_plane(pd, 1e-9);
            bool cald = kind == SectionKind::Associative ? vd.associative : vd.coassociative;
            CHECK((std::sqrt(rd.norm2()) <= 1e-10) == cald);
        }
        CHECK(calibrated > 200);
    }
}

TEST_CASE("section jets from polynomial data") {
    SectionCycle s;
    s.kind = SectionKind::Associative;
    for (int k = 0; k < 4; ++k) s.fiber.push_back(Poly(3));
    s.fiber[1] = Poly::var(3, 0);
    Jet jt = section_jet(s, {0, 0, 0});
    CHECK(jt.d[0] == Quaternion::unit(1));
    CHECK(assoc_section_residual(jt) == Quaternion::real(-1));
}

namespace {

SemiFlatAssocCycle trig_pair(int n, double c2, double c3, double c0, double c1) {
    const double tau = 2 * std::numbers::pi;
    auto g = [&](double amp, int mode, bool cosine) {
        return Grid::sample({n}, {1.0}, [=](const std::vector<double>& x) {
            return amp * (cosine ? std::cos(tau * mode * x[0]) : std::sin(tau * mode * x[0]));
        });
    };
    Grid zero({n}, {1.0});
    return make_assoc_semiflat(g(c2, 1, true), g(c3, 1, false), zero, g(c0, 2, true), g(c1, 2, false));
}

}  // namespace

TEST_CASE("chern-simons functional") {
    CSQuadrature q{64, 1.0};
    auto ref = zero_assoc_semiflat(Side::M, q);
    CHECK(chern_simons(ref, ref, q) == 0.0);
    auto p = trig_pair(64, 1, 1, 0, 0);
    CHECK(chern_simons(p, p, q) == doctest::Approx(0.0));
    // graph part: 1/2 int (B2' B3 - B2 B3') = -pi for (cos, sin)
    double v = chern_simons(p, ref, q);
    CHECK(v == doctest::Approx(chern_simons_reduced(p, q)).epsilon(1e-12));
    CHECK(v == doctest::Approx(-std::numbers::pi).epsilon(1e-2));
    // connection part only: 1/2 int (D0 D1' - D1 D0') = 2 pi for mode-2 (cos, sin)
    auto d = trig_pair(64, 0, 0, 1, 1);
    CHECK(chern_simons(d, ref, q) == doctest::Approx(chern_simons_reduced(d, q)).epsilon(1e-12));
    CHECK(chern_simons(d, ref, q) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-2));
}

TEST_CASE("chern-simons second-order convergence and Richardson agreement") {
    double exact = -std::numbers::pi * 1.5 + 2 * std::numbers::pi * 0.5;
    std::vector<double> errs, vals;
    for (int n : {32, 64, 128, 256}) {
        CSQuadrature q{n, 1.0};
        double v = chern_simons(trig_pair(n, 1.5, 1, 1, 0.5), zero_assoc_semiflat(Side::M, q), q);
        vals.push_back(v);
        errs.push_back(std::abs(v - exact));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i - 1] / errs[i] >= 3.5);
    double rich = (4 * vals[3] - vals[2]) / 3;
    CHECK(std::abs(rich - exact) / std::abs(exact) < 1e-6);
}
