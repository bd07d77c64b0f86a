#include "doctest.h"

#include "g2fm/g2core.hpp"
#include "g2fm/rep.hpp"
#include "test_util.hpp"

using namespace g2fm;

namespace {
std::vector<Rational> e(int i) { return basis_vector<Rational>(7, i); }
}  // namespace

TEST_CASE("standard forms") {
    Form o = g2_omega(), t = g2_theta();
    CHECK(o.size() == 7);
    CHECK(t.size() == 7);
    CHECK(o.coeff({0, 1, 2}) == 1);
    CHECK(t.coeff({3, 4, 5, 6}) == 1);
    CHECK(hodge(o) == t);
}

TEST_CASE("cross product") {
    CHECK(cross(e(0), e(1)) == e(2));
    CHECK(cross(e(0), e(4)) == std::vector<Rational>{0, 0, 0, -1, 0, 0, 0});
    Form o = g2_omega();
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
            for (int c = 0; c < 7; ++c) CHECK(cross(e(a), e(b))[c] == evaluate(o, {e(a), e(b), e(c)}));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 1000; ++t) {
        auto u = random_vector(rng, 7), v = random_vector(rng, 7);
        auto w = cross(u, v);
        Rational uu(0), vv(0), uv(0), ww(0);
        for (int i = 0; i < 7; ++i) {
            uu += u[i] * u[i];
            vv += v[i] * v[i];
            uv += u[i] * v[i];
            ww += w[i] * w[i];
        }
        CHECK(ww == uu * vv - uv * uv);
        CHECK(cross(u, u) == std::vector<Rational>(7, 0));
    }
}

TEST_CASE("chi") {
    auto c = chi();
    CHECK(c.components[3] == interior(e(3), g2_theta()));
    for (const auto& comp : c.components) CHECK(evaluate(comp, {e(0), e(1), e(2)}) == 0);
}

TEST_CASE("stabilizer algebra of Omega") {
    auto stab = stabilizer_algebra(g2_omega());
    CHECK(stab.size() == 14);
    CHECK(closed_under_bracket(stab));
    for (const auto& a : stab) CHECK(act(a, g2_theta()).is_zero());
    auto f3 = make_frame("r3", {"a", "b", "c"});
    CHECK(stabilizer_algebra(Form::monomial(f3, {0, 1, 2})).size() == 3);
}

TEST_CASE("decomposition") {
    auto f = g2_frame();
    const auto& p2 = g2_projectors(2);
    CHECK(p2[0].dim == 7);
    CHECK(p2[1].dim == 14);
    CHECK(rank(p2[0].projector) == 7);
    CHECK(rank(p2[1].projector) == 14);
    RMatrix t = g2_two_form_operator();
    CHECK(nullspace(t + Rational(2) * RMatrix::identity(21)).size() == 7);
    CHECK(nullspace(t - RMatrix::identity(21)).size() == 14);
    // Lambda^2_14 is the image of the stabilizer algebra g2 in so(7) = Lambda^2
    for (const auto& a : stabilizer_algebra(g2_omega())) {
        Form b(f, 2);
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j) b.add(mask_of({i, j}), a(i, j));
        CHECK(p2[1].projector.apply(to_coords(b)) == to_coords(b));
    }
    const auto& p3 = g2_projectors(3);
    CHECK(p3[0].dim == 1);
    CHECK(p3[1].dim == 7);
    CHECK(p3[2].dim == 27);
    for (int d : {2, 3}) {
        const auto& ps = g2_projectors(d);
        RMatrix sum(ps[0].projector.rows(), ps[0].projector.cols());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            sum = sum + ps[i].projector;
            for (std::size_t j = 0; j < ps.size(); ++j) {
                RMatrix prod = ps[i].projector * ps[j].projector;
                if (i == j)
                    CHECK(prod == ps[i].projector);
                else
                    CHECK(prod.is_zero());
            }
        }
        CHECK(sum == RMatrix::identity(sum.rows()));
    }
    auto comps = g2_decompose(g2_omega());
    CHECK(comps[0].form == g2_omega());
    CHECK(comps[1].form.is_zero());
    CHECK(comps[2].form.is_zero());
    auto c123 = g2_decompose(Form::monomial(f, {0, 1, 2}));
    CHECK(c123[0].form == Rational(1, 7) * g2_omega());
    // Lambda^2_14 is killed by wedge with Theta
    for (int c = 0; c < 21; ++c) {
        auto col = p2[1].projector.column(c);
        CHECK(wedge(from_coords(f, 2, col), g2_theta()).is_zero());
    }
}

TEST_CASE("casimir agrees with structural decomposition on Lambda^3") {
    auto stab = stabilizer_algebra(g2_omega());
    auto pieces = casimir_decomposition(stab, g2_frame(), 3);
    REQUIRE(pieces.size() == 3);
    const auto& p3 = g2_projectors(3);
    for (int i = 0; i < 3; ++i) {
        CHECK(pieces[i].dim == p3[i].dim);
        CHECK(pieces[i].projector == p3[i].projector);
    }
}

TEST_CASE("calibrate_plane") {
    auto v = calibrate_plane(Plane{{e(0), e(1), e(2)}});
    CHECK(v.associative);
    CHECK(v.ratio == doctest::Approx(1.0));
    auto c = calibrate_plane(Plane{{e(3), e(4), e(5), e(6)}});
    CHECK(c.coassociative);
    CHECK(c.value == doctest::Approx(1.0));
    auto n = calibrate_plane(Plane{{e(0), e(1), e(3)}});
    CHECK(n.value == 0);
    CHECK_FALSE(n.associative);
    CHECK_THROWS(calibrate_plane(Plane{{e(0), e(0), e(1)}}));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 1000; ++t) {
        auto u = random_vector(rng, 7), w = random_vector(rng, 7);
        Plane p;
        if (t % 2 == 0)
            p.span = {u, w, cross(u, w)};
        else
            p.span = {u, w, random_vector(rng, 7)};
        Rational g = determinant_small(gram(p.span));
        if (g == 0) continue;
        auto verdict = calibrate_plane(p);
        CHECK(verdict.associative == (std::abs(std::abs(verdict.ratio) - 1) < 1e-12));
        if (t % 2 == 0) CHECK(verdict.associative);
        PlaneD pd;
        for (const auto& vec : p.span) {
            std::vector<double> dv;
            for (const auto& x : vec) dv.push_back(x.get_d());
            pd.span.push_back(dv);
        }
        CHECK(calibrate_plane(pd).associative == verdict.associative);
    }
}

TEST_CASE("DT residuals") {
    auto f = g2_frame();
    CHECK(dt_residual(Form(f, 2)).is_zero());
    CHECK(deformed_dt_residual(Form(f, 2)).is_zero());
    Form seven = interior(e(0), g2_omega());
    auto comps = g2_decompose(seven);
    CHECK(comps[1].form.is_zero());
    CHECK_FALSE(dt_residual(seven).is_zero());
    // dx^{23} + dy^{10} lies in Lambda^2_14 in these conventions
    Form fourteen = Form::monomial(f, {1, 2}) + Form::monomial(f, {4, 3});
    CHECK(g2_decompose(fourteen)[0].form.is_zero());
    CHECK(dt_residual(fourteen).is_zero());
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        Form F = random_form(rng, f, 2);
        Form f14 = g2_decompose(F)[1].form;
        CHECK(dt_residual(f14).is_zero());
        Polyform tf(g2_theta());
        tf.add(F);
        CHECK(deformed_dt_residual(F) == exp_trunc(tf, 7).part(6));
    }
}
