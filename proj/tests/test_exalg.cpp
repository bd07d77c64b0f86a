#include "doctest.h"

#include "g2fm/exalg.hpp"
#include "g2fm/g2core.hpp"
#include "test_util.hpp"

using namespace g2fm;

TEST_CASE("wedge basics") {
    auto f = g2_frame();
    Form a = Form::monomial(f, {0});
    Form b = Form::monomial(f, {1});
    CHECK(wedge(a, b) == Form::monomial(f, {0, 1}));
    Form y0 = Form::monomial(f, {3});
    CHECK((wedge(a, y0) + wedge(y0, a)).is_zero());
    CHECK(wedge(g2_omega(), g2_theta()) == Rational(7) * Form::volume(f));
}

TEST_CASE("wedge graded commutativity on basis monomials") {
    auto f = make_frame("r5", {"a", "b", "c", "d", "e"});
    for (int p = 0; p <= 5; ++p)
        for (int q = 0; p + q <= 5; ++q)
            for (Mask ma : basis_masks(5, p))
                for (Mask mb : basis_masks(5, q)) {
                    Form a(f, p), b(f, q);
                    a.add(ma, 1);
                    b.add(mb, 1);
                    Rational s = ((p * q) % 2) ? -1 : 1;
                    CHECK(wedge(a, b) == s * wedge(b, a));
                }
}

TEST_CASE("wedge associativity on random forms") {
    std::mt19937_64 rng(11);
    auto f = g2_frame();
    for (int t = 0; t < 50; ++t) {
        Form a = random_form(rng, f, 1), b = random_form(rng, f, 2), c = random_form(rng, f, 2);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("hodge examples and involution sign") {
    auto f = g2_frame();
    CHECK(hodge(Form::scalar(f, 1)) == Form::volume(f));
    CHECK(hodge(Form::monomial(f, {0, 1, 2})) == Form::monomial(f, {3, 4, 5, 6}));
    CHECK(hodge(g2_omega()) == g2_theta());
    std::mt19937_64 rng(5);
    for (int dim : {4, 7, 8}) {
        std::vector<std::string> labels;
        for (int i = 0; i < dim; ++i) labels.push_back("u" + std::to_string(i));
        std::vector<int> orient;
        for (int i = dim - 1; i >= 0; --i) orient.push_back(i);
        auto fr = make_frame("h", labels, orient);
        for (int k = 0; k <= dim; ++k)
            for (int t = 0; t < 1000 / (dim + 1); ++t) {
                Form a = random_form(rng, fr, k);
                Rational s = ((k * (dim - k)) % 2) ? -1 : 1;
                CHECK(hodge(hodge(a)) == s * a);
            }
    }
}

TEST_CASE("hodge pairing convention alpha ^ *beta = <alpha,beta> vol") {
    std::mt19937_64 rng(7);
    auto f = g2_frame();
    for (int k = 0; k <= 7; ++k)
        for (int t = 0; t < 40; ++t) {
            Form a = random_form(rng, f, k), b = random_form(rng, f, k);
            CHECK(wedge(a, hodge(b)) == inner(a, b) * Form::volume(f));
        }
}

TEST_CASE("interior product") {
    auto f = g2_frame();
    auto e = [](int i) { return basis_vector<Rational>(7, i); };
    CHECK(interior(e(0), Form::monomial(f, {0, 1})) == Form::monomial(f, {1}));
    Form expect = Form::monomial(f, {4, 5, 6}) - Form::monomial(f, {1, 2, 4}) - Form::monomial(f, {2, 0, 5}) -
                  Form::monomial(f, {0, 1, 6});
    CHECK(interior(e(3), g2_theta()) == expect);
    CHECK(interior(std::vector<Rational>(7, 0), g2_theta()).is_zero());
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        auto v = random_vector(rng, 7);
        Form a = random_form(rng, f, 3);
        CHECK(interior(v, interior(v, a)).is_zero());
        // adjoint of exterior multiplication by v-flat
        Form b = random_form(rng, f, 2);
        Form vflat(f, 1);
        for (int i = 0; i < 7; ++i) vflat.add(Mask(1) << i, v[i]);
        CHECK(inner(interior(v, a), b) == inner(a, wedge(vflat, b)));
        // antiderivation
        Form c = random_form(rng, f, 1);
        CHECK(interior(v, wedge(c, b)) == wedge(interior(v, c), b) - wedge(c, interior(v, b)));
    }
}

TEST_CASE("evaluate") {
    auto f = g2_frame();
    auto e = [](int i) { return basis_vector<Rational>(7, i); };
    CHECK(evaluate(Form::monomial(f, {0, 1, 2}), {e(0), e(1), e(2)}) == 1);
    CHECK(evaluate(g2_omega(), {e(0), e(4), e(3)}) == -1);
    CHECK(evaluate(g2_omega(), {e(0), e(3), e(4)}) == 1);
    CHECK_THROWS(evaluate(g2_omega(), {e(0), e(1)}));
}

TEST_CASE("exp_trunc") {
    auto f = g2_frame();
    Polyform zero(f);
    auto one = exp_trunc(Polyform(Form::monomial(f, {0, 1}, Rational(0)) + Form(f, 2)), 7);
    (void)zero;
    CHECK(one.part(0) == Form::scalar(f, 1));
    std::mt19937_64 rng(9);
    Form F = random_form(rng, f, 2);
    auto e = exp_trunc(Polyform(F), 7);
    CHECK(e.part(6) == Rational(1, 6) * wedge(wedge(F, F), F));
    Polyform tf(g2_theta());
    tf.add(F);
    auto e2 = exp_trunc(tf, 7);
    CHECK(e2.part(6) == wedge(g2_theta(), F) + Rational(1, 6) * wedge(wedge(F, F), F));
    CHECK_THROWS(exp_trunc(Polyform(g2_omega()), 7));
}

TEST_CASE("fiber integration") {
    auto m = make_frame("m", {"x1", "y0", "y1", "y2", "y3"});
    auto b = make_frame("b", {"x1"});
    std::vector<int> fiber{1, 2, 3, 4};
    std::vector<int> base_map{0, -1, -1, -1, -1};
    CHECK(fiber_integrate(Form::monomial(m, {1, 2, 3, 4}), fiber, base_map, b) == Form::scalar(b, 1));
    CHECK(fiber_integrate(Form::monomial(m, {0, 1, 2, 3, 4}), fiber, base_map, b) == Form::monomial(b, {0}));
    CHECK(fiber_integrate(Form::monomial(m, {0, 1, 2}), fiber, base_map, b).is_zero());
    // projection formula with base form on the left
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        Form a = random_form(rng, m, 4);
        Form beta = Form::monomial(m, {0}, random_rational(rng));
        Form lhs = fiber_integrate(wedge(beta, a), fiber, base_map, b);
        Form rhs = wedge(Form::monomial(b, {0}, beta.coeff(Mask(1))), fiber_integrate(a, fiber, base_map, b));
        CHECK(lhs == rhs);
    }
    auto scaled = make_frame("ms", {"x1", "y0", "y1", "y2", "y3"}, {}, {1, 2, 3, 1, Rational(1, 2)});
    CHECK(fiber_integrate(Form::monomial(scaled, {1, 2, 3, 4}), fiber, base_map, b) == Form::scalar(b, 3));
}

TEST_CASE("frame validation") {
    CHECK_THROWS(make_frame("bad", {"a", "a"}));
    CHECK_THROWS(make_frame("bad", {"a", "b"}, {0, 0}));
    CHECK_THROWS(make_frame("bad", {"a", "b"}, {}, {1, 0}));
    auto f1 = make_frame("p", {"a", "b"});
    auto f2 = make_frame("q", {"c", "d"});
    CHECK_THROWS(wedge(Form::monomial(f1, {0}), Form::monomial(f2, {1})));
}
