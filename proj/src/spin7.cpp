#include "g2fm/spin7.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace g2fm {

namespace {

constexpr int X0 = 0, X1 = 1, X2 = 2, X3 = 3, Y0 = 4, Y1 = 5, Y2 = 6, Y3 = 7;

Form mono(const FramePtr& f, std::vector<int> idx) { return Form::monomial(f, idx); }

Rational max_abs(const Form& f) {
    Rational m = 0;
    for (const auto& [k, v] : f.terms()) m = std::max(m, Rational(abs(v)));
    return m;
}

RMatrix two_form_of(const RMatrix& a) {
    // so(8) element -> coordinates of sum_{i<j} a_ij e^{ij}
    auto masks = basis_masks(8, 2);
    RMatrix v(static_cast<int>(masks.size()), 1);
    for (std::size_t r = 0; r < masks.size(); ++r) {
        auto ij = indices_of(masks[r]);
        v(static_cast<int>(r), 0) = a(ij[0], ij[1]);
    }
    return v;
}

}  // namespace

FramePtr spin7_frame() {
    static const FramePtr f = make_frame("Z", {"x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"});
    return f;
}

Form theta_z(const FramePtr& f) {
    if (f->dim != 8) throw std::invalid_argument("theta_z: frame must be 8-dimensional");
    Form t = -mono(f, {Y0, Y1, Y2, Y3}) - mono(f, {X0, X1, X2, X3});
    t -= wedge(mono(f, {X1, X0}) + mono(f, {X2, X3}), mono(f, {Y1, Y0}) + mono(f, {Y2, Y3}));
    t -= wedge(mono(f, {X2, X0}) + mono(f, {X3, X1}), mono(f, {Y2, Y0}) + mono(f, {Y3, Y1}));
    t -= wedge(mono(f, {X3, X0}) + mono(f, {X1, X2}), mono(f, {Y3, Y0}) + mono(f, {Y1, Y2}));
    return t;
}

const std::vector<RMatrix>& spin7_algebra() {
    static const std::vector<RMatrix> alg = stabilizer_algebra(theta_z());
    return alg;
}

RMatrix spin7_two_form_operator() {
    return hodge_matrix(spin7_frame(), 6) * wedge_matrix(theta_z(), 2);
}

namespace {

std::vector<LabeledProjector> build_s7_projectors(int degree) {
    std::vector<LabeledProjector> out;
    if (degree == 2) {
        const auto& alg = spin7_algebra();
        std::vector<std::vector<Rational>> cols;
        for (const auto& a : alg) cols.push_back(two_form_of(a).column(0));
        RMatrix v21 = independent_columns(RMatrix::from_columns(cols, 28));
        RMatrix v7 = RMatrix::from_columns(nullspace(v21.transpose()), 28);
        out.push_back({"7", v7.cols(), projector_onto(v7)});
        out.push_back({"21", v21.cols(), projector_onto(v21)});
    } else if (degree == 4) {
        for (auto& p : casimir_decomposition(spin7_algebra(), spin7_frame(), 4))
            out.push_back({p.label, p.dim, p.projector});
    } else {
        throw std::invalid_argument("decompose_s7: unsupported degree " + std::to_string(degree));
    }
    return out;
}

}  // namespace

const std::vector<LabeledProjector>& spin7_projectors(int degree) {
    if (degree == 2) {
        static const auto p2 = build_s7_projectors(2);
        return p2;
    }
    if (degree == 4) {
        static const auto p4 = build_s7_projectors(4);
        return p4;
    }
    throw std::invalid_argument("decompose_s7: unsupported degree " + std::to_string(degree));
}

std::vector<LabeledComponent> decompose_s7(const Form& a) {
    if (a.frame()->dim != 8) throw std::invalid_argument("decompose_s7: not an 8-dimensional frame");
    const auto& projs = spin7_projectors(a.degree());
    auto v = to_coords(a);
    std::vector<LabeledComponent> out;
    for (const auto& p : projs) out.push_back({p.label, from_coords(a.frame(), a.degree(), p.projector.apply(v))});
    return out;
}

VectorValuedForm hat_four_form(const Form& phi) {
    if (phi.frame()->dim != 8 || phi.degree() != 4) throw std::invalid_argument("hat_four_form: expected a 4-form in 8d");
    const Form t = theta_z(phi.frame());
    VectorValuedForm out;
    for (int v = 0; v < 8; ++v) out.components.push_back(hodge(wedge(phi, interior(basis_vector<Rational>(8, v), t))));
    return out;
}

Rational quartic_tensor(const Form& phi1, const Form& phi2, const Form& phi3, const Form& phi4) {
    std::array<VectorValuedForm, 4> h{hat_four_form(phi1), hat_four_form(phi2), hat_four_form(phi3), hat_four_form(phi4)};
    const FramePtr& f = phi1.frame();
    const Form t = theta_z(f);
    Form acc(f, 4);
    for (const auto& [m, c] : t.terms()) {
        auto idx = indices_of(m);
        std::array<int, 4> p{idx[0], idx[1], idx[2], idx[3]};
        do {
            Rational s = c * permutation_sign({p[0], p[1], p[2], p[3]});
            acc += s * wedge(wedge(wedge(h[0].components[p[0]], h[1].components[p[1]]), h[2].components[p[2]]),
                             h[3].components[p[3]]);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return integrate_top(wedge(acc, t));
}

CalibrationVerdict calibrate_cayley(const Plane& p) {
    if (p.span.size() != 4) throw std::invalid_argument("calibrate_cayley: need 4 vectors");
    for (const auto& v : p.span)
        if (v.size() != 8) throw std::invalid_argument("calibrate_cayley: vectors must be 8-dimensional");
    Rational g = determinant_small(gram(p.span));
    if (g == 0) throw std::invalid_argument("calibrate_cayley: degenerate spanning set");
    Rational val = evaluate(theta_z(), p.span);
    CalibrationVerdict v;
    v.k = 4;
    v.exact = true;
    v.volume = std::sqrt(g.get_d());
    v.value = val.get_d();
    v.ratio = v.value / v.volume;
    v.cayley = val * val == g;
    v.orientation = v.cayley ? (val > 0 ? 1 : -1) : 0;
    return v;
}

Form deformed_dt8_residual(const Form& f) { return deformed_dt8_residual(f, theta_z(f.frame())); }

ReductionKind parse_reduction(const std::string& name) {
    if (name == "g2-circle") return ReductionKind::G2Circle;
    if (name == "cy4") return ReductionKind::CY4;
    throw std::invalid_argument("unknown reduction: " + name);
}

Form cy4_kahler() {
    const auto f = spin7_frame();
    Form w(f, 2);
    for (int i = 0; i < 4; ++i) w += mono(f, {i, 4 + i});
    return w;
}

Form cy4_re_omega() {
    const auto f = spin7_frame();
    Form re(f, 4);
    for (int s = 0; s < 16; ++s) {
        int k = std::popcount(static_cast<unsigned>(s));
        if (k % 2) continue;
        std::vector<int> idx;
        for (int i = 0; i < 4; ++i) idx.push_back((s >> i) & 1 ? 4 + i : i);
        re += (k % 4 == 0 ? Rational(1) : Rational(-1)) * mono(f, idx);
    }
    return re;
}

Form cy4_candidate() {
    Form w = cy4_kahler();
    return Rational(-1, 2) * wedge(w, w) + cy4_re_omega();
}

ReductionReport reduction_check(ReductionKind kind) {
    ReductionReport r;
    r.kind = kind;
    const auto z = spin7_frame();
    if (kind == ReductionKind::G2Circle) {
        const std::vector<int> map{1, 2, 3, 4, 5, 6, 7};
        Form omega = relabel(g2_omega(), map, z);
        Form theta = relabel(g2_theta(), map, z);
        Form lhs = wedge(omega, mono(z, {X0})) - theta;
        r.mismatch = max_abs(lhs - theta_z(z));
        r.pass = r.mismatch == 0;
    } else {
        Form g = cy4_candidate();
        r.stabilizer_dim = static_cast<int>(stabilizer_algebra(g).size());
        r.self_dual_defect = max_abs(hodge(g) - g);
        r.square_ratio = integrate_top(wedge(g, g)) / z->total_covolume();
        r.pass = r.stabilizer_dim == 21 && r.self_dual_defect == 0 && r.square_ratio == 14;
    }
    return r;
}

HodgeTypeReport hodge_type_bookkeeping() {
    const auto f = spin7_frame();
    RMatrix j(8, 8);
    for (int i = 0; i < 4; ++i) {
        j(4 + i, i) = 1;
        j(i, 4 + i) = -1;
    }
    const Form w = cy4_kahler();
    HodgeTypeReport r;

    RMatrix d4 = action_matrix(j, f, 4);
    RMatrix lw4 = wedge_matrix(w, 4);
    RMatrix shifted = d4 * d4 + Rational(4) * RMatrix::identity(70);
    RMatrix stacked(shifted.rows() + lw4.rows(), 70);
    for (int c = 0; c < 70; ++c) {
        for (int r0 = 0; r0 < shifted.rows(); ++r0) stacked(r0, c) = shifted(r0, c);
        for (int r0 = 0; r0 < lw4.rows(); ++r0) stacked(shifted.rows() + r0, c) = lw4(r0, c);
    }
    auto prim31 = nullspace(stacked);
    r.primitive_31 = static_cast<int>(prim31.size());

    RMatrix d2 = action_matrix(j, f, 2);
    auto wc = to_coords(w);
    RMatrix s2(d2.rows() + 1, 28);
    for (int c = 0; c < 28; ++c) {
        for (int r0 = 0; r0 < d2.rows(); ++r0) s2(r0, c) = d2(r0, c);
        s2(d2.rows(), c) = wc[c];
    }
    RMatrix lw2 = wedge_matrix(w, 2);
    std::vector<std::vector<Rational>> w11;
    for (const auto& v : nullspace(s2)) w11.push_back(lw2.apply(v));
    RMatrix w11m = independent_columns(RMatrix::from_columns(w11, 70));
    r.omega_11 = w11m.cols();

    std::vector<std::vector<Rational>> all = prim31;
    for (int c = 0; c < w11m.cols(); ++c) all.push_back(w11m.column(c));
    RMatrix span = independent_columns(RMatrix::from_columns(all, 70));
    r.span = span.cols();

    auto pieces = casimir_decomposition(stabilizer_algebra(cy4_candidate()), f, 4);
    for (const auto& p : pieces)
        if (p.dim == 35) {
            r.piece_35 = 35;
            r.intersection = intersect_spans(span, p.basis).cols();
        }
    r.match = r.primitive_31 == 20 && r.omega_11 == 15 && r.span == 35 && r.piece_35 == 35 && r.intersection == 35;
    return r;
}

namespace {

FramePtr cayley_fibre_frame() {
    // C = span(d_y0..d_y3) with Theta_Z|_C > 0.
    static const FramePtr f = [] {
        int s = theta_z().coeff({Y0, Y1, Y2, Y3}) > 0 ? 1 : -1;
        return make_frame("C", {"y0", "y1", "y2", "y3"}, s > 0 ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{1, 0, 2, 3});
    }();
    return f;
}

FramePtr cayley_tangent_frame() {
    static const FramePtr f = make_frame("TM", {"a0", "a1", "a2", "a3", "s0", "s1", "s2", "s3"});
    return f;
}

}  // namespace

Quaternion hat_lift(const Form& b) {
    if (b.degree() != 2 || b.frame()->dim != 4) throw std::invalid_argument("hat_lift: expected a 2-form on the fibre");
    const auto& f = b.frame();
    const int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    Quaternion q;
    for (int k = 0; k < 3; ++k) {
        Form s = mono(f, {pairs[k][0], pairs[k][1]}) + mono(f, {pairs[k][2], pairs[k][3]});
        q[k + 1] = Rational(1, 2) * inner(b, s);
    }
    return q;
}

Form cayley_moduli_form() {
    static const Form form = [] {
        const auto c = cayley_fibre_frame();
        const auto cp = make_frame("C+", {"y0", "y1", "y2", "y3"});
        const auto t = cayley_tangent_frame();
        // int_C Theta_Z over the calibrated fibre
        const Rational theta_c = integrate_top(relabel(
            Form::monomial(spin7_frame(), {Y0, Y1, Y2, Y3}, theta_z().coeff({Y0, Y1, Y2, Y3})), {-1, -1, -1, -1, 0, 1, 2, 3}, c));
        auto alpha = [&](const FramePtr& f, int i) { return mono(f, {i}); };
        auto spinor = [](int i) { return Quaternion::unit(i - 4); };
        Form out(t, 4);
        for (Mask m : basis_masks(8, 4)) {
            auto i = indices_of(m);
            Rational v = 0;
            if (i[3] < 4) {
                v = integrate_top(wedge(wedge(wedge(alpha(c, i[0]), alpha(c, i[1])), alpha(c, i[2])), alpha(c, i[3])));
            } else if (i[1] < 4 && i[2] >= 4) {
                Form ab = wedge(alpha(cp, i[0]), alpha(cp, i[1]));
                Quaternion h = hat_lift(ab + hodge(ab));
                v = -dot(spinor(i[2]), h * spinor(i[3])) * theta_c;
            } else if (i[0] >= 4) {
                v = -det4(spinor(i[0]), spinor(i[1]), spinor(i[2]), spinor(i[3])) * theta_c;
            }
            out.add(m, v);
        }
        return out;
    }();
    return form;
}

Rational cayley_moduli_four_form(const std::array<std::vector<Rational>, 4>& tangents) {
    for (const auto& v : tangents)
        if (v.size() != 8) throw std::invalid_argument("cayley_moduli_four_form: tangents live in R^4 + H");
    return evaluate(cayley_moduli_form(), std::vector<std::vector<Rational>>(tangents.begin(), tangents.end()));
}

namespace {

Form covector(const FramePtr& f, const std::vector<Rational>& xi) {
    if (static_cast<int>(xi.size()) != f->dim) throw std::invalid_argument("symbol complex: covector dimension");
    Form x(f, 1);
    for (int i = 0; i < f->dim; ++i) x.add(Mask(1) << i, xi[i]);
    if (x.is_zero()) throw std::invalid_argument("symbol complex: covector must be nonzero");
    return x;
}

void finish(SymbolComplexReport& r, const std::vector<RMatrix>& maps) {
    r.compositions_vanish = true;
    for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
        RMatrix comp = maps[k + 1] * maps[k];
        if (!(comp == RMatrix(comp.rows(), comp.cols()))) r.compositions_vanish = false;
    }
    for (const auto& m : maps) r.ranks.push_back(rank(m));
    r.exact = r.compositions_vanish;
    for (std::size_t i = 0; i < r.dims.size(); ++i) {
        int in = i == 0 ? 0 : r.ranks[i - 1];
        int out = i < r.ranks.size() ? r.ranks[i] : 0;
        if (r.dims[i] != in + out) r.exact = false;
    }
}

}  // namespace

SymbolComplexReport g2_symbol_complex(const std::vector<Rational>& xi) {
    const auto f = g2_frame();
    Form x = covector(f, xi);
    SymbolComplexReport r;
    r.dims = {1, 7, 7, 1};
    std::vector<RMatrix> maps{wedge_matrix(x, 0), wedge_matrix(wedge(x, g2_theta(f)), 1), wedge_matrix(x, 6)};
    finish(r, maps);
    return r;
}

SymbolComplexReport spin7_symbol_complex(const std::vector<Rational>& xi) {
    const auto f = spin7_frame();
    Form x = covector(f, xi);
    const RMatrix* p7 = nullptr;
    for (const auto& p : spin7_projectors(2))
        if (p.label == "7") p7 = &p.projector;
    SymbolComplexReport r;
    r.dims = {1, 8, 7};
    std::vector<RMatrix> maps{wedge_matrix(x, 0), *p7 * wedge_matrix(x, 1)};
    finish(r, maps);
    return r;
}

FourManifoldInvariants lookup_four_manifold(const std::string& name) {
    if (name == "T4") return {"T4", 0, 0};
    if (name == "K3") return {"K3", -16, 24};
    throw std::invalid_argument("lookup_four_manifold: unknown manifold " + name);
}

int hitchin_defect(const FourManifoldInvariants& m) { return 3 * m.signature + 2 * m.euler; }

}  // namespace g2fm
