#include "g2fm/moduli.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>

namespace g2fm {

namespace {

void require_g2_layout(const Form& f, int degree, const char* what) {
    if (f.frame()->dim != 7) throw std::invalid_argument(std::string(what) + ": not a 7-dimensional frame");
    if (f.degree() != degree)
        throw std::invalid_argument(std::string(what) + ": expected degree " + std::to_string(degree) + ", got " +
                                    std::to_string(f.degree()));
}

bool lies_in(const Form& a, const std::string& label) {
    for (const auto& p : g2_projectors(a.degree()))
        if (p.label == label) {
            auto v = to_coords(a);
            return p.projector.apply(v) == v;
        }
    return false;
}

}  // namespace

VectorValuedForm hat_three_form(const Form& phi) {
    require_g2_layout(phi, 3, "hat_three_form");
    const Form theta = g2_theta(phi.frame());
    VectorValuedForm out;
    for (int v = 0; v < 7; ++v)
        out.components.push_back(hodge(wedge(phi, interior(basis_vector<Rational>(7, v), theta))));
    return out;
}

VectorValuedForm hat_two_form(const Form& beta) {
    require_g2_layout(beta, 2, "hat_two_form");
    const Form theta = g2_theta(beta.frame());
    VectorValuedForm out;
    for (int v = 0; v < 7; ++v) {
        Form chi_v = interior(basis_vector<Rational>(7, v), theta);
        Form acc(beta.frame(), 1);
        for (const auto& [m, c] : beta.terms()) {
            auto ij = indices_of(m);
            acc += c * interior(basis_vector<Rational>(7, ij[1]), interior(basis_vector<Rational>(7, ij[0]), chi_v));
        }
        out.components.push_back(acc);
    }
    return out;
}

Rational omega_pairing(const VectorValuedForm& u1, const VectorValuedForm& u2, const VectorValuedForm& u3) {
    if (u1.components.size() != 7 || u2.components.size() != 7 || u3.components.size() != 7)
        throw std::invalid_argument("omega_pairing: expected 7 components");
    const FramePtr& f = u1.components[0].frame();
    const Form omega = g2_omega(f);
    const Form theta = g2_theta(f);
    int deg = u1.components[0].degree() + u2.components[0].degree() + u3.components[0].degree();
    Form acc(f, deg);
    for (const auto& [m, c] : omega.terms()) {
        auto idx = indices_of(m);
        std::array<int, 3> p{idx[0], idx[1], idx[2]};
        do {
            Rational s = c * permutation_sign({p[0], p[1], p[2]});
            acc += s * wedge(wedge(u1.components[p[0]], u2.components[p[1]]), u3.components[p[2]]);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    Form top = wedge(acc, theta);
    if (top.degree() != 7) return 0;
    return integrate_top(top);
}

Rational cubic_tensor(const Form& phi1, const Form& phi2, const Form& phi3) {
    for (const Form* p : {&phi1, &phi2, &phi3}) require_g2_layout(*p, 3, "cubic_tensor");
    return omega_pairing(hat_three_form(phi1), hat_three_form(phi2), hat_three_form(phi3));
}

YukawaValues yukawa_suite(const Form& phi) {
    require_g2_layout(phi, 3, "yukawa_suite");
    if (!lies_in(phi, "27")) throw std::invalid_argument("yukawa_suite: input is not in Lambda^3_27");
    const Form omega = g2_omega(phi.frame());
    YukawaValues out;
    auto ph = hat_three_form(phi);
    auto oh = hat_three_form(omega);
    out.y = omega_pairing(ph, ph, ph);
    out.g = omega_pairing(ph, ph, oh);
    out.f = omega_pairing(oh, oh, oh);
    out.norm = integrate_top(wedge(phi, hodge(phi)));
    if (out.norm != 0) {
        out.has_ratio = true;
        out.ratio = out.g / out.norm;
    }
    return out;
}

Rational q_pairing(const Form& beta1, const Form& beta2) {
    require_g2_layout(beta1, 2, "q_pairing");
    require_g2_layout(beta2, 2, "q_pairing");
    return integrate_top(wedge(wedge(beta1, beta2), g2_omega(beta1.frame())));
}

Rational c_prime(const Form& beta1, const Form& beta2, const Form& beta3) {
    return omega_pairing(hat_two_form(beta1), hat_two_form(beta2), hat_two_form(beta3));
}

BFieldCouplings bfield_couplings(const Form& beta1, const Form& beta2, const Form& beta3) {
    return {q_pairing(beta1, beta2), c_prime(beta1, beta2, beta3)};
}

std::string degree_signature(const std::vector<Form>& args) {
    std::vector<int> d;
    for (const auto& a : args) d.push_back(a.degree());
    std::sort(d.begin(), d.end());
    std::string s;
    for (int x : d) s += std::to_string(x);
    return s;
}

Rational enlarged_yukawa(const std::vector<Form>& args, const EnlargedWeights& weights) {
    if (args.size() != 3) throw std::invalid_argument("enlarged_yukawa: exactly three arguments required");
    std::vector<Form> a = args;
    std::stable_sort(a.begin(), a.end(), [](const Form& x, const Form& y) { return x.degree() < y.degree(); });
    for (const auto& f : a) {
        if (f.frame()->dim != 7) throw std::invalid_argument("enlarged_yukawa: not a 7-dimensional frame");
        if (f.degree() == 3 && !lies_in(f, "27")) throw std::invalid_argument("enlarged_yukawa: 3-form not in H^3_27");
        if (f.degree() == 2 && !lies_in(f, "14")) throw std::invalid_argument("enlarged_yukawa: 2-form not in H^2_14");
        if (f.degree() != 0 && f.degree() != 2 && f.degree() != 3)
            throw std::invalid_argument("enlarged_yukawa: unsupported degree " + std::to_string(f.degree()));
    }
    const std::string sig = degree_signature(a);
    Rational w = 1;
    if (auto it = weights.find(sig); it != weights.end()) w = it->second;
    auto scalar = [](const Form& f) { return f.coeff(Mask(0)); };
    const Form theta = g2_theta(a[0].frame());
    Rational v;
    if (sig == "333") {
        v = cubic_tensor(a[0], a[1], a[2]);
    } else if (sig == "223") {
        v = integrate_top(wedge(wedge(a[0], a[1]), a[2]));
    } else if (sig == "222") {
        v = c_prime(a[0], a[1], a[2]);
    } else if (sig == "033") {
        v = scalar(a[0]) * integrate_top(wedge(a[1], hodge(a[2])));
    } else if (sig == "022") {
        v = scalar(a[0]) * q_pairing(a[1], a[2]);
    } else if (sig == "003") {
        v = scalar(a[0]) * scalar(a[1]) * integrate_top(wedge(a[2], theta));
    } else if (sig == "000") {
        v = scalar(a[0]) * scalar(a[1]) * scalar(a[2]) * a[0].frame()->total_covolume();
    } else {
        throw std::invalid_argument("enlarged_yukawa: unsupported degree signature " + sig);
    }
    return w * v;
}

FlatModel parse_flat_model(const std::string& name) {
    if (name == "bdl-T7") return FlatModel::BdlT7;
    if (name == "ass-T3xT4") return FlatModel::AssT3T4;
    if (name == "coa-T3xT4") return FlatModel::CoaT3T4;
    throw std::invalid_argument("unknown flat model: " + name);
}

std::string to_string(FlatModel m) {
    switch (m) {
        case FlatModel::BdlT7: return "bdl-T7";
        case FlatModel::AssT3T4: return "ass-T3xT4";
        case FlatModel::CoaT3T4: return "coa-T3xT4";
    }
    return "?";
}

FormComparison compare_forms(const Form& computed, const Form& expected) {
    FormComparison c{computed, expected, 0, 0, false};
    Rational ee = inner(expected, expected);
    if (ee == 0) throw std::invalid_argument("compare_forms: expected form is zero");
    c.scale = inner(computed, expected) / ee;
    Form diff = computed - c.scale * expected;
    for (const auto& [m, v] : diff.terms()) c.residual = std::max(c.residual, Rational(abs(v)));
    c.match = c.residual == 0 && c.scale > 0;
    return c;
}

Quaternion clifford(int i, const Quaternion& q, const SpinorConventions& c) {
    Quaternion u = Quaternion::unit(i + 1);
    return c.left ? u * q : q * u;
}

Form so4_bracket(const Form& a, const Form& b, int sign) {
    if (a.degree() != 2 || b.degree() != 2 || a.frame()->dim != 4) throw std::invalid_argument("so4_bracket: 2-forms on R^4");
    RMatrix ma(4, 4), mb(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
            if (r == s) continue;
            ma(r, s) = a.coeff({r, s});
            mb(r, s) = b.coeff({r, s});
        }
    RMatrix m = commutator(ma, mb);
    Form out(a.frame(), 2);
    for (int r = 0; r < 4; ++r)
        for (int s = r + 1; s < 4; ++s) out.add(mask_of({r, s}), sign * m(r, s));
    return out;
}

namespace {

// Coassociative fibre C = span(d_y0..d_y3), oriented by Theta|_C.
FramePtr coa_fibre_frame() {
    static const FramePtr f = [] {
        int s = g2_theta().coeff({3, 4, 5, 6}) > 0 ? 1 : -1;
        return make_frame("C", {"y0", "y1", "y2", "y3"}, s > 0 ? std::vector<int>{0, 1, 2, 3} : std::vector<int>{1, 0, 2, 3});
    }();
    return f;
}

// Associative fibre A = span(d_x1, d_x2, d_x3), oriented by Omega|_A.
FramePtr ass_fibre_frame() {
    static const FramePtr f = [] {
        int s = g2_omega().coeff({0, 1, 2}) > 0 ? 1 : -1;
        return make_frame("A", {"x1", "x2", "x3"}, s > 0 ? std::vector<int>{0, 1, 2} : std::vector<int>{1, 0, 2});
    }();
    return f;
}

Form restrict_to_fibre(const Form& f, int first, const FramePtr& fibre) {
    Form out(fibre, f.degree());
    const int n = fibre->dim;
    for (const auto& [m, c] : f.terms()) {
        auto idx = indices_of(m);
        bool inside = std::all_of(idx.begin(), idx.end(), [&](int i) { return i >= first && i < first + n; });
        if (inside) out.add(m >> first, c);
    }
    return out;
}

Form one_form(const FramePtr& f, int i) { return Form::monomial(f, {i}); }

using Evaluator3 = std::function<Rational(int, int, int)>;
using Evaluator4 = std::function<Rational(int, int, int, int)>;

Form assemble3(const FramePtr& f, const Evaluator3& ev) {
    Form out(f, 3);
    for (Mask m : basis_masks(7, 3)) {
        auto i = indices_of(m);
        out.add(m, ev(i[0], i[1], i[2]));
    }
    return out;
}

Form assemble4(const FramePtr& f, const Evaluator4& ev) {
    Form out(f, 4);
    for (Mask m : basis_masks(7, 4)) {
        auto i = indices_of(m);
        out.add(m, ev(i[0], i[1], i[2], i[3]));
    }
    return out;
}

FlatModuliReport bdl_model() {
    FlatModuliReport r;
    r.model = FlatModel::BdlT7;
    const FramePtr t = g2_frame();
    r.moduli = make_g2_frame("T7*", {"x_1", "x_2", "x_3", "y_0", "y_1", "y_2", "y_3"});
    Polyform e = exp_trunc(Polyform(g2_theta(t)), 7);  // F = 0 for the flat connections
    Polyform se = hodge(e);
    auto top = [&](const Form& a, const Polyform& weight) {
        return integrate_top(wedge(Polyform(a), weight).part(7));
    };
    Form omega = assemble3(r.moduli, [&](int a, int b, int c) {
        return top(wedge(wedge(one_form(t, a), one_form(t, b)), one_form(t, c)), e);
    });
    Form theta = assemble4(r.moduli, [&](int a, int b, int c, int d) {
        return top(wedge(wedge(wedge(one_form(t, a), one_form(t, b)), one_form(t, c)), one_form(t, d)), se);
    });
    r.omega = compare_forms(omega, g2_omega(r.moduli));
    r.theta = compare_forms(theta, g2_theta(r.moduli));
    r.conventions["tangent"] = "constant 1-forms e^a on T^7 -> d/d xi_a on T^7*";
    r.conventions["weight"] = "e^{Theta+F}, *e^{Theta+F} with F = 0";
    r.conventions_tried = 1;
    return r;
}

// Indices 0..2: alpha = dx^1..dx^3 in H^1(A); indices 3..6: phi = 1, i, j, k in Ker D.
FlatModuliReport ass_model_with(const SpinorConventions& sc) {
    FlatModuliReport r;
    r.model = FlatModel::AssT3T4;
    r.moduli = make_g2_frame("T3*xT4", {"x_1", "x_2", "x_3", "y0", "y1", "y2", "y3"});
    const FramePtr a = ass_fibre_frame();
    const Rational vol_a = integrate_top(Form::monomial(a, {0, 1, 2}));
    auto spinor = [&](int idx) {
        Quaternion q = Quaternion::unit(idx - 3);
        return sc.conjugate ? q.conj() : q;
    };
    Form omega = assemble3(r.moduli, [&](int p, int q, int s) -> Rational {
        if (s < 3) return integrate_top(wedge(wedge(one_form(a, p), one_form(a, q)), one_form(a, s)));
        if (p < 3 && q >= 3) return -dot(clifford(p, spinor(q), sc), spinor(s)) * vol_a;
        return 0;
    });
    Form theta = assemble4(r.moduli, [&](int p, int q, int s, int t) -> Rational {
        if (p >= 3) return sc.det_sign * det4(Quaternion::unit(p - 3), Quaternion::unit(q - 3), Quaternion::unit(s - 3),
                                              Quaternion::unit(t - 3)) * vol_a;
        if (q < 3 && s >= 3) {
            Form star = hodge(wedge(one_form(a, p), one_form(a, q)));
            int k = indices_of(star.terms().begin()->first)[0];
            Rational eps = star.terms().begin()->second * sc.star_sign;
            return eps * dot(spinor(s), clifford(k, spinor(t), sc)) * vol_a;
        }
        return 0;
    });
    r.omega = compare_forms(omega, g2_omega(r.moduli));
    r.theta = compare_forms(theta, g2_theta(r.moduli));
    r.conventions["clifford"] = sc.left ? "left" : "right";
    r.conventions["bar"] = sc.conjugate ? "conjugate" : "identity";
    r.conventions["star_A"] = sc.star_sign > 0 ? "fibre orientation" : "reversed";
    r.conventions["det"] = sc.det_sign > 0 ? "+" : "-";
    return r;
}

FlatModuliReport ass_model() {
    std::vector<SpinorConventions> order;
    for (bool left : {true, false})
        for (bool conj : {true, false})
            for (int star : {1, -1})
                for (int det : {1, -1}) order.push_back({left, conj, star, det});
    int tried = 0;
    std::optional<FlatModuliReport> omega_only;
    for (const auto& sc : order) {
        ++tried;
        auto r = ass_model_with(sc);
        r.conventions_tried = tried;
        if (r.omega.match && r.theta.match) return r;
        if (r.omega.match && !omega_only) omega_only = r;
    }
    if (omega_only) return *omega_only;
    auto r = ass_model_with(order.front());
    r.conventions_tried = tried;
    return r;
}

// Indices 0..2: phi_1..phi_3 in H^2_+(C); indices 3..6: alpha = dy^0..dy^3 in H^1(C).
FlatModuliReport coa_model_with(const CoaConventions& cc) {
    FlatModuliReport r;
    r.model = FlatModel::CoaT3T4;
    r.moduli = make_g2_frame("T3xT4*", {"x1", "x2", "x3", "y_0", "y_1", "y_2", "y_3"});
    const FramePtr c = coa_fibre_frame();
    auto phi = coa_generators(cc);
    auto alpha = [&](int idx) { return one_form(c, idx - 3); };
    Form omega = assemble3(r.moduli, [&](int p, int q, int s) -> Rational {
        if (s < 3) return integrate_top(wedge(so4_bracket(phi[p], phi[q], cc.bracket_sign), phi[s]));
        if (p < 3 && q >= 3) return -integrate_top(wedge(wedge(phi[p], alpha(q)), alpha(s)));
        return 0;
    });
    Form theta = assemble4(r.moduli, [&](int p, int q, int s, int t) -> Rational {
        if (p >= 3) return -integrate_top(wedge(wedge(wedge(alpha(p), alpha(q)), alpha(s)), alpha(t)));
        if (q < 3 && s >= 3)
            return integrate_top(wedge(wedge(so4_bracket(phi[p], phi[q], cc.bracket_sign), alpha(s)), alpha(t)));
        return 0;
    });
    r.omega = compare_forms(omega, g2_omega(r.moduli));
    r.theta = compare_forms(theta, g2_theta(r.moduli));
    r.conventions["H2+ basis"] = cc.iota_basis ? "iota_{d_x^i} Omega |_C" : "dy01+dy23, dy02+dy31, dy03+dy12";
    r.conventions["lambda"] = to_string(cc.lambda);
    r.conventions["bracket"] = cc.bracket_sign > 0 ? "[A,B]" : "-[A,B]";
    return r;
}

FlatModuliReport coa_model() {
    std::vector<CoaConventions> order;
    for (bool iota : {false, true})
        for (Rational lambda : {Rational(1), Rational(1, 2), Rational(2)})
            for (int sign : {1, -1}) order.push_back({iota, lambda, sign});
    int tried = 0;
    std::optional<FlatModuliReport> omega_only;
    for (const auto& cc : order) {
        ++tried;
        auto r = coa_model_with(cc);
        r.conventions_tried = tried;
        if (r.omega.match && r.theta.match) return r;
        if (r.omega.match && !omega_only) omega_only = r;
    }
    if (omega_only) return *omega_only;
    auto r = coa_model_with(order.front());
    r.conventions_tried = tried;
    return r;
}

}  // namespace

std::vector<Form> coa_generators(const CoaConventions& cc) {
    const FramePtr c = coa_fibre_frame();
    std::vector<Form> out;
    if (cc.iota_basis) {
        const Form omega = g2_omega();
        for (int i = 0; i < 3; ++i) out.push_back(cc.lambda * restrict_to_fibre(interior(basis_vector<Rational>(7, i), omega), 3, c));
    } else {
        const int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
        for (const auto& p : pairs)
            out.push_back(cc.lambda * (Form::monomial(c, {p[0], p[1]}) + Form::monomial(c, {p[2], p[3]})));
    }
    return out;
}

FlatModuliReport flat_moduli_forms(FlatModel model) {
    switch (model) {
        case FlatModel::BdlT7: return bdl_model();
        case FlatModel::AssT3T4: return ass_model();
        case FlatModel::CoaT3T4: return coa_model();
    }
    throw std::invalid_argument("flat_moduli_forms: unknown model");
}

CycleKind parse_cycle_kind(const std::string& name) {
    if (name == "ass") return CycleKind::Ass;
    if (name == "coa") return CycleKind::Coa;
    if (name == "bdl") return CycleKind::Bdl;
    throw std::invalid_argument("unknown cycle kind: " + name);
}

namespace {

using SquareMatrix = std::vector<std::vector<Rational>>;

SquareMatrix mat_mul(const SquareMatrix& a, const SquareMatrix& b) {
    std::size_t n = a.size();
    SquareMatrix m(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) m[i][j] += a[i][k] * b[k][j];
    return m;
}

Rational trace_x_bracket(const SquareMatrix& x, const SquareMatrix& y, const SquareMatrix& z) {
    SquareMatrix yz = mat_mul(y, z), zy = mat_mul(z, y);
    Rational t = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = 0; k < x.size(); ++k) t += x[i][k] * (yz[k][i] - zy[k][i]);
    return t;
}

}  // namespace

Rational cycle_moduli_cubic(CycleKind kind, const std::vector<AdForm>& args) {
    if (args.size() != 3) throw std::invalid_argument("cycle_moduli_cubic: three arguments required");
    std::size_t n = args[0].generator.size();
    for (const auto& a : args) {
        if (a.generator.size() != n) throw std::invalid_argument("cycle_moduli_cubic: generator size mismatch");
        for (const auto& row : a.generator)
            if (row.size() != n) throw std::invalid_argument("cycle_moduli_cubic: generator not square");
    }
    if (n != 1) throw std::invalid_argument("cycle_moduli_cubic: non-abelian gauge data is out of scope");
    Rational integral;
    switch (kind) {
        case CycleKind::Ass: {
            for (const auto& a : args)
                if (a.form.degree() != 1 || a.form.frame()->dim != 3)
                    throw std::invalid_argument("cycle_moduli_cubic(ass): 1-forms on a 3-dimensional cycle");
            Form top = wedge(wedge(args[0].form, args[1].form), args[2].form);
            integral = integrate_top(top);
            // [alpha, beta] pairs X and Y; the cubic is tr([X,Y] Z) = tr(Z [X,Y]).
            return trace_x_bracket(args[2].generator, args[0].generator, args[1].generator) * integral;
        }
        case CycleKind::Coa: {
            if (args[0].form.degree() != 2 || args[1].form.degree() != 1 || args[2].form.degree() != 1 ||
                args[0].form.frame()->dim != 4)
                throw std::invalid_argument("cycle_moduli_cubic(coa): (2-form, 1-form, 1-form) on a 4-dimensional cycle");
            integral = integrate_top(wedge(wedge(args[0].form, args[1].form), args[2].form));
            break;
        }
        case CycleKind::Bdl: {
            for (const auto& a : args)
                if (a.form.degree() != 1 || a.form.frame()->dim != 7)
                    throw std::invalid_argument("cycle_moduli_cubic(bdl): 1-forms on a 7-manifold");
            Form top = wedge(wedge(wedge(args[0].form, args[1].form), args[2].form), g2_theta(args[0].form.frame()));
            integral = integrate_top(top);
            break;
        }
    }
    return trace_x_bracket(args[0].generator, args[1].generator, args[2].generator) * integral;
}

Poly abelian_bracket_expansion() {
    Poly x = Poly::var(3, 0), y = Poly::var(3, 1), z = Poly::var(3, 2);
    return x * (y * z - z * y);
}

}  // namespace g2fm
