#include "g2fm/g2core.hpp"

#include "g2fm/rep.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace g2fm {

namespace {

constexpr int X1 = 0, X2 = 1, X3 = 2, Y0 = 3, Y1 = 4, Y2 = 5, Y3 = 6;

Form mono(const FramePtr& f, std::vector<int> idx, int c) { return Form::monomial(f, idx, Rational(c)); }

}  // namespace

FramePtr make_g2_frame(const std::string& name, const std::vector<std::string>& labels,
                       std::vector<Rational> covolume) {
    if (labels.size() != 7) throw std::invalid_argument("G2 frame needs 7 labels");
    return make_frame(name, labels, {}, std::move(covolume));
}

FramePtr g2_frame() {
    static const FramePtr f = make_g2_frame("g2", {"x1", "x2", "x3", "y0", "y1", "y2", "y3"});
    return f;
}

Form g2_omega(const FramePtr& f) {
    if (f->dim != 7) throw std::invalid_argument("g2_omega: frame must be 7-dimensional");
    Form o = mono(f, {X1, X2, X3}, 1);
    o -= mono(f, {X1, Y2, Y3}, 1) + mono(f, {X1, Y1, Y0}, 1);
    o -= mono(f, {X2, Y3, Y1}, 1) + mono(f, {X2, Y2, Y0}, 1);
    o -= mono(f, {X3, Y1, Y2}, 1) + mono(f, {X3, Y3, Y0}, 1);
    return o;
}

Form g2_theta(const FramePtr& f) {
    if (f->dim != 7) throw std::invalid_argument("g2_theta: frame must be 7-dimensional");
    Form t = mono(f, {Y0, Y1, Y2, Y3}, 1);
    t += mono(f, {X2, X3, Y2, Y3}, 1) + mono(f, {X2, X3, Y1, Y0}, 1);
    t += mono(f, {X3, X1, Y3, Y1}, 1) + mono(f, {X3, X1, Y2, Y0}, 1);
    t += mono(f, {X1, X2, Y1, Y2}, 1) + mono(f, {X1, X2, Y3, Y0}, 1);
    return t;
}

std::vector<Rational> cross(const std::vector<Rational>& u, const std::vector<Rational>& v) {
    static const Form omega = g2_omega();
    return cross(omega, u, v);
}

VectorValuedForm chi(const Form& theta) {
    VectorValuedForm out;
    int n = theta.frame()->dim;
    for (int v = 0; v < n; ++v) out.components.push_back(interior(basis_vector<Rational>(n, v), theta));
    return out;
}

RMatrix g2_two_form_operator(const Form& omega) {
    return hodge_matrix(omega.frame(), 5) * wedge_matrix(omega, 2);
}

namespace {

std::vector<LabeledProjector> build_projectors(int degree) {
    const auto f = g2_frame();
    const Form omega = g2_omega(f);
    const Form theta = g2_theta(f);
    std::vector<LabeledProjector> out;
    if (degree == 0) {
        out.push_back({"1", 1, RMatrix::identity(1)});
    } else if (degree == 1) {
        out.push_back({"7", 7, RMatrix::identity(7)});
    } else if (degree == 2) {
        RMatrix t = g2_two_form_operator(omega);
        RMatrix id = RMatrix::identity(21);
        // Eigenvalues are -2 on Lambda^2_7 and +1 on Lambda^2_14 with these sign conventions.
        out.push_back({"7", 7, Rational(1, 3) * (id - t)});
        out.push_back({"14", 14, Rational(1, 3) * (t + Rational(2) * id)});
    } else if (degree == 3) {
        RMatrix v1 = RMatrix::from_columns({to_coords(omega)}, 35);
        std::vector<std::vector<Rational>> cols7;
        for (const auto& c : chi(theta).components) cols7.push_back(to_coords(c));
        RMatrix v7 = independent_columns(RMatrix::from_columns(cols7, 35));
        RMatrix wo = wedge_matrix(omega, 3);
        RMatrix wt = wedge_matrix(theta, 3);
        RMatrix stacked(wo.rows() + wt.rows(), 35);
        for (int c = 0; c < 35; ++c) {
            for (int r = 0; r < wo.rows(); ++r) stacked(r, c) = wo(r, c);
            for (int r = 0; r < wt.rows(); ++r) stacked(wo.rows() + r, c) = wt(r, c);
        }
        RMatrix v27 = RMatrix::from_columns(nullspace(stacked), 35);
        out.push_back({"1", v1.cols(), projector_onto(v1)});
        out.push_back({"7", v7.cols(), projector_onto(v7)});
        out.push_back({"27", v27.cols(), projector_onto(v27)});
    } else {
        throw std::invalid_argument("g2_decompose: unsupported degree " + std::to_string(degree));
    }
    return out;
}

}  // namespace

const std::vector<LabeledProjector>& g2_projectors(int degree) {
    static std::mutex mu;
    static std::vector<std::vector<LabeledProjector>> cache(4);
    static std::vector<bool> ready(4, false);
    if (degree < 0 || degree > 3) throw std::invalid_argument("g2_decompose: unsupported degree " + std::to_string(degree));
    std::lock_guard<std::mutex> lock(mu);
    if (!ready[degree]) {
        cache[degree] = build_projectors(degree);
        ready[degree] = true;
    }
    return cache[degree];
}

std::vector<LabeledComponent> g2_decompose(const Form& a) {
    if (a.frame()->dim != 7) throw std::invalid_argument("g2_decompose: not a 7-dimensional frame");
    const auto& projs = g2_projectors(a.degree());
    auto v = to_coords(a);
    std::vector<LabeledComponent> out;
    for (const auto& p : projs) out.push_back({p.label, from_coords(a.frame(), a.degree(), p.projector.apply(v))});
    return out;
}

namespace {

template <class T>
T gram_det(const std::vector<std::vector<T>>& span) {
    return determinant_small(gram(span));
}

}  // namespace

CalibrationVerdict calibrate_plane(const Plane& p, const Form& omega, const Form& theta) {
    int k = static_cast<int>(p.span.size());
    if (k != 3 && k != 4) throw std::invalid_argument("calibrate_plane: need 3 or 4 vectors");
    Rational g = gram_det(p.span);
    if (g == 0) throw std::invalid_argument("calibrate_plane: degenerate spanning set");
    CalibrationVerdict v;
    v.k = k;
    v.exact = true;
    v.volume = std::sqrt(g.get_d());
    if (k == 3) {
        Rational val = evaluate(omega, p.span);
        Rational chi2(0);
        for (const auto& c : chi(theta).components) {
            Rational x = evaluate(c, p.span);
            chi2 += x * x;
        }
        v.value = val.get_d();
        v.ratio = v.value / v.volume;
        v.chi_norm = std::sqrt(chi2.get_d());
        v.associative = chi2 == 0;
        if (v.associative && val * val != g) throw std::logic_error("calibrate_plane: chi = 0 but |ratio| != 1");
        v.orientation = v.associative ? (val > 0 ? 1 : -1) : 0;
    } else {
        Rational om2(0);
        for (int skip = 0; skip < 4; ++skip) {
            std::vector<std::vector<Rational>> tri;
            for (int i = 0; i < 4; ++i)
                if (i != skip) tri.push_back(p.span[i]);
            Rational x = evaluate(omega, tri);
            om2 += x * x;
        }
        Rational val = evaluate(theta, p.span);
        v.value = val.get_d();
        v.ratio = v.value / v.volume;
        v.omega_norm = std::sqrt(om2.get_d());
        v.coassociative = om2 == 0;
        if (v.coassociative && val * val != g) throw std::logic_error("calibrate_plane: Omega| = 0 but |ratio| != 1");
        v.orientation = v.coassociative ? (val > 0 ? 1 : -1) : 0;
    }
    return v;
}

CalibrationVerdict calibrate_plane(const PlaneD& p, double tol) {
    int k = static_cast<int>(p.span.size());
    if (k != 3 && k != 4) throw std::invalid_argument("calibrate_plane: need 3 or 4 vectors");
    static const FormD omega = to_double_form(g2_omega());
    static const FormD theta = to_double_form(g2_theta());
    double g = gram_det(p.span);
    if (!(g > 1e-300)) throw std::invalid_argument("calibrate_plane: degenerate spanning set");
    CalibrationVerdict v;
    v.k = k;
    v.volume = std::sqrt(g);
    if (k == 3) {
        v.value = evaluate(omega, p.span);
        double chi2 = 0;
        for (int e = 0; e < 7; ++e) {
            double x = evaluate(interior(basis_vector<double>(7, e), theta), p.span);
            chi2 += x * x;
        }
        v.ratio = v.value / v.volume;
        v.chi_norm = std::sqrt(chi2);
        v.associative = std::abs(std::abs(v.ratio) - 1.0) <= tol;
        v.orientation = v.associative ? (v.ratio > 0 ? 1 : -1) : 0;
    } else {
        double om2 = 0;
        for (int skip = 0; skip < 4; ++skip) {
            std::vector<std::vector<double>> tri;
            for (int i = 0; i < 4; ++i)
                if (i != skip) tri.push_back(p.span[i]);
            double x = evaluate(omega, tri);
            om2 += x * x;
        }
        v.value = evaluate(theta, p.span);
        v.ratio = v.value / v.volume;
        v.omega_norm = std::sqrt(om2);
        v.coassociative = std::abs(std::abs(v.ratio) - 1.0) <= tol;
        v.orientation = v.coassociative ? (v.ratio > 0 ? 1 : -1) : 0;
    }
    return v;
}

Form dt_residual(const Form& f) { return dt_residual(f, g2_theta(f.frame())); }
Form deformed_dt_residual(const Form& f) { return deformed_dt_residual(f, g2_theta(f.frame())); }

}  // namespace g2fm
