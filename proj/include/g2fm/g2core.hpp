#pragma once

#include "g2fm/exalg.hpp"
#include "g2fm/linalg.hpp"

#include <string>
#include <vector>

namespace g2fm {

// Coordinates x1,x2,x3,y0,y1,y2,y3 at indices 0..6, orientation dx^{123}dy^{0123}.
FramePtr g2_frame();
FramePtr make_g2_frame(const std::string& name, const std::vector<std::string>& labels,
                       std::vector<Rational> covolume = {});

// Standard forms on any 7-dimensional frame laid out like the G2 frame.
Form g2_omega(const FramePtr& frame = g2_frame());
Form g2_theta(const FramePtr& frame = g2_frame());

// <u x v, w> = Omega(u, v, w).
template <class T>
std::vector<T> cross(const BasicForm<T>& omega, const std::vector<T>& u, const std::vector<T>& v) {
    auto one = interior(v, interior(u, omega));
    std::vector<T> out(omega.frame()->dim, T(0));
    for (const auto& [m, c] : one.terms()) out[indices_of(m)[0]] = c;
    return out;
}
std::vector<Rational> cross(const std::vector<Rational>& u, const std::vector<Rational>& v);

// chi with <chi, e_v> = iota_{e_v} Theta.
VectorValuedForm chi(const Form& theta = g2_theta());

struct LabeledComponent {
    std::string label;
    Form form;
};

struct LabeledProjector {
    std::string label;
    int dim = 0;
    RMatrix projector;
};

// beta -> *(Omega ^ beta) on 2-forms.
RMatrix g2_two_form_operator(const Form& omega = g2_omega());
const std::vector<LabeledProjector>& g2_projectors(int degree);
std::vector<LabeledComponent> g2_decompose(const Form& a);

template <class T>
struct BasicPlane {
    std::vector<std::vector<T>> span;
};
using Plane = BasicPlane<Rational>;
using PlaneD = BasicPlane<double>;

struct CalibrationVerdict {
    int k = 0;
    double value = 0;         // k=3: Omega|; k=4: Theta|
    double volume = 0;
    double ratio = 0;
    double chi_norm = 0;      // k=3 only
    double omega_norm = 0;    // k=4 only
    bool exact = false;
    bool associative = false;
    bool coassociative = false;
    bool cayley = false;      // k=4 in 8 dimensions
    int orientation = 0;      // sign of the ratio when calibrated
};

CalibrationVerdict calibrate_plane(const Plane& p, const Form& omega = g2_omega(), const Form& theta = g2_theta());
CalibrationVerdict calibrate_plane(const PlaneD& p, double tol = 1e-9);

template <class T>
std::vector<std::vector<T>> gram(const std::vector<std::vector<T>>& vs) {
    std::size_t k = vs.size();
    std::vector<std::vector<T>> g(k, std::vector<T>(k, T(0)));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t i = 0; i < vs[a].size(); ++i) g[a][b] += vs[a][i] * vs[b][i];
    return g;
}

template <class T>
BasicForm<T> dt_residual(const BasicForm<T>& f, const BasicForm<T>& theta) {
    return wedge(f, theta);
}

template <class T>
BasicForm<T> deformed_dt_residual(const BasicForm<T>& f, const BasicForm<T>& theta) {
    BasicForm<T> f3 = wedge(wedge(f, f), f);
    T sixth = T(1) / T(6);
    return wedge(f, theta) + sixth * f3;
}

Form dt_residual(const Form& f);
Form deformed_dt_residual(const Form& f);

}  // namespace g2fm
