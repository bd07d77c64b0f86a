#pragma once

#include "g2fm/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2fm {

// Multi-index of a basis monomial: bit i set <=> dx^i present.
using Mask = std::uint32_t;

inline int degree_of(Mask m) { return std::popcount(m); }

// Sign of e^a ^ e^b relative to the sorted monomial e^{a|b}; 0 when they overlap.
inline int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int swaps = 0;
    for (Mask rest = b; rest; rest &= rest - 1) {
        int j = std::countr_zero(rest);
        swaps += std::popcount(a >> (j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

// Sign needed to sort an index list; 0 on repeats.
int permutation_sign(const std::vector<int>& idx);
Mask mask_of(const std::vector<int>& idx);
std::vector<int> indices_of(Mask m);
// All masks of popcount k below 2^dim, in lexicographic order of index lists.
std::vector<Mask> basis_masks(int dim, int k);

struct CoordFrame {
    std::string name;
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<int> orientation;
    std::vector<Rational> covolume;  // length scale per coordinate

    int orientation_sign() const { return permutation_sign(orientation); }
    Rational total_covolume() const;
    Rational covolume_of(Mask m) const;
    int index_of(const std::string& label) const;
};

using FramePtr = std::shared_ptr<const CoordFrame>;

FramePtr make_frame(std::string name, std::vector<std::string> labels,
                    std::vector<int> orientation = {}, std::vector<Rational> covolume = {});

template <class T>
inline bool coeff_is_zero(const T& v) { return v == 0; }

template <class T>
class BasicForm {
public:
    using Terms = std::map<Mask, T>;

    BasicForm() = default;
    BasicForm(FramePtr frame, int degree) : frame_(std::move(frame)), degree_(degree) {
        if (!frame_) throw std::invalid_argument("form without frame");
        if (degree_ < 0) throw std::invalid_argument("negative form degree");
    }

    static BasicForm scalar(FramePtr frame, T c) {
        BasicForm f(std::move(frame), 0);
        f.add(0, c);
        return f;
    }
    static BasicForm monomial(FramePtr frame, const std::vector<int>& idx, T c = T(1)) {
        BasicForm f(frame, static_cast<int>(idx.size()));
        for (int i : idx)
            if (i < 0 || i >= frame->dim) throw std::out_of_range("monomial index out of range");
        int s = permutation_sign(idx);
        if (s != 0) f.add(mask_of(idx), s > 0 ? c : T(-c));
        return f;
    }
    static BasicForm volume(FramePtr frame) {
        return monomial(frame, frame->orientation, T(1));
    }

    const FramePtr& frame() const { return frame_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    T coeff(Mask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? T(0) : it->second;
    }
    T coeff(const std::vector<int>& idx) const {
        int s = permutation_sign(idx);
        if (s == 0) return T(0);
        T c = coeff(mask_of(idx));
        return s > 0 ? c : T(-c);
    }

    void add(Mask m, const T& c) {
        if (degree_of(m) != degree_) throw std::invalid_argument("term degree mismatch");
        if (coeff_is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }
    void set(Mask m, const T& c) {
        terms_.erase(m);
        add(m, c);
    }

    BasicForm& operator+=(const BasicForm& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    BasicForm& operator-=(const BasicForm& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_) add(m, T(-c));
        return *this;
    }
    BasicForm& operator*=(const T& s) {
        if (coeff_is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
    friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
    friend BasicForm operator*(const T& s, BasicForm a) { return a *= s; }
    friend BasicForm operator*(BasicForm a, const T& s) { return a *= s; }
    BasicForm operator-() const { return T(-1) * *this; }

    friend bool operator==(const BasicForm& a, const BasicForm& b) {
        return same_frame(a.frame_, b.frame_) && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    static bool same_frame(const FramePtr& a, const FramePtr& b) {
        return a == b || (a && b && a->dim == b->dim && a->labels == b->labels && a->orientation == b->orientation);
    }
    void check_frame(const FramePtr& f) const {
        if (!same_frame(frame_, f)) throw std::invalid_argument("frame mismatch");
    }

private:
    void check_compatible(const BasicForm& o) const {
        check_frame(o.frame_);
        if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch in addition");
    }

    FramePtr frame_;
    int degree_ = 0;
    Terms terms_;
};

using Form = BasicForm<Rational>;
using FormD = BasicForm<double>;

template <class T>
BasicForm<T> wedge(const BasicForm<T>& a, const BasicForm<T>& b) {
    a.check_frame(b.frame());
    BasicForm<T> r(a.frame(), a.degree() + b.degree());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            T v = ca * cb;
            r.add(ma | mb, s > 0 ? v : T(-v));
        }
    }
    return r;
}

template <class T>
BasicForm<T> hodge(const BasicForm<T>& a) {
    const auto& fr = *a.frame();
    Mask full = fr.dim == 32 ? ~Mask(0) : ((Mask(1) << fr.dim) - 1);
    int os = fr.orientation_sign();
    BasicForm<T> r(a.frame(), fr.dim - a.degree());
    for (const auto& [m, c] : a.terms()) {
        Mask comp = full & ~m;
        int s = wedge_sign(m, comp) * os;
        r.add(comp, s > 0 ? c : T(-c));
    }
    return r;
}

// Euclidean inner product of same-degree forms in the orthonormal frame.
template <class T>
T inner(const BasicForm<T>& a, const BasicForm<T>& b) {
    a.check_frame(b.frame());
    if (a.degree() != b.degree()) throw std::invalid_argument("inner: degree mismatch");
    T s(0);
    for (const auto& [m, c] : a.terms()) {
        auto it = b.terms().find(m);
        if (it != b.terms().end()) s += c * it->second;
    }
    return s;
}

template <class T>
BasicForm<T> interior(const std::vector<T>& v, const BasicForm<T>& a) {
    const auto& fr = *a.frame();
    if (static_cast<int>(v.size()) != fr.dim) throw std::invalid_argument("interior: vector dimension");
    if (a.degree() == 0) return BasicForm<T>(a.frame(), 0);
    BasicForm<T> r(a.frame(), a.degree() - 1);
    for (const auto& [m, c] : a.terms()) {
        int pos = 0;
        for (Mask rest = m; rest; rest &= rest - 1, ++pos) {
            int i = std::countr_zero(rest);
            if (coeff_is_zero(v[i])) continue;
            T val = c * v[i];
            r.add(m & ~(Mask(1) << i), (pos & 1) ? T(-val) : val);
        }
    }
    return r;
}

template <class T>
std::vector<T> basis_vector(int dim, int i) {
    std::vector<T> v(dim, T(0));
    v.at(i) = T(1);
    return v;
}

template <class T>
T determinant_small(std::vector<std::vector<T>> m) {
    int n = static_cast<int>(m.size());
    T det(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!coeff_is_zero(m[r][c])) {
                if constexpr (std::is_floating_point_v<T>) {
                    if (piv < 0 || std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
                } else {
                    piv = r;
                    break;
                }
            }
        if (piv < 0) return T(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (coeff_is_zero(m[r][c])) continue;
            T f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

template <class T>
T evaluate(const BasicForm<T>& a, const std::vector<std::vector<T>>& vectors) {
    int k = a.degree();
    if (static_cast<int>(vectors.size()) != k) throw std::invalid_argument("evaluate: arity mismatch");
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != a.frame()->dim) throw std::invalid_argument("evaluate: vector dimension");
    T total(0);
    std::vector<std::vector<T>> m(k, std::vector<T>(k));
    for (const auto& [mask, c] : a.terms()) {
        auto idx = indices_of(mask);
        for (int r = 0; r < k; ++r)
            for (int col = 0; col < k; ++col) m[r][col] = vectors[col][idx[r]];
        total += c * determinant_small(m);
    }
    return total;
}

// Pull back along a linear map with Jacobian rows indexed by the source frame.
// jac[i][j] = d(source coordinate i)/d(target coordinate j).
template <class T>
BasicForm<T> pullback(const BasicForm<T>& a, const std::vector<std::vector<T>>& jac, FramePtr target) {
    int n = a.frame()->dim;
    if (static_cast<int>(jac.size()) != n) throw std::invalid_argument("pullback: jacobian rows");
    std::vector<BasicForm<T>> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(jac[i].size()) != target->dim) throw std::invalid_argument("pullback: jacobian cols");
        BasicForm<T> row(target, 1);
        for (int j = 0; j < target->dim; ++j) row.add(Mask(1) << j, jac[i][j]);
        rows.push_back(std::move(row));
    }
    BasicForm<T> r(target, a.degree());
    for (const auto& [mask, c] : a.terms()) {
        BasicForm<T> term = BasicForm<T>::scalar(target, c);
        for (int i : indices_of(mask)) {
            term = wedge(term, rows[i]);
            if (term.is_zero()) break;
        }
        if (!term.is_zero()) r += term;
    }
    return r;
}

// Relabel coordinates: index i of the source frame becomes map[i] of the target; -1 kills it.
template <class T>
BasicForm<T> relabel(const BasicForm<T>& a, const std::vector<int>& map, FramePtr target) {
    BasicForm<T> r(target, a.degree());
    for (const auto& [mask, c] : a.terms()) {
        std::vector<int> idx;
        bool dead = false;
        for (int i : indices_of(mask)) {
            if (map.at(i) < 0) {
                dead = true;
                break;
            }
            idx.push_back(map[i]);
        }
        if (dead) continue;
        r += BasicForm<T>::monomial(target, idx, c);
    }
    return r;
}

template <class T>
T integrate_top(const BasicForm<T>& a) {
    const auto& fr = *a.frame();
    if (a.degree() != fr.dim) throw std::invalid_argument("integrate_top: not a top form");
    if (a.is_zero()) return T(0);
    T c = a.terms().begin()->second;
    T cov;
    if constexpr (std::is_same_v<T, Rational>) {
        cov = fr.total_covolume();
    } else {
        cov = to_double(fr.total_covolume());
    }
    return fr.orientation_sign() > 0 ? T(c * cov) : T(-c * cov);
}

// Mixed-degree form: at most one component per degree.
template <class T>
class BasicPolyform {
public:
    BasicPolyform() = default;
    explicit BasicPolyform(FramePtr frame) : frame_(std::move(frame)) {}
    BasicPolyform(const BasicForm<T>& f) : frame_(f.frame()) { add(f); }

    const FramePtr& frame() const { return frame_; }
    const std::map<int, BasicForm<T>>& parts() const { return parts_; }

    void add(const BasicForm<T>& f) {
        if (!frame_) frame_ = f.frame();
        f.check_frame(frame_);
        if (f.is_zero()) return;
        auto it = parts_.find(f.degree());
        if (it == parts_.end()) {
            parts_.emplace(f.degree(), f);
        } else {
            it->second += f;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }
    BasicForm<T> part(int degree) const {
        auto it = parts_.find(degree);
        if (it != parts_.end()) return it->second;
        return BasicForm<T>(frame_, degree);
    }
    bool is_zero() const { return parts_.empty(); }

    BasicPolyform& operator+=(const BasicPolyform& o) {
        for (const auto& [d, f] : o.parts_) add(f);
        if (!frame_) frame_ = o.frame_;
        return *this;
    }
    friend BasicPolyform operator+(BasicPolyform a, const BasicPolyform& b) { return a += b; }
    friend BasicPolyform operator-(BasicPolyform a, const BasicPolyform& b) {
        for (const auto& [d, f] : b.parts_) a.add(-f);
        return a;
    }
    friend BasicPolyform operator*(const T& s, const BasicPolyform& a) {
        BasicPolyform r(a.frame_);
        for (const auto& [d, f] : a.parts_) r.add(s * f);
        return r;
    }
    friend bool operator==(const BasicPolyform& a, const BasicPolyform& b) { return a.parts_ == b.parts_; }

private:
    FramePtr frame_;
    std::map<int, BasicForm<T>> parts_;
};

using Polyform = BasicPolyform<Rational>;
using PolyformD = BasicPolyform<double>;

template <class T>
BasicPolyform<T> wedge(const BasicPolyform<T>& a, const BasicPolyform<T>& b) {
    BasicPolyform<T> r(a.frame() ? a.frame() : b.frame());
    for (const auto& [da, fa] : a.parts())
        for (const auto& [db, fb] : b.parts())
            if (da + db <= fa.frame()->dim) r.add(wedge(fa, fb));
    return r;
}

template <class T>
BasicPolyform<T> hodge(const BasicPolyform<T>& a) {
    BasicPolyform<T> r(a.frame());
    for (const auto& [d, f] : a.parts()) r.add(hodge(f));
    return r;
}

// sum_{n} a^n / n! truncated to degrees <= max_degree; a must have even positive degrees.
template <class T>
BasicPolyform<T> exp_trunc(const BasicPolyform<T>& a, int max_degree) {
    for (const auto& [d, f] : a.parts())
        if (d == 0 || d % 2 != 0) throw std::invalid_argument("exp_trunc: component of odd or zero degree");
    if (!a.frame()) throw std::invalid_argument("exp_trunc: polyform without frame");
    BasicPolyform<T> result(BasicForm<T>::scalar(a.frame(), T(1)));
    BasicPolyform<T> power(BasicForm<T>::scalar(a.frame(), T(1)));
    for (int n = 1; n <= max_degree / 2; ++n) {
        BasicPolyform<T> next(a.frame());
        for (const auto& [dp, fp] : power.parts())
            for (const auto& [da, fa] : a.parts())
                if (dp + da <= max_degree && dp + da <= a.frame()->dim) next.add(wedge(fp, fa));
        T inv = T(1) / T(n);
        power = inv * next;
        if (power.is_zero()) break;
        result += power;
    }
    return result;
}

// Integrate along the fibre coordinates (given in their orientation order). The fibre form
// is moved to the right, matched against the oriented fibre volume and scaled by the fibre
// covolume; remaining coordinates are relabelled by base_map into the target frame.
template <class T>
BasicForm<T> fiber_integrate(const BasicForm<T>& a, const std::vector<int>& fiber, const std::vector<int>& base_map,
                             FramePtr target) {
    Mask fmask = mask_of(fiber);
    int fsign = permutation_sign(fiber);
    if (fsign == 0) throw std::invalid_argument("fiber_integrate: repeated fibre coordinate");
    Rational cov = a.frame()->covolume_of(fmask);
    int k = static_cast<int>(fiber.size());
    if (a.degree() < k) return BasicForm<T>(target, 0);
    BasicForm<T> r(target, a.degree() - k);
    for (const auto& [mask, c] : a.terms()) {
        if ((mask & fmask) != fmask) continue;
        Mask base = mask & ~fmask;
        int s = wedge_sign(base, fmask) * fsign;
        std::vector<int> idx;
        for (int i : indices_of(base)) {
            int j = base_map.at(i);
            if (j < 0) throw std::invalid_argument("fiber_integrate: unmapped base coordinate");
            idx.push_back(j);
        }
        T v;
        if constexpr (std::is_same_v<T, Rational>) {
            v = c * cov;
        } else {
            v = c * to_double(cov);
        }
        r += BasicForm<T>::monomial(target, idx, s > 0 ? v : T(-v));
    }
    return r;
}

template <class T>
BasicPolyform<T> fiber_integrate(const BasicPolyform<T>& a, const std::vector<int>& fiber,
                                 const std::vector<int>& base_map, FramePtr target) {
    BasicPolyform<T> r(target);
    for (const auto& [d, f] : a.parts()) r.add(fiber_integrate(f, fiber, base_map, target));
    return r;
}

// Tangent-vector-valued form: component v is paired with the basis vector e_v.
template <class T>
struct BasicVectorValuedForm {
    std::vector<BasicForm<T>> components;
};
using VectorValuedForm = BasicVectorValuedForm<Rational>;

template <class T>
BasicForm<double> to_double_form(const BasicForm<T>& a) {
    BasicForm<double> r(a.frame(), a.degree());
    for (const auto& [m, c] : a.terms()) r.add(m, to_double(c));
    return r;
}

template <class T>
double max_abs_coeff(const BasicForm<T>& a) {
    double m = 0;
    for (const auto& [k, c] : a.terms()) m = std::max(m, std::abs(to_double(c)));
    return m;
}

// Coefficient vector of a form in the basis_masks(dim, degree) order.
template <class T>
std::vector<T> to_coords(const BasicForm<T>& a) {
    auto basis = basis_masks(a.frame()->dim, a.degree());
    std::vector<T> v(basis.size(), T(0));
    for (std::size_t i = 0; i < basis.size(); ++i) v[i] = a.coeff(basis[i]);
    return v;
}

template <class T>
BasicForm<T> from_coords(FramePtr frame, int degree, const std::vector<T>& v) {
    auto basis = basis_masks(frame->dim, degree);
    if (basis.size() != v.size()) throw std::invalid_argument("from_coords: length mismatch");
    BasicForm<T> r(frame, degree);
    for (std::size_t i = 0; i < basis.size(); ++i) r.add(basis[i], v[i]);
    return r;
}

std::string describe(const Form& f);

}  // namespace g2fm
