#include "g2fm/field.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace g2fm {

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add(Exponent(nvars, 0), c);
    return p;
}

Poly Poly::var(int nvars, int i, const Rational& c) {
    if (i < 0 || i >= nvars) throw std::out_of_range("Poly::var index");
    Poly p(nvars);
    Exponent e(nvars, 0);
    e[i] = 1;
    p.add(e, c);
    return p;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

void Poly::add(const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("Poly: exponent length");
    for (int k : e)
        if (k < 0) throw std::invalid_argument("Poly: negative exponent");
    if (c == 0) return;
    auto [it, ins] = terms_.try_emplace(e, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational Poly::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::derivative(int i) const {
    if (i < 0 || i >= nvars_) throw std::out_of_range("Poly::derivative axis");
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponent f = e;
        f[i] -= 1;
        r.add(f, c * e[i]);
    }
    return r;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("Poly::eval arity");
    Rational s(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int k = 0; k < nvars_; ++k)
            for (int p = 0; p < e[k]; ++p) t *= x[k];
        s += t;
    }
    return s;
}

double Poly::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("Poly::eval arity");
    double s = 0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (int k = 0; k < nvars_; ++k) t *= std::pow(x[k], e[k]);
        s += t;
    }
    return s;
}

Rational Poly::max_abs_coeff() const {
    Rational m(0);
    for (const auto& [e, c] : terms_) m = std::max(m, abs(c));
    return m;
}

void Poly::check(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("Poly: variable count mismatch");
}

Poly& Poly::operator+=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Poly::Exponent e(a.nvars_);
            for (int k = 0; k < a.nvars_; ++k) e[k] = ea[k] + eb[k];
            r.add(e, ca * cb);
        }
    return r;
}

Poly operator*(const Rational& s, const Poly& a) {
    Poly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.add(e, s * c);
    return r;
}

std::string describe(const Poly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        for (int k = 0; k < p.nvars(); ++k)
            if (e[k] > 0) {
                os << "*" << (k < static_cast<int>(names.size()) ? names[k] : "v" + std::to_string(k));
                if (e[k] > 1) os << "^" << e[k];
            }
    }
    return os.str();
}

Grid::Grid(std::vector<int> shape, std::vector<double> period) : shape_(std::move(shape)), period_(std::move(period)) {
    if (shape_.size() != period_.size()) throw std::invalid_argument("Grid: shape/period length mismatch");
    std::size_t n = 1;
    for (std::size_t k = 0; k < shape_.size(); ++k) {
        if (shape_[k] < 3) throw std::invalid_argument("Grid: need at least 3 points per axis");
        if (!(period_[k] > 0)) throw std::invalid_argument("Grid: period must be positive");
        n *= static_cast<std::size_t>(shape_[k]);
    }
    data_.assign(n, 0.0);
}

Grid Grid::sample(std::vector<int> shape, std::vector<double> period,
                  const std::function<double(const std::vector<double>&)>& f) {
    Grid g(std::move(shape), std::move(period));
    for (std::size_t i = 0; i < g.size(); ++i) g.data_[i] = f(g.point(i));
    return g;
}

Grid Grid::from_poly(const Poly& p, std::vector<int> shape, std::vector<double> period) {
    return sample(std::move(shape), std::move(period), [&](const std::vector<double>& x) { return p.eval(x); });
}

std::vector<int> Grid::multi_index(std::size_t flat) const {
    std::vector<int> idx(shape_.size());
    for (int k = ndim() - 1; k >= 0; --k) {
        idx[k] = static_cast<int>(flat % shape_[k]);
        flat /= shape_[k];
    }
    return idx;
}

std::vector<double> Grid::point(std::size_t flat) const {
    auto idx = multi_index(flat);
    std::vector<double> x(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) x[k] = idx[k] * spacing(static_cast<int>(k));
    return x;
}

Grid Grid::derivative(int axis) const {
    if (axis < 0 || axis >= ndim()) throw std::out_of_range("Grid::derivative axis");
    std::size_t stride = 1;
    for (int k = ndim() - 1; k > axis; --k) stride *= shape_[k];
    int n = shape_[axis];
    double inv = 1.0 / (2.0 * spacing(axis));
    Grid r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        int pos = static_cast<int>((i / stride) % n);
        std::size_t base = i - static_cast<std::size_t>(pos) * stride;
        std::size_t up = base + static_cast<std::size_t>((pos + 1) % n) * stride;
        std::size_t dn = base + static_cast<std::size_t>((pos + n - 1) % n) * stride;
        r.data_[i] = (data_[up] - data_[dn]) * inv;
    }
    return r;
}

namespace {

// Pairwise summation keeps reductions independent of traversal order up to rounding of a balanced tree.
double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace

double Grid::integral() const {
    double cell = 1;
    for (int k = 0; k < ndim(); ++k) cell *= spacing(k);
    return pairwise_sum(data_.data(), data_.size()) * cell;
}

double Grid::sup_norm() const {
    double m = 0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double Grid::l2_norm() const {
    std::vector<double> sq(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) sq[i] = data_[i] * data_[i];
    double cell = 1;
    for (int k = 0; k < ndim(); ++k) cell *= spacing(k);
    return std::sqrt(pairwise_sum(sq.data(), sq.size()) * cell);
}

void Grid::check(const Grid& o) const {
    if (!same_shape(o)) throw std::invalid_argument("Grid: shape mismatch");
}

Grid& Grid::operator+=(const Grid& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Grid& Grid::operator-=(const Grid& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Grid operator*(const Grid& a, const Grid& b) {
    a.check(b);
    Grid r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] *= b.data_[i];
    return r;
}

Grid operator*(double s, Grid a) {
    for (double& v : a.data_) v *= s;
    return a;
}

Field Field::derivative(int axis) const {
    if (is_poly()) return Field(poly().derivative(axis));
    return Field(grid().derivative(axis));
}

bool Field::vanishes(double tol) const {
    if (is_poly()) return poly().is_zero();
    return grid().sup_norm() <= tol;
}

double Field::sup_norm() const {
    if (is_poly()) return poly().max_abs_coeff().get_d();
    return grid().sup_norm();
}

double Field::l2_norm() const {
    if (is_poly()) {
        double s = 0;
        for (const auto& [e, c] : poly().terms()) s += c.get_d() * c.get_d();
        return std::sqrt(s);
    }
    return grid().l2_norm();
}

bool Field::compatible(const Field& o) const {
    if (is_poly() != o.is_poly()) return false;
    if (is_poly()) return poly().nvars() == o.poly().nvars();
    return grid().same_shape(o.grid());
}

namespace {

void require_compatible(const Field& a, const Field& b) {
    if (!a.compatible(b)) throw std::invalid_argument("Field: mixing incompatible representations");
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
    require_compatible(a, b);
    if (a.is_poly()) return Field(a.poly() + b.poly());
    return Field(a.grid() + b.grid());
}

Field operator-(const Field& a, const Field& b) {
    require_compatible(a, b);
    if (a.is_poly()) return Field(a.poly() - b.poly());
    return Field(a.grid() - b.grid());
}

Field operator*(const Field& a, const Field& b) {
    require_compatible(a, b);
    if (a.is_poly()) return Field(a.poly() * b.poly());
    return Field(a.grid() * b.grid());
}

Field operator*(const Rational& s, const Field& a) {
    if (a.is_poly()) return Field(s * a.poly());
    return Field(s.get_d() * a.grid());
}

double Field::value_at(const Grid& like, std::size_t flat) const {
    if (is_grid()) return grid()[flat];
    return poly().eval(like.point(flat));
}

Grid Field::to_grid(const std::vector<int>& shape, const std::vector<double>& period) const {
    if (is_grid()) {
        if (grid().shape() != shape || grid().period() != period) throw std::invalid_argument("Field: grid mismatch");
        return grid();
    }
    return Grid::from_poly(poly(), shape, period);
}

}  // namespace g2fm
