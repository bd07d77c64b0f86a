#pragma once

#include "g2fm/rational.hpp"

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace g2fm {

// Polynomial in nvars variables with exact rational coefficients.
class Poly {
public:
    using Exponent = std::vector<int>;

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rational& c);
    static Poly var(int nvars, int i, const Rational& c = 1);

    int nvars() const { return nvars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;

    void add(const Exponent& e, const Rational& c);
    Rational coeff(const Exponent& e) const;

    Poly derivative(int i) const;
    Rational eval(const std::vector<Rational>& x) const;
    double eval(const std::vector<double>& x) const;
    Rational max_abs_coeff() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& a);
    Poly operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

private:
    void check(const Poly& o) const;

    int nvars_ = 0;
    std::map<Exponent, Rational> terms_;
};

// Values on a periodic uniform grid over [0, period_0) x ... (row-major, last axis fastest).
class Grid {
public:
    Grid() = default;
    Grid(std::vector<int> shape, std::vector<double> period);

    static Grid sample(std::vector<int> shape, std::vector<double> period,
                       const std::function<double(const std::vector<double>&)>& f);
    static Grid from_poly(const Poly& p, std::vector<int> shape, std::vector<double> period);

    int ndim() const { return static_cast<int>(shape_.size()); }
    const std::vector<int>& shape() const { return shape_; }
    const std::vector<double>& period() const { return period_; }
    std::size_t size() const { return data_.size(); }
    double spacing(int axis) const { return period_[axis] / shape_[axis]; }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }
    const std::vector<double>& data() const { return data_; }

    std::vector<int> multi_index(std::size_t flat) const;
    std::vector<double> point(std::size_t flat) const;

    // Second-order central difference along axis.
    Grid derivative(int axis) const;
    // Periodic trapezoid rule.
    double integral() const;
    double sup_norm() const;
    double l2_norm() const;

    Grid& operator+=(const Grid& o);
    Grid& operator-=(const Grid& o);
    friend Grid operator+(Grid a, const Grid& b) { return a += b; }
    friend Grid operator-(Grid a, const Grid& b) { return a -= b; }
    friend Grid operator*(const Grid& a, const Grid& b);
    friend Grid operator*(double s, Grid a);
    bool same_shape(const Grid& o) const { return shape_ == o.shape_ && period_ == o.period_; }

private:
    void check(const Grid& o) const;

    std::vector<int> shape_;
    std::vector<double> period_;
    std::vector<double> data_;
};

// A coefficient function given either exactly (polynomial) or by periodic samples.
class Field {
public:
    Field() : v_(Poly(0)) {}
    Field(Poly p) : v_(std::move(p)) {}
    Field(Grid g) : v_(std::move(g)) {}

    bool is_poly() const { return std::holds_alternative<Poly>(v_); }
    bool is_grid() const { return std::holds_alternative<Grid>(v_); }
    const Poly& poly() const { return std::get<Poly>(v_); }
    const Grid& grid() const { return std::get<Grid>(v_); }
    int nvars() const { return is_poly() ? poly().nvars() : grid().ndim(); }

    Field derivative(int axis) const;
    // Exact zero test for polynomials; sup-norm below tol for grids.
    bool vanishes(double tol = 1e-9) const;
    // Largest coefficient for polynomials, sup-norm of samples for grids.
    double sup_norm() const;
    double l2_norm() const;
    bool compatible(const Field& o) const;

    friend Field operator+(const Field& a, const Field& b);
    friend Field operator-(const Field& a, const Field& b);
    friend Field operator*(const Field& a, const Field& b);
    friend Field operator*(const Rational& s, const Field& a);

    // Value at a grid index (grids) or at the corresponding grid point (polynomials).
    double value_at(const Grid& like, std::size_t flat) const;
    Grid to_grid(const std::vector<int>& shape, const std::vector<double>& period) const;

private:
    std::variant<Poly, Grid> v_;
};

std::string describe(const Poly& p, const std::vector<std::string>& names);

}  // namespace g2fm
