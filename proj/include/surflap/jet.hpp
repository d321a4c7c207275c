#pragma once

// Truncated multivariate Taylor expansions ("jets").
//
// A Jet in k <= 4 variables of order K <= 3 stores the Taylor coefficients
// c_a = (d^a f)(x0) / a! for every multi-index a with |a| <= K. Monomials are
// kept in graded order, so a jet of order K is a prefix of the order-3 layout
// and truncation only shrinks the active coefficient count.

#include <array>
#include <initializer_list>
#include <span>
#include <string>

#include "surflap/errors.hpp"

namespace surflap {

inline constexpr int kMaxJetVars = 4;
inline constexpr int kMaxJetOrder = 3;
inline constexpr int kMaxJetTerms = 35;  // C(4 + 3, 3)

class Jet {
public:
    /// Scalar constant that combines with a jet over any variable set.
    Jet() = default;
    Jet(int nvars, int order, double value = 0.0);

    static Jet constant(double value) { return Jet(0, kMaxJetOrder, value); }
    static Jet variable(int nvars, int order, int index, double value);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    int size() const;
    bool is_scalar() const { return nvars_ == 0; }

    double value() const { return c_[0]; }
    /// Raw Taylor coefficient in layout order.
    double coeff(int idx) const { return c_[idx]; }
    double& coeff(int idx) { return c_[idx]; }

    /// Partial derivative for a multi-index given as per-variable counts.
    double partial(std::span<const int> alpha) const;
    /// First, second, third partials by variable index (repeat for powers).
    double d(int i) const;
    double d(int i, int j) const;
    double d(int i, int j, int k) const;

    /// Exact partial derivative jet; order drops by one.
    Jet derivative(int var) const;
    Jet truncated(int order) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator+=(double s) { c_[0] += s; return *this; }
    Jet& operator-=(double s) { c_[0] -= s; return *this; }
    Jet& operator*=(double s);
    Jet& operator/=(double s) { return *this *= 1.0 / s; }

    friend Jet operator-(Jet a);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a /= s; }
    friend Jet operator/(double s, const Jet& a);

    std::string to_string() const;

private:
    friend Jet compose_series(const Jet& inner, std::span<const double> taylor);

    int nvars_ = 0;
    int order_ = kMaxJetOrder;
    std::array<double, kMaxJetTerms> c_{};
};

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, int n);
Jet pow(const Jet& x, double p);
Jet reciprocal(const Jet& x);

/// g(inner) where g is given by its Taylor coefficients g^(k)(v0)/k! about
/// v0 = inner.value(), k = 0..order.
Jet compose_series(const Jet& inner, std::span<const double> taylor);

/// Substitutes `inner` into a univariate jet `outer` expanded about
/// inner.value(). Used for reparametrization and for lifting curve jets into
/// chart variables.
Jet compose(const Jet& outer, const Jet& inner);

/// Antiderivative of a univariate jet with zero constant term; order + 1.
Jet integrate_univariate(const Jet& f, int order);

}  // namespace surflap
