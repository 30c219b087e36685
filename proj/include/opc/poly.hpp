#pragma once

#include "opc/rational.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace opc {

// Dense univariate polynomial over the rationals; coeffs_[k] multiplies x^k.
// Trailing zero coefficients are always trimmed, so the zero polynomial has
// an empty coefficient list and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    Poly(std::initializer_list<Rational> coeffs);

    static Poly constant(const Rational& c);
    static Poly monomial(int k, const Rational& c = 1);
    static Poly x_minus(const Rational& c);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    // Coefficient of x^k; zero outside the stored range.
    Rational operator[](int k) const;
    Rational lead() const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Poly derivative() const;
    Rational evaluate(const Rational& c) const;
    Poly shifted(int k) const;  // x^k * p
    Poly scaled(const Rational& c) const;
    Poly monic() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }
    friend Poly operator-(const Poly& p) { return p.scaled(-1); }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

// Quotient and remainder with deg(rem) < deg(b); throws on b == 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// Result of expressing a target as a combination of column polynomials.
struct CombinationFit {
    std::vector<Rational> coeffs;  // one per column; pinned columns echo the pin
    std::vector<int> free_columns; // columns left undetermined by the data
    Poly residual;                 // target - sum coeffs[i] * columns[i]
};

// Exact fit by Gaussian elimination over the coefficient vectors.  Pinned
// columns are fixed first; the rest pivot in the given order.  A column that
// depends linearly on earlier unpinned ones is reported free and set to zero.
CombinationFit fit_combination(const Poly& target, const std::vector<Poly>& columns,
                               const std::vector<std::optional<Rational>>& pins = {});

}  // namespace opc
