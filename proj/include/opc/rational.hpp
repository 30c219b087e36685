#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <string_view>
#include <vector>

namespace opc {

// GMP keeps mpq_class canonical after every arithmetic operation, but its
// (num, den) constructor does not, so Rational(2, 4) would compare unequal to
// 1/2. This wrapper canonicalizes there; everything else is mpq_class.  Avoid
// `auto` on arithmetic results: GMP returns expression templates that dangle
// once their operands die.
class Rational : public mpq_class {
public:
    using mpq_class::mpq_class;
    using mpq_class::operator=;
    Rational() = default;
    Rational(const Rational&) = default;
    Rational(Rational&&) = default;
    Rational& operator=(const Rational&) = default;
    Rational& operator=(Rational&&) = default;
    Rational(const mpq_class& q) : mpq_class(q) {}
    Rational(mpq_class&& q) : mpq_class(std::move(q)) {}
    Rational(const mpz_class& num, const mpz_class& den) : mpq_class(num, den) { canonicalize(); }
};

// Accepts "n", "n/d", with an optional leading sign; rejects d == 0.
Rational parse_rational(std::string_view text);

// Always "num/den", integers included ("3/1").
std::string format_rational(const Rational& q);

std::vector<std::string> format_rationals(const std::vector<Rational>& qs);

bool is_integer(const Rational& q);

}  // namespace opc
