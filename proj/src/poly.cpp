#include "opc/poly.hpp"

#include "opc/errors.hpp"

#include <algorithm>

namespace opc {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(int k, const Rational& c) {
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
    v[k] = c;
    return Poly(std::move(v));
}

Poly Poly::x_minus(const Rational& c) { return Poly(std::vector<Rational>{-c, 1}); }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::operator[](int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[k];
}

Rational Poly::lead() const { return is_zero() ? Rational(0) : coeffs_.back(); }

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return Poly(std::move(d));
}

Rational Poly::evaluate(const Rational& c) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * c + *it;
    return acc;
}

Poly Poly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Rational> v(static_cast<std::size_t>(k), Rational(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Poly(std::move(v));
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return {};
    std::vector<Rational> v(coeffs_);
    for (auto& a : v) a *= c;
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZeroPolynomial, "nonzero polynomial");
    Rational inv = 1 / lead();
    return scaled(inv);
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(v));
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Rational mag = abs(c);
        if (mag != 1 || k == 0) out += format_rational(mag);
        if (k > 0) {
            if (mag != 1) out += "*";
            out += k == 1 ? "x" : "x^" + std::to_string(k);
        }
    }
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZeroPolynomial, "divisor != 0");
    std::vector<Rational> rem(a.coeffs());
    const int db = b.degree();
    if (a.degree() < db) return {Poly(), a};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db) + 1);
    const Rational lb = b.lead();
    for (int k = a.degree(); k >= db; --k) {
        if (rem[k] == 0) continue;
        Rational q = rem[k] / lb;
        quot[k - db] = q;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= q * b[j];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

CombinationFit fit_combination(const Poly& target, const std::vector<Poly>& columns,
                               const std::vector<std::optional<Rational>>& pins) {
    const std::size_t ncol = columns.size();
    CombinationFit fit;
    fit.coeffs.assign(ncol, Rational(0));

    Poly rhs_poly = target;
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < ncol; ++j) {
        if (j < pins.size() && pins[j]) {
            fit.coeffs[j] = *pins[j];
            rhs_poly -= columns[j].scaled(*pins[j]);
        } else {
            open.push_back(j);
        }
    }

    int rows = rhs_poly.degree() + 1;
    for (std::size_t j : open) rows = std::max(rows, columns[j].degree() + 1);
    // Augmented matrix: one row per power of x, last entry is the target.
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(rows),
                                         std::vector<Rational>(open.size() + 1));
    for (int r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < open.size(); ++c) m[r][c] = columns[open[c]][r];
        m[r][open.size()] = rhs_poly[r];
    }

    int pivot_row = 0;
    std::vector<int> pivot_of(open.size(), -1);
    for (std::size_t c = 0; c < open.size(); ++c) {
        int found = -1;
        for (int r = pivot_row; r < rows; ++r)
            if (m[r][c] != 0) {
                found = r;
                break;
            }
        if (found < 0) {
            fit.free_columns.push_back(static_cast<int>(open[c]));
            continue;
        }
        std::swap(m[found], m[pivot_row]);
        Rational inv = 1 / m[pivot_row][c];
        for (auto& v : m[pivot_row]) v *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == pivot_row || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = c; k <= open.size(); ++k) m[r][k] -= f * m[pivot_row][k];
        }
        pivot_of[c] = pivot_row++;
    }
    // Free columns are zero, so each pivot column reads its value directly.
    for (std::size_t c = 0; c < open.size(); ++c)
        if (pivot_of[c] >= 0) fit.coeffs[open[c]] = m[pivot_of[c]][open.size()];

    fit.residual = target;
    for (std::size_t j = 0; j < ncol; ++j) fit.residual -= columns[j].scaled(fit.coeffs[j]);
    return fit;
}

}  // namespace opc
