#include "opc/rational.hpp"

#include "opc/errors.hpp"

#include <cctype>

namespace opc {

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                 : text.substr(slash + 1);
    if (!valid_integer_text(num, true) || !valid_integer_text(den, false))
        throw Error(ErrorKind::ConfigError, "rational syntax num/den", std::nullopt,
                    "cannot parse '" + std::string(text) + "'");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    mpz_class zn(n, 10), zd(std::string(den), 10);
    if (zd == 0)
        throw Error(ErrorKind::ConfigError, "nonzero denominator", std::nullopt,
                    "'" + std::string(text) + "'");
    Rational q(zn, zd);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<std::string> format_rationals(const std::vector<Rational>& qs) {
    std::vector<std::string> out;
    out.reserve(qs.size());
    for (const auto& q : qs) out.push_back(format_rational(q));
    return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace opc
