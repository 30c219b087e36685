#include "opc/errors.hpp"
#include "opc/poly.hpp"
#include "opc/rational.hpp"

#include <doctest.h>

#include <random>

using opc::Poly;
using opc::Rational;

namespace {

Rational random_rational(std::mt19937& rng, int bound) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

Poly random_poly(std::mt19937& rng, int degree) {
    std::vector<Rational> c;
    for (int k = 0; k <= degree; ++k) c.push_back(random_rational(rng, 50));
    return Poly(c);
}

}  // namespace

TEST_CASE("rationals parse and format as num/den") {
    CHECK(opc::format_rational(opc::parse_rational("-3/35")) == "-3/35");
    CHECK(opc::format_rational(opc::parse_rational("6/4")) == "3/2");
    CHECK(opc::format_rational(opc::parse_rational("7")) == "7/1");
    CHECK(opc::format_rational(opc::parse_rational("+0/5")) == "0/1");
    CHECK_THROWS_AS(opc::parse_rational("1/0"), opc::Error);
    CHECK_THROWS_AS(opc::parse_rational("1.5"), opc::Error);
    CHECK_THROWS_AS(opc::parse_rational("x"), opc::Error);
    CHECK_THROWS_AS(opc::parse_rational("3/-4"), opc::Error);
}

TEST_CASE("field axioms hold exactly on random rationals") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational a = random_rational(rng, 1000000), b = random_rational(rng, 1000000),
                 c = random_rational(rng, 1000000);
        CHECK(Rational((a + b) + c) == Rational(a + (b + c)));
        CHECK(Rational((a * b) * c) == Rational(a * (b * c)));
        CHECK(Rational(a * (b + c)) == Rational(a * b + a * c));
        if (a != 0) CHECK(Rational(a * (1 / a)) == 1);
        CHECK(Rational(a + (-a)) == 0);
    }
}

TEST_CASE("polynomial arithmetic") {
    const Poly xp1{1, 1}, xm1{-1, 1};
    CHECK(xp1 * xm1 == Poly{-1, 0, 1});
    auto [q, r] = opc::divmod(Poly{-1, 0, 1}, xm1);
    CHECK(q == xp1);
    CHECK(r.is_zero());
    CHECK(Poly().degree() == -1);
    CHECK(Poly{0, 0}.degree() == -1);
    CHECK_THROWS_AS(opc::divmod(xp1, Poly()), opc::Error);

    auto [q2, r2] = opc::divmod(Poly{1, 2, 3, 4}, Poly{1, 0, 2});
    CHECK(r2.degree() < 2);
    CHECK(q2 * Poly{1, 0, 2} + r2 == Poly{1, 2, 3, 4});
    CHECK(Poly::monomial(3).shifted(2) == Poly::monomial(5));
}

TEST_CASE("differentiate and evaluate") {
    CHECK(Poly::monomial(3).derivative() == Poly::monomial(2, 3));
    CHECK(Poly{5}.derivative().is_zero());
    CHECK(Poly{-1, 0, 1}.derivative() == Poly{0, 2});
    CHECK(Poly{-1, 0, 1}.evaluate(1) == 0);
    CHECK(Poly{-1, 0, 1}.evaluate(2) == 3);
    CHECK(Poly().evaluate(Rational(7, 3)) == 0);
}

TEST_CASE("product rule and evaluation homomorphism on random polynomials") {
    std::mt19937 rng(5);
    for (int i = 0; i < 40; ++i) {
        Poly p = random_poly(rng, 12), q = random_poly(rng, 12);
        CHECK((p * q).derivative() == p.derivative() * q + p * q.derivative());
        Rational c = random_rational(rng, 20);
        CHECK((p * q).evaluate(c) == Rational(p.evaluate(c) * q.evaluate(c)));
    }
}

TEST_CASE("combination fit recovers coefficients and reports dependent columns") {
    const Poly target = Poly{1, 2, 3};
    auto fit = opc::fit_combination(target, {Poly{0, 0, 1}, Poly{0, 1}, Poly{1}});
    CHECK(fit.coeffs == std::vector<Rational>{3, 2, 1});
    CHECK(fit.residual.is_zero());
    CHECK(fit.free_columns.empty());

    // Columns 0 and 1 coincide: the second one is free.
    auto dep = opc::fit_combination(Poly{4}, {Poly{1}, Poly{2}});
    CHECK(dep.free_columns == std::vector<int>{1});
    CHECK(dep.coeffs == std::vector<Rational>{4, 0});

    auto pinned = opc::fit_combination(Poly{4}, {Poly{1}, Poly{2}}, {std::nullopt, Rational(1)});
    CHECK(pinned.coeffs == std::vector<Rational>{2, 1});
    CHECK(pinned.residual.is_zero());

    auto off = opc::fit_combination(Poly{0, 0, 1}, {Poly{1}});
    CHECK(off.residual == Poly{0, 0, 1});
}
