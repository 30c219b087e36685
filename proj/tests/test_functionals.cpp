#include "opc/errors.hpp"
#include "opc/functional.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>
#include <thread>

using opc::ClassicalFamily;
using opc::MomentFunctional;
using opc::Poly;
using opc::Rational;

namespace {

std::vector<ClassicalFamily> catalog() {
    return {ClassicalFamily::hermite(),
            ClassicalFamily::laguerre(Rational(1, 2)),
            ClassicalFamily::laguerre(2, 2),
            ClassicalFamily::bessel(1),
            ClassicalFamily::jacobi(1, 0, 2),
            ClassicalFamily::jacobi(2, 1),
            ClassicalFamily::jacobi(Rational(-1, 2), Rational(1, 3))};
}

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("classical moments agree with closed forms") {
    auto h = MomentFunctional::classical(ClassicalFamily::hermite());
    CHECK(h.moment(1) == 0);
    CHECK(h.moment(4) == Rational(3, 4));
    auto l = MomentFunctional::classical(ClassicalFamily::laguerre(2, 2));
    CHECK(l.moment(1) == 6);
    for (long n = 0; n <= 20; ++n) {
        CHECK(h.moment(n) == oracle::hermite_moment(n));
        CHECK(l.moment(n) == oracle::laguerre_moment(n, 2, 2));
        CHECK(l.moment(n) == oracle::factorial(n + 2));
    }
    const Rational ha(1, 2);
    auto lh = MomentFunctional::classical(ClassicalFamily::laguerre(ha));
    auto b = MomentFunctional::classical(ClassicalFamily::bessel(1));
    auto j = MomentFunctional::classical(ClassicalFamily::jacobi(1, 0, 2));
    auto j2 = MomentFunctional::classical(ClassicalFamily::jacobi(Rational(-1, 2), Rational(1, 3)));
    for (long n = 0; n <= 20; ++n) {
        CHECK(lh.moment(n) == oracle::laguerre_moment(n, ha));
        CHECK(b.moment(n) == oracle::bessel_moment(n, 1));
        CHECK(j.moment(n) == oracle::jacobi_moment(n, 1, 0, 2));
        CHECK(j2.moment(n) == oracle::jacobi_moment(n, Rational(-1, 2), Rational(1, 3)));
    }
}

TEST_CASE("inadmissible parameters are rejected at construction") {
    CHECK_THROWS_AS(ClassicalFamily::laguerre(-1), opc::Error);
    CHECK_THROWS_AS(ClassicalFamily::laguerre(-3), opc::Error);
    CHECK_NOTHROW(ClassicalFamily::laguerre(Rational(-3, 2)));
    CHECK_THROWS_AS(ClassicalFamily::bessel(-2), opc::Error);
    CHECK_NOTHROW(ClassicalFamily::bessel(-1));
    CHECK_THROWS_AS(ClassicalFamily::jacobi(-1, 0), opc::Error);
    CHECK_THROWS_AS(ClassicalFamily::jacobi(0, -2), opc::Error);
    CHECK_THROWS_AS(ClassicalFamily::jacobi(Rational(-1, 2), Rational(-3, 2)), opc::Error);
    try {
        ClassicalFamily::jacobi(-1, 0);
    } catch (const opc::Error& e) {
        CHECK(e.kind() == opc::ErrorKind::InvalidParameter);
        CHECK(e.precondition().find("alpha") != std::string::npos);
    }
}

TEST_CASE("functional calculus") {
    auto h = MomentFunctional::classical(ClassicalFamily::hermite());
    CHECK(h.derive().moment(0) == 0);
    for (long n = 1; n < 10; ++n) CHECK(h.derive().moment(n) == Rational(-n * h.moment(n - 1)));
    for (long n = 0; n < 10; ++n) CHECK(h.mul_poly(Poly{1}).moment(n) == h.moment(n));
    CHECK(h.mul_poly(Poly::monomial(2)).moment(0) == Rational(1, 2));

    auto unit = MomentFunctional::explicit_moments({1, 0, 0, 0, 0});
    auto q = unit.div_linear(2);
    CHECK(q.moment(0) == 0);
    CHECK(q.moment(1) == 1);
    CHECK(q.moment(2) == 2);
    CHECK(q.moment(3) == 4);
    CHECK_THROWS_AS(unit.moment(7), opc::Error);
}

TEST_CASE("division by a linear factor is undone by multiplying it back") {
    auto j = MomentFunctional::classical(ClassicalFamily::jacobi(2, 1));
    for (Rational c : {Rational(1), Rational(-1), Rational(3, 7)}) {
        auto back = j.div_linear(c).mul_poly(Poly::x_minus(c));
        for (long n = 0; n < 15; ++n) CHECK(back.moment(n) == j.moment(n));
        // The quotient itself is the polynomial division p -> (p(x)-p(c))/(x-c).
        Poly p{3, -1, 0, 2, 5};
        auto [quot, rem] = opc::divmod(p - Poly{p.evaluate(c)}, Poly::x_minus(c));
        CHECK(rem.is_zero());
        CHECK(j.div_linear(c).pair(p) == j.pair(quot));
    }
}

TEST_CASE("derivative of a product pairs against phi p'") {
    std::mt19937 rng(3);
    for (const auto& fam : catalog()) {
        auto u = MomentFunctional::classical(fam);
        auto lhs = u.mul_poly(fam.phi()).derive();
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Rational> c;
            for (int k = 0; k <= 8; ++k) c.push_back(Rational(static_cast<int>(rng() % 19) - 9, 1 + rng() % 7));
            Poly p(c);
            CHECK(lhs.pair(p) == Rational(-u.pair(fam.phi() * p.derivative())));
        }
    }
}

TEST_CASE("delta functionals use the canonical sign") {
    auto z = MomentFunctional::zero();
    auto d0 = z.add_delta(1, 0, 1);
    for (long n = 0; n < 6; ++n) CHECK(d0.moment(n) == 1);
    auto d1 = z.add_delta(1, 1, 1);
    CHECK(d1.pair(Poly{0, 1}) == -1);
    CHECK(d1.pair(Poly{0, 0, 1}) == -2);
    auto d1c = z.add_delta(Rational(1, 2), 1, 3);
    Poly p{1, 2, 3, 4};
    CHECK(d1c.pair(p) == Rational(-3 * p.derivative().evaluate(Rational(1, 2))));
    CHECK_THROWS_AS(z.add_delta(1, 2, 1), opc::Error);
}

TEST_CASE("pearson check") {
    for (const auto& fam : catalog()) {
        auto u = MomentFunctional::classical(fam);
        CHECK(all_zero(opc::pearson_check(u, fam.phi(), fam.psi(), 20)));
    }
    auto h = MomentFunctional::classical(ClassicalFamily::hermite());
    CHECK(all_zero(opc::pearson_check(h, Poly{1}, Poly{0, -2}, 10)));
    auto j = MomentFunctional::classical(ClassicalFamily::jacobi(1, 0));
    CHECK(all_zero(opc::pearson_check(j, Poly{1, 0, -1}, Poly{-1, -3}, 10)));
    auto bad = opc::pearson_check(h, Poly{1}, Poly{0, -3}, 2);
    CHECK(bad[0] == 0);
    CHECK(bad[1] != 0);
}

TEST_CASE("strongly classical companion") {
    auto u = MomentFunctional::classical(ClassicalFamily::jacobi(2, 1, 4));
    auto w = opc::strongly_classical_companion(u);
    REQUIRE(w.classical_base());
    CHECK(w.classical_base()->tag() == opc::Family::Jacobi);
    CHECK(w.classical_base()->alpha() == 1);
    CHECK(w.classical_base()->beta() == 0);
    const Poly phi{1, 0, -1};
    for (long n = 0; n < 12; ++n) CHECK(w.mul_poly(phi).moment(n) == u.moment(n));
    CHECK(all_zero(opc::pearson_check(w, phi, u.classical_base()->psi() - phi.derivative(), 12)));

    auto h = MomentFunctional::classical(ClassicalFamily::hermite(3));
    auto wh = opc::strongly_classical_companion(h);
    CHECK(wh.classical_base()->tag() == opc::Family::Hermite);
    CHECK(wh.moment(0) == 3);

    auto l0 = MomentFunctional::classical(ClassicalFamily::laguerre(0));
    CHECK_THROWS_AS(opc::strongly_classical_companion(l0), opc::Error);
    CHECK_THROWS_AS(opc::strongly_classical_companion(u.derive()), opc::Error);

    auto b = MomentFunctional::classical(ClassicalFamily::bessel(Rational(5, 2)));
    auto wb = opc::strongly_classical_companion(b);
    for (long n = 0; n < 10; ++n) CHECK(wb.mul_poly(Poly{0, 0, 1}).moment(n) == b.moment(n));
}

TEST_CASE("memoised moments agree across threads") {
    auto u = MomentFunctional::classical(ClassicalFamily::jacobi(Rational(1, 3), Rational(2, 5))).div_linear(3);
    std::vector<std::vector<Rational>> seen(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            // Odd threads walk upward, even threads downward.
            for (long n = 0; n < 40; ++n) seen[t].push_back(u.moment((t % 2) ? n : 39 - n));
        });
    for (auto& th : pool) th.join();
    for (int t = 1; t < 4; ++t) CHECK(seen[t].size() == seen[0].size());
    auto fresh = MomentFunctional::classical(ClassicalFamily::jacobi(Rational(1, 3), Rational(2, 5))).div_linear(3);
    for (int t = 0; t < 4; ++t)
        for (long n = 0; n < 40; ++n) {
            const long idx = (t % 2) ? n : 39 - n;
            CHECK(seen[t][n] == fresh.moment(idx));
        }
}

TEST_CASE("descriptors list the base and the modification stack") {
    auto u = MomentFunctional::classical(ClassicalFamily::jacobi(1, 0, 2)).mul_poly(Poly{1, 0, -1}).add_delta(1, 1, 2);
    CHECK(u.describe() == "jacobi(alpha=1/1,beta=0/1,a0=2/1) | mul_poly[1/1,0/1,-1/1] | add_delta[c=1/1,order=1,w=2/1]");
}
