#include "opc/errors.hpp"
#include "opc/sobolev.hpp"

#include <doctest.h>

#include <random>

using opc::ClassicalFamily;
using opc::MomentFunctional;
using opc::Mops;
using opc::Poly;
using opc::Rational;

namespace {

const Poly kPhi{1, 0, -1};

MomentFunctional jacobi10() { return MomentFunctional::classical(ClassicalFamily::jacobi(1, 0)); }

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("Sobolev inner product values") {
    auto h = MomentFunctional::classical(ClassicalFamily::hermite());
    auto j = jacobi10();
    CHECK(opc::sobolev_inner(h, j, 5, Poly{0, 1}, Poly{1}) == h.moment(1));
    CHECK(opc::sobolev_inner(h, j, 5, Poly{1}, Poly{1}) == h.moment(0));
    CHECK(opc::sobolev_inner(h, h, 1, Poly{0, 1}, Poly{0, 1}) == Rational(3, 2));
    CHECK_THROWS_AS(opc::sobolev_inner(h, h, 0, Poly{1}, Poly{1}), opc::Error);
}

TEST_CASE("Sobolev basis is monic and orthogonal") {
    auto h = MomentFunctional::classical(ClassicalFamily::hermite());
    auto b = opc::generate_sobolev(h, h, 1, 6);
    CHECK(b.S[2] == (Poly{Rational(-1, 2), 0, 1}));
    CHECK(b.S[1] == Mops::generate(h, 1)[1]);

    auto u0 = jacobi10();
    auto u1 = MomentFunctional::classical(ClassicalFamily::laguerre(Rational(1, 2)));
    const Rational lambda(1, mpz_class("1000000000000000000000007"));
    auto s = opc::generate_sobolev(u0, u1, lambda, 8);
    CHECK(s.S[1] == Mops::generate(u0, 1)[1]);
    for (int n = 0; n <= 8; ++n) {
        CHECK(s.S[n].lead() == 1);
        CHECK(s.s_norms[n] == opc::sobolev_inner(u0, u1, lambda, s.S[n], s.S[n]));
        CHECK(s.s_norms[n] != 0);
        for (int k = 0; k < n; ++k) CHECK(opc::sobolev_inner(u0, u1, lambda, s.S[n], Poly::monomial(k)) == 0);
    }
}

TEST_CASE("Sobolev degeneracy is reported with the index") {
    // <u0, 1> = 1, <u0, x> = 0, <u0, x^2> = -1 and lambda <u1, 1> = 1 cancel at n = 1.
    auto u0 = MomentFunctional::explicit_moments({1, 0, -1, 0, 5});
    auto u1 = MomentFunctional::explicit_moments({1, 0, 1});
    try {
        opc::generate_sobolev(u0, u1, 1, 2);
        FAIL("expected SobolevDegeneracy");
    } catch (const opc::Error& e) {
        CHECK(e.kind() == opc::ErrorKind::SobolevDegeneracy);
        CHECK(*e.index() == 1);
    }
}

TEST_CASE("link formula") {
    std::vector<Rational> p{2, 3, 5, 7}, s{1, 4, 9, 16};
    auto [mu0, th0] = opc::link_from_formula({1, 2, 3, 4}, {0, 0, 0, 0}, p, s);
    CHECK(all_zero(th0));
    auto [mu1, th1] = opc::link_from_formula({0, 0, 0}, {0, 0, 0}, p, s);
    CHECK(all_zero(mu1));
    CHECK(all_zero(th1));
    auto [mu, th] = opc::link_from_formula({1, 2}, {3}, p, s);
    CHECK(mu[0] == 2);
    CHECK(th[0] == 6);
    // mu_1 = [2*3 + 3*(2 - 1)*2]/4
    CHECK(mu[1] == 3);
    CHECK_THROWS_AS(opc::link_from_formula({1}, {}, p, {0}), opc::Error);
}

TEST_CASE("linear relation fit") {
    auto u0 = jacobi10();
    Mops P = Mops::generate(u0, 6);
    auto same = opc::fit_linear_relation(P.polys(), P.polys(), 5);
    CHECK(same.exact());
    CHECK(all_zero(same.sigma_t));
    CHECK(all_zero(same.mu));

    auto h = MomentFunctional::classical(ClassicalFamily::hermite());
    Mops P8 = Mops::generate(u0, 9);
    auto unrelated = opc::generate_sobolev(h, MomentFunctional::classical(ClassicalFamily::jacobi(0, 0)), 1, 9);
    auto off = opc::fit_linear_relation(P8.polys(), unrelated.S, 8);
    CHECK_FALSE(off.exact());
    // Four columns span every difference of degree <= 3, so low relations always close.
    for (int n = 0; n < 3; ++n) CHECK(off.residual[n].is_zero());
}

TEST_CASE("coherent forward pipeline") {
    auto u0 = jacobi10();
    auto u1 = u0.mul_poly(kPhi);
    for (Rational lambda : {Rational(1), Rational(1, 3), Rational(-1), Rational(2)}) {
        auto chk = opc::check_generalized_coherence(u0, u1, lambda, 10);
        CHECK(chk.relation_exact);
        CHECK(chk.coherent);
        CHECK(all_zero(chk.link.d_t));
        CHECK(all_zero(chk.link.e_t));
        // u1 = phi u0 makes the Sobolev basis coincide with P while the norms differ.
        CHECK(chk.basis.S == chk.P.polys());
        CHECK(chk.basis.s_norms[3] != chk.P.norms()[3]);
        auto derived = chk.P.derivative_sequence();
        for (std::size_t n = 0; n < derived.size(); ++n) CHECK(chk.R[static_cast<int>(n)] == derived[n]);
    }
    // s_1 = p_1 + lambda r_0 = 2/9 + 2 lambda / 3 vanishes at lambda = -1/3.
    try {
        opc::check_generalized_coherence(u0, u1, Rational(-1, 3), 10);
        FAIL("expected SobolevDegeneracy");
    } catch (const opc::Error& e) {
        CHECK(e.kind() == opc::ErrorKind::SobolevDegeneracy);
        CHECK(*e.index() == 1);
    }
}

TEST_CASE("extended coefficients of pinned fits agree with the direct derivative fit") {
    auto u0 = jacobi10();
    auto u1 = u0.mul_poly(kPhi);
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    for (Rational lambda : {Rational(1), Rational(1, 3)}) {
        opc::LinearRelationPins pins;
        for (int n = 0; n < 11; ++n) {
            pins.mu.push_back(Rational(num(rng), den(rng)));
            pins.theta.push_back(Rational(num(rng), den(rng)));
        }
        // Depth 11 fits relations n = 0..10, so theta reaches index 9.
        auto chk = opc::check_generalized_coherence(u0, u1, lambda, 11, pins);
        REQUIRE(chk.relation_exact);
        CHECK_FALSE(chk.coherent);
        auto direct = opc::fit_extended_relation(chk.P.polys(), chk.R.polys(), chk.fit.sigma_t, chk.fit.tau_t, 11);
        CHECK(direct.exact());
        CHECK(direct.d_t == chk.link.d_t);
        CHECK(direct.e_t == chk.link.e_t);
        const auto& p = chk.P.norms();
        const auto& s = chk.basis.s_norms;
        const auto& r = chk.R.norms();
        for (int n = 2; n <= 10; ++n)
            CHECK(Rational(chk.link.theta[n - 1] * s[n - 1]) ==
                  Rational(chk.link.tau_t[n - 1] * p[n - 1] + (n - 1) * lambda * direct.e_t[n - 1] * r[n - 2]));
    }
}

TEST_CASE("extended coefficients from the link formula vanish") {
    std::vector<Rational> p{2, 3, 5, 7, 11}, s{1, 4, 9, 16, 25}, r{3, 1, 4, 1, 5};
    std::vector<Rational> st{1, -2, Rational(1, 3), 4}, tt{Rational(5, 2), -1, 7, 2};
    auto [mu, th] = opc::link_from_formula(st, tt, p, s);
    opc::SobolevLinkData link{st, tt, mu, th, {}, {}};
    auto [d, e] = opc::extended_coeffs(link, p, s, r, Rational(2, 3));
    CHECK(all_zero(d));
    CHECK(all_zero(e));

    auto bumped = link;
    bumped.mu[1] += 1;
    auto [d2, e2] = opc::extended_coeffs(bumped, p, s, r, Rational(2, 3));
    CHECK(Rational(d2[1] - d[1]) == Rational(s[1] / (Rational(2, 3) * r[0])));
    CHECK(e2 == e);
    auto zero_r = r;
    zero_r[0] = 0;
    CHECK_THROWS_AS(opc::extended_coeffs(link, p, s, zero_r, 1), opc::Error);
}

TEST_CASE("unrelated functionals are not coherent") {
    auto h = MomentFunctional::classical(ClassicalFamily::hermite());
    auto chk = opc::check_generalized_coherence(h, MomentFunctional::classical(ClassicalFamily::jacobi(0, 0)), 1, 8);
    CHECK_FALSE(chk.coherent);
}

TEST_CASE("pinned reductions give the two-term and symmetric patterns") {
    // tau~ = theta = 0 leaves e~ = 0.
    auto u0 = jacobi10();
    opc::LinearRelationPins two_term;
    two_term.tau_t.assign(8, Rational(0));
    two_term.theta.assign(8, Rational(0));
    two_term.mu.assign(8, Rational(3, 7));
    auto a = opc::check_generalized_coherence(u0, u0.mul_poly(kPhi), 2, 8, two_term);
    CHECK(a.relation_exact);
    CHECK(all_zero(a.link.e_t));
    CHECK_FALSE(all_zero(a.link.d_t));

    // sigma~ = mu = 0 on a symmetric pair leaves d~ = 0.
    auto g = MomentFunctional::classical(ClassicalFamily::jacobi(1, 1));
    opc::LinearRelationPins sym;
    sym.sigma_t.assign(8, Rational(0));
    sym.mu.assign(8, Rational(0));
    sym.theta.assign(8, Rational(-2, 5));
    auto b = opc::check_generalized_coherence(g, g.mul_poly(kPhi), Rational(1, 2), 8, sym);
    CHECK(b.relation_exact);
    CHECK(all_zero(b.link.d_t));
    CHECK_FALSE(all_zero(b.link.e_t));
}
