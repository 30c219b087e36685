#pragma once

// Closed-form moments and brute-force helpers used as independent oracles.

#include "opc/coherence.hpp"
#include "opc/mops.hpp"
#include "opc/poly.hpp"

#include <vector>

namespace oracle {

using opc::Poly;
using opc::Rational;

inline Rational factorial(long n) {
    Rational r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Rational binomial(long n, long k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

inline Rational rising(const Rational& a, long k) {
    Rational r = 1;
    for (long j = 0; j < k; ++j) r *= a + j;
    return r;
}

// Gaussian weight e^{-x^2} normalised to mass a0: a_{2k} = a0 (2k)!/(4^k k!).
inline Rational hermite_moment(long n, const Rational& a0 = 1) {
    if (n % 2) return 0;
    const long k = n / 2;
    Rational four_k = 1;
    for (long j = 0; j < k; ++j) four_k *= 4;
    return a0 * factorial(2 * k) / (four_k * factorial(k));
}

// x^alpha e^{-x} on (0, inf): Gamma(alpha+n+1)/Gamma(alpha+1) = (alpha+1)_n.
inline Rational laguerre_moment(long n, const Rational& alpha, const Rational& a0 = 1) {
    return a0 * rising(alpha + 1, n);
}

// (1-x)^alpha (1+x)^beta on [-1, 1], through x = 2t - 1 and Beta integrals:
// a_n / a_0 = sum_k C(n,k) 2^k (-1)^(n-k) (beta+1)_k / (alpha+beta+2)_k.
inline Rational jacobi_moment(long n, const Rational& alpha, const Rational& beta, const Rational& a0 = 1) {
    Rational acc = 0;
    for (long k = 0; k <= n; ++k) {
        Rational term = binomial(n, k) * rising(beta + 1, k) / rising(alpha + beta + 2, k);
        for (long j = 0; j < k; ++j) term *= 2;
        if ((n - k) % 2) term = -term;
        acc += term;
    }
    return a0 * acc;
}

// Bessel functional: a_n = a0 (-2)^n / (alpha+2)_n.
inline Rational bessel_moment(long n, const Rational& alpha, const Rational& a0 = 1) {
    Rational p = 1;
    for (long j = 0; j < n; ++j) p *= -2;
    return a0 * p / rising(alpha + 2, n);
}

// sum_k p_k m_k over an explicit moment list.
inline Rational pair(const std::vector<Rational>& moments, const Poly& p) {
    Rational acc = 0;
    for (int k = 0; k <= p.degree(); ++k) acc += p[k] * moments.at(k);
    return acc;
}

// True when Favard(beta, gamma) and Favard(b, c) satisfy the three-term
// relation with the given coefficients, checked on polynomials directly.
inline bool relation_holds(const opc::CoefficientSet& set, int depth) {
    const auto Q = opc::polys_from_recurrence(set.q, depth);
    const auto R = opc::polys_from_recurrence(set.r, depth);
    for (int n = 0; n <= depth; ++n) {
        Poly lhs = R[n], rhs = Q[n];
        if (n >= 1) {
            lhs -= set.cd.d.at(n - 1) * R[n - 1];
            rhs -= set.cd.sigma.at(n - 1) * Q[n - 1];
        }
        if (n >= 2) {
            lhs -= set.cd.e.at(n - 2) * R[n - 2];
            rhs -= set.cd.tau.at(n - 2) * Q[n - 2];
        }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace oracle
