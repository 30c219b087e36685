#pragma once

// Realizable coefficient data built forward from the structure relations.
// Every quantity here is produced by test code only, so the solvers can be
// checked against data they did not help create.

#include "opc/coherence.hpp"

#include <optional>
#include <random>
#include <vector>

namespace gen {

using opc::Rational;

// Nonzero rational with |num|, den <= 9.
inline Rational small_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(1, 9), den(1, 9), sign(0, 1);
    Rational q(num(rng) * (sign(rng) ? 1 : -1), den(rng));
    q.canonicalize();
    return q;
}

struct PairSpec {
    std::vector<Rational> A;      // A_0..A_{M+1}; zero beyond 0 gives Case I
    std::vector<Rational> kappa;  // kappa_0..kappa_{M+2}; entries below 3 are ignored
    Rational d0, e0, sigma0, tau0, c0 = 1, gamma0 = 1;
};

inline PairSpec random_spec(std::mt19937& rng, int M, bool case_two, bool zero_A0) {
    PairSpec s;
    s.A.assign(M + 2, 0);
    s.A[0] = zero_A0 ? Rational(0) : small_rational(rng);
    if (case_two)
        for (int n = 1; n <= M + 1; ++n) s.A[n] = small_rational(rng);
    s.kappa.assign(M + 3, 0);
    for (int n = 3; n <= M + 2; ++n) s.kappa[n] = small_rational(rng);
    s.d0 = small_rational(rng);
    s.e0 = small_rational(rng);
    s.sigma0 = small_rational(rng);
    s.tau0 = small_rational(rng);
    s.c0 = small_rational(rng);
    s.gamma0 = small_rational(rng);
    return s;
}

// One group: (rb, rc, s, t) = (beta, gamma, d, e) or (b, c, sigma, tau).
// Enforces A_n, K_{n+1} = 0, X_{n+2} = 0 and t_{n+1} = kappa_{n+3} t_n / rc_{n+1}.
inline bool build_group(const PairSpec& spec, const Rational& s0, const Rational& t0, int M,
                        std::vector<Rational>& rb, std::vector<Rational>& rc, std::vector<Rational>& s,
                        std::vector<Rational>& t) {
    const auto& A = spec.A;
    const auto& k = spec.kappa;
    rb.assign(M + 1, 0);
    rc.assign(M + 1, 0);
    s.assign(M + 1, 0);
    t.assign(M + 1, 0);
    s[0] = s0;
    t[0] = t0;
    rb[0] = A[0] - s0;
    for (int n = 0; n < M; ++n) {
        const Rational t_prev = n >= 1 ? t[n - 1] : Rational(0);
        const Rational k1 = n + 1 >= 3 ? k[n + 1] : Rational(0);
        const Rational k2 = n + 2 >= 3 ? k[n + 2] : Rational(0);
        rc[n + 1] = rb[n] * s[n] - t[n] + t_prev + k1 - s[n] * A[n + 1];
        if (rc[n + 1] == 0) return false;
        t[n + 1] = k[n + 3] * t[n] / rc[n + 1];
        s[n + 1] = (k2 * s[n] + t[n] * A[n + 2] - t[n] * rb[n]) / rc[n + 1];
        rb[n + 1] = A[n + 1] - s[n + 1] + s[n];
    }
    return true;
}

inline std::optional<opc::CoefficientSet> build(const PairSpec& spec, int M) {
    opc::CoefficientSet set;
    set.q.convention = set.r.convention = opc::Convention::Std;
    if (!build_group(spec, spec.d0, spec.e0, M, set.r.b, set.r.c, set.cd.d, set.cd.e)) return std::nullopt;
    if (!build_group(spec, spec.sigma0, spec.tau0, M, set.q.b, set.q.c, set.cd.sigma, set.cd.tau))
        return std::nullopt;
    set.q.c[0] = spec.c0;
    set.r.c[0] = spec.gamma0;
    for (int n = 1; n <= M; ++n)
        if (set.cd.e[n] * set.cd.tau[n] == 0) return std::nullopt;
    return set;
}

// Draws until a pivot-free dataset appears; deterministic for a given seed.
inline opc::CoefficientSet realizable(unsigned seed, int M, bool case_two, bool zero_A0) {
    std::mt19937 rng(seed);
    for (;;) {
        auto set = build(random_spec(rng, M, case_two, zero_A0), M);
        if (set) return *set;
    }
}

}  // namespace gen
