#pragma once

#include "opc/coherence.hpp"
#include "opc/functional.hpp"
#include "opc/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opc {

struct MkSolution {
    Rational M0, M1, M2;          // M_k = <A v, R_k>; M_k = 0 for k >= 3
    std::vector<Rational> AvQ;    // <A v, Q_n> for n = 0..4 at the solution
    Rational AvQ2_expected;       // e_2 M_2 / tau_2
    bool AvQ2_consistent = false; // <A v, Q_2> equals the expected value
};

// Solves <A v, Q_3> = <A v, Q_4> = 0 for (M_0, M_1) with M_2 = <A v, R_2>.
// R must reach index 2 and cd must carry sigma_0..3, tau_0..2, d_0..3, e_0..2.
MkSolution solve_Mk(const CoherenceData& cd, const Poly& A, const MomentFunctional& v, const std::vector<Poly>& R);

// u1 with <A u1, x^n> = <D u, x^n>: after normalising A to be monic,
//   m_{n+2} = <u, D x^n>/lead(A) - a_1 m_{n+1} - a_0 m_n, seeded by (m0, m1).
MomentFunctional companion_from_AD(const MomentFunctional& u, const Poly& A, const Poly& D, const Rational& m0,
                                   const Rational& m1);

// <A u1 - D u, x^k> for k = 0..N.
std::vector<Rational> verify_companion(const MomentFunctional& u, const MomentFunctional& u1, const Poly& A,
                                       const Poly& D, int N);

struct DeltaDecomposition {
    bool available = false;  // false when A has irrational roots
    std::string reason;
    std::vector<Rational> roots;
    std::optional<MomentFunctional> base;  // the rational modification (D/A) u
    std::vector<DeltaTerm> deltas;          // u1 = base + deltas
};

// Splits u1 into (x-r1)^{-1}(x-r2)^{-1}(D u / lead A) plus point masses at the
// roots of A (a delta and its derivative when the root is double).
DeltaDecomposition decompose_deltas(const MomentFunctional& u, const Poly& A, const Poly& D,
                                    const MomentFunctional& u1);

// Point mass written against a linear factor l with root c: order 0 is p(c);
// order 1 is normalised by <delta'(l), l> = 1, i.e. -p'(c)/l'(c).
DeltaTerm delta_on_linear_factor(const Poly& l, int order, const Rational& weight);

MomentFunctional with_deltas(const MomentFunctional& base, const std::vector<DeltaTerm>& deltas);

struct ModificationDegree {
    int degree;          // deg(D phi)
    std::string branch;  // family branch of the degree table
};

ModificationDegree classify_modification(const ClassicalFamily& u0, const Poly& D);

struct CompanionSpec {
    Poly A, D;
    std::optional<MkSolution> mk;
    DeltaDecomposition decomposition;
};

}  // namespace opc
