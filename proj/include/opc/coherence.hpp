#pragma once

#include "opc/functional.hpp"
#include "opc/mops.hpp"
#include "opc/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opc {

// Coefficients of
//   R_n - d_{n-1} R_{n-1} - e_{n-2} R_{n-2} = Q_n - sigma_{n-1} Q_{n-1} - tau_{n-2} Q_{n-2},
// stored under their own index; negative indices read as zero.
struct CoherenceData {
    std::vector<Rational> sigma, tau, d, e;

    // e_n tau_n != 0 for every stored n >= 1.
    bool three_term() const;
    CoherenceData truncated(std::size_t count) const;
    friend bool operator==(const CoherenceData&, const CoherenceData&) = default;
};

struct RelationPins {
    std::vector<std::optional<Rational>> sigma, tau, d, e;
};

struct RelationFit {
    CoherenceData cd;
    std::vector<Poly> residual;                  // residual[n-1] for the relation at n
    std::vector<std::vector<std::string>> free;  // columns the data left open, per n
    bool exact() const;
};

// Fits the relation for n = 1..depth, columns in the order d, e, sigma, tau.
// The low relations do not determine sigma_0, sigma_1, tau_0, tau_1 on
// their own; unpinned open columns are set to zero and listed in `free`.
RelationFit fit_relation(const std::vector<Poly>& R, const std::vector<Poly>& Q, int depth,
                         const RelationPins& pins = {});

// R_0..R_depth rebuilt from Q and the coefficients; inverse of fit_relation.
std::vector<Poly> reconstruct_R(const CoherenceData& cd, const std::vector<Poly>& Q, int depth);

// The eight coefficient families of a pair: q = (b, c) is the recurrence of
// Q, r = (beta, gamma) that of R, both held in the Std convention.
struct CoefficientSet {
    Recurrence q, r;
    CoherenceData cd;
    std::size_t size() const;
};

struct StructureCoeffs {
    std::vector<Rational> A, B, C, D, E, F, G;
    std::vector<Rational> KR, KQ, XR, XQ;  // Case II combinations from either side
    std::vector<Rational> kappa;            // e_{n-2} gamma_{n-2} / e_{n-3}
    bool three_term = false;
    bool trivial_pair = false;  // sigma = d and tau = e wherever both are stored
    int depth() const { return static_cast<int>(A.size()) - 1; }
};

// Evaluates every family for n = 0..N, N = size-1.  Recurrences of either
// convention are accepted and converted to Std first.
StructureCoeffs structure_coeffs(const CoherenceData& cd, const Recurrence& q, const Recurrence& r);
StructureCoeffs structure_coeffs(const CoefficientSet& set);

enum class CaseTag { CaseI1i, CaseII1i, ReducedToTwoTerm, Trivial, Unclassified };

const char* case_tag_name(CaseTag t);

struct CaseVerdict {
    CaseTag tag = CaseTag::Unclassified;
    Rational A0;
    std::optional<long> index;  // first index breaking a uniform pattern
    std::string detail;
};

// Walks the decision tree over n in [from, N].  A mismatch between the R-side
// and Q-side form of a relation throws InconsistentStructure with its index.
CaseVerdict classify(const StructureCoeffs& sc, int from = 1);

struct SolveReport {
    CoefficientSet coeffs;
    std::optional<StructureCoeffs> structure;
    std::optional<CaseVerdict> verdict;
    CaseTag expected = CaseTag::CaseI1i;
    bool valid = false;
    std::string failure;  // violated relation when !valid
    std::optional<long> failure_index;
    std::vector<std::string> notes;
};

// Recomputes the structure coefficients of `set` and classifies them.
SolveReport verify_solution(CoefficientSet set, CaseTag expected, int from = 1);

struct Normalization {
    Rational c0 = 1, gamma0 = 1;  // <u, 1> and <u1, 1>; no structure relation reads them
};

// Case I solvers.  Given sequences need indices 0..N+1; outputs cover 0..N.
SolveReport solve_case1(const std::vector<Rational>& sigma, const std::vector<Rational>& tau,
                        const Rational& d0, const Rational& e0, int N, const Normalization& norm = {});
SolveReport solve_case2(const Recurrence& q, const Rational& sigma0, const Rational& d0, const Rational& e0,
                        int N, const Normalization& norm = {});
// e0 is forced by B_1 = 0; when omitted it is derived and a note records it.
SolveReport solve_case3(const Recurrence& r, const Rational& d0, const std::optional<Rational>& e0,
                        const Rational& sigma0, const Rational& tau0, int N, const Normalization& norm = {});
SolveReport solve_case4(const std::vector<Rational>& d, const std::vector<Rational>& e, const Rational& sigma0,
                        const Rational& tau0, int N, const Normalization& norm = {});

enum class Group1Pair { BetaGamma, DE };
enum class Group2Pair { BC, SigmaTau };

// Given pair sequences for the two groups plus scalar initials keyed by
// name ("d0", "sigma1", ...).  Propagates every Case II relation that is
// affine in a single unknown.  Given sequences need indices 0..N+2.
SolveReport solve_caseII(Group1Pair g1, const std::vector<Rational>& g1_first,
                         const std::vector<Rational>& g1_second, Group2Pair g2,
                         const std::vector<Rational>& g2_first, const std::vector<Rational>& g2_second,
                         const std::map<std::string, Rational>& initials, int N,
                         const Normalization& norm = {});

struct DegenerateVerdict {
    bool premise = false;             // sigma_0 = d_0 and tau_0 = e_0
    std::vector<Rational> u_on_R;     // <u, R_n> from the moment recursion
    std::vector<Rational> u1_on_Q;    // <u1, Q_n> from the mirrored recursion
    std::vector<Rational> u_on_R_direct, u1_on_Q_direct;
    bool recursions_vanish = false;   // all entries n >= 1 are zero
    bool recursions_match_direct = false;
    bool R_equals_Q = false;
    bool coefficients_equal = false;
};

// u is the functional of Q (u = phi u0) and u1 the functional of R.
DegenerateVerdict degenerate_check(const CoherenceData& cd, const MomentFunctional& u,
                                   const MomentFunctional& u1, int N);

}  // namespace opc
