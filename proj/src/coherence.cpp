#include "opc/coherence.hpp"

#include "opc/errors.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace opc {

namespace {

// v_k with the convention v_k = 0 for k < 0.
Rational at(const std::vector<Rational>& v, long k) {
    if (k < 0) return 0;
    if (k >= static_cast<long>(v.size()))
        throw Error(ErrorKind::InvalidParameter, "sequence long enough", k);
    return v[k];
}

std::string sub(const char* name, long k) { return std::string(name) + "_" + std::to_string(k); }

// num_a * num_b / den, zero whenever the numerator vanishes.
Rational kappa_ratio(const Rational& num_a, const Rational& num_b, const Rational& den, long n,
                     const char* den_name) {
    Rational num = num_a * num_b;
    if (num == 0) return 0;
    if (den == 0) throw Error(ErrorKind::DivisionByZeroCoefficient, std::string(den_name) + " != 0", n);
    return num / den;
}

void require_length(const std::vector<Rational>& v, std::size_t need, const char* name) {
    if (v.size() < need)
        throw Error(ErrorKind::InvalidParameter, std::string(name) + " has indices 0..N+1",
                    static_cast<long>(v.size()));
}

}  // namespace

bool CoherenceData::three_term() const {
    for (std::size_t n = 1; n < e.size() && n < tau.size(); ++n)
        if (e[n] * tau[n] == 0) return false;
    return true;
}

CoherenceData CoherenceData::truncated(std::size_t count) const {
    auto cut = [count](const std::vector<Rational>& v) {
        return std::vector<Rational>(v.begin(), v.begin() + std::min(count, v.size()));
    };
    return {cut(sigma), cut(tau), cut(d), cut(e)};
}

bool RelationFit::exact() const {
    return std::all_of(residual.begin(), residual.end(), [](const Poly& p) { return p.is_zero(); });
}

RelationFit fit_relation(const std::vector<Poly>& R, const std::vector<Poly>& Q, int depth,
                         const RelationPins& pins) {
    if (static_cast<int>(R.size()) <= depth || static_cast<int>(Q.size()) <= depth)
        throw Error(ErrorKind::InvalidParameter, "R and Q reach degree depth", depth);
    auto pin = [](const std::vector<std::optional<Rational>>& v, int k) -> std::optional<Rational> {
        if (k < 0 || k >= static_cast<int>(v.size())) return std::nullopt;
        return v[k];
    };
    RelationFit out;
    for (int n = 1; n <= depth; ++n) {
        // R_n - Q_n = d R_{n-1} + e R_{n-2} - sigma Q_{n-1} - tau Q_{n-2}
        std::vector<Poly> cols{R[n - 1]};
        std::vector<std::optional<Rational>> pv{pin(pins.d, n - 1)};
        std::vector<std::string> names{sub("d", n - 1)};
        if (n >= 2) {
            cols.push_back(R[n - 2]);
            pv.push_back(pin(pins.e, n - 2));
            names.push_back(sub("e", n - 2));
        }
        cols.push_back(-Q[n - 1]);
        pv.push_back(pin(pins.sigma, n - 1));
        names.push_back(sub("sigma", n - 1));
        if (n >= 2) {
            cols.push_back(-Q[n - 2]);
            pv.push_back(pin(pins.tau, n - 2));
            names.push_back(sub("tau", n - 2));
        }
        CombinationFit fit = fit_combination(R[n] - Q[n], cols, pv);
        std::size_t j = 0;
        out.cd.d.push_back(fit.coeffs[j++]);
        if (n >= 2) out.cd.e.push_back(fit.coeffs[j++]);
        out.cd.sigma.push_back(fit.coeffs[j++]);
        if (n >= 2) out.cd.tau.push_back(fit.coeffs[j++]);
        std::vector<std::string> free;
        for (int c : fit.free_columns) free.push_back(names[c]);
        out.free.push_back(std::move(free));
        out.residual.push_back(std::move(fit.residual));
    }
    return out;
}

std::vector<Poly> reconstruct_R(const CoherenceData& cd, const std::vector<Poly>& Q, int depth) {
    std::vector<Poly> R;
    for (int n = 0; n <= depth; ++n) {
        Poly p = Q.at(n);
        if (n >= 1) p += cd.d.at(n - 1) * R[n - 1] - cd.sigma.at(n - 1) * Q[n - 1];
        if (n >= 2) p += cd.e.at(n - 2) * R[n - 2] - cd.tau.at(n - 2) * Q[n - 2];
        R.push_back(std::move(p));
    }
    return R;
}

std::size_t CoefficientSet::size() const {
    return std::min({q.b.size(), q.c.size(), r.b.size(), r.c.size(), cd.sigma.size(), cd.tau.size(),
                     cd.d.size(), cd.e.size()});
}

StructureCoeffs structure_coeffs(const CoherenceData& cd, const Recurrence& q_in, const Recurrence& r_in) {
    const Recurrence q = q_in.to(Convention::Std);
    const Recurrence r = r_in.to(Convention::Std);
    const long N = static_cast<long>(CoefficientSet{q, r, cd}.size()) - 1;
    const auto &b = q.b, &c = q.c, &be = r.b, &ga = r.c;
    const auto &sg = cd.sigma, &ta = cd.tau, &d = cd.d, &e = cd.e;

    StructureCoeffs sc;
    sc.three_term = cd.three_term();
    sc.trivial_pair = sg == d && ta == e;
    for (long n = 0; n <= N; ++n) {
        Rational A = at(be, n) + at(d, n) - at(d, n - 1);
        Rational D = at(b, n) + at(sg, n) - at(sg, n - 1);
        Rational kappa = n >= 3 ? kappa_ratio(at(e, n - 2), at(ga, n - 2), at(e, n - 3), n, "e_{n-3}")
                                : Rational(0);
        Rational B = 0, E = 0, C = 0, F = 0, G = 0, KR = 0, KQ = 0, XR = 0, XQ = 0;
        if (n >= 1) {
            B = at(ga, n) - at(be, n - 1) * at(d, n - 1) + at(e, n - 1) - at(e, n - 2) - kappa;
            E = at(c, n) - at(b, n - 1) * at(sg, n - 1) + at(ta, n - 1) - at(ta, n - 2) - kappa;
            KR = B + at(d, n - 1) * A;
            KQ = E + at(sg, n - 1) * D;
        }
        if (n >= 2) {
            C = at(d, n - 1) * at(ga, n - 1) + at(e, n - 2) * at(be, n - 2) - kappa * at(d, n - 2);
            F = at(sg, n - 1) * at(c, n - 1) + at(ta, n - 2) * at(b, n - 2) - kappa * at(sg, n - 2);
            XR = C - at(e, n - 2) * A;
            XQ = F - at(ta, n - 2) * D;
        }
        if (n >= 3) G = at(ta, n - 2) * at(c, n - 2) - kappa * at(ta, n - 3);
        sc.A.push_back(A);
        sc.B.push_back(B);
        sc.C.push_back(C);
        sc.D.push_back(D);
        sc.E.push_back(E);
        sc.F.push_back(F);
        sc.G.push_back(G);
        sc.KR.push_back(KR);
        sc.KQ.push_back(KQ);
        sc.XR.push_back(XR);
        sc.XQ.push_back(XQ);
        sc.kappa.push_back(kappa);
    }
    return sc;
}

StructureCoeffs structure_coeffs(const CoefficientSet& set) { return structure_coeffs(set.cd, set.q, set.r); }

const char* case_tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::CaseI1i: return "CaseI1i";
        case CaseTag::CaseII1i: return "CaseII1i";
        case CaseTag::ReducedToTwoTerm: return "ReducedToTwoTerm";
        case CaseTag::Trivial: return "Trivial(R=Q)";
        case CaseTag::Unclassified: return "Unclassified";
    }
    return "Unknown";
}

namespace {

enum class Pattern { AllZero, NoneZero, Mixed };

struct Scan {
    Pattern pattern;
    long first_break;
};

Scan scan(const std::vector<Rational>& v, long lo, long hi) {
    bool any_zero = false, any_nonzero = false;
    long first_break = -1;
    for (long n = lo; n <= hi; ++n) {
        (v[n] == 0 ? any_zero : any_nonzero) = true;
        if (any_zero && any_nonzero && first_break < 0) first_break = n;
    }
    if (any_zero && any_nonzero) return {Pattern::Mixed, first_break};
    return {any_nonzero ? Pattern::NoneZero : Pattern::AllZero, -1};
}

void require_equal(const std::vector<Rational>& a, const std::vector<Rational>& b, long lo, long hi,
                   const char* relation) {
    for (long n = lo; n <= hi; ++n)
        if (a[n] != b[n]) throw Error(ErrorKind::InconsistentStructure, relation, n);
}

void require_zero(const std::vector<Rational>& a, long lo, long hi, const char* relation) {
    for (long n = lo; n <= hi; ++n)
        if (a[n] != 0) throw Error(ErrorKind::InconsistentStructure, relation, n);
}

CaseVerdict unclassified(const Rational& A0, long index, const char* what) {
    return {CaseTag::Unclassified, A0, index, std::string(what) + " neither all zero nor all nonzero"};
}

}  // namespace

CaseVerdict classify(const StructureCoeffs& sc, int from) {
    const long N = sc.depth();
    const Rational A0 = sc.A.empty() ? Rational(0) : sc.A[0];
    if (sc.trivial_pair) return {CaseTag::Trivial, A0, std::nullopt, "sigma = d and tau = e"};
    if (!sc.three_term) return {CaseTag::ReducedToTwoTerm, A0, std::nullopt, "some e_n tau_n = 0"};
    const long lo1 = std::max<long>(from, 1), lo2 = std::max<long>(from, 2), lo3 = std::max<long>(from, 3);
    if (N < lo3 + 1)
        throw Error(ErrorKind::InvalidParameter, "structure depth covers the classified window", N);

    require_equal(sc.A, sc.D, 0, N, "A_n = D_n");
    const Scan a = scan(sc.A, lo1, N);
    if (a.pattern == Pattern::Mixed) return unclassified(A0, a.first_break, "A_n");

    if (a.pattern == Pattern::AllZero) {
        require_equal(sc.B, sc.E, lo1, N, "B_n = E_n");
        const Scan bs = scan(sc.B, lo1, N);
        if (bs.pattern == Pattern::Mixed) return unclassified(A0, bs.first_break, "B_n");
        if (bs.pattern == Pattern::NoneZero)
            return {CaseTag::ReducedToTwoTerm, A0, std::nullopt, "B_n = E_n != 0"};
        require_equal(sc.C, sc.F, lo2, N, "C_n = F_n");
        const Scan cs = scan(sc.C, lo2, N);
        if (cs.pattern == Pattern::Mixed) return unclassified(A0, cs.first_break, "C_n");
        if (cs.pattern == Pattern::NoneZero) return {CaseTag::Trivial, A0, std::nullopt, "C_n = F_n != 0"};
        require_zero(sc.G, lo3, N, "G_n = 0");
        return {CaseTag::CaseI1i, A0, std::nullopt, "A = B = C = 0"};
    }

    require_equal(sc.KR, sc.KQ, lo1, N, "K^R_n = K^Q_n");
    const Scan ks = scan(sc.KR, lo1, N);
    if (ks.pattern == Pattern::Mixed) return unclassified(A0, ks.first_break, "K_n");
    if (ks.pattern == Pattern::NoneZero) return {CaseTag::ReducedToTwoTerm, A0, std::nullopt, "K_n != 0"};
    require_equal(sc.XR, sc.XQ, lo2, N, "X^R_n = X^Q_n");
    const Scan xs = scan(sc.XR, lo2, N);
    if (xs.pattern == Pattern::Mixed) return unclassified(A0, xs.first_break, "X_n");
    if (xs.pattern == Pattern::NoneZero) return {CaseTag::Trivial, A0, std::nullopt, "X_n != 0"};
    require_zero(sc.G, lo3, N, "G_n = 0");
    return {CaseTag::CaseII1i, A0, std::nullopt, "A != 0, K = X = 0"};
}

SolveReport verify_solution(CoefficientSet set, CaseTag expected, int from) {
    SolveReport rep;
    rep.coeffs = std::move(set);
    rep.expected = expected;
    try {
        rep.structure = structure_coeffs(rep.coeffs);
        rep.verdict = classify(*rep.structure, from);
        if (rep.verdict->tag == expected) {
            rep.valid = true;
        } else {
            rep.failure = std::string("classified as ") + case_tag_name(rep.verdict->tag);
            rep.failure_index = rep.verdict->index;
        }
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::InconsistentStructure && err.kind() != ErrorKind::DivisionByZeroCoefficient)
            throw;
        rep.failure = err.precondition();
        rep.failure_index = err.index();
    }
    return rep;
}

namespace {

// Fills (rb, rc, s, t) for n = 0..N from the Case I relations of one group:
//   rb_n = s_{n-1} - s_n (n >= 1), rb_0 = A0 - s_0,
//   rc_{n+1} = rb_n s_n - t_n + t_{n-1} + kappa_{n+1},
//   t_{n+1} = kappa_{n+3} t_n / rc_{n+1},
//   s_{n+1} = (kappa_{n+2} s_n - t_n rb_n) / rc_{n+1}.
// Group 1 reads (beta, gamma, d, e), group 2 (b, c, sigma, tau).
void interleave(std::vector<Rational>& rb, std::vector<Rational>& rc, std::vector<Rational>& s,
                std::vector<Rational>& t, const Rational& A0, const Rational& s0, const Rational& t0,
                const std::function<Rational(long)>& kappa, long N, const char* rc_name) {
    rb.assign(N + 1, 0);
    rc.assign(N + 1, 0);
    s.assign(N + 1, 0);
    t.assign(N + 1, 0);
    s[0] = s0;
    t[0] = t0;
    rb[0] = A0 - s0;
    for (long n = 0; n < N; ++n) {
        if (n >= 1) rb[n] = s[n - 1] - s[n];
        rc[n + 1] = rb[n] * s[n] - t[n] + at(t, n - 1) + kappa(n + 1);
        if (rc[n + 1] == 0)
            throw Error(ErrorKind::DivisionByZeroCoefficient, std::string(rc_name) + "_{n} != 0", n + 1);
        t[n + 1] = kappa(n + 3) * t[n] / rc[n + 1];
        s[n + 1] = (kappa(n + 2) * s[n] - t[n] * rb[n]) / rc[n + 1];
    }
    if (N >= 1) rb[N] = s[N - 1] - s[N];
}

// kappa_n = t_{n-2} rc_{n-2} / t_{n-3}, zero for n < 3.
std::function<Rational(long)> kappa_from(const std::vector<Rational>& t, const std::vector<Rational>& rc,
                                         const char* t_name) {
    return [&t, &rc, t_name](long n) -> Rational {
        if (n < 3) return 0;
        return kappa_ratio(at(t, n - 2), at(rc, n - 2), at(t, n - 3), n, t_name);
    };
}

SolveReport finish(std::vector<Rational> b, std::vector<Rational> c, std::vector<Rational> be,
                   std::vector<Rational> ga, CoherenceData cd, long N, const Normalization& norm,
                   CaseTag expected, std::vector<std::string> notes) {
    auto cut = [N](std::vector<Rational> v) {
        v.resize(N + 1);
        return v;
    };
    c = cut(std::move(c));
    ga = cut(std::move(ga));
    c[0] = norm.c0;
    ga[0] = norm.gamma0;
    CoefficientSet set{{cut(std::move(b)), std::move(c), Convention::Std},
                       {cut(std::move(be)), std::move(ga), Convention::Std},
                       cd.truncated(N + 1)};
    SolveReport rep = verify_solution(std::move(set), expected);
    rep.notes = std::move(notes);
    return rep;
}

void require_depth(int N) {
    if (N < 4) throw Error(ErrorKind::InvalidParameter, "N >= 4", N);
}

}  // namespace

SolveReport solve_case1(const std::vector<Rational>& sigma, const std::vector<Rational>& tau,
                        const Rational& d0, const Rational& e0, int N, const Normalization& norm) {
    require_depth(N);
    require_length(sigma, N + 2, "sigma");
    require_length(tau, N + 2, "tau");
    std::vector<Rational> s(sigma.begin(), sigma.begin() + N + 1), t(tau.begin(), tau.begin() + N + 1);
    std::vector<Rational> b(N + 1), c(N + 1);
    b[0] = -s[0];
    for (long n = 1; n <= N; ++n) b[n] = s[n - 1] - s[n];
    // E_n = 0 solved for c_n, with kappa_n read off the (c, tau) pair itself.
    for (long n = 1; n <= N; ++n) {
        Rational kappa = n >= 3 ? kappa_ratio(t[n - 2], c[n - 2], t[n - 3], n, "tau_{n-3}") : Rational(0);
        c[n] = b[n - 1] * s[n - 1] - t[n - 1] + at(t, n - 2) + kappa;
    }
    std::vector<Rational> be, ga, d, e;
    interleave(be, ga, d, e, 0, d0, e0, kappa_from(t, c, "tau_{n-3}"), N, "gamma");
    return finish(b, c, be, ga, {s, t, d, e}, N, norm, CaseTag::CaseI1i, {});
}

SolveReport solve_case2(const Recurrence& q_in, const Rational& sigma0, const Rational& d0, const Rational& e0,
                        int N, const Normalization& norm_in) {
    require_depth(N);
    const Recurrence q = q_in.to(Convention::Std);
    require_length(q.b, N + 2, "b");
    require_length(q.c, N + 2, "c");
    const auto &b = q.b, &c = q.c;
    std::vector<Rational> s(N + 1), t(N + 2);
    s[0] = sigma0;
    for (long n = 1; n <= N; ++n) s[n] = s[n - 1] - b[n];
    const Rational A0 = b[0] + s[0];
    // E_n = 0 solved for tau_{n-1}.
    for (long n = 1; n <= N + 1; ++n) {
        Rational kappa = n >= 3 ? kappa_ratio(t[n - 2], c[n - 2], t[n - 3], n, "tau_{n-3}") : Rational(0);
        t[n - 1] = b[n - 1] * at(s, n - 1) - c[n] + at(t, n - 2) + kappa;
    }
    t.resize(N + 1);
    std::vector<Rational> be, ga, d, e;
    interleave(be, ga, d, e, A0, d0, e0, kappa_from(t, c, "tau_{n-3}"), N, "gamma");
    Normalization norm = norm_in;
    norm.c0 = c[0];
    return finish(b, c, be, ga, {s, t, d, e}, N, norm, CaseTag::CaseI1i,
                  {"A_0 = b_0 + sigma_0 = " + format_rational(A0)});
}

SolveReport solve_case3(const Recurrence& r_in, const Rational& d0, const std::optional<Rational>& e0,
                        const Rational& sigma0, const Rational& tau0, int N, const Normalization& norm_in) {
    require_depth(N);
    const Recurrence r = r_in.to(Convention::Std);
    require_length(r.b, N + 2, "beta");
    require_length(r.c, N + 2, "gamma");
    const auto &be = r.b, &ga = r.c;
    std::vector<Rational> d(N + 1), e(N + 1);
    std::vector<std::string> notes;
    d[0] = d0;
    for (long n = 1; n <= N; ++n) d[n] = d[n - 1] - be[n];
    const Rational e0_forced = be[0] * d[0] - ga[1];
    e[0] = e0 ? *e0 : e0_forced;
    if (!e0) notes.push_back("e_0 derived from B_1 = 0: " + format_rational(e0_forced));
    // B_n = 0 solved for e_{n-1}.
    for (long n = 2; n <= N + 1; ++n) {
        Rational kappa = n >= 3 ? kappa_ratio(e[n - 2], ga[n - 2], e[n - 3], n, "e_{n-3}") : Rational(0);
        e[n - 1] = e[n - 2] + kappa - ga[n] + be[n - 1] * d[n - 1];
    }
    const Rational A0 = be[0] + d[0];
    std::vector<Rational> b, c, s, t;
    interleave(b, c, s, t, A0, sigma0, tau0, kappa_from(e, ga, "e_{n-3}"), N, "c");
    notes.push_back("A_0 = beta_0 + d_0 = " + format_rational(A0));
    Normalization norm = norm_in;
    norm.gamma0 = ga[0];
    return finish(b, c, be, ga, {s, t, d, e}, N, norm, CaseTag::CaseI1i, notes);
}

SolveReport solve_case4(const std::vector<Rational>& d_in, const std::vector<Rational>& e_in,
                        const Rational& sigma0, const Rational& tau0, int N, const Normalization& norm) {
    require_depth(N);
    require_length(d_in, N + 2, "d");
    require_length(e_in, N + 2, "e");
    std::vector<Rational> d(d_in.begin(), d_in.begin() + N + 1), e(e_in.begin(), e_in.begin() + N + 1);
    std::vector<Rational> be(N + 1), ga(N + 1);
    be[0] = -d[0];
    for (long n = 1; n <= N; ++n) be[n] = d[n - 1] - d[n];
    // B_n = 0 solved for gamma_n.
    for (long n = 1; n <= N; ++n) {
        Rational kappa = n >= 3 ? kappa_ratio(e[n - 2], ga[n - 2], e[n - 3], n, "e_{n-3}") : Rational(0);
        ga[n] = be[n - 1] * d[n - 1] - e[n - 1] + at(e, n - 2) + kappa;
    }
    std::vector<Rational> b, c, s, t;
    interleave(b, c, s, t, 0, sigma0, tau0, kappa_from(e, ga, "e_{n-3}"), N, "c");
    return finish(b, c, be, ga, {s, t, d, e}, N, norm, CaseTag::CaseI1i, {});
}

namespace {

enum Var { vb, vc, vbeta, vgamma, vsigma, vtau, vd, ve, kVarCount };

constexpr std::array<const char*, kVarCount> kVarNames{"b", "c", "beta", "gamma", "sigma", "tau", "d", "e"};

bool zero_below_index(int v) { return v == vsigma || v == vtau || v == vd || v == ve; }

using Table = std::array<std::vector<std::optional<Rational>>, kVarCount>;
using Value = std::function<Rational(int, long)>;

struct Equation {
    std::string name;
    long n;
    std::vector<std::pair<int, long>> vars;
    std::function<Rational(const Value&)> f;
};

std::vector<Equation> caseII_equations(long M) {
    std::vector<Equation> eqs;
    auto A = [](const Value& v, long n) -> Rational { return v(vbeta, n) + v(vd, n) - v(vd, n - 1); };
    auto D = [](const Value& v, long n) -> Rational { return v(vb, n) + v(vsigma, n) - v(vsigma, n - 1); };
    // e_{n-3} kappa_n with kappa_n = e_{n-2} gamma_{n-2} / e_{n-3}.
    auto kappa_num = [](const Value& v, long n) -> Rational {
        return n >= 3 ? v(ve, n - 2) * v(vgamma, n - 2) : Rational(0);
    };
    auto scale = [](const Value& v, long n) -> Rational { return n >= 3 ? v(ve, n - 3) : Rational(1); };

    for (long n = 0; n <= M; ++n) {
        eqs.push_back({"A_n = D_n", n,
                       {{vbeta, n}, {vd, n}, {vd, n - 1}, {vb, n}, {vsigma, n}, {vsigma, n - 1}},
                       [=](const Value& v) -> Rational { return A(v, n) - D(v, n); }});
        if (n >= 1) {
            std::vector<std::pair<int, long>> kr{{vgamma, n}, {vbeta, n - 1}, {vd, n - 1}, {ve, n - 1},
                                                 {ve, n - 2}, {vbeta, n},     {vd, n}};
            std::vector<std::pair<int, long>> kq{{vc, n},       {vb, n - 1}, {vsigma, n - 1}, {vtau, n - 1},
                                                 {vtau, n - 2}, {vb, n},     {vsigma, n}};
            if (n >= 3)
                for (auto* list : {&kr, &kq}) {
                    list->push_back({ve, n - 3});
                    list->push_back({vgamma, n - 2});
                }
            eqs.push_back({"K^R_n = 0", n, kr, [=](const Value& v) -> Rational {
                               Rational B = v(vgamma, n) - v(vbeta, n - 1) * v(vd, n - 1) + v(ve, n - 1) -
                                            v(ve, n - 2) + v(vd, n - 1) * A(v, n);
                               return scale(v, n) * B - kappa_num(v, n);
                           }});
            eqs.push_back({"K^Q_n = 0", n, kq, [=](const Value& v) -> Rational {
                               Rational E = v(vc, n) - v(vb, n - 1) * v(vsigma, n - 1) + v(vtau, n - 1) -
                                            v(vtau, n - 2) + v(vsigma, n - 1) * D(v, n);
                               return scale(v, n) * E - kappa_num(v, n);
                           }});
        }
        if (n >= 2) {
            std::vector<std::pair<int, long>> xr{{vd, n - 1}, {vgamma, n - 1}, {ve, n - 2}, {vbeta, n - 2},
                                                 {vd, n - 2}, {vbeta, n},      {vd, n}};
            std::vector<std::pair<int, long>> xq{{vsigma, n - 1}, {vc, n - 1}, {vtau, n - 2}, {vb, n - 2},
                                                 {vsigma, n - 2}, {vb, n},     {vsigma, n}};
            if (n >= 3)
                for (auto* list : {&xr, &xq}) {
                    list->push_back({ve, n - 3});
                    list->push_back({vgamma, n - 2});
                }
            eqs.push_back({"X^R_n = 0", n, xr, [=](const Value& v) -> Rational {
                               Rational C = v(vd, n - 1) * v(vgamma, n - 1) + v(ve, n - 2) * v(vbeta, n - 2) -
                                            v(ve, n - 2) * A(v, n);
                               return scale(v, n) * C - kappa_num(v, n) * v(vd, n - 2);
                           }});
            eqs.push_back({"X^Q_n = 0", n, xq, [=](const Value& v) -> Rational {
                               Rational F = v(vsigma, n - 1) * v(vc, n - 1) + v(vtau, n - 2) * v(vb, n - 2) -
                                            v(vtau, n - 2) * D(v, n);
                               return scale(v, n) * F - kappa_num(v, n) * v(vsigma, n - 2);
                           }});
        }
        if (n >= 3)
            eqs.push_back({"G_n = 0", n,
                           {{vtau, n - 2}, {vc, n - 2}, {ve, n - 3}, {ve, n - 2}, {vgamma, n - 2}, {vtau, n - 3}},
                           [=](const Value& v) -> Rational {
                               return v(vtau, n - 2) * v(vc, n - 2) * v(ve, n - 3) -
                                      v(ve, n - 2) * v(vgamma, n - 2) * v(vtau, n - 3);
                           }});
    }
    return eqs;
}

std::pair<int, long> parse_initial_name(const std::string& key) {
    for (int v = 0; v < kVarCount; ++v) {
        const std::string name = kVarNames[v];
        if (key.size() <= name.size() || key.compare(0, name.size(), name) != 0) continue;
        const std::string digits = key.substr(name.size());
        if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            continue;
        return {v, std::stol(digits)};
    }
    throw Error(ErrorKind::ConfigError, "initial name is <family><index>", std::nullopt, key);
}

}  // namespace

SolveReport solve_caseII(Group1Pair g1, const std::vector<Rational>& g1_first,
                         const std::vector<Rational>& g1_second, Group2Pair g2,
                         const std::vector<Rational>& g2_first, const std::vector<Rational>& g2_second,
                         const std::map<std::string, Rational>& initials, int N, const Normalization& norm) {
    require_depth(N);
    const long M = N + 2;
    for (const auto* seq : {&g1_first, &g1_second, &g2_first, &g2_second})
        if (static_cast<long>(seq->size()) < M + 1)
            throw Error(ErrorKind::InvalidParameter, "given sequences have indices 0..N+2",
                        static_cast<long>(seq->size()));

    Table table;
    for (auto& col : table) col.assign(M + 1, std::nullopt);
    auto load = [&](int var, const std::vector<Rational>& seq) {
        for (long k = 0; k <= M; ++k) table[var][k] = seq[k];
    };
    if (g1 == Group1Pair::BetaGamma) {
        load(vbeta, g1_first);
        load(vgamma, g1_second);
    } else {
        load(vd, g1_first);
        load(ve, g1_second);
    }
    if (g2 == Group2Pair::BC) {
        load(vb, g2_first);
        load(vc, g2_second);
    } else {
        load(vsigma, g2_first);
        load(vtau, g2_second);
    }
    if (!table[vgamma][0]) table[vgamma][0] = norm.gamma0;
    if (!table[vc][0]) table[vc][0] = norm.c0;
    for (const auto& [key, value] : initials) {
        auto [var, k] = parse_initial_name(key);
        if (k > M) throw Error(ErrorKind::ConfigError, "initial index <= N+2", k, key);
        if (table[var][k] && *table[var][k] != value)
            throw Error(ErrorKind::ConfigError, "initial does not contradict a given sequence", k, key);
        table[var][k] = value;
    }

    auto known = [&](int var, long k) { return (k < 0 && zero_below_index(var)) || (k >= 0 && table[var][k]); };
    const std::vector<Equation> eqs = caseII_equations(M);
    std::vector<bool> done(eqs.size(), false);
    std::vector<std::string> notes;

    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < eqs.size() && !progress; ++i) {
            if (done[i]) continue;
            const Equation& eq = eqs[i];
            std::vector<std::pair<int, long>> unknown;
            for (const auto& [var, k] : eq.vars)
                if (!known(var, k) &&
                    std::find(unknown.begin(), unknown.end(), std::pair<int, long>{var, k}) == unknown.end())
                    unknown.emplace_back(var, k);
            if (unknown.size() > 1) continue;
            if (unknown.empty()) {
                const Value v = [&](int var, long k) { return k < 0 ? Rational(0) : *table[var][k]; };
                if (eq.f(v) != 0 && notes.empty())
                    notes.push_back("over-determined relation " + eq.name + " fails at n=" + std::to_string(eq.n));
                done[i] = true;
                continue;
            }
            const int uvar = unknown.front().first;
            const long uk = unknown.front().second;
            // Sample f along the unknown; accept only exactly affine dependence.
            std::array<Rational, 4> f;
            for (int x = 0; x < 4; ++x) {
                const Value v = [&, x](int var, long k) -> Rational {
                    if (var == uvar && k == uk) return x;
                    return k < 0 ? Rational(0) : *table[var][k];
                };
                f[x] = eq.f(v);
            }
            const Rational d2 = f[2] - 2 * f[1] + f[0];
            const Rational d3 = f[3] - 3 * f[2] + 3 * f[1] - f[0];
            const Rational slope = f[1] - f[0];
            if (d2 != 0 || d3 != 0 || slope == 0) continue;
            table[uvar][uk] = -f[0] / slope;
            done[i] = true;
            progress = true;
        }
    }

    std::vector<std::string> missing;
    for (long k = 0; k <= N; ++k)
        for (int var = 0; var < kVarCount; ++var)
            if (!table[var][k]) missing.push_back(sub(kVarNames[var], k));
    if (!missing.empty()) {
        std::string list;
        for (std::size_t i = 0; i < missing.size() && i < 8; ++i) list += (i ? "," : "") + missing[i];
        if (missing.size() > 8) list += ",...";
        throw Error(ErrorKind::UnderdeterminedInitials, "initials close the recursion", std::nullopt,
                    "unresolved " + list);
    }

    auto column = [&](int var) {
        std::vector<Rational> out;
        for (long k = 0; k <= N; ++k) out.push_back(*table[var][k]);
        return out;
    };
    CoherenceData cd{column(vsigma), column(vtau), column(vd), column(ve)};
    std::vector<Rational> be = column(vbeta), dd = cd.d;
    for (long n = 1; n <= N; ++n)
        if (be[n] + dd[n] - dd[n - 1] == 0)
            throw Error(ErrorKind::NotCaseII, "A_n != 0", n);
    Normalization used{*table[vc][0], *table[vgamma][0]};
    return finish(column(vb), column(vc), be, column(vgamma), cd, N, used, CaseTag::CaseII1i, notes);
}

DegenerateVerdict degenerate_check(const CoherenceData& cd, const MomentFunctional& u, const MomentFunctional& u1,
                                   int N) {
    DegenerateVerdict out;
    out.premise = at(cd.sigma, 0) == at(cd.d, 0) && at(cd.tau, 0) == at(cd.e, 0);
    const Rational u0 = u.moment(0), v0 = u1.moment(0);
    // Pairing the relation with u (resp. u1) kills every Q_k (resp. R_k), k >= 1.
    for (long n = 0; n <= N; ++n) {
        Rational a, b;
        if (n == 0) {
            a = u0;
            b = v0;
        } else {
            a = at(cd.d, n - 1) * out.u_on_R[n - 1];
            b = at(cd.sigma, n - 1) * out.u1_on_Q[n - 1];
            if (n >= 2) {
                a += at(cd.e, n - 2) * out.u_on_R[n - 2];
                b += at(cd.tau, n - 2) * out.u1_on_Q[n - 2];
            }
            if (n == 1) {
                a -= at(cd.sigma, 0) * u0;
                b -= at(cd.d, 0) * v0;
            }
            if (n == 2) {
                a -= at(cd.tau, 0) * u0;
                b -= at(cd.e, 0) * v0;
            }
        }
        out.u_on_R.push_back(a);
        out.u1_on_Q.push_back(b);
    }
    out.recursions_vanish = true;
    for (long n = 1; n <= N; ++n)
        if (out.u_on_R[n] != 0 || out.u1_on_Q[n] != 0) out.recursions_vanish = false;

    const Mops R = Mops::generate(u1, N);
    const Mops Q = Mops::generate(u, N);
    out.recursions_match_direct = true;
    out.R_equals_Q = true;
    for (long n = 0; n <= N; ++n) {
        out.u_on_R_direct.push_back(u.pair(R[n]));
        out.u1_on_Q_direct.push_back(u1.pair(Q[n]));
        if (out.u_on_R_direct[n] != out.u_on_R[n] || out.u1_on_Q_direct[n] != out.u1_on_Q[n])
            out.recursions_match_direct = false;
        if (!(R[n] == Q[n])) out.R_equals_Q = false;
    }
    out.coefficients_equal = true;
    for (long n = 0; n < N; ++n) {
        if (at(cd.sigma, n) != at(cd.d, n)) out.coefficients_equal = false;
        if (n + 1 < N && at(cd.tau, n) != at(cd.e, n)) out.coefficients_equal = false;
    }
    return out;
}

}  // namespace opc
