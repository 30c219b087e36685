#include "opc/companion.hpp"

#include "opc/errors.hpp"

namespace opc {

namespace {

Rational at0(const std::vector<Rational>& v, long k) {
    if (k < 0) return 0;
    if (k >= static_cast<long>(v.size()))
        throw Error(ErrorKind::InvalidParameter, "coherence data long enough", k);
    return v[k];
}

// a + b*M0 + c*M1
struct Affine {
    Rational k, m0, m1;
    Affine operator+(const Affine& o) const { return {k + o.k, m0 + o.m0, m1 + o.m1}; }
    Affine scaled(const Rational& s) const { return {k * s, m0 * s, m1 * s}; }
    Rational at(const Rational& x0, const Rational& x1) const { return k + m0 * x0 + m1 * x1; }
};

void require_degree_two(const Poly& p, const char* name) {
    if (p.degree() != 2) throw Error(ErrorKind::InvalidParameter, std::string("deg ") + name + " = 2");
}

class CompanionNode final : public MomentSource {
public:
    CompanionNode(MomentFunctional u, Poly A, Poly D, Rational m0, Rational m1)
        : u_(std::move(u)), A_(std::move(A)), D_(std::move(D)), m0_(std::move(m0)), m1_(std::move(m1)) {
        lead_ = A_.lead();
    }
    std::string describe() const override {
        return "companion[A=" + A_.to_string() + ",D=" + D_.to_string() + ",m0=" + format_rational(m0_) +
               ",m1=" + format_rational(m1_) + "](" + u_.describe() + ")";
    }

protected:
    Rational compute(std::size_t n) const override {
        if (n == 0) return m0_;
        if (n == 1) return m1_;
        const std::size_t k = n - 2;
        Rational v = u_.pair(D_.shifted(static_cast<int>(k))) - A_[1] * moment(n - 1) - A_[0] * moment(n - 2);
        return v / lead_;
    }

private:
    MomentFunctional u_;
    Poly A_, D_;
    Rational m0_, m1_, lead_;
};

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
        return std::nullopt;
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
    return Rational(num, den);
}

}  // namespace

MkSolution solve_Mk(const CoherenceData& cd, const Poly& A, const MomentFunctional& v, const std::vector<Poly>& R) {
    require_degree_two(A, "A");
    const Rational M2 = v.pair(A * R.at(2));
    if (M2 == 0) throw Error(ErrorKind::ZeroM2, "M_2 = <A v, R_2> != 0", 2);
    const Rational tau2 = at0(cd.tau, 2), e2 = at0(cd.e, 2);
    if (tau2 == 0) throw Error(ErrorKind::DivisionByZeroCoefficient, "tau_2 != 0", 2);
    if (e2 == 0) throw Error(ErrorKind::DivisionByZeroCoefficient, "e_2 != 0", 2);

    // Pairing the relation with A v gives
    //   <Av, Q_n> = sigma_{n-1} <Av, Q_{n-1}> + tau_{n-2} <Av, Q_{n-2}> + M_n - d_{n-1} M_{n-1} - e_{n-2} M_{n-2}.
    const std::vector<Affine> M{{0, 1, 0}, {0, 0, 1}, {M2, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    std::vector<Affine> T;
    for (long n = 0; n <= 4; ++n) {
        Affine t = M[n];
        if (n >= 1) t = t + T[n - 1].scaled(at0(cd.sigma, n - 1)) + M[n - 1].scaled(-at0(cd.d, n - 1));
        if (n >= 2) t = t + T[n - 2].scaled(at0(cd.tau, n - 2)) + M[n - 2].scaled(-at0(cd.e, n - 2));
        T.push_back(t);
    }
    const Affine &t3 = T[3], &t4 = T[4];
    const Rational det = t3.m0 * t4.m1 - t3.m1 * t4.m0;
    if (det == 0) throw Error(ErrorKind::SingularMkSystem, "det of the <Av,Q_3>, <Av,Q_4> system != 0", 3);
    MkSolution sol;
    sol.M2 = M2;
    sol.M0 = (-t3.k * t4.m1 + t4.k * t3.m1) / det;
    sol.M1 = (-t4.k * t3.m0 + t3.k * t4.m0) / det;
    for (const auto& t : T) sol.AvQ.push_back(t.at(sol.M0, sol.M1));
    sol.AvQ2_expected = e2 * M2 / tau2;
    sol.AvQ2_consistent = sol.AvQ[2] == sol.AvQ2_expected;
    return sol;
}

MomentFunctional companion_from_AD(const MomentFunctional& u, const Poly& A, const Poly& D, const Rational& m0,
                                   const Rational& m1) {
    require_degree_two(A, "A");
    return MomentFunctional::from_source(std::make_shared<CompanionNode>(u, A, D, m0, m1));
}

std::vector<Rational> verify_companion(const MomentFunctional& u, const MomentFunctional& u1, const Poly& A,
                                       const Poly& D, int N) {
    std::vector<Rational> out;
    for (int k = 0; k <= N; ++k) out.push_back(u1.pair(A.shifted(k)) - u.pair(D.shifted(k)));
    return out;
}

DeltaTerm delta_on_linear_factor(const Poly& l, int order, const Rational& weight) {
    if (l.degree() != 1) throw Error(ErrorKind::InvalidParameter, "deg l = 1");
    const Rational c = -l[0] / l[1];
    if (order == 0) return {c, 0, weight};
    return {c, 1, -weight / l[1]};
}

MomentFunctional with_deltas(const MomentFunctional& base, const std::vector<DeltaTerm>& deltas) {
    MomentFunctional out = base;
    for (const auto& t : deltas) out = out.add_delta(t);
    return out;
}

DeltaDecomposition decompose_deltas(const MomentFunctional& u, const Poly& A, const Poly& D,
                                    const MomentFunctional& u1) {
    require_degree_two(A, "A");
    DeltaDecomposition out;
    const Rational disc = A[1] * A[1] - 4 * A[2] * A[0];
    const std::optional<Rational> root = rational_sqrt(disc);
    if (!root) {
        out.reason = "roots of A are not rational";
        return out;
    }
    const Rational r1 = (-A[1] + *root) / (2 * A[2]);
    const Rational r2 = (-A[1] - *root) / (2 * A[2]);
    out.available = true;
    out.roots = r1 == r2 ? std::vector<Rational>{r1} : std::vector<Rational>{r1, r2};
    MomentFunctional base = u.mul_poly(D.scaled(1 / A.lead())).div_linear(r2).div_linear(r1);
    // u1 - base is annihilated by A, so its moments 0 and 1 fix both weights.
    const Rational mu0 = u1.moment(0) - base.moment(0);
    const Rational mu1 = u1.moment(1) - base.moment(1);
    if (r1 == r2) {
        out.deltas = {{r1, 0, mu0}, {r1, 1, mu0 * r1 - mu1}};
    } else {
        const Rational n2 = (mu1 - r1 * mu0) / (r2 - r1);
        out.deltas = {{r1, 0, mu0 - n2}, {r2, 0, n2}};
    }
    out.base = base;
    return out;
}

ModificationDegree classify_modification(const ClassicalFamily& u0, const Poly& D) {
    const int degree = (D * u0.phi()).degree();
    std::string branch;
    switch (u0.tag()) {
        case Family::Hermite: branch = "hermite"; break;
        case Family::Laguerre: branch = "laguerre"; break;
        case Family::Jacobi:
        case Family::Bessel: branch = "jacobi-or-bessel"; break;
    }
    return {degree, branch};
}

}  // namespace opc
