#include "opc/sobolev.hpp"

#include "opc/errors.hpp"

namespace opc {

namespace {

void require_lambda(const Rational& lambda) {
    if (lambda == 0) throw Error(ErrorKind::InvalidParameter, "lambda != 0");
}

std::string indexed(const char* name, int k) { return std::string(name) + "_" + std::to_string(k); }

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

Rational sobolev_inner(const MomentFunctional& u0, const MomentFunctional& u1, const Rational& lambda,
                       const Poly& f, const Poly& g) {
    require_lambda(lambda);
    return u0.pair(f * g) + lambda * u1.pair(f.derivative() * g.derivative());
}

SobolevBasis generate_sobolev(const MomentFunctional& u0, const MomentFunctional& u1,
                              const Rational& lambda, int depth) {
    require_lambda(lambda);
    auto gram = [&](int i, int j) {
        Rational v = u0.moment(static_cast<std::size_t>(i + j));
        if (i >= 1 && j >= 1) v += lambda * (i * j) * u1.moment(static_cast<std::size_t>(i + j - 2));
        return v;
    };
    auto o = monic_gram_schmidt(gram, depth, ErrorKind::SobolevDegeneracy);
    return {u0, u1, lambda, std::move(o.polys), std::move(o.norms)};
}

std::pair<std::vector<Rational>, std::vector<Rational>>
link_from_formula(const std::vector<Rational>& sigma_t, const std::vector<Rational>& tau_t,
                  const std::vector<Rational>& p, const std::vector<Rational>& s) {
    std::vector<Rational> mu, theta;
    for (std::size_t n = 0; n < sigma_t.size(); ++n) {
        if (s.at(n) == 0) throw Error(ErrorKind::DegenerateNorm, "s_n != 0", static_cast<long>(n));
        Rational num = sigma_t[n] * p.at(n);
        if (n >= 1) num += tau_t.at(n - 1) * (mu[n - 1] - sigma_t[n - 1]) * p[n - 1];
        mu.push_back(num / s[n]);
    }
    for (std::size_t n = 0; n < tau_t.size(); ++n) {
        if (s.at(n) == 0) throw Error(ErrorKind::DegenerateNorm, "s_n != 0", static_cast<long>(n));
        theta.push_back(tau_t[n] * p.at(n) / s[n]);
    }
    return {mu, theta};
}

bool LinearRelationFit::exact() const {
    for (const auto& r : residual)
        if (!r.is_zero()) return false;
    return true;
}

LinearRelationFit fit_linear_relation(const std::vector<Poly>& P, const std::vector<Poly>& S, int depth,
                                      const LinearRelationPins& pins) {
    if (static_cast<int>(P.size()) <= depth || static_cast<int>(S.size()) <= depth)
        throw Error(ErrorKind::InvalidParameter, "P and S reach degree depth", depth);
    auto pin = [](const std::vector<std::optional<Rational>>& v, int k) -> std::optional<Rational> {
        if (k < 0 || k >= static_cast<int>(v.size())) return std::nullopt;
        return v[k];
    };

    LinearRelationFit out;
    for (int n = 0; n < depth; ++n) {
        std::vector<Poly> cols{P[n]};
        std::vector<std::optional<Rational>> pv{pin(pins.sigma_t, n)};
        std::vector<std::string> names{indexed("sigma_t", n)};
        if (n >= 1) {
            cols.push_back(P[n - 1]);
            pv.push_back(pin(pins.tau_t, n - 1));
            names.push_back(indexed("tau_t", n - 1));
        }
        cols.push_back(-S[n]);
        pv.push_back(pin(pins.mu, n));
        names.push_back(indexed("mu", n));
        if (n >= 1) {
            cols.push_back(-S[n - 1]);
            pv.push_back(pin(pins.theta, n - 1));
            names.push_back(indexed("theta", n - 1));
        }
        CombinationFit fit = fit_combination(P[n + 1] - S[n + 1], cols, pv);
        std::size_t j = 0;
        out.sigma_t.push_back(fit.coeffs[j++]);
        if (n >= 1) out.tau_t.push_back(fit.coeffs[j++]);
        out.mu.push_back(fit.coeffs[j++]);
        if (n >= 1) out.theta.push_back(fit.coeffs[j++]);
        std::vector<std::string> free;
        for (int c : fit.free_columns) free.push_back(names[c]);
        out.free.push_back(std::move(free));
        out.residual.push_back(std::move(fit.residual));
    }
    return out;
}

std::pair<std::vector<Rational>, std::vector<Rational>>
extended_coeffs(const SobolevLinkData& link, const std::vector<Rational>& p, const std::vector<Rational>& s,
                const std::vector<Rational>& r, const Rational& lambda) {
    require_lambda(lambda);
    auto norm = [](const std::vector<Rational>& v, int k, const char* what) -> const Rational& {
        if (k < 0 || k >= static_cast<int>(v.size()) || v[k] == 0)
            throw Error(ErrorKind::DegenerateNorm, std::string(what) + " != 0", k);
        return v[k];
    };
    // e~_k for k >= 1 comes from theta_k s_k = tau~_k p_k + k lambda e~_k r_{k-1}.
    std::vector<Rational> e_t;
    for (std::size_t k = 0; k < link.theta.size(); ++k) {
        if (k == 0) {
            e_t.push_back(0);
            continue;
        }
        const int kk = static_cast<int>(k);
        Rational num = link.theta[k] * s.at(k) - link.tau_t.at(k) * p.at(k);
        e_t.push_back(num / (kk * lambda * norm(r, kk - 1, "r_{n-2}")));
    }
    std::vector<Rational> d_t;
    for (std::size_t n = 0; n < link.mu.size(); ++n) {
        if (n == 0) {
            d_t.push_back(0);
            continue;
        }
        const int nn = static_cast<int>(n);
        Rational num = link.mu[n] * s.at(n) - link.sigma_t.at(n) * p.at(n) +
                       (link.sigma_t[n - 1] - link.mu[n - 1]) * link.tau_t.at(n - 1) * p.at(n - 1);
        const Rational& r1 = norm(r, nn - 1, "r_{n-1}");
        Rational v = num / (nn * lambda * r1);
        if (n >= 2) {
            Rational e_prev = e_t.at(n - 1);
            v += r.at(n - 2) * e_prev * (d_t[n - 1] - (nn - 1) * link.mu[n - 1]) / (nn * r1);
        }
        d_t.push_back(v);
    }
    return {d_t, e_t};
}

bool ExtendedRelationFit::exact() const {
    for (const auto& r : residual)
        if (!r.is_zero()) return false;
    return true;
}

ExtendedRelationFit fit_extended_relation(const std::vector<Poly>& P, const std::vector<Poly>& R,
                                          const std::vector<Rational>& sigma_t,
                                          const std::vector<Rational>& tau_t, int depth) {
    ExtendedRelationFit out;
    for (int n = 0; n < depth; ++n) {
        Poly rhs = P.at(n + 1).derivative() - sigma_t.at(n) * P.at(n).derivative();
        if (n >= 1) rhs -= tau_t.at(n - 1) * P.at(n - 1).derivative();
        Poly target = Rational(n + 1) * R.at(n) - rhs;
        std::vector<Poly> cols;
        if (n >= 1) cols.push_back(R.at(n - 1));
        if (n >= 2) cols.push_back(R.at(n - 2));
        CombinationFit fit = fit_combination(target, cols);
        out.d_t.push_back(n >= 1 ? fit.coeffs[0] : Rational(0));
        if (n >= 1) out.e_t.push_back(n >= 2 ? fit.coeffs[1] : Rational(0));
        out.residual.push_back(std::move(fit.residual));
    }
    return out;
}

CoherenceCheck check_generalized_coherence(const MomentFunctional& u0, const MomentFunctional& u1,
                                           const Rational& lambda, int depth,
                                           const LinearRelationPins& pins) {
    Mops P = Mops::generate(u0, depth);
    Mops R = Mops::generate(u1, depth);
    SobolevBasis basis = generate_sobolev(u0, u1, lambda, depth);
    LinearRelationFit fit = fit_linear_relation(P.polys(), basis.S, depth, pins);
    SobolevLinkData link{fit.sigma_t, fit.tau_t, fit.mu, fit.theta, {}, {}};
    auto [d_t, e_t] = extended_coeffs(link, P.norms(), basis.s_norms, R.norms(), lambda);
    link.d_t = std::move(d_t);
    link.e_t = std::move(e_t);
    const bool exact = fit.exact();
    const bool coherent = exact && all_zero(link.d_t) && all_zero(link.e_t);
    return {std::move(P), std::move(R), std::move(basis), std::move(fit), std::move(link), exact, coherent};
}

}  // namespace opc
