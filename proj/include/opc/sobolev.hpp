#pragma once

#include "opc/functional.hpp"
#include "opc/mops.hpp"

#include <optional>
#include <vector>

namespace opc {

// phi_lambda(f, g) = <u0, f g> + lambda <u1, f' g'>.
Rational sobolev_inner(const MomentFunctional& u0, const MomentFunctional& u1, const Rational& lambda,
                       const Poly& f, const Poly& g);

struct SobolevBasis {
    MomentFunctional u0, u1;
    Rational lambda;
    std::vector<Poly> S;
    std::vector<Rational> s_norms;
};

SobolevBasis generate_sobolev(const MomentFunctional& u0, const MomentFunctional& u1,
                              const Rational& lambda, int depth);

// Index n of every list refers to the relation
//   P_{n+1} - sigma_t[n] P_n - tau_t[n-1] P_{n-1} = S_{n+1} - mu[n] S_n - theta[n-1] S_{n-1},
// so tau_t and theta are stored with their own index (tau_t[k] = tau~_k).
struct SobolevLinkData {
    std::vector<Rational> sigma_t, tau_t, mu, theta, d_t, e_t;
};

// mu_n s_n = sigma~_n p_n + tau~_{n-1}(mu_{n-1} - sigma~_{n-1}) p_{n-1}, theta_n s_n = tau~_n p_n.
std::pair<std::vector<Rational>, std::vector<Rational>>
link_from_formula(const std::vector<Rational>& sigma_t, const std::vector<Rational>& tau_t,
                  const std::vector<Rational>& p, const std::vector<Rational>& s);

struct LinearRelationFit {
    std::vector<Rational> sigma_t, tau_t, mu, theta;
    std::vector<Poly> residual;  // residual[n] for the relation at n
    std::vector<std::vector<std::string>> free;  // names of columns the data left open
    bool exact() const;
};

struct LinearRelationPins {
    std::vector<std::optional<Rational>> sigma_t, tau_t, mu, theta;
};

// Fits the relations n = 0..depth-1; P and S must reach degree depth.
// Columns pivot in the order sigma~_n, tau~_{n-1}, mu_n, theta_{n-1}.
LinearRelationFit fit_linear_relation(const std::vector<Poly>& P, const std::vector<Poly>& S, int depth,
                                      const LinearRelationPins& pins = {});

// d~_n and e~_{n-1} from the norm formulas, for n = 0..link.mu.size()-1.
std::pair<std::vector<Rational>, std::vector<Rational>>
extended_coeffs(const SobolevLinkData& link, const std::vector<Rational>& p, const std::vector<Rational>& s,
                const std::vector<Rational>& r, const Rational& lambda);

struct ExtendedRelationFit {
    std::vector<Rational> d_t, e_t;
    std::vector<Poly> residual;
    bool exact() const;
};

// Reads d~_n, e~_{n-1} straight off the polynomial relation
//   (n+1) R_n - d~_n R_{n-1} - e~_{n-1} R_{n-2} = P'_{n+1} - sigma~_n P'_n - tau~_{n-1} P'_{n-1}.
ExtendedRelationFit fit_extended_relation(const std::vector<Poly>& P, const std::vector<Poly>& R,
                                          const std::vector<Rational>& sigma_t,
                                          const std::vector<Rational>& tau_t, int depth);

struct CoherenceCheck {
    Mops P, R;
    SobolevBasis basis;
    LinearRelationFit fit;
    SobolevLinkData link;
    bool relation_exact = false;
    bool coherent = false;  // relation exact and d~ = e~ = 0 everywhere
};

CoherenceCheck check_generalized_coherence(const MomentFunctional& u0, const MomentFunctional& u1,
                                           const Rational& lambda, int depth,
                                           const LinearRelationPins& pins = {});

}  // namespace opc
