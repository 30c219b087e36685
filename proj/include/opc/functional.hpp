#pragma once

#include "opc/poly.hpp"
#include "opc/rational.hpp"

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace opc {

enum class Family { Hermite, Laguerre, Bessel, Jacobi };

const char* family_name(Family f);

// A classical functional described by its Pearson pair (phi, psi) with
// (phi u)' = psi u, normalised by the total mass a0 = <u, 1>.
class ClassicalFamily {
public:
    static ClassicalFamily hermite(const Rational& a0 = 1);
    static ClassicalFamily laguerre(const Rational& alpha, const Rational& a0 = 1);
    static ClassicalFamily bessel(const Rational& alpha, const Rational& a0 = 1);
    static ClassicalFamily jacobi(const Rational& alpha, const Rational& beta, const Rational& a0 = 1);

    Family tag() const { return tag_; }
    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }
    const Rational& a0() const { return a0_; }
    const Poly& phi() const { return phi_; }
    const Poly& psi() const { return psi_; }

    ClassicalFamily with_mass(const Rational& a0) const;
    std::string describe() const;

private:
    ClassicalFamily(Family tag, Rational alpha, Rational beta, Rational a0);
    Family tag_;
    Rational alpha_, beta_, a0_;
    Poly phi_, psi_;
};

// Moment generator behind a MomentFunctional.  Subclasses implement
// compute(n); moment(n) memoises the prefix 0..n and is safe to call from
// several threads (values are deterministic, so a duplicated computation
// of the same index is harmless).
class MomentSource {
public:
    virtual ~MomentSource() = default;
    Rational moment(std::size_t n) const;
    virtual std::string describe() const = 0;

protected:
    // May call moment(k) on itself for k < n, and on any other source.
    virtual Rational compute(std::size_t n) const = 0;

private:
    mutable std::mutex mutex_;
    mutable std::vector<Rational> cache_;
};

struct DeltaTerm {
    Rational point;
    int order = 0;  // 0: <delta_c, p> = p(c); 1: <delta'_c, p> = -p'(c)
    Rational weight;
};

// A linear functional on polynomials, identified with its moment sequence.
// Immutable: every calculus operation returns a new functional that shares
// the underlying nodes.
class MomentFunctional {
public:
    static MomentFunctional classical(const ClassicalFamily& family);
    // Moments past the stored list are reported as an error, never guessed.
    static MomentFunctional explicit_moments(std::vector<Rational> moments);
    static MomentFunctional zero();
    static MomentFunctional from_source(std::shared_ptr<const MomentSource> source);

    Rational moment(std::size_t n) const { return node_->moment(n); }
    std::vector<Rational> moments(std::size_t count) const;
    Rational pair(const Poly& p) const;  // <u, p>

    MomentFunctional derive() const;                  // <u', p> = -<u, p'>
    MomentFunctional mul_poly(const Poly& phi) const; // <phi u, p> = <u, phi p>
    MomentFunctional div_linear(const Rational& c) const;
    MomentFunctional add_delta(const Rational& c, int order, const Rational& weight) const;
    MomentFunctional add_delta(const DeltaTerm& t) const { return add_delta(t.point, t.order, t.weight); }
    MomentFunctional plus(const MomentFunctional& other) const;
    MomentFunctional scaled(const Rational& k) const;

    // Set only for an unmodified catalog functional.
    const std::optional<ClassicalFamily>& classical_base() const { return base_; }
    std::string describe() const { return node_->describe(); }

private:
    explicit MomentFunctional(std::shared_ptr<const MomentSource> node,
                              std::optional<ClassicalFamily> base = std::nullopt)
        : node_(std::move(node)), base_(std::move(base)) {}
    std::shared_ptr<const MomentSource> node_;
    std::optional<ClassicalFamily> base_;
};

// <(phi u)' - psi u, x^k> for k = 0..depth.
std::vector<Rational> pearson_check(const MomentFunctional& u, const Poly& phi, const Poly& psi,
                                    int depth);

// The classical w with phi w = u and (phi w)' = (psi - phi') w.  Requires an
// unmodified catalog functional whose lowered parameters stay admissible.
MomentFunctional strongly_classical_companion(const MomentFunctional& u);

}  // namespace opc
