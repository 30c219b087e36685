#include "opc/functional.hpp"

#include "opc/errors.hpp"

namespace opc {

const char* family_name(Family f) {
    switch (f) {
        case Family::Hermite: return "hermite";
        case Family::Laguerre: return "laguerre";
        case Family::Bessel: return "bessel";
        case Family::Jacobi: return "jacobi";
    }
    return "unknown";
}

namespace {

// True when q is one of 0, -1, -2, ... shifted: q in {-k, -k-1, ...}.
bool is_integer_at_most(const Rational& q, long k) { return is_integer(q) && q <= k; }

void require_admissible(bool ok, const char* condition) {
    if (!ok) throw Error(ErrorKind::InvalidParameter, condition);
}

}  // namespace

ClassicalFamily::ClassicalFamily(Family tag, Rational alpha, Rational beta, Rational a0)
    : tag_(tag), alpha_(std::move(alpha)), beta_(std::move(beta)), a0_(std::move(a0)) {
    switch (tag_) {
        case Family::Hermite:
            phi_ = Poly{1};
            psi_ = Poly{0, -2};
            break;
        case Family::Laguerre:
            require_admissible(!is_integer_at_most(alpha_, -1), "laguerre alpha not in {-1,-2,...}");
            phi_ = Poly{0, 1};
            psi_ = Poly{alpha_ + 1, -1};
            break;
        case Family::Bessel:
            require_admissible(!is_integer_at_most(alpha_, -2), "bessel alpha not in {-2,-3,...}");
            phi_ = Poly{0, 0, 1};
            psi_ = Poly{2, alpha_ + 2};
            break;
        case Family::Jacobi:
            require_admissible(!is_integer_at_most(alpha_, -1), "jacobi alpha not in {-1,-2,...}");
            require_admissible(!is_integer_at_most(beta_, -1), "jacobi beta not in {-1,-2,...}");
            require_admissible(!is_integer_at_most(alpha_ + beta_ + 1, -1),
                               "jacobi alpha+beta+1 not in {-1,-2,...}");
            phi_ = Poly{1, 0, -1};
            psi_ = Poly{beta_ - alpha_, -(alpha_ + beta_ + 2)};
            break;
    }
    require_admissible(a0_ != 0, "a0 != 0");
}

ClassicalFamily ClassicalFamily::hermite(const Rational& a0) { return {Family::Hermite, 0, 0, a0}; }
ClassicalFamily ClassicalFamily::laguerre(const Rational& alpha, const Rational& a0) {
    return {Family::Laguerre, alpha, 0, a0};
}
ClassicalFamily ClassicalFamily::bessel(const Rational& alpha, const Rational& a0) {
    return {Family::Bessel, alpha, 0, a0};
}
ClassicalFamily ClassicalFamily::jacobi(const Rational& alpha, const Rational& beta, const Rational& a0) {
    return {Family::Jacobi, alpha, beta, a0};
}

ClassicalFamily ClassicalFamily::with_mass(const Rational& a0) const {
    return {tag_, alpha_, beta_, a0};
}

std::string ClassicalFamily::describe() const {
    std::string s = family_name(tag_);
    s += "(";
    if (tag_ != Family::Hermite) s += "alpha=" + format_rational(alpha_) + ",";
    if (tag_ == Family::Jacobi) s += "beta=" + format_rational(beta_) + ",";
    s += "a0=" + format_rational(a0_) + ")";
    return s;
}

Rational MomentSource::moment(std::size_t n) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (n < cache_.size()) return cache_[n];
    }
    // Fill in index order so a self-referential compute(k) only ever reads
    // already-cached lower indices.  The lock is not held during compute.
    std::size_t next;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        next = cache_.size();
    }
    Rational value;
    for (std::size_t k = next; k <= n; ++k) {
        value = compute(k);
        std::lock_guard<std::mutex> lock(mutex_);
        if (cache_.size() == k) cache_.push_back(value);
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_[n];
}

namespace {

std::string poly_text(const Poly& p) {
    std::string s = "[";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (k) s += ",";
        s += format_rational(p.coeffs()[k]);
    }
    return s + "]";
}

class ClassicalNode final : public MomentSource {
public:
    explicit ClassicalNode(ClassicalFamily f) : f_(std::move(f)) {}
    std::string describe() const override { return f_.describe(); }

protected:
    // <u, psi x^n + n phi x^(n-1)> = 0 solved for the highest moment.
    Rational compute(std::size_t idx) const override {
        if (idx == 0) return f_.a0();
        const long n = static_cast<long>(idx) - 1;
        const Poly& phi = f_.phi();
        const Poly& psi = f_.psi();
        Rational pivot = psi[1] + n * phi[2];
        if (pivot == 0)
            throw Error(ErrorKind::InvalidParameter, "pearson pivot psi1 + n*phi2 != 0", n);
        Rational rhs = (psi[0] + n * phi[1]) * moment(n);
        if (n >= 1) rhs += n * phi[0] * moment(n - 1);
        return -rhs / pivot;
    }

private:
    ClassicalFamily f_;
};

class ExplicitNode final : public MomentSource {
public:
    explicit ExplicitNode(std::vector<Rational> m) : m_(std::move(m)) {}
    std::string describe() const override {
        std::string s = "explicit[";
        for (std::size_t k = 0; k < m_.size(); ++k) s += (k ? "," : "") + format_rational(m_[k]);
        return s + "]";
    }

protected:
    Rational compute(std::size_t n) const override {
        if (n >= m_.size())
            throw Error(ErrorKind::InvalidParameter, "moment index within explicit list",
                        static_cast<long>(n));
        return m_[n];
    }

private:
    std::vector<Rational> m_;
};

class ZeroNode final : public MomentSource {
public:
    std::string describe() const override { return "zero"; }

protected:
    Rational compute(std::size_t) const override { return 0; }
};

using NodePtr = std::shared_ptr<const MomentSource>;

Rational power(const Rational& c, std::size_t k) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), c.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), c.get_den_mpz_t(), k);
    return Rational(num, den);
}

class DerivativeNode final : public MomentSource {
public:
    explicit DerivativeNode(NodePtr p) : p_(std::move(p)) {}
    std::string describe() const override { return p_->describe() + " | derivative"; }

protected:
    Rational compute(std::size_t n) const override {
        if (n == 0) return 0;
        return -static_cast<long>(n) * p_->moment(n - 1);
    }

private:
    NodePtr p_;
};

class MulPolyNode final : public MomentSource {
public:
    MulPolyNode(NodePtr p, Poly phi) : p_(std::move(p)), phi_(std::move(phi)) {}
    std::string describe() const override { return p_->describe() + " | mul_poly" + poly_text(phi_); }

protected:
    Rational compute(std::size_t n) const override {
        Rational acc = 0;
        for (int k = 0; k <= phi_.degree(); ++k)
            if (phi_[k] != 0) acc += phi_[k] * p_->moment(n + k);
        return acc;
    }

private:
    NodePtr p_;
    Poly phi_;
};

// <(x-c)^{-1} u, x^n> = sum_{k<n} c^(n-1-k) a_k, i.e. m_n = c m_{n-1} + a_{n-1}.
class DivLinearNode final : public MomentSource {
public:
    DivLinearNode(NodePtr p, Rational c) : p_(std::move(p)), c_(std::move(c)) {}
    std::string describe() const override {
        return p_->describe() + " | div_linear[" + format_rational(c_) + "]";
    }

protected:
    Rational compute(std::size_t n) const override {
        if (n == 0) return 0;
        return c_ * moment(n - 1) + p_->moment(n - 1);
    }

private:
    NodePtr p_;
    Rational c_;
};

class DeltaNode final : public MomentSource {
public:
    DeltaNode(NodePtr p, DeltaTerm t) : p_(std::move(p)), t_(std::move(t)) {}
    std::string describe() const override {
        return p_->describe() + " | add_delta[c=" + format_rational(t_.point) +
               ",order=" + std::to_string(t_.order) + ",w=" + format_rational(t_.weight) + "]";
    }

protected:
    Rational compute(std::size_t n) const override {
        Rational v = p_->moment(n);
        if (t_.order == 0)
            v += t_.weight * power(t_.point, n);
        else if (n >= 1)
            v -= t_.weight * static_cast<long>(n) * power(t_.point, n - 1);
        return v;
    }

private:
    NodePtr p_;
    DeltaTerm t_;
};

class SumNode final : public MomentSource {
public:
    SumNode(NodePtr a, NodePtr b) : a_(std::move(a)), b_(std::move(b)) {}
    std::string describe() const override {
        return "(" + a_->describe() + ") + (" + b_->describe() + ")";
    }

protected:
    Rational compute(std::size_t n) const override { return a_->moment(n) + b_->moment(n); }

private:
    NodePtr a_, b_;
};

class ScaleNode final : public MomentSource {
public:
    ScaleNode(NodePtr p, Rational k) : p_(std::move(p)), k_(std::move(k)) {}
    std::string describe() const override {
        return p_->describe() + " | scale[" + format_rational(k_) + "]";
    }

protected:
    Rational compute(std::size_t n) const override { return k_ * p_->moment(n); }

private:
    NodePtr p_;
    Rational k_;
};

}  // namespace

MomentFunctional MomentFunctional::classical(const ClassicalFamily& family) {
    return MomentFunctional(std::make_shared<ClassicalNode>(family), family);
}

MomentFunctional MomentFunctional::explicit_moments(std::vector<Rational> moments) {
    return MomentFunctional(std::make_shared<ExplicitNode>(std::move(moments)));
}

MomentFunctional MomentFunctional::zero() { return MomentFunctional(std::make_shared<ZeroNode>()); }

MomentFunctional MomentFunctional::from_source(std::shared_ptr<const MomentSource> source) {
    return MomentFunctional(std::move(source));
}

std::vector<Rational> MomentFunctional::moments(std::size_t count) const {
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) out.push_back(moment(n));
    return out;
}

Rational MomentFunctional::pair(const Poly& p) const {
    Rational acc = 0;
    for (int k = 0; k <= p.degree(); ++k)
        if (p[k] != 0) acc += p[k] * moment(static_cast<std::size_t>(k));
    return acc;
}

MomentFunctional MomentFunctional::derive() const {
    return MomentFunctional(std::make_shared<DerivativeNode>(node_));
}

MomentFunctional MomentFunctional::mul_poly(const Poly& phi) const {
    return MomentFunctional(std::make_shared<MulPolyNode>(node_, phi));
}

MomentFunctional MomentFunctional::div_linear(const Rational& c) const {
    return MomentFunctional(std::make_shared<DivLinearNode>(node_, c));
}

MomentFunctional MomentFunctional::add_delta(const Rational& c, int order, const Rational& weight) const {
    if (order != 0 && order != 1)
        throw Error(ErrorKind::InvalidParameter, "delta order in {0,1}", std::nullopt,
                    "order " + std::to_string(order));
    return MomentFunctional(std::make_shared<DeltaNode>(node_, DeltaTerm{c, order, weight}));
}

MomentFunctional MomentFunctional::plus(const MomentFunctional& other) const {
    return MomentFunctional(std::make_shared<SumNode>(node_, other.node_));
}

MomentFunctional MomentFunctional::scaled(const Rational& k) const {
    return MomentFunctional(std::make_shared<ScaleNode>(node_, k));
}

std::vector<Rational> pearson_check(const MomentFunctional& u, const Poly& phi, const Poly& psi,
                                    int depth) {
    // <(phi u)', x^k> = -k <u, phi x^(k-1)>.
    std::vector<Rational> out;
    for (int k = 0; k <= depth; ++k) {
        Rational v = -u.pair(psi.shifted(k));
        if (k >= 1) v -= k * u.pair(phi.shifted(k - 1));
        out.push_back(v);
    }
    return out;
}

MomentFunctional strongly_classical_companion(const MomentFunctional& u) {
    const auto& base = u.classical_base();
    if (!base)
        throw Error(ErrorKind::NotStronglyClassical, "u is an unmodified catalog functional");
    const ClassicalFamily& f = *base;
    auto reject = [](const char* cond) { throw Error(ErrorKind::NotStronglyClassical, cond); };

    std::optional<ClassicalFamily> unit;
    switch (f.tag()) {
        case Family::Hermite:
            unit = ClassicalFamily::hermite(1);
            break;
        case Family::Laguerre:
            if (is_integer_at_most(f.alpha(), 0)) reject("laguerre alpha not in {0,-1,...}");
            unit = ClassicalFamily::laguerre(f.alpha() - 1, 1);
            break;
        case Family::Bessel:
            if (is_integer_at_most(f.alpha(), 0)) reject("bessel alpha not in {0,-1,...}");
            unit = ClassicalFamily::bessel(f.alpha() - 2, 1);
            break;
        case Family::Jacobi:
            if (is_integer_at_most(f.alpha(), 0)) reject("jacobi alpha not in {0,-1,...}");
            if (is_integer_at_most(f.beta(), 0)) reject("jacobi beta not in {0,-1,...}");
            if (is_integer_at_most(f.alpha() + f.beta(), 0))
                reject("jacobi alpha+beta not in {0,-1,...}");
            unit = ClassicalFamily::jacobi(f.alpha() - 1, f.beta() - 1, 1);
            break;
    }
    // phi w has mass a0_w <w_unit, phi>; match it to a0 of u.
    Rational phi_mass = MomentFunctional::classical(*unit).pair(f.phi());
    if (phi_mass == 0) reject("<w, phi> != 0");
    return MomentFunctional::classical(unit->with_mass(f.a0() / phi_mass));
}

}  // namespace opc
