#pragma once

#include "opc/errors.hpp"
#include "opc/functional.hpp"
#include "opc/poly.hpp"

#include <functional>
#include <vector>

namespace opc {

// Std:  P_{n+1} = (x - b_n) P_n - c_n P_{n-1}
// Plus: x P_n = P_{n+1} + b_n P_n - c_n P_{n-1}, i.e. the Std c with its sign flipped.
enum class Convention { Std, Plus };

const char* convention_name(Convention c);

struct Recurrence {
    std::vector<Rational> b, c;  // c[0] carries the normalisation <u, 1>
    Convention convention = Convention::Std;

    Recurrence to(Convention target) const;
    std::size_t size() const { return b.size(); }
};

// Result of a monic Gram-Schmidt run: polys[n] monic of degree n, norms[n] its
// squared norm under the bilinear form.
struct Orthogonalized {
    std::vector<Poly> polys;
    std::vector<Rational> norms;
};

// gram(i, j) must return the form evaluated on x^i, x^j.  A vanishing pivot
// raises `failure` carrying the index of the polynomial that cannot be normed.
Orthogonalized monic_gram_schmidt(const std::function<Rational(int, int)>& gram, int depth,
                                  ErrorKind failure);

class Mops {
public:
    static Mops generate(const MomentFunctional& u, int depth);

    const MomentFunctional& source() const { return source_; }
    int depth() const { return static_cast<int>(polys_.size()) - 1; }
    const std::vector<Poly>& polys() const { return polys_; }
    const std::vector<Rational>& norms() const { return norms_; }
    const Poly& operator[](int n) const { return polys_.at(n); }

    // b_n = <u, x P_n^2>/p_n for n <= depth; c_0 = <u,1>, c_n = p_n/p_{n-1}.
    Recurrence recurrence(Convention convention = Convention::Std) const;
    // Q_n = P'_{n+1}/(n+1), n = 0..depth-1.
    std::vector<Poly> derivative_sequence() const;

private:
    Mops(MomentFunctional u, Orthogonalized o)
        : source_(std::move(u)), polys_(std::move(o.polys)), norms_(std::move(o.norms)) {}
    MomentFunctional source_;
    std::vector<Poly> polys_;
    std::vector<Rational> norms_;
};

Rational inner(const MomentFunctional& u, const Poly& f, const Poly& g);

// Monic sequence P_0..P_depth of the recurrence (any convention).
std::vector<Poly> polys_from_recurrence(const Recurrence& rec, int depth);

// The functional whose MOPS obeys rec, with <v, 1> = c_0; moments 0..2*depth+1.
MomentFunctional functional_from_recurrence(const Recurrence& rec, int depth);

struct Antiderivative {
    MomentFunctional w;
    std::vector<Poly> T;  // MOPS of w; T'_{n+1}/(n+1) = R_n
};

// For strongly classical u1 with MOPS R: w with phi w = u1, and its MOPS T.
Antiderivative antiderivative_sequence(const Mops& m, const MomentFunctional& u1);

}  // namespace opc
