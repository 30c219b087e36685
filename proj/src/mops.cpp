#include "opc/mops.hpp"

#include <algorithm>

namespace opc {

const char* convention_name(Convention c) { return c == Convention::Std ? "std" : "plus"; }

Recurrence Recurrence::to(Convention target) const {
    Recurrence out = *this;
    if (target != convention) {
        for (auto& v : out.c) v = -v;
        out.convention = target;
    }
    return out;
}

Orthogonalized monic_gram_schmidt(const std::function<Rational(int, int)>& gram, int depth,
                                  ErrorKind failure) {
    Orthogonalized out;
    // g[k][n] = form(x^k, P_n) for k <= n, cached to keep the run O(depth^3).
    std::vector<std::vector<Rational>> gm(depth + 1, std::vector<Rational>(depth + 1));
    for (int i = 0; i <= depth; ++i)
        for (int j = 0; j <= depth; ++j) gm[i][j] = gram(i, j);

    auto form = [&](const Poly& f, const Poly& g) {
        Rational acc = 0;
        for (int i = 0; i <= f.degree(); ++i) {
            if (f[i] == 0) continue;
            for (int j = 0; j <= g.degree(); ++j)
                if (g[j] != 0) acc += f[i] * g[j] * gm[i][j];
        }
        return acc;
    };

    for (int n = 0; n <= depth; ++n) {
        Poly p = Poly::monomial(n);
        const Poly xn = p;
        for (int k = 0; k < n; ++k) {
            Rational proj = form(xn, out.polys[k]) / out.norms[k];
            p -= out.polys[k].scaled(proj);
        }
        Rational norm = form(p, p);
        if (norm == 0) throw Error(failure, "pivot p_n != 0", n);
        out.polys.push_back(std::move(p));
        out.norms.push_back(std::move(norm));
    }
    return out;
}

Mops Mops::generate(const MomentFunctional& u, int depth) {
    if (depth < 0) throw Error(ErrorKind::InvalidParameter, "depth >= 0");
    auto o = monic_gram_schmidt([&](int i, int j) { return u.moment(static_cast<std::size_t>(i + j)); },
                                depth, ErrorKind::QuasiDefiniteViolation);
    return Mops(u, std::move(o));
}

Recurrence Mops::recurrence(Convention convention) const {
    Recurrence rec;
    for (int n = 0; n <= depth(); ++n) {
        const Poly& p = polys_[n];
        rec.b.push_back(inner(source_, p.shifted(1), p) / norms_[n]);
        rec.c.push_back(n == 0 ? source_.moment(0) : Rational(norms_[n] / norms_[n - 1]));
    }
    return rec.to(convention);
}

std::vector<Poly> Mops::derivative_sequence() const {
    std::vector<Poly> q;
    for (int n = 1; n <= depth(); ++n) q.push_back(polys_[n].derivative().scaled(Rational(1, n)));
    return q;
}

Rational inner(const MomentFunctional& u, const Poly& f, const Poly& g) { return u.pair(f * g); }

std::vector<Poly> polys_from_recurrence(const Recurrence& rec, int depth) {
    const Recurrence std_rec = rec.to(Convention::Std);
    std::vector<Poly> p{Poly{1}};
    for (int n = 0; n < depth; ++n) {
        Poly next = p[n].shifted(1) - p[n].scaled(std_rec.b.at(n));
        if (n >= 1) next -= p[n - 1].scaled(std_rec.c.at(n));
        p.push_back(std::move(next));
    }
    return p;
}

MomentFunctional functional_from_recurrence(const Recurrence& rec, int depth) {
    // Write x^k = sum_j a_j P_j and multiply by x with x P_j = P_{j+1} + b_j P_j + c_j P_{j-1};
    // <v, x^k> = c_0 a_0. Coordinates above min(k, top - k) never reach a_0, so moments up to
    // 2 depth + 1 read only b_0..b_depth and c_0..c_depth.
    const Recurrence r = rec.to(Convention::Std);
    if (static_cast<int>(r.size()) <= depth)
        throw Error(ErrorKind::InvalidParameter, "recurrence has indices 0..depth", static_cast<long>(r.size()));
    const int top = 2 * depth + 1;
    std::vector<Rational> a{1};
    std::vector<Rational> moments{r.c[0]};
    for (int k = 0; k < top; ++k) {
        const int keep = std::min(k + 1, top - k - 1);
        std::vector<Rational> next(keep + 1);
        for (int j = 0; j <= keep; ++j) {
            Rational v = 0;
            if (j >= 1 && j - 1 < static_cast<int>(a.size())) v += a[j - 1];
            if (j < static_cast<int>(a.size())) v += r.b[j] * a[j];
            if (j + 1 < static_cast<int>(a.size())) v += r.c[j + 1] * a[j + 1];
            next[j] = v;
        }
        a = std::move(next);
        moments.push_back(r.c[0] * a[0]);
    }
    return MomentFunctional::explicit_moments(std::move(moments));
}

Antiderivative antiderivative_sequence(const Mops& m, const MomentFunctional& u1) {
    MomentFunctional w = strongly_classical_companion(u1);
    Mops t = Mops::generate(w, m.depth() + 1);
    for (int n = 0; n <= m.depth(); ++n) {
        Poly rn = t[n + 1].derivative().scaled(Rational(1, n + 1));
        if (!(rn == m[n]))
            throw Error(ErrorKind::InvariantViolation, "T'_{n+1}/(n+1) = R_n", n);
    }
    return {w, t.polys()};
}

}  // namespace opc
