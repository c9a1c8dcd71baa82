#pragma once

#include <superlie/cohomology.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace superlie {

/// Lie superalgebra on the parity-reversed space. Basis vector a_i corresponds
/// to v_i of the codifferential space with the opposite parity, so the algebra
/// basis does not follow the even-first index convention.
class SuperBracket {
public:
    explicit SuperBracket(GradedSpace codifferential_space)
        : cs_(codifferential_space),
          n_(static_cast<std::size_t>(codifferential_space.dim())),
          c_(n_ * n_ * n_) {}

    /// Bidimension of the algebra itself.
    GradedSpace space() const { return cs_.reversed(); }
    const GradedSpace& codifferential_space() const noexcept { return cs_; }
    std::size_t dim() const noexcept { return n_; }

    /// Structure constant: [a_i, a_j] = sum_k c(i,j,k) a_k, indices 1-based.
    Rational& constant(int i, int j, int k) { return c_.at(offset(i, j, k)); }
    const Rational& constant(int i, int j, int k) const { return c_.at(offset(i, j, k)); }

    Parity parity(int i) const { return flip(cs_.parity(i)); }

    Vector bracket_basis(int i, int j) const {
        Vector out(n_);
        for (std::size_t k = 0; k < n_; ++k) out[k] = c_[offset(i, j, static_cast<int>(k + 1))];
        return out;
    }

    Vector bracket(const Vector& x, const Vector& y) const {
        Vector out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (y[j].is_zero()) continue;
                const Rational s = x[i] * y[j];
                for (std::size_t k = 0; k < n_; ++k) {
                    const Rational& c = c_[(i * n_ + j) * n_ + k];
                    if (!c.is_zero()) out[k] += s * c;
                }
            }
        }
        return out;
    }

    bool is_abelian() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// [x,y] = -(-1)^{|x||y|} [y,x] on basis pairs.
    bool is_antisymmetric() const {
        for (int i = 1; i <= static_cast<int>(n_); ++i)
            for (int j = 1; j <= static_cast<int>(n_); ++j)
                for (int k = 1; k <= static_cast<int>(n_); ++k)
                    if (constant(i, j, k) != -koszul(parity(i), parity(j)) * constant(j, i, k)) return false;
        return true;
    }

    /// [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]] on basis triples.
    bool satisfies_jacobi() const {
        const int n = static_cast<int>(n_);
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y)
                for (int z = 1; z <= n; ++z) {
                    const Vector ex = unit(x), ey = unit(y), ez = unit(z);
                    Vector lhs = bracket(ex, bracket(ey, ez));
                    const Vector r1 = bracket(bracket(ex, ey), ez);
                    const Vector r2 = bracket(ey, bracket(ex, ez));
                    const int s = koszul(parity(x), parity(y));
                    for (std::size_t k = 0; k < n_; ++k)
                        if (lhs[k] != r1[k] + s * r2[k]) return false;
                }
        return true;
    }

    Vector unit(int i) const {
        Vector e(n_);
        e.at(static_cast<std::size_t>(i - 1)) = 1;
        return e;
    }

private:
    std::size_t offset(int i, int j, int k) const {
        if (!cs_.contains(i) || !cs_.contains(j) || !cs_.contains(k))
            throw std::out_of_range("structure constant index");
        return (static_cast<std::size_t>(i - 1) * n_ + static_cast<std::size_t>(j - 1)) * n_ +
               static_cast<std::size_t>(k - 1);
    }

    GradedSpace cs_;
    std::size_t n_;
    std::vector<Rational> c_;
};

/// l(a_i, a_j) = (-1)^{|a_i|} pi d(v_i . v_j), with |a_i| = |v_i| + 1.
inline SuperBracket to_superalgebra(const Cochain& d) {
    const GradedSpace& cs = d.space();
    for (auto k : d.degrees())
        if (k != 2) throw std::invalid_argument("to_superalgebra: term of degree " + std::to_string(k));
    SuperBracket b(cs);
    const int n = cs.dim();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j && is_odd(cs.parity(i))) continue;  // v_i . v_i = 0
            // v_i . v_j = (-1)^{|v_i||v_j|} v_j . v_i
            const int swap = i > j ? koszul(cs.parity(i), cs.parity(j)) : 1;
            const Monomial m = Monomial::unchecked({std::min(i, j), std::max(i, j)});
            const int pre = is_odd(b.parity(i)) ? -1 : 1;
            for (int k = 1; k <= n; ++k) {
                const Rational c = d.coefficient(m, k);
                if (!c.is_zero()) b.constant(i, j, k) = c * (swap * pre);
            }
        }
    return b;
}

/// Inverse of to_superalgebra; reads [a_i, a_j] for i <= j.
inline Cochain from_superalgebra(const SuperBracket& b) {
    const GradedSpace& cs = b.codifferential_space();
    Cochain d(cs);
    const int n = cs.dim();
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            if (i == j && is_odd(cs.parity(i))) continue;
            const int pre = is_odd(b.parity(i)) ? -1 : 1;
            for (int k = 1; k <= n; ++k) {
                const Rational& c = b.constant(i, j, k);
                if (!c.is_zero()) d.add_term(Monomial::unchecked({i, j}), k, c * pre);
            }
        }
    return d;
}

/// A graded subspace of the algebra, stored as homogeneous basis vectors.
struct GradedSubspace {
    std::vector<Vector> even;  // algebra grading
    std::vector<Vector> odd;

    Bidim bidim() const { return {static_cast<int>(even.size()), static_cast<int>(odd.size())}; }
    /// Bidim in the codifferential grading (parities swapped).
    Bidim codifferential_bidim() const { return {static_cast<int>(odd.size()), static_cast<int>(even.size())}; }
    bool is_zero() const { return even.empty() && odd.empty(); }
};

/// Descending series of graded subspaces, recorded until it stabilizes.
struct SubspaceChain {
    std::vector<Bidim> terms;  // algebra grading

    bool reaches_zero() const { return !terms.empty() && terms.back().total() == 0; }
    std::vector<Bidim> codifferential_terms() const {
        std::vector<Bidim> out;
        for (const auto& t : terms) out.push_back({t.odd, t.even});
        return out;
    }
    std::string str() const {
        std::string s;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            if (k) s += " > ";
            s += terms[k].str();
        }
        return s;
    }
};

namespace detail {

inline GradedSubspace whole(const SuperBracket& b) {
    GradedSubspace s;
    for (int i = 1; i <= static_cast<int>(b.dim()); ++i)
        (is_odd(b.parity(i)) ? s.odd : s.even).push_back(b.unit(i));
    return s;
}

/// Span of [x, y] over homogeneous basis vectors x of a and y of c.
inline GradedSubspace product_span(const SuperBracket& b, const GradedSubspace& a, const GradedSubspace& c) {
    std::vector<Vector> out[2];
    auto add = [&](const std::vector<Vector>& xs, Parity px, const std::vector<Vector>& ys, Parity py) {
        for (const auto& x : xs)
            for (const auto& y : ys) {
                Vector v = b.bracket(x, y);
                bool zero = true;
                for (const auto& e : v) zero = zero && e.is_zero();
                if (!zero) out[static_cast<int>(px + py)].push_back(std::move(v));
            }
    };
    add(a.even, Parity::even, c.even, Parity::even);
    add(a.even, Parity::even, c.odd, Parity::odd);
    add(a.odd, Parity::odd, c.even, Parity::even);
    add(a.odd, Parity::odd, c.odd, Parity::odd);
    return {span_basis(out[0], b.dim()), span_basis(out[1], b.dim())};
}

template <class Next>
SubspaceChain series(const SuperBracket& b, Next next) {
    SubspaceChain chain;
    GradedSubspace cur = whole(b);
    chain.terms.push_back(cur.bidim());
    // nested subspaces stabilize within dim + 1 steps
    for (std::size_t step = 0; !cur.is_zero() && step <= b.dim(); ++step) {
        GradedSubspace nxt = next(cur);
        if (nxt.bidim() == cur.bidim()) break;  // nested, so equal
        cur = std::move(nxt);
        chain.terms.push_back(cur.bidim());
    }
    return chain;
}

}  // namespace detail

inline SubspaceChain derived_series(const SuperBracket& b) {
    return detail::series(b, [&](const GradedSubspace& s) { return detail::product_span(b, s, s); });
}

inline SubspaceChain lower_central_series(const SuperBracket& b) {
    const GradedSubspace all = detail::whole(b);
    return detail::series(b, [&](const GradedSubspace& s) { return detail::product_span(b, all, s); });
}

inline bool is_solvable(const SuperBracket& b) { return derived_series(b).reaches_zero(); }
inline bool is_nilpotent(const SuperBracket& b) { return lower_central_series(b).reaches_zero(); }

/// {v : [v, a_j] = 0 for all j}, split by parity.
inline GradedSubspace center(const SuperBracket& b) {
    GradedSubspace out;
    const std::size_t n = b.dim();
    for (Parity p : {Parity::even, Parity::odd}) {
        std::vector<int> idx;
        for (int i = 1; i <= static_cast<int>(n); ++i)
            if (b.parity(i) == p) idx.push_back(i);
        if (idx.empty()) continue;
        // rows: (j, k) component of [v, a_j]; columns: coordinates of v
        Matrix m(n * n, idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c)
            for (int j = 1; j <= static_cast<int>(n); ++j)
                for (int k = 1; k <= static_cast<int>(n); ++k)
                    m(static_cast<std::size_t>(j - 1) * n + static_cast<std::size_t>(k - 1), c) =
                        b.constant(idx[c], j, k);
        for (const auto& z : kernel_basis(m)) {
            Vector v(n);
            for (std::size_t c = 0; c < idx.size(); ++c) v[static_cast<std::size_t>(idx[c] - 1)] = z[c];
            (is_odd(p) ? out.odd : out.even).push_back(std::move(v));
        }
    }
    return out;
}

inline GradedSubspace center(const Cochain& d) { return center(to_superalgebra(d)); }

/// Summary of the structural invariants of a codifferential.
struct StructureReport {
    Bidim center;  // codifferential grading
    SubspaceChain derived;
    SubspaceChain lower_central;
    bool solvable = false;
    bool nilpotent = false;
    bool jacobi = false;
};

inline StructureReport analyze_structure(const Cochain& d) {
    const SuperBracket b = to_superalgebra(d);
    StructureReport r;
    r.center = center(b).codifferential_bidim();
    r.derived = derived_series(b);
    r.lower_central = lower_central_series(b);
    r.solvable = r.derived.reaches_zero();
    r.nilpotent = r.lower_central.reaches_zero();
    r.jacobi = b.satisfies_jacobi();
    return r;
}

}  // namespace superlie
