#pragma once

#include <superlie/cohomology.hpp>
#include <superlie/structure.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace superlie {

/// Invertible parity-preserving linear map of V; column j is g(v_j).
class EvenAutomorphism {
public:
    EvenAutomorphism(const GradedSpace& space, Matrix g) : space_(space), g_(std::move(g)) {
        const auto n = static_cast<std::size_t>(space.dim());
        if (g_.rows() != n || g_.cols() != n) throw std::invalid_argument("automorphism: dimension mismatch");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!g_(i, j).is_zero() &&
                    space.parity(static_cast<int>(i + 1)) != space.parity(static_cast<int>(j + 1)))
                    throw std::invalid_argument("automorphism mixes parities");
        auto inv = superlie::inverse(g_);
        if (!inv) throw std::invalid_argument("automorphism is singular");
        inv_ = std::move(*inv);
    }

    static EvenAutomorphism identity(const GradedSpace& space) {
        return {space, Matrix::identity(static_cast<std::size_t>(space.dim()))};
    }

    static EvenAutomorphism diagonal(const GradedSpace& space, const std::vector<Rational>& entries) {
        Matrix g(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
        return {space, std::move(g)};
    }

    const GradedSpace& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return g_; }
    const Matrix& inverse_matrix() const noexcept { return inv_; }

    EvenAutomorphism inverse() const { return {space_, inv_}; }

    friend EvenAutomorphism operator*(const EvenAutomorphism& a, const EvenAutomorphism& b) {
        if (!(a.space_ == b.space_)) throw std::invalid_argument("automorphism: space mismatch");
        return {a.space_, a.g_ * b.g_};
    }

private:
    GradedSpace space_;
    Matrix g_;
    Matrix inv_;
};

namespace detail {

/// Expands h(v_{i1}) ... h(v_{ik}) over canonical monomials, where h is given by
/// its matrix (column j = h(v_j)).
inline std::map<Monomial, Rational> expand_product(const GradedSpace& space, const Matrix& h, const Monomial& m) {
    std::map<Monomial, Rational> cur{{Monomial{}, Rational(1)}};
    for (int i : m.indices()) {
        std::map<Monomial, Rational> next;
        for (const auto& [mono, c] : cur)
            for (int a = 1; a <= space.dim(); ++a) {
                const Rational& e = h(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(i - 1));
                if (e.is_zero()) continue;
                auto [sign, prod] = multiply_right(space, mono, a);
                if (sign == 0) continue;
                Rational& slot = next[prod];
                slot += sign > 0 ? Rational(c * e) : Rational(-(c * e));
            }
        cur.clear();
        for (auto& [mono, c] : next)
            if (!c.is_zero()) cur.emplace(mono, std::move(c));
    }
    return cur;
}

}  // namespace detail

/// (g.d)(x1...xk) = g(d(g^-1 x1 ... g^-1 xk)).
inline Cochain apply(const EvenAutomorphism& g, const Cochain& d) {
    if (!(g.space() == d.space())) throw std::invalid_argument("apply: dimension mismatch");
    const GradedSpace& space = d.space();
    const Matrix& gm = g.matrix();
    Cochain out(space);
    for (auto k : d.degrees())
        for (const auto& m : enumerate_monomials(space, static_cast<int>(k))) {
            Vector image(static_cast<std::size_t>(space.dim()));
            for (const auto& [mono, c] : detail::expand_product(space, g.inverse_matrix(), m)) {
                const Vector v = d.evaluate(mono);
                for (std::size_t r = 0; r < v.size(); ++r)
                    if (!v[r].is_zero()) image[r] += c * v[r];
            }
            const Vector gi = gm * image;
            for (std::size_t r = 0; r < gi.size(); ++r) out.add_term(m, static_cast<int>(r + 1), gi[r]);
        }
    return out;
}

inline bool verify_isomorphism(const EvenAutomorphism& g, const Cochain& d1, const Cochain& d2) {
    return apply(g, d1) == d2;
}

/// apply(g, d1) - d2; zero iff g is a witness.
inline Cochain isomorphism_residual(const EvenAutomorphism& g, const Cochain& d1, const Cochain& d2) {
    return apply(g, d1) - d2;
}

namespace detail {

/// Sparse polynomial in numbered variables; a monomial is a sorted variable list.
class Poly {
public:
    using Mono = std::vector<int>;

    static Poly constant(const Rational& c) {
        Poly p;
        if (!c.is_zero()) p.t_[{}] = c;
        return p;
    }
    static Poly var(int v) {
        Poly p;
        p.t_[{v}] = 1;
        return p;
    }

    const std::map<Mono, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
    std::size_t degree() const {
        std::size_t d = 0;
        for (const auto& [m, c] : t_) d = std::max(d, m.size());
        return d;
    }
    std::vector<int> variables() const {
        std::vector<int> vs;
        for (const auto& [m, c] : t_) vs.insert(vs.end(), m.begin(), m.end());
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.t_) add(m, c);
        return *this;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                Mono m;
                std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
                r.add(m, ca * cb);
            }
        return r;
    }
    Poly scaled(const Rational& s) const {
        Poly r;
        for (const auto& [m, c] : t_) r.add(m, c * s);
        return r;
    }

    Poly substitute(int v, const Poly& value) const {
        Poly r;
        for (const auto& [m, c] : t_) {
            Poly term = constant(c);
            for (int x : m) term = term * (x == v ? value : var(x));
            r += term;
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& values) const {
        Rational s = 0;
        for (const auto& [m, c] : t_) {
            Rational t = c;
            for (int x : m) t *= values[static_cast<std::size_t>(x)];
            s += t;
        }
        return s;
    }

    Rational coefficient(const Mono& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Rational(0) : it->second;
    }

private:
    void add(const Mono& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = t_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    std::map<Mono, Rational> t_;
};

inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    const Integer n = numerator_of(r), d = denominator_of(r);
    const Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

/// Depth-first solver for small polynomial systems over Q. Linear equations
/// are eliminated by substitution; univariate quadratics are solved exactly;
/// otherwise it branches over a short list of rational values.
class WitnessSolver {
public:
    WitnessSolver(std::size_t nvars, std::vector<bool> diagonal, std::size_t budget)
        : nvars_(nvars), diagonal_(std::move(diagonal)), budget_(budget) {}

    template <class Accept>
    std::optional<std::vector<Rational>> solve(std::vector<Poly> eqs, Accept accept) {
        std::vector<std::optional<Poly>> subst(nvars_);
        return rec(std::move(eqs), std::move(subst), accept);
    }

    std::size_t nodes() const noexcept { return nodes_; }

private:
    static const std::vector<Rational>& candidates() {
        static const std::vector<Rational> c = {1, 0, -1, 2, -2, Rational(1, 2), Rational(-1, 2), 3, -3,
                                                Rational(1, 3), Rational(-1, 3), 4, -4, Rational(1, 4),
                                                Rational(-1, 4)};
        return c;
    }

    template <class Accept>
    std::optional<std::vector<Rational>> rec(std::vector<Poly> eqs, std::vector<std::optional<Poly>> subst,
                                             Accept& accept) {
        if (++nodes_ > budget_) return std::nullopt;
        while (true) {
            std::vector<Poly> kept;
            for (auto& e : eqs) {
                if (e.is_zero()) continue;
                if (e.is_constant()) return std::nullopt;
                kept.push_back(std::move(e));
            }
            eqs = std::move(kept);
            if (eqs.empty()) return finish(subst, accept);

            // linear equation: eliminate its first variable
            auto lin = std::find_if(eqs.begin(), eqs.end(), [](const Poly& p) { return p.degree() == 1; });
            if (lin != eqs.end()) {
                const int v = lin->variables().front();
                const Rational c = lin->coefficient({v});
                Poly rest = *lin;
                rest += Poly::var(v).scaled(-c);
                assign(eqs, subst, v, rest.scaled(Rational(-1) / c));
                continue;
            }
            break;
        }

        // univariate equation: branch over its rational roots
        for (const auto& e : eqs) {
            const auto vs = e.variables();
            if (vs.size() != 1 || e.degree() > 2) continue;
            const int v = vs.front();
            const Rational a = e.coefficient({v, v}), b = e.coefficient({v}), c = e.coefficient({});
            std::vector<Rational> roots;
            const auto s = rational_sqrt(b * b - 4 * a * c);
            if (!s) return std::nullopt;
            roots.push_back((-b + *s) / (2 * a));
            if (!s->is_zero()) roots.push_back((-b - *s) / (2 * a));
            return branch(eqs, subst, v, roots, accept);
        }

        // otherwise branch on the variable in the most equations
        std::map<int, int> count;
        for (const auto& e : eqs)
            for (int v : e.variables()) ++count[v];
        int best = count.begin()->first;
        for (const auto& [v, c] : count)
            if (c > count[best]) best = v;
        return branch(eqs, subst, best, candidates(), accept);
    }

    template <class Accept>
    std::optional<std::vector<Rational>> branch(const std::vector<Poly>& eqs,
                                                const std::vector<std::optional<Poly>>& subst, int v,
                                                const std::vector<Rational>& values, Accept& accept) {
        for (const auto& value : values) {
            auto e2 = eqs;
            auto s2 = subst;
            assign(e2, s2, v, Poly::constant(value));
            if (auto r = rec(std::move(e2), std::move(s2), accept)) return r;
            if (nodes_ > budget_) break;
        }
        return std::nullopt;
    }

    static void assign(std::vector<Poly>& eqs, std::vector<std::optional<Poly>>& subst, int v, const Poly& value) {
        for (auto& e : eqs) e = e.substitute(v, value);
        for (auto& s : subst)
            if (s) *s = s->substitute(v, value);
        subst[static_cast<std::size_t>(v)] = value;
    }

    /// Free variables get identity-like values first, then a few fixed
    /// alternatives, until `accept` (invertibility plus exact check) passes.
    template <class Accept>
    std::optional<std::vector<Rational>> finish(const std::vector<std::optional<Poly>>& subst, Accept& accept) {
        std::vector<int> free;
        for (std::size_t v = 0; v < nvars_; ++v)
            if (!subst[v]) free.push_back(static_cast<int>(v));
        static const std::vector<Rational> alt = {1, 2, -1, 3, Rational(1, 2), -2, 5, 7};
        for (std::size_t attempt = 0; attempt < 12; ++attempt) {
            std::vector<Rational> values(nvars_);
            for (std::size_t k = 0; k < free.size(); ++k) {
                const auto v = static_cast<std::size_t>(free[k]);
                if (attempt == 0) values[v] = diagonal_[v] ? 1 : 0;
                else values[v] = alt[(attempt * 3 + k * 5) % alt.size()] * (diagonal_[v] ? 1 : (attempt % 2 ? 1 : 0));
            }
            for (std::size_t v = 0; v < nvars_; ++v)
                if (subst[v]) values[v] = subst[v]->evaluate(values);
            if (accept(values)) return values;
        }
        return std::nullopt;
    }

    std::size_t nvars_;
    std::vector<bool> diagonal_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
};

/// Equations g(d1(v_a v_b)) = d2(g v_a . g v_b) for an unknown g whose entry
/// (i, j) is the polynomial shape[i][j].
inline std::vector<Poly> witness_equations(const Cochain& d1, const Cochain& d2,
                                           const std::vector<std::vector<Poly>>& shape) {
    const GradedSpace& space = d1.space();
    const int n = space.dim();
    std::vector<Poly> eqs;
    std::set<std::size_t> degrees = d1.degrees();
    for (auto k : d2.degrees()) degrees.insert(k);
    for (auto k : degrees) {
        for (const auto& m : enumerate_monomials(space, static_cast<int>(k))) {
            // left: g(d1(m))
            std::vector<Poly> lhs(static_cast<std::size_t>(n));
            const Vector v = d1.evaluate(m);
            for (int r = 1; r <= n; ++r)
                for (int j = 1; j <= n; ++j)
                    if (!v[static_cast<std::size_t>(j - 1)].is_zero())
                        lhs[static_cast<std::size_t>(r - 1)] +=
                            shape[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j - 1)].scaled(
                                v[static_cast<std::size_t>(j - 1)]);
            // right: d2(g v_{i1} ... g v_{ik}) expanded with polynomial coefficients
            std::map<Monomial, Poly> cur{{Monomial{}, Poly::constant(1)}};
            for (int i : m.indices()) {
                std::map<Monomial, Poly> next;
                for (const auto& [mono, c] : cur)
                    for (int a = 1; a <= n; ++a) {
                        const Poly& e = shape[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i - 1)];
                        if (e.is_zero()) continue;
                        auto [sign, prod] = multiply_right(space, mono, a);
                        if (sign == 0) continue;
                        next[prod] += (c * e).scaled(sign);
                    }
                cur = std::move(next);
            }
            std::vector<Poly> rhs(static_cast<std::size_t>(n));
            for (const auto& [mono, c] : cur) {
                if (c.is_zero()) continue;
                const Vector w = d2.evaluate(mono);
                for (std::size_t r = 0; r < w.size(); ++r)
                    if (!w[r].is_zero()) rhs[r] += c.scaled(w[r]);
            }
            for (std::size_t r = 0; r < rhs.size(); ++r) {
                Poly e = lhs[r];
                e += rhs[r].scaled(-1);
                if (!e.is_zero()) eqs.push_back(std::move(e));
            }
        }
    }
    return eqs;
}

inline std::vector<std::vector<int>> parity_permutations(const GradedSpace& space) {
    std::vector<int> even(static_cast<std::size_t>(space.even_dim())), odd(static_cast<std::size_t>(space.odd_dim()));
    std::iota(even.begin(), even.end(), 1);
    std::iota(odd.begin(), odd.end(), space.even_dim() + 1);
    std::vector<std::vector<int>> out;
    std::vector<int> e = even;
    do {
        std::vector<int> o = odd;
        do {
            std::vector<int> p = e;
            p.insert(p.end(), o.begin(), o.end());
            out.push_back(p);
        } while (std::next_permutation(o.begin(), o.end()));
    } while (std::next_permutation(e.begin(), e.end()));
    return out;
}

}  // namespace detail

struct WitnessSearchOptions {
    std::size_t budget = 20000;  // solver nodes per stage attempt
    bool full_blocks = true;     // allow stage (ii)
};

/// Best-effort search for g with apply(g, d1) = d2. Stage (i) tries every
/// parity-preserving permutation times an unknown diagonal; stage (ii) takes
/// the whole block-diagonal matrix as unknown. Every returned witness has been
/// verified exactly; nullopt proves nothing.
inline std::optional<EvenAutomorphism> search_witness(const Cochain& d1, const Cochain& d2,
                                                      const WitnessSearchOptions& opt = {}) {
    if (!(d1.space() == d2.space())) throw std::invalid_argument("search_witness: different spaces");
    const GradedSpace& space = d1.space();
    const auto n = static_cast<std::size_t>(space.dim());
    if (d1 == d2) return EvenAutomorphism::identity(space);

    auto try_shape = [&](const std::vector<std::vector<detail::Poly>>& shape, std::size_t nvars,
                         const std::vector<bool>& diag) -> std::optional<EvenAutomorphism> {
        std::optional<EvenAutomorphism> found;
        auto accept = [&](const std::vector<Rational>& values) {
            Matrix g(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) g(i, j) = shape[i][j].evaluate(values);
            if (!inverse(g)) return false;
            EvenAutomorphism a(space, std::move(g));
            if (!verify_isomorphism(a, d1, d2)) return false;
            found = std::move(a);
            return true;
        };
        detail::WitnessSolver solver(nvars, diag, opt.budget);
        solver.solve(detail::witness_equations(d1, d2, shape), accept);
        return found;
    };

    // (i) permutation times diagonal
    for (const auto& perm : detail::parity_permutations(space)) {
        std::vector<std::vector<detail::Poly>> shape(n, std::vector<detail::Poly>(n));
        for (std::size_t j = 0; j < n; ++j)
            shape[static_cast<std::size_t>(perm[j] - 1)][j] = detail::Poly::var(static_cast<int>(j));
        if (auto g = try_shape(shape, n, std::vector<bool>(n, true))) return g;
    }
    if (!opt.full_blocks) return std::nullopt;

    // (ii) full parity blocks
    std::vector<std::vector<detail::Poly>> shape(n, std::vector<detail::Poly>(n));
    std::vector<bool> diag;
    int nv = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (space.parity(static_cast<int>(i + 1)) == space.parity(static_cast<int>(j + 1))) {
                shape[i][j] = detail::Poly::var(nv++);
                diag.push_back(i == j);
            }
    return try_shape(shape, static_cast<std::size_t>(nv), diag);
}

/// Isomorphism invariants of a codifferential.
struct Invariants {
    CohomologyRow cohomology;
    Bidim center;
    std::vector<Bidim> derived;
    std::vector<Bidim> lower_central;
};

inline Invariants invariants(const Cochain& d) {
    const SuperBracket b = to_superalgebra(d);
    return {cohomology_row(d), center(b).codifferential_bidim(), derived_series(b).codifferential_terms(),
            lower_central_series(b).codifferential_terms()};
}

struct Verdict {
    bool distinct = false;
    std::string invariant;  // first differing invariant, e.g. "h0"
    std::string detail;

    static Verdict unknown() { return {}; }
};

/// Certifies non-isomorphism by an invariant mismatch; "unknown" otherwise.
inline Verdict distinguish(const Invariants& a, const Invariants& b) {
    auto chain = [](const std::vector<Bidim>& c) {
        std::string s;
        for (const auto& x : c) s += (s.empty() ? "" : " > ") + x.str();
        return s;
    };
    for (std::size_t n = 0; n < 4; ++n)
        if (a.cohomology.h[n] != b.cohomology.h[n])
            return {true, "h" + std::to_string(n), a.cohomology.h[n].str() + " vs " + b.cohomology.h[n].str()};
    if (a.center != b.center) return {true, "center", a.center.str() + " vs " + b.center.str()};
    if (a.derived != b.derived) return {true, "derived series", chain(a.derived) + " vs " + chain(b.derived)};
    if (a.lower_central != b.lower_central)
        return {true, "lower central series", chain(a.lower_central) + " vs " + chain(b.lower_central)};
    return Verdict::unknown();
}

inline Verdict distinguish(const Cochain& d1, const Cochain& d2) {
    if (!(d1.space() == d2.space())) return {true, "space", d1.space().str() + " vs " + d2.space().str()};
    return distinguish(invariants(d1), invariants(d2));
}

}  // namespace superlie
