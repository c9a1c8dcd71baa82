#pragma once

#include <superlie/graded_space.hpp>
#include <superlie/scalar_linalg.hpp>

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superlie {

/// Basis element psi^{I}_j of Hom(S(V), V): monomial I mapped to v_j.
struct TermKey {
    Monomial input;
    int output = 0;

    friend bool operator==(const TermKey&, const TermKey&) = default;
    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (a.input.degree() != b.input.degree()) return a.input.degree() < b.input.degree();
        if (a.input != b.input) return a.input < b.input;
        return a.output < b.output;
    }
};

/// A sparse linear map S(V) -> V with exact coefficients. Zero coefficients
/// are never stored.
class Cochain {
public:
    using Terms = std::map<TermKey, Rational>;

    Cochain() = default;
    explicit Cochain(GradedSpace space) : space_(space) {}

    /// The basis cochain psi^{inputs}_output with the given coefficient.
    static Cochain basis(const GradedSpace& space, std::vector<int> inputs, int output,
                         Rational coeff = 1) {
        std::sort(inputs.begin(), inputs.end());
        Cochain c(space);
        space.parity(output);
        c.add_term(Monomial(space, std::move(inputs)), output, coeff);
        return c;
    }

    const GradedSpace& space() const noexcept { return space_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    void add_term(const Monomial& input, int output, const Rational& coeff) {
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(TermKey{input, output}, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Rational coefficient(const Monomial& input, int output) const {
        auto it = terms_.find(TermKey{input, output});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::set<std::size_t> degrees() const {
        std::set<std::size_t> out;
        for (const auto& [key, c] : terms_) out.insert(key.input.degree());
        return out;
    }

    Parity term_parity(const TermKey& key) const {
        return key.input.parity(space_) + space_.parity(key.output);
    }

    /// Parity if every term has the same parity; the zero cochain is even.
    std::optional<Parity> parity() const {
        std::optional<Parity> p;
        for (const auto& [key, c] : terms_) {
            const Parity q = term_parity(key);
            if (p && *p != q) return std::nullopt;
            p = q;
        }
        return p.value_or(Parity::even);
    }

    /// Splits into (even part, odd part).
    std::pair<Cochain, Cochain> parity_parts() const {
        Cochain even(space_), odd(space_);
        for (const auto& [key, c] : terms_)
            (is_odd(term_parity(key)) ? odd : even).terms_.emplace(key, c);
        return {std::move(even), std::move(odd)};
    }

    /// Restriction to inputs of one degree.
    Cochain degree_part(std::size_t k) const {
        Cochain out(space_);
        for (const auto& [key, c] : terms_)
            if (key.input.degree() == k) out.terms_.emplace(key, c);
        return out;
    }

    /// Coefficient vector of phi applied to a basis monomial (index j-1 holds v_j).
    Vector evaluate(const Monomial& mono) const {
        Vector out(static_cast<std::size_t>(space_.dim()));
        for (int j = 1; j <= space_.dim(); ++j) {
            auto it = terms_.find(TermKey{mono, j});
            if (it != terms_.end()) out[static_cast<std::size_t>(j - 1)] = it->second;
        }
        return out;
    }

    Cochain& operator+=(const Cochain& other) {
        check_space(other);
        for (const auto& [key, c] : other.terms_) add_term(key.input, key.output, c);
        return *this;
    }
    Cochain& operator-=(const Cochain& other) {
        check_space(other);
        for (const auto& [key, c] : other.terms_) add_term(key.input, key.output, -c);
        return *this;
    }
    Cochain& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [key, c] : terms_) c *= s;
        return *this;
    }

    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator-(Cochain a) { return a *= Rational(-1); }
    friend Cochain operator*(const Rational& s, Cochain a) { return a *= s; }
    friend Cochain operator*(Cochain a, const Rational& s) { return a *= s; }

    friend bool operator==(const Cochain&, const Cochain&) = default;

private:
    void check_space(const Cochain& other) const {
        if (!(other.space_ == space_)) throw std::invalid_argument("cochains on different spaces");
    }

    GradedSpace space_;
    Terms terms_;
};

namespace detail {

inline Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace detail

/// Insertion composition phi o psi: psi is extended as a coderivation and phi
/// applied to the result,
///   (phi o psi)(M) = sum_{S subset M} mult(S) * eps(S) * phi(psi(S) . (M \ S)),
/// summing over sub-multisets S (with the positional multiplicity factor) and
/// using the Koszul sign of moving S to the front. psi's output is prepended to
/// M \ S and the product re-canonicalized.
inline Cochain insertion_compose(const Cochain& phi, const Cochain& psi) {
    if (!(phi.space() == psi.space())) throw std::invalid_argument("compose: different spaces");
    const GradedSpace& space = phi.space();
    Cochain out(space);
    for (const auto& [pk, pc] : psi.terms()) {
        const auto& s_idx = pk.input.indices();
        const int j = pk.output;
        for (const auto& [fk, fc] : phi.terms()) {
            const auto& n_idx = fk.input.indices();
            auto hit = std::lower_bound(n_idx.begin(), n_idx.end(), j);
            if (hit == n_idx.end() || *hit != j) continue;
            std::vector<int> rest(n_idx.begin(), hit);
            rest.insert(rest.end(), hit + 1, n_idx.end());

            bool clash = false;
            int sign = 1;
            for (int u : rest) {
                if (!is_odd(space.parity(u))) continue;
                for (int s : s_idx) {
                    if (!is_odd(space.parity(s))) continue;
                    if (s == u) clash = true;
                    else if (u < s) sign = -sign;
                }
                if (is_odd(space.parity(j)) && u < j) sign = -sign;
            }
            if (clash) continue;

            std::vector<int> m_idx;
            m_idx.reserve(s_idx.size() + rest.size());
            std::merge(s_idx.begin(), s_idx.end(), rest.begin(), rest.end(), std::back_inserter(m_idx));
            Integer mult = 1;
            for (std::size_t k = 0; k < s_idx.size();) {
                const int x = s_idx[k];
                int in_s = 0;
                while (k < s_idx.size() && s_idx[k] == x) ++k, ++in_s;
                const int in_m = static_cast<int>(std::count(m_idx.begin(), m_idx.end(), x));
                mult *= detail::binomial(in_m, in_s);
            }
            Rational coeff = pc * fc * Rational(mult);
            if (sign < 0) coeff = -coeff;
            out.add_term(Monomial::unchecked(std::move(m_idx)), fk.output, coeff);
        }
    }
    return out;
}

/// Graded commutator [phi, psi] = phi o psi - (-1)^{|phi||psi|} psi o phi,
/// extended bilinearly over parity components.
inline Cochain bracket(const Cochain& phi, const Cochain& psi) {
    const auto [phi_even, phi_odd] = phi.parity_parts();
    const auto [psi_even, psi_odd] = psi.parity_parts();
    Cochain out(phi.space());
    auto piece = [&](const Cochain& a, Parity pa, const Cochain& b, Parity pb) {
        if (a.is_zero() || b.is_zero()) return;
        out += insertion_compose(a, b);
        if (koszul(pa, pb) < 0)
            out += insertion_compose(b, a);
        else
            out -= insertion_compose(b, a);
    };
    piece(phi_even, Parity::even, psi_even, Parity::even);
    piece(phi_even, Parity::even, psi_odd, Parity::odd);
    piece(phi_odd, Parity::odd, psi_even, Parity::even);
    piece(phi_odd, Parity::odd, psi_odd, Parity::odd);
    return out;
}

/// True iff d is odd and [d, d] = 0.
inline bool is_codifferential(const Cochain& d) {
    const auto p = d.parity();
    if (!p) return false;
    if (d.is_zero()) return true;
    return *p == Parity::odd && bracket(d, d).is_zero();
}

}  // namespace superlie
