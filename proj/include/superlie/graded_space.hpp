#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace superlie {

enum class Parity : unsigned char { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) noexcept {
    return static_cast<Parity>(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}

constexpr Parity flip(Parity p) noexcept { return p + Parity::odd; }

constexpr bool is_odd(Parity p) noexcept { return p == Parity::odd; }

/// (-1)^{|a||b|}
constexpr int koszul(Parity a, Parity b) noexcept {
    return (is_odd(a) && is_odd(b)) ? -1 : 1;
}

inline const char* to_string(Parity p) { return is_odd(p) ? "odd" : "even"; }

/// A Z2-graded vector space of bidimension m|n. Basis indices are 1-based;
/// 1..m are even and m+1..m+n are odd.
class GradedSpace {
public:
    GradedSpace() = default;
    GradedSpace(int even_dim, int odd_dim) : even_(even_dim), odd_(odd_dim) {
        if (even_dim < 0 || odd_dim < 0)
            throw std::invalid_argument("GradedSpace: negative dimension");
    }

    /// Parses "m|n".
    static GradedSpace parse(const std::string& text) {
        auto bar = text.find('|');
        if (bar == std::string::npos || bar == 0 || bar + 1 >= text.size())
            throw std::invalid_argument("bad bidimension '" + text + "', expected m|n");
        try {
            std::size_t used_m = 0, used_n = 0;
            int m = std::stoi(text.substr(0, bar), &used_m);
            int n = std::stoi(text.substr(bar + 1), &used_n);
            if (used_m != bar || used_n != text.size() - bar - 1)
                throw std::invalid_argument(text);
            return GradedSpace(m, n);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad bidimension '" + text + "', expected m|n");
        }
    }

    int even_dim() const noexcept { return even_; }
    int odd_dim() const noexcept { return odd_; }
    int dim() const noexcept { return even_ + odd_; }

    bool contains(int i) const noexcept { return i >= 1 && i <= dim(); }

    Parity parity(int i) const {
        if (!contains(i))
            throw std::out_of_range("basis index " + std::to_string(i) + " outside " + str());
        return i <= even_ ? Parity::even : Parity::odd;
    }

    /// The parity-reversed space, i.e. the superalgebra side of a codifferential space.
    GradedSpace reversed() const { return GradedSpace(odd_, even_); }

    std::string str() const { return std::to_string(even_) + "|" + std::to_string(odd_); }

    friend bool operator==(const GradedSpace&, const GradedSpace&) = default;

private:
    int even_ = 0;
    int odd_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const GradedSpace& s) { return os << s.str(); }

/// Canonical basis element of the supersymmetric power: a sorted multiset of
/// basis indices in which odd indices occur at most once.
class Monomial {
public:
    Monomial() = default;

    /// Builds the canonical monomial from an already sorted index list.
    /// Throws if the list is unsorted or repeats an odd index.
    Monomial(const GradedSpace& space, std::vector<int> sorted_indices)
        : idx_(std::move(sorted_indices)) {
        for (std::size_t k = 0; k < idx_.size(); ++k) {
            space.parity(idx_[k]);
            if (k > 0) {
                if (idx_[k - 1] > idx_[k])
                    throw std::invalid_argument("Monomial: indices not sorted");
                if (idx_[k - 1] == idx_[k] && is_odd(space.parity(idx_[k])))
                    throw std::invalid_argument("Monomial: odd index " +
                                                std::to_string(idx_[k]) + " repeated");
            }
        }
    }

    static Monomial unchecked(std::vector<int> sorted_indices) {
        Monomial m;
        m.idx_ = std::move(sorted_indices);
        return m;
    }

    std::size_t degree() const noexcept { return idx_.size(); }
    bool empty() const noexcept { return idx_.empty(); }
    const std::vector<int>& indices() const noexcept { return idx_; }
    int operator[](std::size_t k) const { return idx_[k]; }

    int multiplicity(int i) const {
        return static_cast<int>(std::count(idx_.begin(), idx_.end(), i));
    }

    Parity parity(const GradedSpace& space) const {
        Parity p = Parity::even;
        for (int i : idx_) p = p + space.parity(i);
        return p;
    }

    std::string str() const {
        if (idx_.empty()) return "1";
        std::string s;
        for (std::size_t k = 0; k < idx_.size(); ++k) {
            if (k) s += '.';
            s += 'v' + std::to_string(idx_[k]);
        }
        return s;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial& a, const Monomial& b) {
        return a.idx_ <=> b.idx_;
    }

private:
    std::vector<int> idx_;
};

/// Orders monomials by degree first, then lexicographically.
struct DegreeLex {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a < b;
    }
};

/// All canonical monomials of degree k, lexicographic on the sorted index sequence.
inline std::vector<Monomial> enumerate_monomials(const GradedSpace& space, int k) {
    std::vector<Monomial> out;
    if (k < 0) return out;
    std::vector<int> cur;
    cur.reserve(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(Monomial::unchecked(cur));
            return;
        }
        for (int i = start; i <= space.dim(); ++i) {
            cur.push_back(i);
            // odd generators square to zero
            self(self, is_odd(space.parity(i)) ? i + 1 : i);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

/// Koszul sign for moving the entries at `selected` positions of `mono` to the
/// front while keeping relative order: one factor -1 for every odd unselected
/// entry that precedes an odd selected entry.
inline int unshuffle_sign(const GradedSpace& space, const Monomial& mono,
                          std::span<const std::size_t> selected) {
    std::vector<bool> chosen(mono.degree(), false);
    for (std::size_t pos : selected) {
        if (pos >= mono.degree()) throw std::out_of_range("unshuffle_sign: position");
        chosen[pos] = true;
    }
    int odd_unselected_before = 0;
    int crossings = 0;
    for (std::size_t k = 0; k < mono.degree(); ++k) {
        if (!is_odd(space.parity(mono[k]))) continue;
        if (chosen[k])
            crossings += odd_unselected_before;
        else
            ++odd_unselected_before;
    }
    return crossings % 2 ? -1 : 1;
}

/// Multiplies a canonical monomial by a basis vector on the right. Returns the
/// sign and the canonical product, or sign 0 if an odd index would repeat.
inline std::pair<int, Monomial> multiply_right(const GradedSpace& space, const Monomial& mono,
                                               int index) {
    const auto& idx = mono.indices();
    const bool odd = is_odd(space.parity(index));
    auto pos = std::upper_bound(idx.begin(), idx.end(), index);
    if (odd && pos != idx.begin() && *(pos - 1) == index) return {0, Monomial{}};
    int sign = 1;
    if (odd) {
        for (auto it = pos; it != idx.end(); ++it)
            if (is_odd(space.parity(*it))) sign = -sign;
    }
    std::vector<int> next;
    next.reserve(idx.size() + 1);
    next.insert(next.end(), idx.begin(), pos);
    next.push_back(index);
    next.insert(next.end(), pos, idx.end());
    return {sign, Monomial::unchecked(std::move(next))};
}

/// Multiplies a basis vector into a canonical monomial from the left.
inline std::pair<int, Monomial> multiply_left(const GradedSpace& space, int index,
                                              const Monomial& mono) {
    const auto& idx = mono.indices();
    const bool odd = is_odd(space.parity(index));
    auto pos = std::lower_bound(idx.begin(), idx.end(), index);
    if (odd && pos != idx.end() && *pos == index) return {0, Monomial{}};
    int sign = 1;
    if (odd) {
        for (auto it = idx.begin(); it != pos; ++it)
            if (is_odd(space.parity(*it))) sign = -sign;
    }
    std::vector<int> next;
    next.reserve(idx.size() + 1);
    next.insert(next.end(), idx.begin(), pos);
    next.push_back(index);
    next.insert(next.end(), pos, idx.end());
    return {sign, Monomial::unchecked(std::move(next))};
}

}  // namespace superlie
