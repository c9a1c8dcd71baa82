#pragma once

// Cohomology dimensions from scratch: own basis of C^n split by parity,
// coboundary columns from the positional bracket, ranks by plain rational
// Gaussian elimination.

#include <support/positional_oracle.hpp>

#include <superlie/cohomology.hpp>

#include <array>

namespace oracle {

struct Key {
    std::vector<int> input;
    int output;
};

inline std::array<std::vector<Key>, 2> cochain_basis(const GradedSpace& s, int n) {
    std::array<std::vector<Key>, 2> out;
    for (const auto& m : superlie::enumerate_monomials(s, n))
        for (int j = 1; j <= s.dim(); ++j) {
            int odd = 0;
            for (int i : m.indices()) odd += superlie::is_odd(s.parity(i));
            odd += superlie::is_odd(s.parity(j));
            out[static_cast<std::size_t>(odd % 2)].push_back({m.indices(), j});
        }
    return out;
}

inline std::size_t plain_rank(std::vector<std::vector<Rational>> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            const Rational f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

/// rank of [d,-] on C^n_parity
inline std::size_t coboundary_rank(const Cochain& d, int n, int parity) {
    if (n < 0) return 0;
    const auto& s = d.space();
    const auto src = cochain_basis(s, n)[static_cast<std::size_t>(parity)];
    const auto dst = cochain_basis(s, n + 1)[static_cast<std::size_t>(1 - parity)];
    std::vector<std::vector<Rational>> cols;
    for (const auto& k : src) {
        Cochain x(s);
        x.add_term(Monomial::unchecked(k.input), k.output, 1);
        const Cochain y = bracket(d, x, n + 1);
        std::vector<Rational> col;
        for (const auto& t : dst) col.push_back(y.coefficient(Monomial::unchecked(t.input), t.output));
        cols.push_back(std::move(col));
    }
    return plain_rank(std::move(cols));
}

inline superlie::Bidim cohomology(const Cochain& d, int n) {
    superlie::Bidim out;
    const auto basis = cochain_basis(d.space(), n);
    for (int p = 0; p < 2; ++p) {
        const auto dim = basis[static_cast<std::size_t>(p)].size();
        const int h = static_cast<int>(dim - coboundary_rank(d, n, p) - coboundary_rank(d, n - 1, 1 - p));
        (p ? out.odd : out.even) = h;
    }
    return out;
}

inline superlie::CohomologyRow cohomology_row(const Cochain& d) {
    superlie::CohomologyRow r;
    for (int n = 0; n < 4; ++n) r.h[static_cast<std::size_t>(n)] = cohomology(d, n);
    return r;
}

}  // namespace oracle
