#pragma once

#include <superlie/cochain.hpp>

#include <array>
#include <deque>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace superlie {

/// Even|odd dimension pair, printed "e|o".
struct Bidim {
    int even = 0;
    int odd = 0;

    int total() const noexcept { return even + odd; }
    int& operator[](Parity p) noexcept { return is_odd(p) ? odd : even; }
    int operator[](Parity p) const noexcept { return is_odd(p) ? odd : even; }

    std::string str() const { return std::to_string(even) + "|" + std::to_string(odd); }

    static Bidim parse(const std::string& text) {
        const GradedSpace s = GradedSpace::parse(text);
        return {s.even_dim(), s.odd_dim()};
    }

    friend bool operator==(const Bidim&, const Bidim&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Bidim& b) { return os << b.str(); }

/// h0..h3 of a codifferential.
struct CohomologyRow {
    std::array<Bidim, 4> h{};

    std::string str() const {
        std::string s;
        for (std::size_t n = 0; n < h.size(); ++n) {
            if (n) s += ' ';
            s += "h" + std::to_string(n) + "=" + h[n].str();
        }
        return s;
    }

    friend bool operator==(const CohomologyRow&, const CohomologyRow&) = default;
};

using BracketFn = std::function<Cochain(const Cochain&, const Cochain&)>;

/// Parity-split monomial basis of C^n = Hom(S^n V, V).
class CochainBasis {
public:
    CochainBasis(const GradedSpace& space, int n) : space_(space), degree_(n) {
        for (const auto& mono : enumerate_monomials(space, n)) {
            const Parity mp = mono.parity(space);
            for (int j = 1; j <= space.dim(); ++j) {
                const int p = static_cast<int>(mp + space.parity(j));
                index_[p].emplace(TermKey{mono, j}, keys_[p].size());
                keys_[p].push_back(TermKey{mono, j});
            }
        }
    }

    int degree() const noexcept { return degree_; }
    std::size_t size(Parity p) const noexcept { return keys_[static_cast<int>(p)].size(); }
    Bidim bidim() const {
        return {static_cast<int>(size(Parity::even)), static_cast<int>(size(Parity::odd))};
    }
    const TermKey& key(Parity p, std::size_t k) const { return keys_[static_cast<int>(p)].at(k); }

    Cochain element(Parity p, std::size_t k) const {
        Cochain c(space_);
        const TermKey& t = key(p, k);
        c.add_term(t.input, t.output, 1);
        return c;
    }

    /// Coordinates of a cochain of degree n and parity p; throws on foreign terms.
    Vector coordinates(const Cochain& c, Parity p) const {
        Vector v(size(p));
        const auto& idx = index_[static_cast<int>(p)];
        for (const auto& [key, coeff] : c.terms()) {
            auto it = idx.find(key);
            if (it == idx.end()) throw std::invalid_argument("cochain term outside C^n block");
            v[it->second] = coeff;
        }
        return v;
    }

    Cochain from_coordinates(const Vector& v, Parity p) const {
        Cochain c(space_);
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) c.add_term(key(p, k).input, key(p, k).output, v[k]);
        return c;
    }

private:
    GradedSpace space_;
    int degree_;
    std::array<std::vector<TermKey>, 2> keys_;
    std::array<std::map<TermKey, std::size_t>, 2> index_;
};

/// The coboundary D_n = [d, -] : C^n -> C^{n+1} as two parity blocks; block p
/// sends C^n_p to C^{n+1}_{p+1} because d is odd.
struct CoboundaryMatrix {
    std::array<Matrix, 2> block;
    const Matrix& from(Parity p) const { return block[static_cast<int>(p)]; }
};

/// Cochain complex of a codifferential, computed lazily degree by degree.
class CochainComplex {
public:
    explicit CochainComplex(Cochain d, BracketFn br = bracket)
        : d_(std::move(d)), bracket_(std::move(br)) {
        const auto p = d_.parity();
        if (!d_.is_zero() && (!p || *p != Parity::odd))
            throw std::invalid_argument("coboundary needs an odd cochain");
    }

    const Cochain& differential() const noexcept { return d_; }
    const GradedSpace& space() const noexcept { return d_.space(); }

    const CochainBasis& basis(int n) {
        while (static_cast<int>(bases_.size()) <= n) bases_.emplace_back(space(), static_cast<int>(bases_.size()));
        return bases_[static_cast<std::size_t>(n)];
    }

    const CoboundaryMatrix& coboundary(int n) {
        if (n < 0) throw std::invalid_argument("negative degree");
        auto it = coboundaries_.find(n);
        if (it != coboundaries_.end()) return it->second;
        const CochainBasis& src = basis(n);
        const CochainBasis& dst = basis(n + 1);
        CoboundaryMatrix m;
        for (Parity p : {Parity::even, Parity::odd}) {
            const Parity q = flip(p);
            Matrix block(dst.size(q), src.size(p));
            for (std::size_t k = 0; k < src.size(p); ++k) {
                const Vector col = dst.coordinates(bracket_(d_, src.element(p, k)), q);
                for (std::size_t r = 0; r < col.size(); ++r) block(r, k) = col[r];
            }
            m.block[static_cast<int>(p)] = std::move(block);
        }
        return coboundaries_.emplace(n, std::move(m)).first->second;
    }

    /// rank of D_n restricted to parity p.
    std::size_t coboundary_rank(int n, Parity p) {
        if (n < 0) return 0;
        const auto key = std::make_pair(n, static_cast<int>(p));
        auto it = ranks_.find(key);
        if (it != ranks_.end()) return it->second;
        const std::size_t r = rank(coboundary(n).from(p));
        ranks_.emplace(key, r);
        return r;
    }

    Bidim cohomology(int n) {
        Bidim out;
        for (Parity p : {Parity::even, Parity::odd}) {
            const auto dim_c = basis(n).size(p);
            const auto cycles = dim_c - coboundary_rank(n, p);
            const auto boundaries = coboundary_rank(n - 1, flip(p));
            out[p] = static_cast<int>(cycles - boundaries);
        }
        return out;
    }

    CohomologyRow row() {
        CohomologyRow r;
        for (int n = 0; n < 4; ++n) r.h[static_cast<std::size_t>(n)] = cohomology(n);
        return r;
    }

    /// Cocycles of degree n and parity p independent modulo coboundaries.
    std::vector<Cochain> representatives(int n, Parity p) {
        const CochainBasis& b = basis(n);
        auto spanning = image_vectors(n, p);
        std::size_t current = spanning.empty() ? 0 : span_rank(spanning, b.size(p));
        std::vector<Cochain> reps;
        for (auto& z : kernel_basis(coboundary(n).from(p))) {
            spanning.push_back(z);
            const std::size_t r = span_rank(spanning, b.size(p));
            if (r > current) {
                current = r;
                reps.push_back(b.from_coordinates(z, p));
            } else {
                spanning.pop_back();
            }
        }
        return reps;
    }

    /// Coordinates of the class of a cocycle x of degree n with respect to
    /// representatives(n, p); throws if x is not a cocycle.
    Vector class_coordinates(int n, const Cochain& x) {
        const auto xp = x.parity();
        if (!xp) throw std::invalid_argument("class_coordinates: inhomogeneous cochain");
        const Parity p = *xp;
        const CochainBasis& b = basis(n);
        const Vector xv = b.coordinates(x, p);
        if (!bracket_(d_, x).is_zero()) throw std::invalid_argument("class_coordinates: not a cocycle");
        const auto reps = representatives(n, p);
        const auto image = image_vectors(n, p);
        Matrix sys(b.size(p), reps.size() + image.size());
        for (std::size_t k = 0; k < reps.size(); ++k) {
            const Vector v = b.coordinates(reps[k], p);
            for (std::size_t r = 0; r < v.size(); ++r) sys(r, k) = v[r];
        }
        for (std::size_t k = 0; k < image.size(); ++k)
            for (std::size_t r = 0; r < image[k].size(); ++r) sys(r, reps.size() + k) = image[k][r];
        const auto sol = solve(sys, xv);
        if (!sol) throw std::logic_error("cocycle outside span of representatives and coboundaries");
        return Vector(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(reps.size()));
    }

private:
    /// Columns of D_{n-1} landing in C^n_p.
    std::vector<Vector> image_vectors(int n, Parity p) {
        std::vector<Vector> out;
        if (n == 0) return out;
        const Matrix& m = coboundary(n - 1).from(flip(p));
        for (std::size_t c = 0; c < m.cols(); ++c) {
            Vector v(m.rows());
            for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, c);
            out.push_back(std::move(v));
        }
        return out;
    }

    static std::size_t span_rank(const std::vector<Vector>& vs, std::size_t length) {
        Matrix m(vs.size(), length);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = 0; j < length; ++j) m(i, j) = vs[i][j];
        return rank(m);
    }

    Cochain d_;
    BracketFn bracket_;
    std::deque<CochainBasis> bases_;
    std::map<int, CoboundaryMatrix> coboundaries_;
    std::map<std::pair<int, int>, std::size_t> ranks_;
};

inline CoboundaryMatrix coboundary_matrix(const Cochain& d, int n) {
    CochainComplex c(d);
    return c.coboundary(n);
}

inline Bidim cohomology_bidim(const Cochain& d, int n) {
    CochainComplex c(d);
    return c.cohomology(n);
}

inline CohomologyRow cohomology_row(const Cochain& d, BracketFn br = bracket) {
    CochainComplex c(d, std::move(br));
    return c.row();
}

/// Parity-tagged cocycles spanning H^2(d).
struct CocycleBasis {
    int degree = 2;
    std::vector<std::pair<Cochain, Parity>> representatives;

    Bidim bidim() const {
        Bidim b;
        for (const auto& [c, p] : representatives) ++b[p];
        return b;
    }
};

inline CocycleBasis h2_basis(const Cochain& d) {
    CochainComplex c(d);
    CocycleBasis out;
    for (Parity p : {Parity::even, Parity::odd})
        for (auto& rep : c.representatives(2, p)) out.representatives.emplace_back(std::move(rep), p);
    return out;
}

}  // namespace superlie
