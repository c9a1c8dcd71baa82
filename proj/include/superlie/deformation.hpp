#pragma once

#include <superlie/cohomology.hpp>
#include <superlie/literal_parser.hpp>
#include <superlie/transform.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superlie {

/// d + sum t_i delta^i over the odd part of H^2 (codifferential grading).
struct InfinitesimalDeformation {
    Cochain base;
    std::vector<Cochain> directions;
    /// Second-order term of [d_t, d_t]/2 as a table: (i,i) holds 1/2 [delta^i, delta^i],
    /// (i,j) with i < j holds [delta^i, delta^j], the coefficient of t_i t_j.
    std::map<std::pair<std::size_t, std::size_t>, Cochain> second_order;
};

inline InfinitesimalDeformation infinitesimal(CochainComplex& complex) {
    InfinitesimalDeformation out{complex.differential(), complex.representatives(2, Parity::odd), {}};
    const auto& dir = out.directions;
    for (std::size_t i = 0; i < dir.size(); ++i)
        for (std::size_t j = i; j < dir.size(); ++j) {
            Cochain b = bracket(dir[i], dir[j]);
            if (i == j) b *= Rational(1, 2);
            out.second_order.emplace(std::make_pair(i, j), std::move(b));
        }
    return out;
}

inline InfinitesimalDeformation infinitesimal(const Cochain& d) {
    CochainComplex c(d);
    return infinitesimal(c);
}

/// Class of [a, b] in H^3 for cocycles a, b of degree 2, in coordinates of
/// complex.representatives(3, parity). Empty or all-zero means unobstructed.
inline Vector obstruction_class(CochainComplex& complex, const Cochain& a, const Cochain& b) {
    const Cochain& d = complex.differential();
    if (!bracket(d, a).is_zero() || !bracket(d, b).is_zero())
        throw std::invalid_argument("obstruction_class: inputs must be cocycles");
    const Cochain x = bracket(a, b);
    if (x.is_zero()) return {};
    return complex.class_coordinates(3, x);
}

inline bool is_zero_vector(const Vector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// One-parameter family of cochains in t with a designated target.
struct FamilyCurve {
    GradedSpace space;
    CochainExpr expr;  // free parameter "t" (others must be bound in `fixed`)
    Bindings fixed;
    Cochain target;
    std::vector<Rational> samples;
    /// Optional witness per sample: entries are coefficient expressions in t.
    std::optional<std::vector<std::vector<CoeffExpr>>> witness;

    Cochain at(const Rational& t) const {
        Bindings b = fixed;
        b["t"] = t;
        return instantiate(expr, space, b);
    }
};

enum class ClaimStatus { verified, unverified, contradicted };

inline const char* to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::verified: return "verified";
        case ClaimStatus::unverified: return "unverified";
        case ClaimStatus::contradicted: return "contradicted";
    }
    return "?";
}

struct SampleResult {
    Rational t;
    bool codifferential = false;
    ClaimStatus status = ClaimStatus::unverified;
    std::string how;  // "stored witness", "searched witness", invariant name, ...
    std::optional<Matrix> witness;
};

struct JumpReport {
    std::vector<SampleResult> samples;

    ClaimStatus status() const {
        bool all = !samples.empty();
        for (const auto& s : samples) {
            if (s.status == ClaimStatus::contradicted) return ClaimStatus::contradicted;
            all = all && s.status == ClaimStatus::verified;
        }
        return all ? ClaimStatus::verified : ClaimStatus::unverified;
    }
};

/// A sample counts as verified only through an exactly checked witness.
/// Invariant agreement without a witness stays unverified; an invariant
/// mismatch or a non-codifferential sample contradicts the claim.
inline JumpReport check_jump_witness(const FamilyCurve& fc, const WitnessSearchOptions& opt = {}) {
    JumpReport rep;
    std::optional<Invariants> target_inv;
    for (const auto& t : fc.samples) {
        SampleResult r;
        r.t = t;
        if (t.is_zero()) {
            r.how = "sample t=0 is not allowed";
            rep.samples.push_back(std::move(r));
            continue;
        }
        const Cochain dt = fc.at(t);
        r.codifferential = is_codifferential(dt);
        if (!r.codifferential) {
            r.status = ClaimStatus::contradicted;
            r.how = "d_t is not a codifferential";
            rep.samples.push_back(std::move(r));
            continue;
        }
        if (fc.witness) {
            const auto n = static_cast<std::size_t>(fc.space.dim());
            Matrix g(n, n);
            const Bindings b{{"t", t}};
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) g(i, j) = (*fc.witness).at(i).at(j).evaluate(b);
            try {
                EvenAutomorphism a(fc.space, g);
                if (verify_isomorphism(a, dt, fc.target)) {
                    r.status = ClaimStatus::verified;
                    r.how = "stored witness";
                    r.witness = g;
                    rep.samples.push_back(std::move(r));
                    continue;
                }
            } catch (const std::invalid_argument&) {
            }
        }
        if (!target_inv) target_inv = invariants(fc.target);
        const Verdict v = distinguish(invariants(dt), *target_inv);
        if (v.distinct) {
            r.status = ClaimStatus::contradicted;
            r.how = "distinct by " + v.invariant + " (" + v.detail + ")";
        } else if (auto g = search_witness(dt, fc.target, opt)) {
            r.status = ClaimStatus::verified;
            r.how = "searched witness";
            r.witness = g->matrix();
        } else {
            r.how = "invariants agree, no witness within budget";
        }
        rep.samples.push_back(std::move(r));
    }
    return rep;
}

}  // namespace superlie
