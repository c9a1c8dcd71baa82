#pragma once

// Extensions d = delta + mu + lambda + psi of a codifferential delta on W by a
// codifferential mu on M, with V = M + W split by index sets.

#include <superlie/cochain.hpp>

#include <set>
#include <stdexcept>
#include <string>

namespace superlie {

struct Splitting {
    std::set<int> m;  // ideal
    std::set<int> w;  // quotient

    bool in_m(int i) const { return m.count(i) != 0; }
    bool in_w(int i) const { return w.count(i) != 0; }
};

struct ExtensionData {
    GradedSpace space;
    Splitting split;
    Cochain delta;   // S^2 W -> W
    Cochain mu;      // S^2 M -> M
    Cochain lambda;  // M.W -> M
    Cochain psi;     // S^2 W -> M

    ExtensionData(GradedSpace s, Splitting sp, Cochain d, Cochain m, Cochain l, Cochain p)
        : space(s), split(std::move(sp)), delta(std::move(d)), mu(std::move(m)), lambda(std::move(l)),
          psi(std::move(p)) {
        validate();
    }

    /// All pieces zero.
    ExtensionData(GradedSpace s, Splitting sp)
        : ExtensionData(s, std::move(sp), Cochain(s), Cochain(s), Cochain(s), Cochain(s)) {}

    void validate() const {
        for (int i = 1; i <= space.dim(); ++i)
            if (split.in_m(i) == split.in_w(i))
                throw std::invalid_argument("splitting must partition the basis (index " + std::to_string(i) + ")");
        for (int i : split.m)
            if (!space.contains(i)) throw std::invalid_argument("splitting index outside space");
        for (int i : split.w)
            if (!space.contains(i)) throw std::invalid_argument("splitting index outside space");
        check(delta, "delta", 0, true);
        check(mu, "mu", 2, false);
        check(lambda, "lambda", 1, false);
        check(psi, "psi", 0, false);
    }

private:
    /// Every term must have degree 2, exactly `m_inputs` inputs from M and an
    /// output in W (if out_w) or M.
    void check(const Cochain& c, const char* name, int m_inputs, bool out_w) const {
        if (!(c.space() == space)) throw std::invalid_argument(std::string(name) + ": wrong space");
        for (const auto& [key, coeff] : c.terms()) {
            int in_m = 0;
            for (int i : key.input.indices()) in_m += split.in_m(i);
            const bool ok = key.input.degree() == 2 && in_m == m_inputs &&
                            (out_w ? split.in_w(key.output) : split.in_m(key.output));
            if (!ok)
                throw std::invalid_argument(std::string(name) + ": term ps(" + key.input.str() + ";" +
                                            std::to_string(key.output) + ") violates its support");
        }
    }
};

inline Cochain assemble(const ExtensionData& x) { return x.delta + x.mu + x.lambda + x.psi; }

struct ConditionResult {
    bool ok = false;
    Cochain residual;
};

/// The premises ([delta,delta] = 0, [mu,mu] = 0) and the three extension
/// conditions, each with its exact left-hand side.
struct ExtensionCheck {
    ConditionResult delta;
    ConditionResult mu;
    ConditionResult compatibility;  // [mu, lambda]
    ConditionResult maurer_cartan;  // [delta, lambda] + 1/2 [lambda, lambda] + [mu, psi]
    ConditionResult cocycle;        // [delta + lambda, psi]

    bool conditions_hold() const { return compatibility.ok && maurer_cartan.ok && cocycle.ok; }
    bool all() const { return delta.ok && mu.ok && conditions_hold(); }
};

inline ExtensionCheck check_conditions(const ExtensionData& x) {
    auto result = [](Cochain c) {
        const bool ok = c.is_zero();
        return ConditionResult{ok, std::move(c)};
    };
    ExtensionCheck r;
    r.delta = result(bracket(x.delta, x.delta));
    r.mu = result(bracket(x.mu, x.mu));
    r.compatibility = result(bracket(x.mu, x.lambda));
    r.maurer_cartan =
        result(bracket(x.delta, x.lambda) + Rational(1, 2) * bracket(x.lambda, x.lambda) + bracket(x.mu, x.psi));
    r.cocycle = result(bracket(x.delta + x.lambda, x.psi));
    return r;
}

/// lambda -> lambda + [mu, beta] for an even beta in hom(W, M).
inline ExtensionData beta_shift(const ExtensionData& x, const Cochain& beta) {
    if (!(beta.space() == x.space)) throw std::invalid_argument("beta_shift: wrong space");
    const auto p = beta.parity();
    if (!p || *p != Parity::even) throw std::invalid_argument("beta_shift: beta must be even");
    for (const auto& [key, c] : beta.terms())
        if (key.input.degree() != 1 || !x.split.in_w(key.input[0]) || !x.split.in_m(key.output))
            throw std::invalid_argument("beta_shift: beta must map W to M");
    ExtensionData out = x;
    out.lambda = x.lambda + bracket(x.mu, beta);
    out.validate();
    return out;
}

}  // namespace superlie
