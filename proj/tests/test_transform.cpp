#include <superlie/catalog.hpp>
#include <superlie/transform.hpp>

#include <support/positional_oracle.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace superlie;

namespace {

const Catalog& catalog() {
    static const Catalog c = load_catalog(SUPERLIE_TEST_CATALOG);
    return c;
}

Cochain entry_at(const std::string& id, Bindings b = {}) { return instantiate_entry(catalog().find(id), b); }

// random invertible parity-preserving matrix with small integer entries
EvenAutomorphism random_automorphism(std::mt19937_64& rng, const GradedSpace& s) {
    const auto n = static_cast<std::size_t>(s.dim());
    std::uniform_int_distribution<int> v(-2, 2);
    while (true) {
        Matrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (s.parity(static_cast<int>(i + 1)) == s.parity(static_cast<int>(j + 1))) g(i, j) = v(rng);
        if (inverse(g)) return EvenAutomorphism(s, g);
    }
}

}  // namespace

TEST(Automorphism, Validation) {
    const GradedSpace s(1, 2);
    Matrix mix = Matrix::identity(3);
    mix(0, 1) = 1;
    EXPECT_THROW(EvenAutomorphism(s, mix), std::invalid_argument);
    EXPECT_THROW(EvenAutomorphism(s, Matrix(3, 3)), std::invalid_argument);
    EXPECT_THROW(EvenAutomorphism(s, Matrix::identity(2)), std::invalid_argument);
}

TEST(Apply, IdentityAndScaling) {
    const GradedSpace s(1, 2);
    const Cochain d = entry_at("2|1:d_3", {{"p", 1}, {"q", 2}});
    EXPECT_EQ(apply(EvenAutomorphism::identity(s), d), d);
    // v3 -> v3 / u turns d_3(p:q) into d_3(up:uq)
    for (int u : {2, -3, 5}) {
        const auto g = EvenAutomorphism::diagonal(s, {1, 1, Rational(1) / u});
        EXPECT_EQ(apply(g, d), entry_at("2|1:d_3", {{"p", u}, {"q", 2 * u}}));
    }
}

TEST(Apply, GroupActionAndCodifferentials) {
    std::mt19937_64 rng(37);
    for (const auto& e : catalog().entries) {
        const Cochain d = instantiate_entry(e, sample_row(e, e.rows.front()).family);
        for (int k = 0; k < 3; ++k) {
            const auto g = random_automorphism(rng, d.space()), h = random_automorphism(rng, d.space());
            const Cochain hd = apply(h, d);
            EXPECT_EQ(apply(g * h, d), apply(g, hd)) << e.id;
            EXPECT_TRUE(is_codifferential(hd)) << e.id;
            EXPECT_EQ(apply(h.inverse(), hd), d) << e.id;
        }
    }
}

TEST(Invariants, StableUnderConjugation) {
    std::mt19937_64 rng(41);
    std::map<std::string, int> per_space;
    for (int round = 0; round < 100; ++round)
        for (const auto& e : catalog().entries) {
            if (per_space[e.space.str()] >= 100) continue;
            const auto& row = e.rows[static_cast<std::size_t>(round) % e.rows.size()];
            const Cochain d = instantiate_entry(e, sample_row(e, row).family);
            const Cochain gd = apply(random_automorphism(rng, d.space()), d);
            const Verdict v = distinguish(d, gd);
            ASSERT_FALSE(v.distinct) << e.id << " " << v.invariant << " " << v.detail;
            ++per_space[e.space.str()];
        }
    for (const auto& [space, n] : per_space) EXPECT_EQ(n, 100) << space;
}

TEST(Verify, WrongWitnessLeavesResidual) {
    const GradedSpace s(1, 2);
    const Cochain d = entry_at("2|1:d_3", {{"p", 1}, {"q", 2}});
    const Cochain target = entry_at("2|1:d_3", {{"p", 2}, {"q", 4}});
    const auto wrong = EvenAutomorphism::diagonal(s, {1, 1, 2});
    EXPECT_FALSE(verify_isomorphism(wrong, d, target));
    EXPECT_FALSE(isomorphism_residual(wrong, d, target).is_zero());
    const auto right = EvenAutomorphism::diagonal(s, {1, 1, Rational(1, 2)});
    EXPECT_TRUE(verify_isomorphism(right, d, target));
}

TEST(Search, Examples) {
    const Cochain d = entry_at("2|1:d_3", {{"p", 1}, {"q", 2}});
    const auto id = search_witness(d, d);
    ASSERT_TRUE(id);
    EXPECT_EQ(id->matrix(), Matrix::identity(3));

    const Cochain scaled = entry_at("2|1:d_3", {{"p", 2}, {"q", 4}});
    const auto g = search_witness(d, scaled);
    ASSERT_TRUE(g);
    EXPECT_TRUE(verify_isomorphism(*g, d, scaled));

    const Cochain t1 = entry_at("1|1:d_1"), t2 = entry_at("1|1:d_2");
    EXPECT_FALSE(search_witness(t1, t2));
    const Verdict v = distinguish(t1, t2);
    EXPECT_TRUE(v.distinct);
    EXPECT_EQ(v.invariant, "h0");
}

TEST(Search, TwoTwoCoincidence) {
    const Cochain a = entry_at("2|2:d_5", {{"p", 0}, {"q", 0}});
    const Cochain b = entry_at("2|2:d_10", {{"p", 0}, {"q", 0}, {"r", 0}});
    const auto g = search_witness(a, b);
    ASSERT_TRUE(g);
    EXPECT_TRUE(verify_isomorphism(*g, a, b));
}

TEST(Distinguish, Examples) {
    const Cochain d2 = entry_at("2|1:d_2");
    const Cochain zero = entry_at("2|1:d_3", {{"p", 0}, {"q", 0}});
    const Verdict v = distinguish(d2, zero);
    EXPECT_TRUE(v.distinct);
    EXPECT_EQ(v.invariant, "h0");
    EXPECT_EQ(v.detail, "0|2 vs 1|2");
    const Cochain d = entry_at("2|1:d_1");
    std::mt19937_64 rng(43);
    EXPECT_FALSE(distinguish(d, apply(random_automorphism(rng, d.space()), d)).distinct);
}

// every witness the search hands back is exact, also on conjugated inputs
TEST(Search, ReturnedWitnessesVerify) {
    std::mt19937_64 rng(47);
    int found = 0;
    for (const auto& e : catalog().entries) {
        const Cochain d = instantiate_entry(e, sample_row(e, e.rows.front()).family);
        const auto n = static_cast<std::size_t>(d.space().dim());
        std::vector<Rational> diag;
        std::uniform_int_distribution<int> v(1, 3);
        for (std::size_t i = 0; i < n; ++i) diag.push_back(Rational(v(rng)) * (rng() % 2 ? 1 : -1));
        const Cochain target = apply(EvenAutomorphism::diagonal(d.space(), diag), d);
        WitnessSearchOptions opt;
        opt.budget = 5000;
        if (auto g = search_witness(d, target, opt)) {
            EXPECT_TRUE(verify_isomorphism(*g, d, target)) << e.id;
            ++found;
        }
    }
    // diagonal conjugates are always within reach of stage (i)
    EXPECT_EQ(found, static_cast<int>(catalog().entries.size()));
}

TEST(Poly, Arithmetic) {
    using detail::Poly;
    const Poly x = Poly::var(0), y = Poly::var(1);
    Poly p = x * y;
    p += Poly::constant(3);
    EXPECT_EQ(p.degree(), 2u);
    EXPECT_EQ(p.evaluate({2, 5}), 13);
    EXPECT_EQ(p.substitute(0, Poly::constant(2)).evaluate({0, 5}), 13);
    EXPECT_EQ(p.variables(), (std::vector<int>{0, 1}));
    EXPECT_TRUE((p.scaled(0)).is_zero());
    EXPECT_EQ(detail::rational_sqrt(Rational(9, 4)), std::optional<Rational>(Rational(3, 2)));
    EXPECT_FALSE(detail::rational_sqrt(Rational(2)));
}
