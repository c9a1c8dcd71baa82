#include <superlie/catalog.hpp>
#include <superlie/deformation.hpp>

#include <support/cohomology_oracle.hpp>

#include <gtest/gtest.h>

using namespace superlie;

namespace {

const Catalog& catalog() {
    static const Catalog c = load_catalog(SUPERLIE_TEST_CATALOG);
    return c;
}

Cochain entry_at(const std::string& id, Bindings b = {}) { return instantiate_entry(catalog().find(id), b); }

// x (a 3-cocycle) lies in im D_2, checked with scratch ranks
bool is_coboundary_oracle(const Cochain& d, const Cochain& x) {
    const auto& s = d.space();
    const int parity = static_cast<int>(*x.parity());
    const auto src = oracle::cochain_basis(s, 2)[static_cast<std::size_t>(1 - parity)];
    const auto dst = oracle::cochain_basis(s, 3)[static_cast<std::size_t>(parity)];
    std::vector<std::vector<Rational>> cols;
    for (const auto& k : src) {
        Cochain y(s);
        y.add_term(Monomial::unchecked(k.input), k.output, 1);
        const Cochain z = bracket(d, y);
        std::vector<Rational> col;
        for (const auto& t : dst) col.push_back(z.coefficient(Monomial::unchecked(t.input), t.output));
        cols.push_back(std::move(col));
    }
    const std::size_t r = oracle::plain_rank(cols);
    std::vector<Rational> xv;
    for (const auto& t : dst) xv.push_back(x.coefficient(Monomial::unchecked(t.input), t.output));
    cols.push_back(xv);
    return oracle::plain_rank(cols) == r;
}

FamilyCurve curve(const std::string& space, const std::string& expr, const Cochain& target,
                  std::vector<Rational> samples) {
    return FamilyCurve{GradedSpace::parse(space), parse(expr), {}, target, std::move(samples), std::nullopt};
}

}  // namespace

TEST(Infinitesimal, RigidHasNoDirections) {
    EXPECT_TRUE(infinitesimal(entry_at("1|1:d_1")).directions.empty());
}

TEST(Infinitesimal, GenericTwoOneDirection) {
    const Cochain d = entry_at("2|1:d_3", {{"p", 1}, {"q", 1}});
    CochainComplex cx(d);
    const InfinitesimalDeformation inf = infinitesimal(cx);
    ASSERT_EQ(inf.directions.size(), 1u);
    EXPECT_TRUE(bracket(d, inf.directions[0]).is_zero());
    // moving q is a genuine direction; rescaling the whole family is not
    EXPECT_FALSE(is_zero_vector(cx.class_coordinates(2, instantiate("ps(2,3;2)", d.space()))));
    EXPECT_TRUE(is_zero_vector(cx.class_coordinates(2, d)));
    ASSERT_EQ(inf.second_order.size(), 1u);
    EXPECT_EQ(inf.second_order.at({0, 0}), Rational(1, 2) * bracket(inf.directions[0], inf.directions[0]));
}

TEST(Infinitesimal, ZeroDifferentialDeformsEverywhere) {
    const GradedSpace s(1, 2);
    CochainComplex cx{Cochain(s)};
    EXPECT_EQ(static_cast<int>(infinitesimal(cx).directions.size()), cx.basis(2).bidim().odd);
}

TEST(Infinitesimal, CountsMatchOddH2OnCatalog) {
    for (const auto& e : catalog().entries)
        for (const auto& row : e.rows) {
            const Cochain d = instantiate_entry(e, sample_row(e, row).family);
            const InfinitesimalDeformation inf = infinitesimal(d);
            EXPECT_EQ(static_cast<int>(inf.directions.size()), row.expected.h[2].odd) << e.id << " " << row.label;
            for (const auto& x : inf.directions) EXPECT_TRUE(bracket(d, x).is_zero()) << e.id;
        }
}

TEST(Obstruction, SmoothFamilyDirectionIsUnobstructed) {
    const Cochain d = entry_at("2|1:d_3", {{"p", 1}, {"q", 1}});
    CochainComplex cx(d);
    const auto dir = cx.representatives(2, Parity::odd);
    ASSERT_EQ(dir.size(), 1u);
    EXPECT_TRUE(is_zero_vector(obstruction_class(cx, dir[0], dir[0])));
    EXPECT_TRUE(is_coboundary_oracle(d, bracket(dir[0], dir[0])));
}

TEST(Obstruction, TrivialWhenH3Vanishes) {
    const Cochain d = entry_at("1|1:d_1");
    CochainComplex cx(d);
    ASSERT_EQ(cx.cohomology(3).total(), 0);
    const Cochain a = bracket(d, instantiate("ps(1;1)", d.space()));
    const Cochain b = bracket(d, instantiate("ps(2;2)+ps(1;1)", d.space()));
    EXPECT_TRUE(is_zero_vector(obstruction_class(cx, a, b)));
}

// h3 = 0|1 at this point: whatever the class is, it must agree with the scratch membership test
TEST(Obstruction, SpecialPointMembership) {
    const Cochain d = entry_at("2|1:d_3", {{"p", 1}, {"q", -3}});
    CochainComplex cx(d);
    ASSERT_EQ(cx.cohomology(3), Bidim::parse("0|1"));
    const auto dir = cx.representatives(2, Parity::odd);
    ASSERT_FALSE(dir.empty());
    for (const auto& a : dir)
        for (const auto& b : dir) {
            const Vector cls = obstruction_class(cx, a, b);
            EXPECT_EQ(is_zero_vector(cls), is_coboundary_oracle(d, bracket(a, b)));
        }
}

TEST(Obstruction, RejectsNonCocycles) {
    const Cochain d = entry_at("2|1:d_3", {{"p", 1}, {"q", 1}});
    CochainComplex cx(d);
    const Cochain notcocycle = instantiate("ps(1,1;2)+ps(1,2;2)", d.space());
    ASSERT_FALSE(bracket(d, notcocycle).is_zero());
    EXPECT_THROW(obstruction_class(cx, notcocycle, notcocycle), std::invalid_argument);
}

TEST(Jump, TwoOneFamily) {
    FamilyCurve fc = curve("1|2", "4*ps(1,1;2)+t*ps(1,3;1)-2*t*ps(2,3;2)", entry_at("2|1:d_1"),
                           {1, Rational(1, 2), -3});
    const JumpReport searched = check_jump_witness(fc);
    EXPECT_EQ(searched.status(), ClaimStatus::verified);
    for (const auto& s : searched.samples) {
        EXPECT_TRUE(s.codifferential);
        ASSERT_TRUE(s.witness);
        EXPECT_TRUE(verify_isomorphism(EvenAutomorphism(fc.space, *s.witness), fc.at(s.t), fc.target));
    }
    // the stored witness diag(1, 1, t) does the job without searching
    fc.witness = std::vector<std::vector<CoeffExpr>>{
        {parse_coefficient("1"), parse_coefficient("0"), parse_coefficient("0")},
        {parse_coefficient("0"), parse_coefficient("1"), parse_coefficient("0")},
        {parse_coefficient("0"), parse_coefficient("0"), parse_coefficient("t")}};
    const JumpReport stored = check_jump_witness(fc);
    EXPECT_EQ(stored.status(), ClaimStatus::verified);
    for (const auto& s : stored.samples) EXPECT_EQ(s.how, "stored witness");
}

TEST(Jump, ConstantFamily) {
    const Cochain t = entry_at("2|1:d_1");
    const FamilyCurve fc = curve("1|2", "4*ps(1,1;2)+ps(1,3;1)-2*ps(2,3;2)", t, {1, 2});
    EXPECT_EQ(check_jump_witness(fc).status(), ClaimStatus::verified);
}

TEST(Jump, WrongTargetIsContradicted) {
    const FamilyCurve fc = curve("1|2", "4*ps(1,1;2)+t*ps(1,3;1)-2*t*ps(2,3;2)", entry_at("2|1:d_2"), {1});
    const JumpReport r = check_jump_witness(fc);
    EXPECT_EQ(r.status(), ClaimStatus::contradicted);
    EXPECT_NE(r.samples[0].how.find("distinct by"), std::string::npos);
}

TEST(Jump, BadSamples) {
    const FamilyCurve zero = curve("1|2", "4*ps(1,1;2)+t*ps(1,3;1)-2*t*ps(2,3;2)", entry_at("2|1:d_1"), {0});
    EXPECT_EQ(check_jump_witness(zero).status(), ClaimStatus::unverified);
    const FamilyCurve broken = curve("1|1", "ps(1,2;1)+t*ps(1,1;2)", entry_at("1|1:d_1"), {1});
    EXPECT_EQ(check_jump_witness(broken).status(), ClaimStatus::contradicted);
}
