#include "elliptica/catalog.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace elliptica;
using Real = boost::multiprecision::float128;
using C = complex_t<Real>;

namespace
{

const std::vector<Identity<Real>> &all()
{
    static const auto c = catalog<Real>();
    return c;
}

const Identity<Real> &find(const std::string &id)
{
    for (const auto &i : all())
        if (i.id == id)
            return i;
    throw std::invalid_argument(id);
}

SampleConfig defaults()
{
    SampleConfig cfg;
    cfg.precision = precision_for_digits(30);
    return cfg;
}

} // namespace

TEST(Catalog, RequiredEntriesPresent)
{
    std::set<std::string> ids;
    for (const auto &i : all())
        EXPECT_TRUE(ids.insert(i.id).second) << "duplicate id " << i.id;
    std::vector<std::string> required = {"theta.quasiperiod", "delta.quasiperiod",
                                         "trisecant.additive", "braid.sl3", "d4.mckay",
                                         "d4.remarkable", "lehnsorger.fsym", "lehnsorger.mckay",
                                         "lehnsorger.wwstar.symmetry", "ell.p1"};
    for (int n = 2; n <= 5; ++n) {
        required.push_back("fay.n" + std::to_string(n));
        required.push_back("fay.symmetric.n" + std::to_string(n));
        required.push_back("cy.residue.n" + std::to_string(n));
    }
    for (int n = 1; n <= 6; ++n)
        for (const char *f : {"an.mckay.n", "an.simplified.n", "an.selfdual.n",
                              "limit.hirzebruch.n", "limit.trig.n", "limit.trig.y0.n"})
            required.push_back(f + std::to_string(n));
    for (int m = 1; m <= 3; ++m)
        for (int n = 2; n <= 3; ++n)
            required.push_back("diag.mckay.m" + std::to_string(m) + ".n" + std::to_string(n));
    for (const auto &r : required)
        EXPECT_TRUE(ids.count(r)) << r;
}

TEST(Catalog, EntriesAreWellFormed)
{
    for (const auto &i : all()) {
        EXPECT_GE(i.sides.size(), 2u) << i.id;
        EXPECT_FALSE(i.variables.empty()) << i.id;
        if (i.exact_mode())
            EXPECT_EQ(i.exact_points.size(), 5u) << i.id;
    }
    EXPECT_EQ(find("an.mckay.n3").delta_degree, 2);
    EXPECT_EQ(find("fay.n4").delta_degree, 4);
    EXPECT_FALSE(find("trisecant.additive").delta_degree.has_value());
}

TEST(Catalog, PrefixSelection)
{
    EXPECT_EQ(select(all(), "fay").size(), 8u);
    EXPECT_EQ(select(all(), "fay.symmetric").size(), 4u);
    EXPECT_EQ(select(all(), "fay.n2").size(), 1u);
    EXPECT_TRUE(select(all(), "fa").empty());
    EXPECT_EQ(select(all(), "limit.trig").size(), 12u);
}

TEST(Catalog, D4ResolutionSideHasTheTripleTerm)
{
    const auto p = d4();
    ASSERT_FALSE(p.resolution.terms().empty());
    const auto &t = p.resolution.terms().front();
    EXPECT_EQ(t.coefficient, Rational(3));
    ASSERT_EQ(t.factors.size(), 2u);
    EXPECT_EQ(t.factors[0].first.coefficients(), (std::vector<Rational>{-2, 0}));
    EXPECT_EQ(t.factors[1].first.coefficients(), (std::vector<Rational>{4, 0}));
}

class EveryEntry : public ::testing::TestWithParam<std::string>
{
};

TEST_P(EveryEntry, PassesAtDefaultConfig)
{
    auto cfg = defaults();
    cfg.threads = 4;
    const auto r = verify(find(GetParam()), cfg);
    EXPECT_TRUE(r.pass) << GetParam() << " max_rel_err " << r.max_rel_err << " "
                        << r.exact_detail;
    EXPECT_EQ(r.samples, 32);
}

INSTANTIATE_TEST_SUITE_P(Catalog, EveryEntry, ::testing::ValuesIn([] {
                             std::vector<std::string> ids;
                             for (const auto &i : all())
                                 ids.push_back(i.id);
                             return ids;
                         }()),
                         [](const auto &info) {
                             std::string s = info.param;
                             for (auto &c : s)
                                 if (c == '.')
                                     c = '_';
                             return s;
                         });

TEST(Verify, AnMcKayN1IsStructurallyExact)
{
    const auto r = verify(find("an.mckay.n1"), defaults());
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.max_rel_err, 0.0);
}

TEST(Verify, RejectsBadConfig)
{
    auto cfg = defaults();
    cfg.samples = 0;
    EXPECT_THROW(verify(find("fay.n2"), cfg), std::invalid_argument);
    cfg = defaults();
    cfg.tolerance = 0;
    EXPECT_THROW(verify(find("fay.n2"), cfg), std::invalid_argument);
    cfg = defaults();
    cfg.tau_im_min = -1;
    EXPECT_THROW(verify(find("fay.n2"), cfg), std::invalid_argument);
}

TEST(Verify, PersistentPoleIsADomainError)
{
    Identity<Real> id;
    id.id = "always.pole";
    id.variables = {{"a", VariableRole::torus}};
    auto side = [](const ThetaContext<Real> &ctx, std::span<const C> v) {
        // delta(a - a, a) sits on the pole for every sample
        return delta(ctx, C(v[0] - v[0]), v[0]);
    };
    id.sides = {{"lhs", side}, {"rhs", side}};
    try {
        verify(id, defaults());
        FAIL() << "no error";
    } catch (const std::domain_error &e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("100 retries"), std::string::npos) << what;
        EXPECT_NE(what.find("delta: first argument"), std::string::npos) << what;
    }
}

TEST(Verify, ReportsAreDeterministic)
{
    for (const char *id : {"fay.n3", "an.mckay.n2", "limit.hirzebruch.n3"}) {
        auto serial = defaults();
        auto threaded = serial;
        threaded.threads = 5;
        const auto a = to_json(verify(find(id), serial), false).dump();
        const auto b = to_json(verify(find(id), serial), false).dump();
        const auto c = to_json(verify(find(id), threaded), false).dump();
        EXPECT_EQ(a, b) << id;
        EXPECT_EQ(a, c) << id;
    }
}

TEST(Verify, SeedChangesThePoints)
{
    auto a = defaults(), b = defaults();
    b.seed = a.seed + 1;
    const auto ra = to_json(verify(find("fay.n2"), a), false);
    const auto rb = to_json(verify(find("fay.n2"), b), false);
    EXPECT_NE(ra.dump(), rb.dump());
}

TEST(Verify, StableUnderSampleIncrease)
{
    for (const char *id : {"fay.n4", "an.mckay.n5", "d4.remarkable", "cy.residue.n3"}) {
        auto cfg = defaults();
        const auto r32 = verify(find(id), cfg);
        cfg.samples = 64;
        const auto r64 = verify(find(id), cfg);
        EXPECT_TRUE(r64.pass) << id;
        EXPECT_LE(r64.max_rel_err, 10 * r32.max_rel_err) << id;
    }
}

TEST(Verify, TamperedDeltaFails)
{
    const Expression res = an_resolution_expression(3);
    const Expression orb = an_orbifold_expression(3);
    const auto honest = detail::expression_identity<Real>("t", "", {{"r", res}, {"o", orb}});
    EXPECT_TRUE(verify(honest, defaults()).pass);
    const auto bad = detail::expression_identity<Real>(
        "t", "", {{"r", res.perturbed(1, 0, Rational(1, 1000))}, {"o", orb}});
    const auto r = verify(bad, defaults());
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.failures.empty());
    EXPECT_GT(r.max_rel_err, 1e-9);
}

TEST(Verify, ExactModeFailureIsReported)
{
    Identity<Real> id = find("limit.trig.y0.n2");
    id.exact = [](const std::vector<Rational> &p) {
        const Cyclotomic one(2, 1);
        return std::vector<Cyclotomic>{one.constant(p[0]), one.constant(p[0] + 1)};
    };
    const auto r = verify(id, defaults());
    EXPECT_FALSE(r.exact_pass);
    EXPECT_FALSE(r.pass);
    EXPECT_NE(r.exact_detail.find("differs"), std::string::npos) << r.exact_detail;
}

TEST(Report, JsonLayout)
{
    const auto r = verify(find("fay.n2"), defaults());
    const auto j = to_json(r);
    for (const char *k : {"id", "samples", "seed", "tolerance", "working_digits", "max_abs_err",
                          "max_rel_err", "failures", "truncation_orders", "pass", "elapsed_ms"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["truncation_orders"].size(), 32u);
    EXPECT_FALSE(to_json(r, false).contains("elapsed_ms"));

    // failures carry [re, im] decimal strings at working precision
    Identity<Real> id = find("fay.n2");
    id.sides[1] = {"shifted", [](const ThetaContext<Real> &ctx, std::span<const C> v) {
                       return delta(ctx, v[0], v[2]) * delta(ctx, v[1], v[3]) * Real(2);
                   }};
    const auto f = to_json(verify(id, defaults()));
    ASSERT_FALSE(f["failures"].empty());
    const auto &first = f["failures"][0];
    ASSERT_TRUE(first["lhs"].is_array());
    ASSERT_EQ(first["lhs"].size(), 2u);
    ASSERT_TRUE(first["lhs"][0].is_string());
    EXPECT_GE(first["lhs"][0].get<std::string>().size(), 30u);
    EXPECT_EQ(first["point"].size(), 4u);
    EXPECT_FALSE(f["pass"].get<bool>());
}

TEST(Report, UserModelsIdentity)
{
    const auto id = model_identity<Real>("custom", AnyModel(a_n_resolution(3)),
                                         AnyModel(a_n_orbifold(3)));
    EXPECT_TRUE(verify(id, defaults()).pass);
    const auto wrong = model_identity<Real>("custom", AnyModel(a_n_resolution(3)),
                                            AnyModel(a_n_orbifold(4)));
    EXPECT_FALSE(verify(wrong, defaults()).pass);
    EXPECT_THROW(model_identity<Real>("x", AnyModel(a_n_resolution(3)),
                                      AnyModel(d4().orbifold)),
                 std::invalid_argument);
}
