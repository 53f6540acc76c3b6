#include <lozenge/lozenge.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace lozenge;

namespace {

Polygon hexagon() { return Polygon({{0, 2}, {4, 6}}); }

int count_substr(const std::string& s, const std::string& needle)
{
    int c = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1))
        ++c;
    return c;
}

}  // namespace

TEST(Polygon, Depth)
{
    EXPECT_EQ(hexagon().depth(), 4);
    EXPECT_EQ(Polygon({{0, 3}}).depth(), 3);
}

TEST(Polygon, RejectsBadClusters)
{
    EXPECT_THROW(Polygon(std::vector<Cluster>{}), InvalidPolygon);
    EXPECT_THROW(Polygon({{2, 2}}), InvalidPolygon);
    EXPECT_THROW(Polygon({{0, 2}, {2, 4}}), InvalidPolygon);
    EXPECT_THROW(Polygon({{3, 5}, {0, 1}}), InvalidPolygon);
}

TEST(TopRow, Examples)
{
    auto t = top_row(hexagon());
    EXPECT_EQ(t.positions, (std::vector<int>{5, 4, 1, 0}));
    EXPECT_EQ(t.signature.parts, (std::vector<int>{6, 6, 4, 4}));

    t = top_row(Polygon({{0, 3}}));
    EXPECT_EQ(t.positions, (std::vector<int>{2, 1, 0}));
    EXPECT_EQ(t.signature.parts, (std::vector<int>{3, 3, 3}));

    t = top_row(Polygon({{0, 1}, {2, 3}}));
    EXPECT_EQ(t.positions, (std::vector<int>{2, 0}));
    EXPECT_EQ(t.signature.parts, (std::vector<int>{3, 2}));
}

TEST(TopRow, RoundTripsThroughSignature)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Cluster> cl;
        int x = std::uniform_int_distribution<int>(-5, 5)(rng);
        const int k = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int i = 0; i < k; ++i) {
            const int len = std::uniform_int_distribution<int>(1, 3)(rng);
            cl.push_back({x, x + len});
            x += len + std::uniform_int_distribution<int>(1, 3)(rng);
        }
        const Polygon p(cl);
        EXPECT_EQ(polygon_from_signature(top_row(p).signature), p);
    }
}

TEST(Signature, RejectsIncreasing)
{
    EXPECT_THROW(Signature({0, 1}), InvalidSignature);
    EXPECT_EQ(polygon_from_signature(Signature({2, 2, 2})), Polygon({{-1, 2}}));
}

TEST(ValidateArray, Examples)
{
    const Polygon p({{0, 1}, {2, 3}});
    EXPECT_FALSE(validate_array(p, {{{2}, {2, 0}}}).has_value());
    EXPECT_FALSE(validate_array(p, {{{1}, {2, 0}}}).has_value());

    const auto v = validate_array(p, {{{3}, {2, 0}}});
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->m, 2);
    EXPECT_EQ(v->j, 1);

    // x_2^2 < x_1^1 is strict, so a particle at 0 below the top particle at 0 is rejected
    const auto strict = validate_array(p, {{{0}, {2, 0}}});
    ASSERT_TRUE(strict.has_value());
    EXPECT_EQ(strict->m, 2);
    EXPECT_EQ(strict->j, 2);
}

TEST(ValidateArray, AcceptsExactlyTheEnumeratedArrays)
{
    const Polygon p({{0, 1}, {2, 4}});
    const auto all = enumerate_schemes(top_row(p).signature);
    std::set<ParticleArray> listed(all.begin(), all.end());
    for (const auto& a : all)
        EXPECT_FALSE(validate_array(p, a).has_value());
    // every array with rows inside the span
    long accepted = 0;
    for (int a = -1; a <= 4; ++a)
        for (int b1 = -1; b1 <= 4; ++b1)
            for (int b2 = -1; b2 < b1; ++b2) {
                const ParticleArray arr{{{a}, {b1, b2}, top_row(p).positions}};
                const bool ok = !validate_array(p, arr).has_value();
                accepted += ok;
                EXPECT_EQ(ok, listed.count(arr) == 1);
            }
    EXPECT_EQ(accepted, static_cast<long>(all.size()));
}

TEST(SchemeVolume, Examples)
{
    EXPECT_EQ(scheme_volume(scheme_to_array({{1}, {1, 0}})), 1);
    EXPECT_EQ(scheme_volume(scheme_to_array({{0}, {1, 0}})), 0);
    for (int c : {0, 2, 5})
        for (int n : {1, 2, 4}) {
            std::vector<std::vector<int>> lam;
            for (int m = 1; m <= n; ++m)
                lam.push_back(std::vector<int>(static_cast<std::size_t>(m), c));
            EXPECT_EQ(scheme_volume(scheme_to_array(lam)), c * n * (n - 1) / 2);
        }
}

TEST(SchemeVolume, InvariantUnderBijection)
{
    for (const auto& a : enumerate_schemes(top_row(hexagon()).signature)) {
        EXPECT_EQ(scheme_to_array(array_to_scheme(a)), a);
        EXPECT_EQ(scheme_volume(scheme_to_array(array_to_scheme(a))), scheme_volume(a));
    }
}

TEST(ScaledPolygon, ScaleAndContains)
{
    const ScaledPolygon sp = scale(hexagon());
    EXPECT_DOUBLE_EQ(sp.a[0], -0.125);
    EXPECT_DOUBLE_EQ(sp.b[1], 1.375);
    const ScaledPolygon hex({0.0, 1.0}, {0.5, 1.5});
    EXPECT_TRUE(hex.contains(1.0, 0.5));
    EXPECT_FALSE(hex.contains(0.4, 0.9));
    EXPECT_FALSE(hex.contains(1.0, 1.0));
    EXPECT_THROW(ScaledPolygon({0.0}, {0.9}), InvalidPolygon);
    EXPECT_THROW(ScaledPolygon({0.0, 0.4}, {0.5, 0.9}), InvalidPolygon);
}

TEST(Lozenges, ParticleCountsPerRow)
{
    for (const auto& a : enumerate_schemes(top_row(hexagon()).signature)) {
        const LozengeTiling t = classify_lozenges(a);
        for (int n = 1; n <= 4; ++n)
            EXPECT_EQ(t.count(n, LozengeType::particle), n);
    }
}

TEST(Lozenges, TypeTotalsDoNotDependOnTheTiling)
{
    const auto all = enumerate_schemes(top_row(Polygon({{0, 1}, {2, 4}, {6, 7}})).signature);
    const LozengeTiling first = classify_lozenges(all.front());
    for (const auto& a : all) {
        const LozengeTiling t = classify_lozenges(a);
        for (auto type : {LozengeType::slanted, LozengeType::vertical}) {
            int here = 0, there = 0;
            for (int n = 1; n <= t.depth; ++n) {
                EXPECT_EQ(t.strips[n - 1].size(), first.strips[n - 1].size());
                here += t.count(n, type);
                there += first.count(n, type);
            }
            EXPECT_EQ(here, there);
        }
    }
}

TEST(Lozenges, FullyPackedHasNoFreeLozenges)
{
    const auto all = enumerate_schemes(top_row(Polygon({{0, 3}})).signature);
    ASSERT_EQ(all.size(), 1u);
    const LozengeTiling t = classify_lozenges(all[0]);
    for (int n = 1; n <= 3; ++n)
        EXPECT_EQ(t.strips[n - 1].size(), static_cast<std::size_t>(n));
}

TEST(Svg, Deterministic)
{
    const auto all = enumerate_schemes(top_row(hexagon()).signature);
    EXPECT_EQ(render_svg(all[7]), render_svg(all[7]));
    EXPECT_NE(render_svg(all[7]), render_svg(all[8]));
}

TEST(Svg, OneParticleForDepthOne)
{
    const auto all = enumerate_schemes(top_row(Polygon({{3, 4}})).signature);
    ASSERT_EQ(all.size(), 1u);
    const std::string svg = render_svg(all[0]);
    EXPECT_EQ(count_substr(svg, "class=\"particle\""), 1);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, FrozenCurveIsClosedPath)
{
    const ScaledPolygon hex({0.0, 1.0}, {0.5, 1.5});
    std::vector<std::pair<double, double>> pts;
    for (const auto& b : frozen_curve(hex, 20))
        pts.push_back({b.chi, b.eta});
    const std::string svg = render_curve_svg(hex, pts);
    EXPECT_EQ(count_substr(svg, "<path"), 1);
    EXPECT_NE(svg.find(" Z\""), std::string::npos);
}
