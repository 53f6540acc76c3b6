#include <lozenge/lozenge.hpp>
#include <lozenge/verify.hpp>

#include <gtest/gtest.h>

using namespace lozenge;

namespace {

std::vector<std::pair<std::string, Polygon>> suite()
{
    return read_polygon_dir(std::string(LOZENGE_DATA_DIR) + "/small");
}

std::vector<int> ones_per_row(const KasteleynMatrix& k)
{
    std::vector<int> c(k.whites.size(), 0);
    for (auto [r, col] : k.ones)
        ++c[static_cast<std::size_t>(r)];
    return c;
}

}  // namespace

TEST(Kasteleyn, SquareAndCountsTilings)
{
    for (const auto& [name, p] : suite()) {
        const KasteleynMatrix k = kasteleyn(p);
        ASSERT_EQ(k.whites.size(), k.blacks.size()) << name;
        std::vector<std::vector<Rational>> m;
        for (const auto& row : k.dense())
            m.push_back(std::vector<Rational>(row.begin(), row.end()));
        const Rational det = k.whites.empty() ? Rational(1) : detail::determinant(m);
        EXPECT_EQ(abs(det), Rational(count_uniform(top_row(p).signature))) << name;
    }
}

TEST(Kasteleyn, RowStructure)
{
    const Polygon p({{0, 2}, {4, 6}});
    const KasteleynMatrix k = kasteleyn(p);
    const TriangleGraph g(p);
    const auto counts = ones_per_row(k);
    int interior = 0, boundary = 0;
    for (std::size_t r = 0; r < k.whites.size(); ++r) {
        int present = 0;
        for (const auto& b : TriangleGraph::neighbours_of_white(k.whites[r]))
            present += g.has_black(b);
        EXPECT_EQ(counts[r], present);
        EXPECT_LE(counts[r], 3);
        (counts[r] == 3 ? interior : boundary)++;
    }
    EXPECT_GT(interior, 0);
    EXPECT_GT(boundary, 0);
}

TEST(Kasteleyn, DepthOneHasNoFreeTriangles)
{
    const KasteleynMatrix k = kasteleyn(Polygon({{0, 1}}));
    EXPECT_TRUE(k.whites.empty());
    EXPECT_TRUE(k.blacks.empty());
}

TEST(InverseKasteleyn, TwoSidedInverseOnSuite)
{
    for (const auto& [name, p] : suite()) {
        const auto r = check_kasteleyn(name, p);
        EXPECT_TRUE(r.passed) << r.detail;
    }
}

TEST(InverseKasteleyn, DiagonalSignIsPositive)
{
    const Polygon p({{0, 2}, {4, 6}});
    const Signature nu = top_row(p).signature;
    const TriangleGraph g(p);
    for (const auto& w : g.whites()) {
        if (!g.has_black({w.x, w.n}) || w.n > p.depth() - 1)
            continue;
        EXPECT_EQ(inverse_kasteleyn(p, {w.x, w.n}, w), kernel(nu, {w.x, w.n}, {w.x, w.n}));
    }
}

TEST(InverseKasteleyn, OutsideTriangles)
{
    const Polygon p({{0, 2}, {4, 6}});
    EXPECT_THROW(inverse_kasteleyn(p, {100, 1}, {2, 2}), TriangleOutsidePolygon);
    EXPECT_THROW(inverse_kasteleyn(p, {2, 1}, {-100, 2}), TriangleOutsidePolygon);
}
