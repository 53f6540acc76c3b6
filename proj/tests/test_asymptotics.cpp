#include <lozenge/lozenge.hpp>
#include <lozenge/verify.hpp>

#include <gtest/gtest.h>

#include <array>
#include <numbers>
#include <random>

using namespace lozenge;

namespace {

const ScaledPolygon hex({0.0, 1.0}, {0.5, 1.5});
const ScaledPolygon three({0.0, 0.5, 1.0}, {0.3, 0.7, 1.5});

double airy_series(double x)
{
    // Ai(x) = c1 f(x) - c2 g(x)
    const double c1 = 0.355028053887817239, c2 = 0.258819403792806798;
    double f = 0, g = 0, tf = 1, tg = x;
    for (int k = 0; k < 200; ++k) {
        f += tf;
        g += tg;
        tf *= x * x * x / ((3.0 * k + 2) * (3.0 * k + 3));
        tg *= x * x * x / ((3.0 * k + 3) * (3.0 * k + 4));
    }
    return c1 * f - c2 * g;
}

}  // namespace

TEST(Action, CriticalPointsAreStationary)
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    int tested = 0;
    for (int trial = 0; trial < 2000 && tested < 30; ++trial) {
        const double chi = 0.3 + 1.2 * u(rng), eta = u(rng);
        if (!three.contains(chi, eta))
            continue;
        const Action s(three, chi, eta);
        for (const auto& w : critical_points(chi, eta, three))
            if (w.imag() > 0) {
                EXPECT_LE(std::abs(s.d1(w)), 1e-12);
                ++tested;
            }
    }
    EXPECT_EQ(tested, 30);
}

TEST(Action, DerivativesMatchFiniteDifferences)
{
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> re(-1, 3), im(0.05, 2);
    const Action s(hex, 0.8, 0.4);
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
        const Complex w(re(rng), im(rng));
        const Complex fd = (s.value(w + h) - s.value(w - h)) / (2 * h);
        EXPECT_LE(std::abs(fd - s.d1(w)), 1e-7);
        const Complex fd2 = (s.d1(w + h) - s.d1(w - h)) / (2 * h);
        EXPECT_LE(std::abs(fd2 - s.d2(w)), 1e-6 * std::max(1.0, std::abs(s.d2(w))));
        const Complex fd3 = (s.d2(w + h) - s.d2(w - h)) / (2 * h);
        EXPECT_LE(std::abs(fd3 - s.d3(w)), 1e-5 * std::max(1.0, std::abs(s.d3(w))));
        EXPECT_NEAR(s.real_part(w), s.value(w).real(), 1e-12 * std::max(1.0, std::abs(s.value(w))));
    }
}

TEST(Action, GrowsLikeEtaLog)
{
    const double eta = 0.4;
    const Action s(hex, 0.8, eta);
    for (double angle : {0.3, 1.2, 2.5}) {
        double lo = 1e300, hi = -1e300;
        for (double r = 1e2; r <= 1e6; r *= 10) {
            const double d = s.real_part(std::polar(r, angle)) - eta * std::log(r);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        EXPECT_LT(hi - lo, 1e-1);
    }
}

TEST(Action, BranchCut)
{
    const Action s(hex, 0.8, 0.4);
    EXPECT_THROW(s.value(Complex(0.2, 0)), BranchCutEvaluation);
    EXPECT_THROW(s.d1(Complex(1.5, 0)), BranchCutEvaluation);
    EXPECT_NO_THROW(s.value(Complex(2.0, 0)));
}

TEST(CriticalPoints, HexagonExample)
{
    auto roots = critical_points(0.75, 0.5, hex);
    ASSERT_EQ(roots.size(), 2u);
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
    EXPECT_NEAR(roots[1].real(), 0.5, 1e-12);
    EXPECT_NEAR(roots[1].imag(), std::sqrt(2.0) / 4, 1e-12);
    EXPECT_NEAR(roots[0].imag(), -std::sqrt(2.0) / 4, 1e-12);
}

TEST(CriticalPoints, DegreeAndResidual)
{
    for (const auto& sp : reference_limits()) {
        const auto poly = critical_polynomial(0.9, 0.3, sp);
        EXPECT_EQ(poly.size(), std::size_t(sp.cluster_count()) + 1);
        EXPECT_NEAR(poly.back(), 0.3, 1e-15);
        double scale = 0;
        for (double c : poly)
            scale += std::abs(c);
        for (const auto& w : critical_points(0.9, 0.3, sp))
            EXPECT_LE(std::abs(detail::poly_eval(poly, w)), 1e-10 * scale * std::pow(1 + std::abs(w), sp.cluster_count()));
    }
    EXPECT_THROW(critical_points(0.9, 1.0, hex), DegenerateLeadingCoefficient);
    EXPECT_THROW(critical_points(0.9, 0.0, hex), DegenerateLeadingCoefficient);
}

TEST(CriticalPoints, FrozenCornerHasRealRoots)
{
    for (const auto& w : critical_points(1.45, 0.03, hex))
        EXPECT_EQ(w.imag(), 0.0);
    const auto v = liquid_point(1.45, 0.03, hex);
    EXPECT_TRUE(std::holds_alternative<FrozenVerdict>(v));
}

TEST(LiquidPoint, HexagonSlope)
{
    const auto lp = liquid(0.75, 0.5, hex);
    ASSERT_TRUE(lp.has_value());
    EXPECT_NEAR(std::abs(lp->omega), 1.0, 1e-12);
    EXPECT_NEAR(std::arg(lp->omega) * 180 / std::numbers::pi, 70.5288, 1e-3);
    EXPECT_NEAR(lp->densities.particle, 0.3918, 1e-4);
    EXPECT_NEAR(lp->densities.particle + lp->densities.slanted + lp->densities.vertical, 1.0, 1e-14);
}

TEST(LiquidPoint, UnitRootDeflates)
{
    for (const auto& sp : reference_limits())
        for (auto [chi, eta] : {std::pair{0.75, 0.5}, {1.0, 0.5}, {1.2, 0.3}}) {
            const auto [quotient, remainder] = deflate_unit_root(slope_polynomial(chi, eta, sp));
            EXPECT_LE(std::abs(remainder), 1e-12);
            EXPECT_EQ(quotient.size(), std::size_t(sp.cluster_count()) + 1);
        }
}

TEST(LiquidPoint, SlopeSolvesDeflatedEquation)
{
    const auto lp = liquid(1.1, 0.45, three);
    ASSERT_TRUE(lp.has_value());
    const auto [quotient, remainder] = deflate_unit_root(slope_polynomial(1.1, 0.45, three));
    EXPECT_LE(std::abs(detail::poly_eval(quotient, lp->omega)), 1e-10);
}

TEST(LiquidPoint, JustOutsideTheBoundaryIsFrozen)
{
    const BoundarySample b = frozen_boundary(0.2, hex);
    // push away from the liquid region, which contains the centre (1, 1/2)
    const double dx = b.chi - 1.0, dy = b.eta - 0.5, len = std::hypot(dx, dy);
    const auto outside = liquid_point(b.chi + 1e-3 * dx / len, b.eta + 1e-3 * dy / len, hex);
    EXPECT_TRUE(std::holds_alternative<FrozenVerdict>(outside));
    const auto inside = liquid_point(b.chi - 1e-3 * dx / len, b.eta - 1e-3 * dy / len, hex);
    EXPECT_TRUE(std::holds_alternative<LiquidPoint>(inside));
}

TEST(LiquidPoint, OutsidePolygon)
{
    EXPECT_THROW(liquid_point(0.2, 0.9, hex), OutsidePolygon);
    EXPECT_THROW(liquid_point(1.0, 1.2, hex), OutsidePolygon);
}

TEST(LiquidPoint, OrientationMatchesSampledTilings)
{
    const int depth = 40;
    const Polygon p = lattice_polygon(hex, depth);
    const double chi = 0.95, eta = 0.35;
    const auto lp = liquid(chi, eta, scale(p));
    ASSERT_TRUE(lp.has_value());
    const Signature nu = top_row(p).signature;
    double counts[3] = {0, 0, 0};
    const int x0 = static_cast<int>(std::lround(chi * depth)), n0 = static_cast<int>(std::lround(eta * depth));
    for (std::uint64_t s = 0; s < 600; ++s) {
        const LozengeTiling t = classify_lozenges(sample_uniform(nu, stream_seed(77, s)));
        for (int n = n0 - 1; n <= n0 + 1; ++n)
            for (const auto& l : t.strips[n - 1])
                if (std::abs(l.x - x0) <= 3)
                    ++counts[static_cast<int>(l.type)];
    }
    const double total = counts[0] + counts[1] + counts[2];
    EXPECT_NEAR(counts[0] / total, lp->densities.particle, 0.02);
    EXPECT_NEAR(counts[1] / total, lp->densities.slanted, 0.02);
    EXPECT_NEAR(counts[2] / total, lp->densities.vertical, 0.02);
    // the two non-particle types differ here, so swapping them would be visible
    EXPECT_GT(lp->densities.vertical - lp->densities.slanted, 0.03);
    EXPECT_GT(counts[2] - counts[1], 0.02 * total);
}

TEST(Burgers, HexagonCentre)
{
    EXPECT_LE(burgers_residual(1.0, 0.5, hex, 1e-5), 1e-4);
    EXPECT_LE(burgers_residual_tangent(1.0, 0.5, hex, 1e-5), 1e-4);
    EXPECT_LE(burgers_residual(0.8, 0.4, three, 1e-5), 1e-4);
    EXPECT_LE(burgers_residual_tangent(0.8, 0.4, three, 1e-5), 1e-4);
}

TEST(Burgers, SecondOrderInStep)
{
    const double coarse = burgers_residual(0.9, 0.3, three, 1e-2);
    const double fine = burgers_residual(0.9, 0.3, three, 1e-3);
    EXPECT_GT(coarse, 1e-8);
    EXPECT_NEAR(std::log10(coarse / fine), 2.0, 0.3);
}

TEST(Burgers, StencilLeavingLiquidRegion)
{
    const BoundarySample b = frozen_boundary(0.2, hex);
    EXPECT_THROW(burgers_residual(b.chi + 1e-4 * (b.chi - 1.0), b.eta + 1e-4 * (b.eta - 0.5), hex, 1e-2),
                 StencilLeavesLiquidRegion);
}

TEST(FrozenBoundary, LimitAtVerticalTangent)
{
    const BoundarySample b = frozen_boundary(0.5 + 1e-8, hex);
    EXPECT_NEAR(b.chi, 0.5, 1e-6);
    EXPECT_NEAR(b.eta, 0.75, 1e-6);
    EXPECT_NEAR(b.omega, 0.0, 1e-6);
    EXPECT_THROW(frozen_boundary(0.5, hex), PoleParameter);
    EXPECT_THROW(frozen_boundary(1.0, hex), PoleParameter);
}

TEST(FrozenBoundary, BottomTangent)
{
    EXPECT_LT(frozen_boundary(-1e6, hex).eta, 1e-6);
    const BoundarySample inf = frozen_boundary(-std::numeric_limits<double>::infinity(), hex);
    EXPECT_EQ(inf.eta, 0.0);
    EXPECT_NEAR(frozen_boundary(-1e7, hex).chi, inf.chi, 1e-6);
}

TEST(FrozenBoundary, TangentDirection)
{
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(-3, 4);
    for (int i = 0; i < 100; ++i) {
        const double w = u(rng);
        const BoundarySample b = frozen_boundary(w, three);
        EXPECT_NEAR(b.tangent, b.omega / (1 - b.omega), 1e-12 * std::max(1.0, std::abs(b.tangent)));
    }
}

TEST(FrozenBoundary, ThirdDerivativeIdentity)
{
    for (double w : {-2.0, 0.2, 0.8, 1.2, 3.0}) {
        const BoundarySample b = frozen_boundary(w, hex);
        const double pi = product_ratio(w, hex), sigma = reciprocal_sum(w, hex), h = 1e-6;
        const double dsigma = (reciprocal_sum(w + h, hex) - reciprocal_sum(w - h, hex)) / (2 * h);
        const double alt = -sigma * sigma * (1 + pi) / (1 - pi) - dsigma;
        EXPECT_NEAR(b.s3, alt, 1e-5 * std::max(1.0, std::abs(alt)));
    }
}

TEST(FrozenBoundary, CurvePointsAreDoubleCriticalPoints)
{
    for (double w : {-1.0, 0.4, 0.8, 2.0}) {
        const BoundarySample b = frozen_boundary(w, three);
        const Action s(three, b.chi, b.eta);
        const Complex at(w, 0.0);
        EXPECT_LE(std::abs(s.d2(at)), 1e-8 * std::max(1.0, std::abs(s.d3(at))));
        const auto roots = critical_points(b.chi, b.eta, three);
        const auto nearest =
            *std::min_element(roots.begin(), roots.end(), [&](Complex a, Complex c) { return std::abs(a - at) < std::abs(c - at); });
        EXPECT_LE(std::abs(nearest - at), 1e-4);
    }
}

TEST(Tangents, Counts)
{
    for (const auto& sp : reference_limits()) {
        const auto r = check_tangent_classes(sp);
        EXPECT_TRUE(r.passed) << r.detail;
    }
}

TEST(Tangents, VerticalAbscissaIsEndpoint)
{
    for (const auto& sp : reference_limits())
        for (const auto& t : classify_tangents(sp).points)
            if (t.type == TangentType::V)
                EXPECT_EQ(t.chi, t.w_c);
}

TEST(Tangents, CurveTouchesEverySide)
{
    for (const auto& sp : reference_limits()) {
        const auto r = check_tangency(sp);
        EXPECT_TRUE(r.passed) << r.detail;
    }
}

TEST(IncompleteBeta, DensityIsArgument)
{
    const Complex omega = std::polar(1.0, 2 * std::numbers::pi / 3);
    EXPECT_NEAR(incomplete_beta(omega, 0, 0), 2.0 / 3.0, 1e-12);
    const Complex other(0.3, 0.7);
    EXPECT_NEAR(incomplete_beta(other, 0, 0), std::arg(other) / std::numbers::pi, 1e-12);
}

TEST(IncompleteBeta, ZeroShift)
{
    for (const Complex omega : {Complex(0.3, 0.7), Complex(-0.4, 0.2), Complex(1.5, 0.9)})
        for (long l : {-3L, -1L, 1L, 2L, 5L}) {
            const double expected = -std::pow(omega, double(-l)).imag() / (std::numbers::pi * l);
            EXPECT_NEAR(incomplete_beta(omega, 0, l), expected, 1e-12);
        }
}

TEST(IncompleteBeta, RealSlopeIsFrozen)
{
    for (const double x : {-2.0, -0.5, 0.3, 0.7, 2.5})
        for (long m = -3; m <= 3; ++m)
            for (long l = -3; l <= 3; ++l) {
                const double v = incomplete_beta(Complex(x, 0.0), m, l);
                const double near = incomplete_beta(Complex(x, 1e-9), m, l);
                EXPECT_NEAR(v, near, 1e-6) << x << " " << m << " " << l;
                EXPECT_NEAR(v, std::round(v), 1e-12);
            }
    EXPECT_NEAR(incomplete_beta(Complex(-0.5, 0), 0, 0), 1.0, 1e-12);
    EXPECT_NEAR(incomplete_beta(Complex(0.5, 0), 0, 0), 0.0, 1e-12);
    EXPECT_THROW(incomplete_beta(Complex(0, 0), 0, 0), DegenerateSlope);
    EXPECT_THROW(incomplete_beta(Complex(1, 0), 0, 0), DegenerateSlope);
}

TEST(Airy, SeriesOracle)
{
    EXPECT_NEAR(airy(0), 0.3550280539, 1e-8);
    for (double x : {-3.0, -1.0, 0.5, 2.0})
        EXPECT_NEAR(airy(x), airy_series(x), 1e-10);
    EXPECT_THROW(airy(31), RangeExceeded);
}

TEST(Airy, DecaysPositively)
{
    double prev = airy(5);
    for (double x = 5.25; x <= 10; x += 0.25) {
        const double v = airy(x);
        EXPECT_GT(v, 0);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(Airy, DifferentialEquation)
{
    const double h = 1e-3;
    for (double x : {-1.0, 0.0, 1.0})
        EXPECT_NEAR((airy(x + h) - 2 * airy(x) + airy(x - h)) / (h * h), x * airy(x), 1e-6);
}

TEST(ExtendedAiry, EqualTimes)
{
    EXPECT_NEAR(extended_airy(0, 0, 0, 0), airy_prime(0) * airy_prime(0), 1e-12);
    for (double x : {-1.5, 0.5, 2.0})
        EXPECT_NEAR(extended_airy(0.7, x, 0.7, x), airy_prime(x) * airy_prime(x) - x * airy(x) * airy(x), 1e-11);
}

TEST(ExtendedAiry, ContourFormAgrees)
{
    for (double t1 : {-2.0, 0.0, 2.0})
        for (double s1 : {-2.0, 1.0})
            for (double t2 : {-1.0, 1.0})
                for (double s2 : {-1.0, 2.0})
                    EXPECT_NEAR(extended_airy(t1, s1, t2, s2), extended_airy_contour(t1, s1, t2, s2), 1e-6);
}

TEST(ExtendedAiry, EarlierTimeAgainstNegativeHalfLine)
{
    // for tau1 < tau2 the kernel is minus the integral over (-inf, 0]
    for (auto [t1, s1, t2, s2] : {std::array{-2.0, -2.0, 2.0, -2.0}, {-2.0, -1.0, 1.0, 0.0}, {-0.5, 1.0, 0.5, -1.0}}) {
        auto f = [&](double l) { return std::exp(l * (t2 - t1)) * airy(s1 + l) * airy(s2 + l); };
        double direct = 0;
        for (int k = 0; k < 28; ++k)
            direct -= boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -(k + 1.0), -double(k), 5, 1e-12);
        EXPECT_NEAR(extended_airy(t1, s1, t2, s2), direct, 1e-9);
        EXPECT_NEAR(extended_airy_contour(t1, s1, t2, s2), direct, 1e-8);
    }
}

TEST(ExtendedAiry, ContinuousAcrossEqualTimes)
{
    for (double s : {-1.0, 0.0, 1.5}) {
        const double eps = 1e-7;
        const double below = extended_airy(0.3 - eps, s, 0.3, s + 0.2);
        const double above = extended_airy(0.3 + eps, s, 0.3, s + 0.2);
        EXPECT_LE(std::abs(above - below), 1e-6);
    }
    EXPECT_THROW(extended_airy(6, 0, 0, 0), RangeExceeded);
}

TEST(Edge, FrameGeometry)
{
    const int depth = 200;
    const Polygon p = lattice_polygon(hex, depth);
    const EdgeFrame f = edge_frame(0.625, scale(p), depth, {{0, 0}, {0.5, 0}, {1.0, 0}, {0.5, 1}});
    EXPECT_EQ(f.points[0].x, std::lround(f.boundary.chi * depth));
    EXPECT_EQ(f.points[0].n, std::lround(f.boundary.eta * depth));
    EXPECT_DOUBLE_EQ(f.points[1].n_prime * 2, f.points[2].n_prime);
    EXPECT_DOUBLE_EQ(f.points[1].n_prime, f.points[3].n_prime);
    for (const auto& e : f.points) {
        EXPECT_LE(std::abs(e.tau_effective - e.tau), 2.0 / std::cbrt(double(depth)));
        EXPECT_LE(std::abs(e.sigma_effective - e.sigma), 2.0 / std::cbrt(double(depth)));
    }
}

TEST(Edge, DiagonalPositiveAndClose)
{
    const int depth = 200;
    const Polygon p = lattice_polygon(hex, depth);
    const EdgeFrame f = edge_frame(0.625, scale(p), depth, {{0, 0}, {0, 1}, {0, -1}, {0.5, 0}});
    const auto k = scaled_edge_kernel(p, f);
    for (std::size_t i = 0; i < f.points.size(); ++i)
        EXPECT_GT(k[i][i], 0);
    const auto& o = f.points[0];
    EXPECT_NEAR(k[0][0], extended_airy(o.tau_effective, o.sigma_effective, o.tau_effective, o.sigma_effective), 0.1);
}

TEST(Edge, Degenerate)
{
    const Polygon p = lattice_polygon(hex, 100);
    EXPECT_THROW(edge_frame(0.5, hex, 100, {{0, 0}}), PoleParameter);
    const auto turning = classify_tangents(three).turning_points;
    ASSERT_FALSE(turning.empty());
    EXPECT_THROW(edge_frame(turning[0], three, 100, {{0, 0}}), DegenerateEdgePoint);
}
