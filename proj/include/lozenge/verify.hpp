#pragma once

#include "asymptotics.hpp"
#include "count.hpp"
#include "kasteleyn.hpp"
#include "kernel.hpp"

#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace lozenge {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(const char* pattern, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

// sites that can carry a particle, with one spare column on each side
inline std::vector<Site> candidate_sites(const Polygon& p)
{
    std::vector<Site> s;
    for (int n = 1; n <= p.depth() - 1; ++n)
        for (int x = p.leftmost() - 1; x <= p.rightmost() + 1; ++x)
            s.push_back({x, n});
    return s;
}

}  // namespace detail

inline CheckResult check_count(const std::string& name, const Polygon& p, long long budget = default_budget)
{
    const Signature nu = top_row(p).signature;
    const BigInt formula = count_uniform(nu);
    const auto all = enumerate_schemes(nu, budget);
    const bool ok = formula == BigInt(all.size());
    return {"count " + name, ok, to_string(formula) + " vs " + std::to_string(all.size()) + " enumerated"};
}

// one- and two-point correlations from the kernel against enumeration
inline CheckResult check_correlations(const std::string& name, const Polygon& p,
                                      const std::optional<Rational>& q = std::nullopt,
                                      long long budget = default_budget)
{
    const Signature nu = top_row(p).signature;
    const auto sites = detail::candidate_sites(p);
    long compared = 0, wrong = 0;
    auto compare = [&](const std::vector<Site>& pts) {
        const Rational via_kernel = q ? correlation_q<Rational>(nu, *q, pts) : correlation<Rational>(nu, pts);
        ++compared;
        if (via_kernel != brute_correlations(nu, pts, q, budget))
            ++wrong;
    };
    for (std::size_t i = 0; i < sites.size(); ++i) {
        compare({sites[i]});
        for (std::size_t j = i + 1; j < sites.size(); ++j)
            compare({sites[i], sites[j]});
    }
    const std::string label = q ? "q-correlations (q=" + to_string(*q) + ") " : "correlations ";
    return {label + name, wrong == 0, std::to_string(compared) + " compared, " + std::to_string(wrong) + " wrong"};
}

inline CheckResult check_row_sums(const std::string& name, const Polygon& p,
                                  const std::optional<Rational>& q = std::nullopt)
{
    const Signature nu = top_row(p).signature;
    std::string bad;
    for (int n = 1; n <= p.depth() - 1; ++n) {
        Rational total = 0;
        for (int x = p.leftmost() - 1; x <= p.rightmost() + 1; ++x)
            total += q ? kernel_q<Rational>(nu, *q, {x, n}, {x, n}) : kernel<Rational>(nu, {x, n}, {x, n});
        if (total != n)
            bad += " row " + std::to_string(n) + " sums to " + to_string(total);
    }
    return {(q ? "q-row sums " : "row sums ") + name, bad.empty(), bad.empty() ? "every row sums to n" : bad};
}

inline CheckResult check_kasteleyn(const std::string& name, const Polygon& p)
{
    const KasteleynMatrix k = kasteleyn(p);
    const auto inv = inverse_kasteleyn_matrix(p);
    const std::size_t size = k.whites.size();
    if (size != k.blacks.size())
        return {"kasteleyn " + name, false, "matrix is not square"};
    const auto dense = k.dense();
    long bad = 0;
    // kast * inv and inv * kast
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) {
            Rational left = 0, right = 0;
            for (std::size_t t = 0; t < size; ++t) {
                if (dense[r][t])
                    left += inv[t][c];
                if (dense[t][c])
                    right += inv[r][t];
            }
            const Rational want = r == c ? 1 : 0;
            if (left != want || right != want)
                ++bad;
        }
    // three-term relation at blacks whose column has three ones
    const TriangleGraph g(p);
    const auto& top = g.top();
    long relations = 0;
    for (const Triangle& b : g.blacks()) {
        if (b.n < 1)
            continue;
        const auto nb = TriangleGraph::neighbours_of_black(b);
        if (!g.has_white(nb[0]) || !g.has_white(nb[1]) || !g.has_white(nb[2]))
            continue;
        for (const Triangle& other : g.blacks()) {
            const Rational lhs = detail::kernel_exact_extended(top, b.x, b.n, other.x, other.n) -
                                 detail::kernel_exact_extended(top, b.x, b.n + 1, other.x, other.n) +
                                 detail::kernel_exact_extended(top, b.x - 1, b.n + 1, other.x, other.n);
            ++relations;
            if (lhs != (b == other ? 1 : 0))
                ++bad;
        }
    }
    return {"kasteleyn " + name, bad == 0,
            std::to_string(size) + "x" + std::to_string(size) + ", " + std::to_string(relations) +
                " three-term relations, " + std::to_string(bad) + " failures"};
}

inline std::vector<CheckResult> small_suite(const std::vector<std::pair<std::string, Polygon>>& polygons,
                                            long long budget = default_budget)
{
    std::vector<CheckResult> out;
    for (const auto& [name, p] : polygons) {
        out.push_back(check_count(name, p, budget));
        if (p.depth() < 2)
            continue;
        out.push_back(check_correlations(name, p, std::nullopt, budget));
        out.push_back(check_row_sums(name, p));
        out.push_back(check_row_sums(name, p, Rational(1, 2)));
        if (p.depth() <= 4)
            out.push_back(check_correlations(name, p, Rational(1, 2), budget));
        out.push_back(check_kasteleyn(name, p));
    }
    return out;
}

inline ScaledPolygon hexagon_limit()
{
    return ScaledPolygon({0.0, 1.0}, {0.5, 1.5});
}

// one-point function at the centre of the hexagon against the particle density of the limit shape
inline CheckResult check_bulk(int depth, double tolerance)
{
    const Polygon p = lattice_polygon(hexagon_limit(), depth);
    const double chi = 1.0, eta = 0.5;
    const auto lp = liquid(chi, eta, hexagon_limit());
    const int x = static_cast<int>(std::lround(chi * depth)), n = static_cast<int>(std::lround(eta * depth));
    const double k = kernel<double>(top_row(p).signature, {x, n}, {x, n});
    const double err = std::abs(k - lp->densities.particle);
    return {"bulk density N=" + std::to_string(depth), err <= tolerance,
            detail::fmt("K = %.6f", k) + detail::fmt(", arg(Omega)/pi = %.6f", lp->densities.particle) + detail::fmt(", error %.2e", err)};
}

struct EdgeComparison {
    std::vector<double> errors;
    std::vector<double> determinant_errors;
    double max_error = 0;
    double max_determinant_error = 0;
};

inline EdgeComparison compare_edge(int depth, double w_c = 0.625)
{
    const Polygon p = lattice_polygon(hexagon_limit(), depth);
    const EdgeFrame f = edge_frame(w_c, scale(p), depth, {{0.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}});
    const auto k = scaled_edge_kernel(p, f);
    auto airy_at = [&](std::size_t i, std::size_t j) {
        const auto &a = f.points[i], &b = f.points[j];
        return extended_airy(a.tau_effective, a.sigma_effective, b.tau_effective, b.sigma_effective);
    };
    EdgeComparison c;
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        c.errors.push_back(std::abs(k[i][i] - airy_at(i, i)));
        c.max_error = std::max(c.max_error, c.errors.back());
    }
    for (std::size_t i = 0; i < f.points.size(); ++i)
        for (std::size_t j = i + 1; j < f.points.size(); ++j) {
            const double dk = k[i][i] * k[j][j] - k[i][j] * k[j][i];
            const double da = airy_at(i, i) * airy_at(j, j) - airy_at(i, j) * airy_at(j, i);
            c.determinant_errors.push_back(std::abs(dk - da));
            c.max_determinant_error = std::max(c.max_determinant_error, c.determinant_errors.back());
        }
    return c;
}

inline std::vector<CheckResult> check_edge()
{
    const EdgeComparison coarse = compare_edge(100), fine = compare_edge(200);
    return {
        {"edge kernel N=200", fine.max_error <= 0.1, detail::fmt("max |K - A| = %.4f", fine.max_error)},
        {"edge trend", fine.max_error < coarse.max_error,
         detail::fmt("N=100 %.4f", coarse.max_error) + detail::fmt(" -> N=200 %.4f", fine.max_error)},
        {"edge 2x2 determinants", std::max(coarse.max_determinant_error, fine.max_determinant_error) <= 0.15,
         detail::fmt("max error %.4f", std::max(coarse.max_determinant_error, fine.max_determinant_error))},
    };
}

namespace detail {

inline double line_distance(const TangentPoint& p)
{
    switch (p.type) {
    case TangentType::S:
        return std::abs(p.chi + p.eta - p.w_c - 1.0) / std::sqrt(2.0);
    case TangentType::V:
        return std::abs(p.chi - p.w_c);
    case TangentType::H:
        break;
    }
    return std::isfinite(p.w_c) ? std::abs(p.eta - 1.0) : std::abs(p.eta);
}

inline bool in_closed_polygon(const ScaledPolygon& sp, double chi, double eta, double tol)
{
    if (eta < -tol || eta > 1 + tol || chi > sp.b.back() + tol || chi + eta < sp.a.front() + 1 - tol)
        return false;
    for (int i = 0; i < sp.cluster_count(); ++i)
        if (chi < sp.b[i] - tol && chi + eta > sp.a[i] + 1 + tol)
            return false;
    return true;
}

}  // namespace detail

// tangent points lie on their side lines, the curve runs into them, and stays inside the polygon
inline CheckResult check_tangency(const ScaledPolygon& sp)
{
    const TangentReport t = classify_tangents(sp);
    double worst = 0;
    long outside = 0;
    for (const auto& p : t.points) {
        worst = std::max(worst, detail::line_distance(p));
        if (std::isfinite(p.w_c))
            for (double d : {-1e-7, 1e-7}) {
                const BoundarySample b = frozen_boundary(p.w_c + d, sp);
                worst = std::max(worst, std::hypot(b.chi - p.chi, b.eta - p.eta));
            }
    }
    for (const auto& b : frozen_curve(sp, 100))
        if (!detail::in_closed_polygon(sp, b.chi, b.eta, 1e-9))
            ++outside;
    const bool ok = worst <= 1e-6 && outside == 0 && t.points.size() == 3 * std::size_t(sp.cluster_count());
    return {"frozen boundary tangency k=" + std::to_string(sp.cluster_count()), ok,
            std::to_string(t.points.size()) + " tangent points" + detail::fmt(", worst distance %.2e", worst) + ", " +
                std::to_string(outside) + " curve samples outside"};
}

inline CheckResult check_tangent_classes(const ScaledPolygon& sp)
{
    const TangentReport t = classify_tangents(sp);
    const int k = sp.cluster_count();
    int counts[3] = {0, 0, 0};
    for (const auto& p : t.points)
        ++counts[static_cast<int>(p.type)];
    const bool ok = counts[0] == k && counts[1] == k && counts[2] == k && int(t.turning_points.size()) == k - 2;
    return {"tangent classes k=" + std::to_string(k), ok,
            "S " + std::to_string(counts[0]) + ", V " + std::to_string(counts[1]) + ", H " +
                std::to_string(counts[2]) + ", turning " + std::to_string(t.turning_points.size())};
}

inline CheckResult check_burgers(const ScaledPolygon& sp, int points, double h, double tolerance,
                                 std::uint64_t seed = 7)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> chi_dist(sp.a.front(), sp.b.back()), eta_dist(0.0, 1.0);
    double worst = 0;
    int found = 0;
    while (found < points) {
        const double chi = chi_dist(rng), eta = eta_dist(rng);
        if (!sp.contains(chi, eta))
            continue;
        try {
            if (!liquid(chi, eta, sp))
                continue;
            worst = std::max(worst, burgers_residual(chi, eta, sp, h));
            ++found;
        } catch (const StencilLeavesLiquidRegion&) {
        }
    }
    return {"burgers k=" + std::to_string(sp.cluster_count()), worst <= tolerance,
            std::to_string(found) + " liquid points" + detail::fmt(", worst residual %.2e", worst)};
}

inline std::vector<ScaledPolygon> reference_limits()
{
    return {hexagon_limit(), ScaledPolygon({0.0, 0.5, 1.0}, {0.3, 0.7, 1.5}),
            ScaledPolygon({0.0, 0.3, 0.6, 1.0}, {0.1, 0.5, 0.8, 1.5})};
}

inline std::vector<CheckResult> asymptotic_suite()
{
    std::vector<CheckResult> out{check_bulk(100, 0.02), check_bulk(200, 0.01)};
    for (auto& c : check_edge())
        out.push_back(c);
    out.push_back(check_tangency(hexagon_limit()));
    for (const auto& sp : reference_limits())
        out.push_back(check_tangent_classes(sp));
    out.push_back(check_burgers(reference_limits()[1], 50, 1e-5, 1e-4));
    return out;
}

}  // namespace lozenge
