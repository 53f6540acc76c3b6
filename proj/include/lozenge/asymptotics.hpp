#pragma once

#include "errors.hpp"
#include "kernel.hpp"
#include "residue.hpp"
#include "polygon.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace lozenge {

using Complex = std::complex<double>;

namespace detail {

// ascending coefficients
inline std::vector<double> poly_times_linear(const std::vector<double>& p, double root)
{
    std::vector<double> out(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i + 1] += p[i];
        out[i] -= root * p[i];
    }
    return out;
}

inline Complex poly_eval(const std::vector<double>& p, Complex w)
{
    Complex v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        v = v * w + *it;
    return v;
}

inline Complex poly_derivative_eval(const std::vector<double>& p, Complex w)
{
    Complex v = 0;
    for (std::size_t i = p.size(); i-- > 1;)
        v = v * w + double(i) * p[i];
    return v;
}

// roots of an ascending-coefficient polynomial through companion-matrix eigenvalues
inline std::vector<Complex> poly_roots(const std::vector<double>& p)
{
    const int degree = static_cast<int>(p.size()) - 1;
    if (degree < 1)
        return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i)
        companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i)
        companion(i, degree - 1) = -p[i] / p[degree];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<Complex> roots;
    for (int i = 0; i < degree; ++i) {
        Complex r = solver.eigenvalues()[i];
        const Complex d = poly_derivative_eval(p, r);
        if (std::abs(d) > 0)
            r -= poly_eval(p, r) / d;
        roots.push_back(r);
    }
    return roots;
}

inline bool is_nonreal(Complex w)
{
    return std::abs(w.imag()) > 1e-9 * (1.0 + std::abs(w.real()));
}

}  // namespace detail

// S(w; chi, eta) with every logarithm cut along (-inf, branch point]
class Action {
public:
    Action(const ScaledPolygon& sp, double chi, double eta) : sp_(sp), chi_(chi), eta_(eta) {}

    Complex value(Complex w) const
    {
        check_cut(w);
        auto xlogx = [](Complex z) { return z * std::log(z); };
        Complex s = xlogx(w - chi_) - xlogx(w - chi_ + 1.0 - eta_) + (1.0 - eta_) * std::log(1.0 - eta_);
        for (int i = 0; i < sp_.cluster_count(); ++i) {
            s += (sp_.b[i] - w) * std::log(w - sp_.b[i]);
            s -= (sp_.a[i] - w) * std::log(w - sp_.a[i]);
        }
        return s - Complex(0.0, std::numbers::pi);
    }

    double real_part(Complex w) const
    {
        auto re_xlogx = [](Complex z) { return std::abs(z) == 0 ? 0.0 : (z * std::log(std::abs(z))).real(); };
        auto arg_term = [](Complex z) { return std::abs(z) == 0 ? 0.0 : -z.imag() * std::arg(z); };
        double s = re_xlogx(w - chi_) + arg_term(w - chi_) - re_xlogx(w - chi_ + 1.0 - eta_) -
                   arg_term(w - chi_ + 1.0 - eta_) + (1.0 - eta_) * std::log(1.0 - eta_);
        for (int i = 0; i < sp_.cluster_count(); ++i) {
            s += re_xlogx(sp_.b[i] - w) + arg_term(sp_.b[i] - w);
            s -= re_xlogx(sp_.a[i] - w) + arg_term(sp_.a[i] - w);
        }
        return s;
    }

    Complex d1(Complex w) const
    {
        check_cut(w);
        Complex s = std::log(w - chi_) - std::log(w - chi_ + 1.0 - eta_);
        for (int i = 0; i < sp_.cluster_count(); ++i)
            s += std::log(w - sp_.a[i]) - std::log(w - sp_.b[i]);
        return s;
    }

    Complex d2(Complex w) const
    {
        Complex s = 1.0 / (w - chi_) - 1.0 / (w - chi_ + 1.0 - eta_);
        for (int i = 0; i < sp_.cluster_count(); ++i)
            s += 1.0 / (w - sp_.a[i]) - 1.0 / (w - sp_.b[i]);
        return s;
    }

    Complex d3(Complex w) const
    {
        Complex s = -1.0 / ((w - chi_) * (w - chi_)) + 1.0 / ((w - chi_ + 1.0 - eta_) * (w - chi_ + 1.0 - eta_));
        for (int i = 0; i < sp_.cluster_count(); ++i)
            s += -1.0 / ((w - sp_.a[i]) * (w - sp_.a[i])) + 1.0 / ((w - sp_.b[i]) * (w - sp_.b[i]));
        return s;
    }

private:
    void check_cut(Complex w) const
    {
        if (w.imag() != 0)
            return;
        const double rightmost = std::max(chi_, sp_.b.back());
        if (w.real() <= rightmost)
            throw BranchCutEvaluation("w lies on a branch cut of the action");
    }

    ScaledPolygon sp_;
    double chi_, eta_;
};

// Q_a(w) - Q_b(w) with Q_a = (w - chi) prod (w - a_i), Q_b = (w - chi + 1 - eta) prod (w - b_i)
inline std::vector<double> critical_polynomial(double chi, double eta, const ScaledPolygon& sp)
{
    std::vector<double> qa{1.0}, qb{1.0};
    qa = detail::poly_times_linear(qa, chi);
    qb = detail::poly_times_linear(qb, chi - 1.0 + eta);
    for (int i = 0; i < sp.cluster_count(); ++i) {
        qa = detail::poly_times_linear(qa, sp.a[i]);
        qb = detail::poly_times_linear(qb, sp.b[i]);
    }
    std::vector<double> diff(qa.size() - 1);
    for (std::size_t i = 0; i + 1 < qa.size(); ++i)
        diff[i] = qa[i] - qb[i];
    return diff;
}

inline std::vector<Complex> critical_points(double chi, double eta, const ScaledPolygon& sp)
{
    if (!(eta > 0 && eta < 1))
        throw DegenerateLeadingCoefficient("eta must lie in (0, 1)");
    std::vector<Complex> roots = detail::poly_roots(critical_polynomial(chi, eta, sp));
    for (auto& r : roots)
        if (!detail::is_nonreal(r))
            r = Complex(r.real(), 0.0);
    return roots;
}

// coefficients (ascending in Omega) of
// Omega prod((a_i - chi + 1 - eta) Omega - (a_i - chi)) - prod((b_i - chi + 1 - eta) Omega - (b_i - chi))
inline std::vector<double> slope_polynomial(double chi, double eta, const ScaledPolygon& sp)
{
    std::vector<double> left{0.0, 1.0}, right{1.0};
    auto times = [](const std::vector<double>& p, double lead, double constant) {
        std::vector<double> out(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            out[i + 1] += lead * p[i];
            out[i] += constant * p[i];
        }
        return out;
    };
    for (int i = 0; i < sp.cluster_count(); ++i) {
        left = times(left, sp.a[i] - chi + 1.0 - eta, -(sp.a[i] - chi));
        right = times(right, sp.b[i] - chi + 1.0 - eta, -(sp.b[i] - chi));
    }
    right.resize(left.size(), 0.0);
    for (std::size_t i = 0; i < left.size(); ++i)
        left[i] -= right[i];
    return left;
}

// synthetic division by (Omega - 1); the remainder is the value at Omega = 1
inline std::pair<std::vector<double>, double> deflate_unit_root(const std::vector<double>& p)
{
    std::vector<double> q(p.size() - 1);
    double carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
        carry = p[i] + carry;
        q[i - 1] = carry;
    }
    return {q, p[0] + carry};
}

struct LozengeDensities {
    double particle = 0;
    double slanted = 0;
    double vertical = 0;
};

// angles of the triangle (0, Omega, 1) over pi: particle at 0, slanted at Omega, vertical at 1
inline LozengeDensities densities_from_slope(Complex omega)
{
    const double pi = std::numbers::pi;
    LozengeDensities d;
    d.particle = std::arg(omega) / pi;
    d.vertical = std::abs(std::arg(Complex(-1.0, 0.0) / (omega - 1.0))) / pi;
    d.slanted = 1.0 - d.particle - d.vertical;
    return d;
}

struct LiquidPoint {
    double chi = 0;
    double eta = 0;
    Complex w_c;
    Complex omega;
    LozengeDensities densities;
};

struct FrozenVerdict {
    double chi = 0;
    double eta = 0;
    std::vector<double> roots;
};

inline Complex slope_from_critical(Complex w, double chi, double eta)
{
    return (w - chi) / (w - chi + 1.0 - eta);
}

inline std::variant<LiquidPoint, FrozenVerdict> liquid_point(double chi, double eta, const ScaledPolygon& sp)
{
    if (!sp.contains(chi, eta))
        throw OutsidePolygon("(chi, eta) is not inside the polygon");
    const auto roots = critical_points(chi, eta, sp);
    std::optional<Complex> upper;
    FrozenVerdict frozen{chi, eta, {}};
    for (const auto& r : roots) {
        if (r.imag() > 0)
            upper = r;
        else if (r.imag() == 0)
            frozen.roots.push_back(r.real());
    }
    if (!upper)
        return frozen;
    LiquidPoint lp{chi, eta, *upper, slope_from_critical(*upper, chi, eta), {}};
    lp.densities = densities_from_slope(lp.omega);

    const auto poly = slope_polynomial(chi, eta, sp);
    double scale = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        scale += std::abs(poly[i]) * std::pow(std::abs(lp.omega), double(i));
    if (std::abs(detail::poly_eval(poly, lp.omega)) > 1e-10 * std::max(scale, 1.0))
        throw std::logic_error("complex slope fails its algebraic equation");
    return lp;
}

inline std::optional<LiquidPoint> liquid(double chi, double eta, const ScaledPolygon& sp)
{
    auto r = liquid_point(chi, eta, sp);
    if (auto* p = std::get_if<LiquidPoint>(&r))
        return *p;
    return std::nullopt;
}

namespace detail {

struct SlopeStencil {
    Complex d_chi, d_eta, value;
};

template <class F>
SlopeStencil stencil(double chi, double eta, const ScaledPolygon& sp, double h, F field)
{
    auto at = [&](double c, double e) {
        if (!sp.contains(c, e))
            throw StencilLeavesLiquidRegion("stencil point leaves the polygon");
        auto p = liquid(c, e, sp);
        if (!p)
            throw StencilLeavesLiquidRegion("stencil point leaves the liquid region");
        return field(*p);
    };
    const Complex centre = at(chi, eta);
    return {(at(chi + h, eta) - at(chi - h, eta)) / (2 * h), (at(chi, eta + h) - at(chi, eta - h)) / (2 * h), centre};
}

}  // namespace detail

// |Omega d_chi Omega + (1 - Omega) d_eta Omega| by central differences
inline double burgers_residual(double chi, double eta, const ScaledPolygon& sp, double h)
{
    const auto s = detail::stencil(chi, eta, sp, h, [](const LiquidPoint& p) { return p.omega; });
    return std::abs(s.value * s.d_chi + (1.0 - s.value) * s.d_eta);
}

// |T d_chi w_c + d_eta w_c| with T = (w_c - chi)/(1 - eta)
inline double burgers_residual_tangent(double chi, double eta, const ScaledPolygon& sp, double h)
{
    const auto s = detail::stencil(chi, eta, sp, h, [](const LiquidPoint& p) { return p.w_c; });
    const Complex t = (s.value - chi) / (1.0 - eta);
    return std::abs(t * s.d_chi + s.d_eta);
}

struct BoundarySample {
    double w_c = 0;
    double chi = 0;
    double eta = 0;
    double omega = 0;
    double tangent = 0;
    double s3 = 0;
};

inline double product_ratio(double w, const ScaledPolygon& sp)
{
    double p = 1;
    for (int i = 0; i < sp.cluster_count(); ++i)
        p *= (w - sp.b[i]) / (w - sp.a[i]);
    return p;
}

// product_ratio - 1, accurate for large |w|
inline double product_ratio_minus_one(double w, const ScaledPolygon& sp)
{
    double log_ratio = 0;
    bool positive = true;
    for (int i = 0; i < sp.cluster_count(); ++i) {
        const double r = (sp.a[i] - sp.b[i]) / (w - sp.a[i]);
        if (r <= -1) {
            positive = false;
            break;
        }
        log_ratio += std::log1p(r);
    }
    return positive ? std::expm1(log_ratio) : product_ratio(w, sp) - 1.0;
}

inline double reciprocal_sum(double w, const ScaledPolygon& sp)
{
    double s = 0;
    for (int i = 0; i < sp.cluster_count(); ++i)
        s += (sp.b[i] - sp.a[i]) / ((w - sp.b[i]) * (w - sp.a[i]));
    return s;
}

inline BoundarySample frozen_boundary(double w, const ScaledPolygon& sp)
{
    BoundarySample b;
    b.w_c = w;
    if (std::isinf(w) && w < 0) {
        double beta = 0;
        for (int i = 0; i < sp.cluster_count(); ++i)
            beta += sp.b[i] * sp.b[i] - sp.a[i] * sp.a[i];
        b.chi = (1.0 + beta) / 2.0;
        b.eta = 0;
        b.omega = 1;
        b.tangent = std::numeric_limits<double>::infinity();
        b.s3 = std::numeric_limits<double>::quiet_NaN();
        return b;
    }
    for (int i = 0; i < sp.cluster_count(); ++i)
        if (w == sp.a[i] || w == sp.b[i])
            throw PoleParameter("w_c is an endpoint; use classify_tangents");
    const double pm1 = product_ratio_minus_one(w, sp);
    const double pi = 1.0 + pm1;
    const double sigma = reciprocal_sum(w, sp);
    b.chi = w + pm1 / sigma;
    b.eta = 1.0 - pm1 * pm1 / (pi * sigma);
    b.omega = pi;
    b.tangent = (w - b.chi) / (1.0 - b.eta);
    b.s3 = Action(sp, b.chi, b.eta).d3(Complex(w, 0.0)).real();
    return b;
}

enum class TangentType { S, V, H };

struct TangentPoint {
    double w_c = 0;
    TangentType type = TangentType::S;
    double chi = 0;
    double eta = 0;
};

struct TangentReport {
    std::vector<TangentPoint> points;
    std::vector<double> turning_points;
};

namespace detail {

// roots of prod (w - b_i) - prod (w - a_i), one in each (b_{i-1}, a_i)
inline std::vector<double> horizontal_parameters(const ScaledPolygon& sp)
{
    auto f = [&](double w) {
        double pb = 1, pa = 1;
        for (int i = 0; i < sp.cluster_count(); ++i) {
            pb *= w - sp.b[i];
            pa *= w - sp.a[i];
        }
        return pb - pa;
    };
    std::vector<double> hs;
    for (int i = 1; i < sp.cluster_count(); ++i) {
        boost::math::tools::eps_tolerance<double> tol(52);
        std::uintmax_t iterations = 200;
        const auto [lo, hi] = boost::math::tools::toms748_solve(f, sp.b[i - 1], sp.a[i], tol, iterations);
        hs.push_back((lo + hi) / 2.0);
    }
    return hs;
}

// S''' along the curve, sign scan between consecutive parameters where it blows up
inline std::vector<double> turning_parameters(const ScaledPolygon& sp, const std::vector<double>& hs)
{
    std::vector<double> poles(sp.a.begin(), sp.a.end());
    poles.insert(poles.end(), sp.b.begin(), sp.b.end());
    poles.insert(poles.end(), hs.begin(), hs.end());
    std::sort(poles.begin(), poles.end());
    auto s3 = [&](double w) { return frozen_boundary(w, sp).s3; };
    std::vector<double> found;
    auto scan = [&](auto param, int samples) {
        double prev_w = param(0.5 / samples), prev = s3(prev_w);
        for (int i = 1; i < samples; ++i) {
            const double w = param((i + 0.5) / samples);
            const double cur = s3(w);
            if (std::isfinite(prev) && std::isfinite(cur) && (prev < 0) != (cur < 0)) {
                boost::math::tools::eps_tolerance<double> tol(50);
                std::uintmax_t iterations = 200;
                const auto [lo, hi] = boost::math::tools::toms748_solve(s3, std::min(prev_w, w), std::max(prev_w, w), tol, iterations);
                found.push_back((lo + hi) / 2.0);
            }
            prev = cur;
            prev_w = w;
        }
    };
    // far out along the tails S''' is below rounding noise, so the tails stop at distance 1000
    const int samples = 4000;
    const double reach = 1000.0;
    scan([&](double t) { return poles.front() - reach * t / (1.0 + reach * (1.0 - t)); }, samples);
    for (std::size_t i = 0; i + 1 < poles.size(); ++i)
        scan([&](double t) { return poles[i] + t * (poles[i + 1] - poles[i]); }, samples);
    scan([&](double t) { return poles.back() + reach * t / (1.0 + reach * (1.0 - t)); }, samples);
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace detail

inline TangentReport classify_tangents(const ScaledPolygon& sp)
{
    TangentReport report;
    const int k = sp.cluster_count();
    for (int i = 0; i < k; ++i) {
        const double a = sp.a[i];
        double r = a - sp.b[i];
        for (int l = 0; l < k; ++l)
            if (l != i)
                r *= (a - sp.b[l]) / (a - sp.a[l]);
        report.points.push_back({a, TangentType::S, a - r, 1.0 + r});
    }
    for (int i = 0; i < k; ++i) {
        const double b = sp.b[i];
        double u = 1.0 / (b - sp.a[i]);
        for (int l = 0; l < k; ++l)
            if (l != i)
                u *= (b - sp.b[l]) / (b - sp.a[l]);
        report.points.push_back({b, TangentType::V, b, 1.0 - 1.0 / u});
    }
    const BoundarySample bottom = frozen_boundary(-std::numeric_limits<double>::infinity(), sp);
    report.points.push_back({-std::numeric_limits<double>::infinity(), TangentType::H, bottom.chi, 0.0});
    const auto hs = detail::horizontal_parameters(sp);
    for (double h : hs)
        report.points.push_back({h, TangentType::H, h, 1.0});
    report.turning_points = detail::turning_parameters(sp, hs);
    return report;
}

// points of the frozen boundary ordered by the parameter, tangent points included, forming a closed loop
inline std::vector<BoundarySample> frozen_curve(const ScaledPolygon& sp, int samples_per_piece = 200)
{
    const TangentReport t = classify_tangents(sp);
    std::vector<double> breaks;
    for (const auto& p : t.points)
        if (std::isfinite(p.w_c))
            breaks.push_back(p.w_c);
    std::sort(breaks.begin(), breaks.end());
    auto tangent_sample = [&](double w) {
        for (const auto& p : t.points)
            if (p.w_c == w)
                return BoundarySample{w, p.chi, p.eta, std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN()};
        return frozen_boundary(w, sp);
    };
    std::vector<BoundarySample> out;
    out.push_back(frozen_boundary(-std::numeric_limits<double>::infinity(), sp));
    for (int i = 1; i < samples_per_piece; ++i) {
        const double s = double(i) / samples_per_piece;
        out.push_back(frozen_boundary(breaks.front() - (1.0 - s) / s, sp));
    }
    for (std::size_t j = 0; j < breaks.size(); ++j) {
        out.push_back(tangent_sample(breaks[j]));
        if (j + 1 < breaks.size())
            for (int i = 1; i < samples_per_piece; ++i)
                out.push_back(
                    frozen_boundary(breaks[j] + (breaks[j + 1] - breaks[j]) * double(i) / samples_per_piece, sp));
    }
    for (int i = 1; i < samples_per_piece; ++i) {
        const double s = double(samples_per_piece - i) / samples_per_piece;
        out.push_back(frozen_boundary(breaks.back() + (1.0 - s) / s, sp));
    }
    return out;
}

namespace detail {

inline Complex cpow_int(Complex z, long e)
{
    return ipow(z, e);
}

// (1/2 pi i) times the sum of residues of (1-u)^m u^{-l-1} at the poles strictly between lo and hi
inline double residues_between(long m, long l, double lo, double hi)
{
    double total = 0;
    if (l >= 0 && lo < 0 && 0 < hi) {
        // coefficient of u^l in (1-u)^m
        const double c = to_double(general_binomial(m, l));
        total += (l % 2 == 0 ? c : -c);
    }
    if (m < 0 && lo < 1 && 1 < hi) {
        // (1-u)^m = (-1)^m (u-1)^m; coefficient of (u-1)^{-m-1} in u^{-l-1}
        const double c = to_double(general_binomial(-l - 1, -m - 1));
        total += (m % 2 == 0 ? c : -c);
    }
    return total;
}

}  // namespace detail

// (1/2 pi i) times the integral of (1-u)^m u^{-l-1} from conj(Omega) to Omega, crossing (0,1)
// for m >= 0 and (-inf,0) for m < 0
inline double incomplete_beta(Complex omega, long m, long l)
{
    if (omega == Complex(0, 0) || omega == Complex(1, 0))
        throw DegenerateSlope("Omega must differ from 0 and 1");
    if (omega.imag() < 0)
        throw DegenerateSlope("Omega must lie in the closed upper half plane");
    const double cross = m >= 0 ? 0.5 : -1.0;
    if (omega.imag() == 0) {
        // limit Im Omega -> 0+: the path closes around the real segment between Omega and the crossing point
        const double x = omega.real();
        if (x < cross)
            return detail::residues_between(m, l, x, cross);
        return -detail::residues_between(m, l, cross, x);
    }
    auto integrand = [&](Complex u) { return detail::cpow_int(1.0 - u, m) * detail::cpow_int(u, -l - 1); };
    // the path is symmetric under conjugation, so the integral is 2i Im of its upper half;
    // that half runs up from the crossing point, across at height >= 1 and down onto Omega
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto leg = [&](Complex from, Complex to) {
        const Complex d = to - from;
        if (d == Complex(0, 0))
            return 0.0;
        auto im = [&](double t) { return (integrand(from + t * d) * d).imag(); };
        return GK::integrate(im, 0.0, 1.0, 15, 1e-14);
    };
    const double height = std::max(1.0, omega.imag());
    const Complex up(cross, height), over(omega.real(), height);
    return (leg(Complex(cross, 0.0), up) + leg(up, over) + leg(over, omega)) / std::numbers::pi;
}

inline double airy(double x)
{
    if (std::abs(x) > 30)
        throw RangeExceeded("Airy argument outside [-30, 30]");
    return boost::math::airy_ai(x);
}

inline double airy_prime(double x)
{
    if (std::abs(x) > 30)
        throw RangeExceeded("Airy argument outside [-30, 30]");
    return boost::math::airy_ai_prime(x);
}

namespace detail {

inline void check_airy_box(double t1, double s1, double t2, double s2)
{
    for (double v : {t1, s1, t2, s2})
        if (!(std::abs(v) <= 5.0))
            throw RangeExceeded("extended Airy arguments must lie in [-5, 5]");
}

// exp((t^3/12) - (s1+s2) t/2 - (s1-s2)^2/(4t)) / sqrt(4 pi t), t > 0
inline double heat_term(double t, double s1, double s2)
{
    return std::exp(t * t * t / 12.0 - (s1 + s2) * t / 2.0 - (s1 - s2) * (s1 - s2) / (4.0 * t)) /
           std::sqrt(4.0 * std::numbers::pi * t);
}

}  // namespace detail

// For tau1 < tau2 the integral over (-inf, 0] is written as the one over [0, inf) minus the
// whole-line integral, which has the closed Gaussian form.
inline double extended_airy(double tau1, double sigma1, double tau2, double sigma2)
{
    detail::check_airy_box(tau1, sigma1, tau2, sigma2);
    const double gap = tau1 - tau2;
    auto f = [&](double u) {
        return std::exp(-u * gap) * boost::math::airy_ai(sigma1 + u) * boost::math::airy_ai(sigma2 + u);
    };
    const double upper = std::max(1.0, 45.0 - std::min(sigma1, sigma2));
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double value = 0;
    const double pieces[] = {0.0, 2.0, 6.0, upper};
    for (int i = 0; i < 3; ++i)
        if (pieces[i] < upper)
            value += GK::integrate(f, pieces[i], std::min(pieces[i + 1], upper), 15, 1e-13);
    if (gap < 0)
        value -= detail::heat_term(-gap, sigma1, sigma2);
    return value;
}

// Double contour integral form with the u contour moved to pass through 1 and the v contour
// through -1, rays truncated at length 8.
inline double extended_airy_contour(double tau1, double sigma1, double tau2, double sigma2)
{
    detail::check_airy_box(tau1, sigma1, tau2, sigma2);
    const double pi = std::numbers::pi;
    // u = tau1 + p, v = tau2 + q; the u contour passes half a unit right of the v contour when tau2 > tau1 + 3/2
    auto exponent = [&](Complex p, Complex q) { return p * p * p / 3.0 - sigma1 * p - q * q * q / 3.0 + sigma2 * q; };
    const double start = std::max(1.0, (tau2 - tau1 + 0.5) / 2.0);
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& x = G::abscissa();
    const auto& wt = G::weights();
    const int pieces = 16;
    const double length = 8.0;
    std::vector<double> nodes, weights;
    for (int p = 0; p < pieces; ++p) {
        const double lo = length * p / pieces, hi = length * (p + 1) / pieces;
        const double mid = (lo + hi) / 2, half = (hi - lo) / 2;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double w = wt[i] * half;
            if (x[i] == 0) {
                nodes.push_back(mid);
                weights.push_back(w);
            } else {
                nodes.push_back(mid + half * x[i]);
                weights.push_back(w);
                nodes.push_back(mid - half * x[i]);
                weights.push_back(w);
            }
        }
    }
    Complex total = 0;
    for (int su : {-1, 1}) {
        const Complex du = std::polar(1.0, su * pi / 3.0);
        for (int sv : {-1, 1}) {
            const Complex dv = std::polar(1.0, sv * 2.0 * pi / 3.0);
            Complex part = 0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const Complex p = start + nodes[i] * du;
                for (std::size_t j = 0; j < nodes.size(); ++j) {
                    const Complex q = -start + nodes[j] * dv;
                    part += weights[i] * weights[j] * std::exp(exponent(p, q)) / (p - q + tau1 - tau2);
                }
            }
            total += double(su * sv) * part * du * dv;
        }
    }
    double value = (total / Complex(0.0, 2.0 * pi) / Complex(0.0, 2.0 * pi)).real();
    if (tau1 < tau2)
        value -= detail::heat_term(tau2 - tau1, sigma1, sigma2);
    return value;
}

struct EdgePoint {
    double tau = 0;
    double sigma = 0;
    double n_prime = 0;
    double x_prime = 0;
    int x = 0;
    int n = 0;
    double tau_effective = 0;
    double sigma_effective = 0;
};

struct EdgeFrame {
    double w_c = 0;
    int depth = 0;
    BoundarySample boundary;
    double n_scale = 0;  // n' = n_scale * tau
    double x_scale = 0;  // x' = x_scale * (sigma - tau^2)
    double kernel_scale = 0;
    std::vector<EdgePoint> points;
};

inline EdgeFrame edge_frame(double w_c, const ScaledPolygon& sp, int depth,
                            const std::vector<std::pair<double, double>>& tau_sigma)
{
    EdgeFrame f;
    f.w_c = w_c;
    f.depth = depth;
    f.boundary = frozen_boundary(w_c, sp);
    const double s3 = f.boundary.s3;
    if (!(std::abs(s3) >= 1e-6 && std::abs(s3) <= 1e6))
        throw DegenerateEdgePoint("|S'''| outside [1e-6, 1e6]: tangent or turning point");
    const double eta = f.boundary.eta, chi = f.boundary.chi, om = f.boundary.omega, t = f.boundary.tangent;
    const double root = std::cbrt(s3);
    const double shape = om / ((1.0 - om) * (1.0 - om));
    f.n_scale = -std::cbrt(2.0) * root * root * (1.0 - eta) * (1.0 - eta) * shape;
    f.x_scale = root / std::cbrt(2.0) * (1.0 - eta) * shape;
    const double big_n = depth;
    f.kernel_scale = std::cbrt(big_n) * std::cbrt(std::abs(s3) / 2.0) * (1.0 - eta) * std::abs(shape);
    const double n23 = std::pow(big_n, 2.0 / 3.0), n13 = std::cbrt(big_n);
    for (const auto& [tau, sigma] : tau_sigma) {
        EdgePoint p;
        p.tau = tau;
        p.sigma = sigma;
        p.n_prime = f.n_scale * tau;
        p.x_prime = f.x_scale * (sigma - tau * tau);
        p.n = static_cast<int>(std::lround(eta * big_n + p.n_prime * n23));
        p.x = static_cast<int>(std::lround(chi * big_n + t * p.n_prime * n23 + p.x_prime * n13));
        const double np = (p.n - eta * big_n) / n23;
        p.tau_effective = np / f.n_scale;
        const double xp = (p.x - chi * big_n - t * np * n23) / n13;
        p.sigma_effective = xp / f.x_scale + p.tau_effective * p.tau_effective;
        f.points.push_back(p);
    }
    return f;
}

// rescaled kernel at the frame's lattice points; particles and holes swap where Omega < 0
inline std::vector<std::vector<double>> scaled_edge_kernel(const Polygon& p, const EdgeFrame& f)
{
    const Signature nu = top_row(p).signature;
    const std::size_t s = f.points.size();
    std::vector<std::vector<double>> m(s, std::vector<double>(s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            const KernelPoint a{f.points[i].x, f.points[i].n}, b{f.points[j].x, f.points[j].n};
            double k = kernel<double>(nu, a, b);
            if (f.boundary.omega < 0)
                k = (a == b ? 1.0 : 0.0) - k;
            m[i][j] = f.kernel_scale * k;
        }
    return m;
}

// lattice polygon with clusters s_i = floor(a_i N + 1/2), e_i = floor(b_i N + 1/2)
inline Polygon lattice_polygon(const ScaledPolygon& sp, int depth)
{
    std::vector<Cluster> cl;
    for (int i = 0; i < sp.cluster_count(); ++i)
        cl.push_back({static_cast<int>(std::floor(sp.a[i] * depth + 0.5)),
                      static_cast<int>(std::floor(sp.b[i] * depth + 0.5))});
    Polygon p(cl);
    if (p.depth() != depth)
        throw InvalidPolygon("scaled polygon does not round to depth " + std::to_string(depth));
    return p;
}

}  // namespace lozenge
