#pragma once

#include "count.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

namespace lozenge {

using KernelPoint = Site;

// sign and natural log of the magnitude; sign == 0 means exactly zero
struct LogScalar {
    int sign = 0;
    double log_magnitude = -std::numeric_limits<double>::infinity();

    static LogScalar from(double v)
    {
        if (v == 0)
            return {};
        return {v > 0 ? 1 : -1, std::log(std::abs(v))};
    }

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

    friend LogScalar operator*(const LogScalar& a, const LogScalar& b)
    {
        if (a.sign == 0 || b.sign == 0)
            return {};
        return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
    }

    friend LogScalar operator/(const LogScalar& a, const LogScalar& b)
    {
        if (b.sign == 0)
            throw std::domain_error("LogScalar division by zero");
        if (a.sign == 0)
            return {};
        return {a.sign * b.sign, a.log_magnitude - b.log_magnitude};
    }
};

// Neumaier-compensated sum of terms rescaled by exp(-shift)
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0;
    double carry_ = 0;
};

namespace detail {

// maximal runs of consecutive positions, as [lo, hi] pairs
inline std::vector<std::pair<int, int>> runs(const std::vector<int>& y)
{
    std::vector<std::pair<int, int>> out;
    for (auto it = y.rbegin(); it != y.rend(); ++it) {
        if (!out.empty() && out.back().second + 1 == *it)
            out.back().second = *it;
        else
            out.push_back({*it, *it});
    }
    return out;
}

// log of prod |w - y| over the run [lo, hi], skipping y == w
inline double log_run_product(long w, long lo, long hi)
{
    if (w > hi)
        return std::lgamma(double(w - lo + 1)) - std::lgamma(double(w - hi));
    if (w < lo)
        return std::lgamma(double(hi - w + 1)) - std::lgamma(double(lo - w));
    return std::lgamma(double(w - lo + 1)) + std::lgamma(double(hi - w + 1));
}

inline void check_rows(int depth, KernelPoint p1, KernelPoint p2)
{
    if (p1.n < 1 || p1.n > depth)
        throw RowOutOfRange("first row " + std::to_string(p1.n) + " outside [1, N]");
    if (p2.n < 1 || p2.n > depth - 1)
        throw RowOutOfRange("second row " + std::to_string(p2.n) + " outside [1, N-1]");
}

inline Rational leading_term(int x1, int n1, int x2, int n2)
{
    if (n2 < n1 && x2 <= x1)
        return Rational(rising(x1 - x2 + 1, n1 - n2 - 1), factorial(n1 - n2 - 1));
    return 0;
}

// Sum of z-residues at the top-row positions y_j (only those >= x2 unless every_pole), each
// w-integral being the finite sum over w = x1, x1-1, ..., x1-(N-n1). The pole w = z is
// cancelled by the factor (w - y_j) of the numerator.
inline Rational residue_sum(const std::vector<int>& y, int x1, int n1, int x2, int n2, bool every_pole)
{
    const long depth = static_cast<long>(y.size());
    const long span = depth - n1;
    const long tail = depth - n2 - 1;

    std::vector<BigInt> window(static_cast<std::size_t>(span + 1));
    for (long s = 0; s <= span; ++s) {
        BigInt p = 1;
        const long w = x1 - s;
        for (int yr : y) {
            if (w == yr) {
                p = 0;
                break;
            }
            p *= w - yr;
        }
        window[s] = p;
    }
    const std::vector<BigInt> binom = binomial_row(span);

    Rational acc = 0;
    for (long j = 0; j < depth; ++j) {
        if (y[j] < x2 && !every_pole)
            continue;
        const BigInt poch = rising(y[j] - x2 + 1, tail);
        if (poch == 0)
            continue;
        BigInt denom = 1;
        for (long r = 0; r < depth; ++r)
            if (r != j)
                denom *= y[j] - y[r];
        BigInt sum = 0;
        for (long s = 0; s <= span; ++s) {
            const long w = x1 - s;
            BigInt partial;
            if (w == y[j])
                partial = denom;
            else if (window[s] == 0)
                continue;
            else
                partial = window[s] / (w - y[j]);
            if (s % 2 == 0)
                sum += binom[s] * partial;
            else
                sum -= binom[s] * partial;
        }
        if (sum != 0)
            acc += Rational(poch * sum, denom);
    }
    return acc / factorial(tail);
}

// K for 1 <= n1 <= N and 0 <= n2 <= N-1; n2 = 0 is the bottom row of black triangles
inline Rational kernel_exact_extended(const std::vector<int>& y, int x1, int n1, int x2, int n2)
{
    return residue_sum(y, x1, n1, x2, n2, false) - leading_term(x1, n1, x2, n2);
}

struct FloatAttempt {
    double value = 0;
    bool reliable = false;
};

// The same residue sum in sign/log-magnitude form. Reports unreliable when cancellation
// between terms would cost more digits than the target accuracy allows.
inline FloatAttempt kernel_log_sum(const std::vector<int>& y, int x1, int n1, int x2, int n2,
                                   double rel_target = 1e-12)
{
    const long depth = static_cast<long>(y.size());
    const long span = depth - n1;
    const long tail = depth - n2 - 1;
    const auto clusters = runs(y);

    auto log_prod_except = [&](long w, long skip_value) {
        double total = 0;
        for (const auto& [lo, hi] : clusters) {
            if (w >= lo && w <= hi && w != skip_value)
                return -std::numeric_limits<double>::infinity();
            total += log_run_product(w, lo, hi);
        }
        if (skip_value != w)
            total -= std::log(std::abs(double(w - skip_value)));
        return total;
    };
    auto count_above = [&](long w) {
        return static_cast<long>(std::count_if(y.begin(), y.end(), [&](int v) { return v > w; }));
    };

    std::vector<LogScalar> terms;
    const Rational lead = leading_term(x1, n1, x2, n2);
    if (lead != 0) {
        const long k = n1 - n2 - 1;
        const double lg = std::lgamma(double(x1 - x2 + 1 + k)) - std::lgamma(double(x1 - x2 + 1)) -
                          std::lgamma(double(k + 1));
        terms.push_back({-1, lg});
    }
    const double log_tail_fact = std::lgamma(double(tail + 1));
    const double log_span_fact = std::lgamma(double(span + 1));
    for (long j = 0; j < depth; ++j) {
        if (y[j] < x2)
            continue;
        const double log_poch = std::lgamma(double(y[j] - x2 + 1 + tail)) - std::lgamma(double(y[j] - x2 + 1));
        const double log_denom = log_prod_except(y[j], y[j]);
        const int denom_sign = (j % 2 == 0) ? 1 : -1;
        for (long s = 0; s <= span; ++s) {
            const long w = x1 - s;
            const double lq = log_prod_except(w, y[j]);
            if (!std::isfinite(lq))
                continue;
            long above = count_above(w);
            if (y[j] > w)
                --above;
            const int sign = ((s + above) % 2 == 0 ? 1 : -1) * denom_sign;
            const double lb = log_span_fact - std::lgamma(double(s + 1)) - std::lgamma(double(span - s + 1));
            terms.push_back({sign, log_poch + lb + lq - log_denom - log_tail_fact});
        }
    }
    if (terms.empty())
        return {0.0, true};
    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        shift = std::max(shift, t.log_magnitude);
    CompensatedSum sum;
    for (const auto& t : terms)
        sum.add(t.sign * std::exp(t.log_magnitude - shift));
    const double scaled = sum.value();
    const double per_term_error = 4e-16 * (1.0 + std::abs(shift));
    const double error = per_term_error * std::sqrt(double(terms.size()));
    if (scaled == 0 || error > rel_target * std::abs(scaled))
        return {0.0, false};
    return {scaled * std::exp(shift), true};
}

template <class T>
T qpoch(const T& a, const T& q, long k)
{
    T r(1), factor(a);
    for (long i = 0; i < k; ++i) {
        r *= T(1) - factor;
        factor *= q;
    }
    return r;
}

// elementary symmetric polynomials e_0..e_n of the values
template <class T>
std::vector<T> elementary_symmetric(const std::vector<T>& values)
{
    std::vector<T> e(values.size() + 1, T(0));
    e[0] = T(1);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t m = i + 1; m >= 1; --m)
            e[m] += e[m - 1] * values[i];
    return e;
}

template <class T>
T kernel_q_extended(const std::vector<int>& y, const T& q, int x1, int n1, int x2, int n2)
{
    const long depth = static_cast<long>(y.size());
    const long tail = depth - n2 - 1;
    T result(0);
    if (n2 < n1 && x2 <= x1)
        result -= ipow(q, long(n2) * (x1 - x2)) * qpoch(ipow(q, x1 - x2 + 1), q, n1 - n2 - 1) /
                  qpoch(q, q, n1 - n2 - 1);
    const T tail_norm = qpoch(q, q, tail);

    // prod_{r=n1+1}^{N} (1 - q^{r-i-1}) for i = 0..n1-1
    std::vector<T> weights(static_cast<std::size_t>(n1));
    for (long i = 0; i < n1; ++i) {
        T w(1);
        for (long r = n1 + 1; r <= depth; ++r)
            w *= T(1) - ipow(q, r - i - 1);
        weights[i] = w;
    }

    std::vector<T> shifted(static_cast<std::size_t>(depth));
    for (long r = 0; r < depth; ++r)
        shifted[r] = ipow(q, long(y[r]) - x1);

    for (long j = 0; j < depth; ++j) {
        if (y[j] < x2)
            continue;
        const T front = qpoch(ipow(q, y[j] - x2 + 1), q, tail) / tail_norm * ipow(q, long(n2) * (y[j] - x2));
        if (front == T(0))
            continue;
        T denom(1);
        std::vector<T> others;
        others.reserve(static_cast<std::size_t>(depth - 1));
        for (long r = 0; r < depth; ++r)
            if (r != j) {
                denom *= shifted[j] - shifted[r];
                others.push_back(shifted[r]);
            }
        const std::vector<T> e = elementary_symmetric(others);
        T free_term(0);
        for (long i = 0; i < n1; ++i) {
            const long m = depth - i - 1;
            T piece = weights[i] * e[m];
            if (m % 2 == 0)
                free_term += piece;
            else
                free_term -= piece;
        }
        result += front / denom * free_term;
    }
    return result;
}

template <class T>
T determinant(std::vector<std::vector<T>> a)
{
    const std::size_t n = a.size();
    T det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = n;
        if constexpr (std::is_floating_point_v<T>) {
            T best(0);
            for (std::size_t r = c; r < n; ++r)
                if (std::abs(a[r][c]) > best) {
                    best = std::abs(a[r][c]);
                    pivot = r;
                }
        } else {
            for (std::size_t r = c; r < n; ++r)
                if (a[r][c] != T(0)) {
                    pivot = r;
                    break;
                }
        }
        if (pivot == n)
            return T(0);
        if (pivot != c) {
            std::swap(a[pivot], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == T(0))
                continue;
            const T f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

}  // namespace detail

// K(x1,n1; x2,n2) of the uniform measure; T = Rational (exact) or double (float)
template <class T = Rational>
T kernel(const Signature& nu, KernelPoint p1, KernelPoint p2)
{
    detail::check_rows(nu.length(), p1, p2);
    const std::vector<int> y = nu.positions();
    if constexpr (std::is_same_v<T, Rational>) {
        return detail::kernel_exact_extended(y, p1.x, p1.n, p2.x, p2.n);
    } else {
        const auto attempt = detail::kernel_log_sum(y, p1.x, p1.n, p2.x, p2.n);
        if (attempt.reliable)
            return static_cast<T>(attempt.value);
        return static_cast<T>(to_double(detail::kernel_exact_extended(y, p1.x, p1.n, p2.x, p2.n)));
    }
}

// kernel of the q^{-vol} measure, 0 < q < 1
template <class T = Rational>
T kernel_q(const Signature& nu, const T& q, KernelPoint p1, KernelPoint p2)
{
    if (!(q > T(0) && q < T(1)))
        throw InvalidQ("q must lie in (0, 1)");
    detail::check_rows(nu.length(), p1, p2);
    return detail::kernel_q_extended(nu.positions(), q, p1.x, p1.n, p2.x, p2.n);
}

template <class T = Rational>
T correlation(const Signature& nu, const std::vector<KernelPoint>& points)
{
    detail::check_points(points, nu.length());
    std::vector<std::vector<T>> m(points.size(), std::vector<T>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            m[i][j] = kernel<T>(nu, points[i], points[j]);
    return detail::determinant(std::move(m));
}

template <class T = Rational>
T correlation_q(const Signature& nu, const T& q, const std::vector<KernelPoint>& points)
{
    detail::check_points(points, nu.length());
    std::vector<std::vector<T>> m(points.size(), std::vector<T>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            m[i][j] = kernel_q<T>(nu, q, points[i], points[j]);
    return detail::determinant(std::move(m));
}

}  // namespace lozenge
