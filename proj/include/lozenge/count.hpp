#pragma once

#include "errors.hpp"
#include "exact.hpp"
#include "polygon.hpp"

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace lozenge {

inline constexpr long long default_budget = 10'000'000;

namespace detail {

inline BigInt vandermonde(const std::vector<int>& y)
{
    BigInt v = 1;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = i + 1; j < y.size(); ++j)
            v *= y[i] - y[j];
    return v;
}

template <class T>
T vandermonde_of(const std::vector<T>& u)
{
    T v(1);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            v *= u[i] - u[j];
    return v;
}

// V(-1, ..., -m) = 1! 2! ... (m-1)!
inline BigInt superfactorial(int m)
{
    BigInt v = 1, f = 1;
    for (int i = 1; i < m; ++i) {
        f *= i;
        v *= f;
    }
    return v;
}

}  // namespace detail

// number of arrays with top row nu; nu has length m
inline BigInt count_uniform(const Signature& nu)
{
    return detail::vandermonde(nu.positions()) / detail::superfactorial(nu.length());
}

inline BigInt count_uniform(const Signature& nu, int m)
{
    if (nu.length() != m)
        throw InvalidSignature("signature length differs from m");
    return count_uniform(nu);
}

// sum over arrays of q^{-vol}
inline Rational count_q(const Signature& nu, const Rational& q)
{
    if (q == 0)
        throw InvalidQ("q must be nonzero");
    const int m = nu.length();
    long size = 0;
    for (int part : nu.parts)
        size += part;
    std::vector<Rational> top, base;
    for (int j = 1; j <= m; ++j) {
        top.push_back(ipow(q, nu.parts[j - 1] - j));
        base.push_back(ipow(q, -j));
    }
    const Rational denom = detail::vandermonde_of(base);
    if (denom == 0)
        throw InvalidQ("q makes the normalizing Vandermonde vanish");
    return ipow(q, size * (1 - m)) * detail::vandermonde_of(top) / denom;
}

inline Rational count_q(const Signature& nu, int m, const Rational& q)
{
    if (nu.length() != m)
        throw InvalidSignature("signature length differs from m");
    return count_q(nu, q);
}

// Streams every array with top row nu, lexicographically on (row 1, row 2, ...).
class SchemeEnumerator {
public:
    explicit SchemeEnumerator(const Signature& nu, long long budget = default_budget)
        : top_(nu.positions()), depth_(nu.length())
    {
        if (depth_ < 1)
            throw InvalidSignature("empty signature");
        for (std::size_t j = 1; j < top_.size(); ++j)
            if (top_[j] >= top_[j - 1])
                throw InvalidSignature("signature positions must be strictly decreasing");
        if (count_uniform(nu) > budget)
            throw BudgetExceeded("enumeration would exceed the budget of " + std::to_string(budget) +
                                 " arrays");
        rows_.resize(static_cast<std::size_t>(depth_));
        for (int m = 1; m <= depth_; ++m)
            rows_[m - 1].resize(static_cast<std::size_t>(m));
        rows_[depth_ - 1] = top_;
    }

    bool next(ParticleArray& out)
    {
        if (done_)
            return false;
        if (!started_) {
            started_ = true;
            reset_from(1, 1);
        } else if (!advance()) {
            done_ = true;
            return false;
        }
        out.rows = rows_;
        return true;
    }

private:
    int lower(int m, int j) const
    {
        const int d = depth_ - m;
        int lo = top_[j - 1 + d] + d;
        if (j <= m - 1)
            lo = std::max(lo, rows_[m - 2][j - 1]);
        return lo;
    }

    int upper(int m, int j) const
    {
        int hi = top_[j - 1];
        if (j >= 2)
            hi = std::min(hi, rows_[m - 2][j - 2] - 1);
        return hi;
    }

    // set every coordinate after-and-including (m, j) to its lower bound
    void reset_from(int m, int j)
    {
        for (int r = m; r < depth_; ++r)
            for (int c = (r == m ? j : 1); c <= r; ++c)
                rows_[r - 1][c - 1] = lower(r, c);
    }

    bool advance()
    {
        for (int m = depth_ - 1; m >= 1; --m)
            for (int j = m; j >= 1; --j)
                if (rows_[m - 1][j - 1] < upper(m, j)) {
                    ++rows_[m - 1][j - 1];
                    if (j < m)
                        reset_from(m, j + 1);
                    else
                        reset_from(m + 1, 1);
                    return true;
                }
        return false;
    }

    std::vector<int> top_;
    int depth_;
    std::vector<std::vector<int>> rows_;
    bool started_ = false;
    bool done_ = false;
};

inline std::vector<ParticleArray> enumerate_schemes(const Signature& nu, long long budget = default_budget)
{
    std::vector<ParticleArray> all;
    SchemeEnumerator e(nu, budget);
    ParticleArray a;
    while (e.next(a))
        all.push_back(a);
    return all;
}

struct Site {
    int x = 0;
    int n = 0;
    friend auto operator<=>(const Site&, const Site&) = default;
};

namespace detail {

inline void check_points(const std::vector<Site>& points, int depth)
{
    std::set<Site> seen;
    for (const auto& p : points) {
        if (p.n < 1 || p.n > depth - 1)
            throw RowOutOfRange("row " + std::to_string(p.n) + " outside [1, N-1]");
        if (!seen.insert(p).second)
            throw DuplicatePoint("point (" + std::to_string(p.x) + "," + std::to_string(p.n) +
                                 ") listed twice");
    }
}

inline Rational weigh(const std::map<long, BigInt>& histogram, const Rational& q, long offset)
{
    Rational total = 0;
    for (const auto& [vol, count] : histogram)
        total += Rational(count) * ipow(q, -(vol - offset));
    return total;
}

}  // namespace detail

// exact probability that every listed site is occupied, uniform or q^{-vol} weighted
inline Rational brute_correlations(const Signature& nu, const std::vector<Site>& points,
                                   const std::optional<Rational>& q = std::nullopt,
                                   long long budget = default_budget)
{
    detail::check_points(points, nu.length());
    if (q && *q <= 0)
        throw InvalidQ("q must be positive");
    std::map<long, BigInt> all, hit;
    SchemeEnumerator e(nu, budget);
    ParticleArray a;
    long min_vol = 0;
    bool first = true;
    while (e.next(a)) {
        const long vol = q ? scheme_volume(a) : 0;
        if (first || vol < min_vol)
            min_vol = vol;
        first = false;
        all[vol] += 1;
        bool every = true;
        for (const auto& p : points)
            if (!a.occupied(p.x, p.n)) {
                every = false;
                break;
            }
        if (every)
            hit[vol] += 1;
    }
    const Rational qq = q ? *q : Rational(1);
    return detail::weigh(hit, qq, min_vol) / detail::weigh(all, qq, min_vol);
}

}  // namespace lozenge
