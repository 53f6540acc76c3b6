#pragma once

#include "count.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "polygon.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace lozenge {

// counter-based stream splitting: sample i of a batch with master seed s uses stream_seed(s, i)
inline std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

namespace detail {

template <class T>
constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
T magnitude(const T& v)
{
    return v < T(0) ? T(-v) : v;
}

// Gauss-Jordan with partial pivoting; false if singular
template <class T>
bool invert(Matrix<T> a, Matrix<T>& inv)
{
    const std::size_t n = a.size();
    inv.assign(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = T(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (magnitude(a[r][c]) > magnitude(a[pivot][c]))
                pivot = r;
        if (a[pivot][c] == T(0))
            return false;
        std::swap(a[pivot], a[c]);
        std::swap(inv[pivot], inv[c]);
        const T p = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] /= p;
            inv[c][k] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == T(0))
                continue;
            const T f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return true;
}

template <class T>
T norm_one(const Matrix<T>& a)
{
    T best(0);
    for (std::size_t c = 0; c < a.size(); ++c) {
        T col(0);
        for (std::size_t r = 0; r < a.size(); ++r)
            col += magnitude(a[r][c]);
        if (col > best)
            best = col;
    }
    return best;
}

// Functions g(t) T_l(u(s(t))), l < size, with T_l Chebyshev polynomials and u mapping the range
// of s onto [-1, 1]. Uniform rows: g = 1, s = t. q-rows: s = g = q^(top - t), so that
// det[f_l(t_j)] is proportional to det[q^{-(l+1) t_j}].
template <class T>
class RowBasis {
public:
    RowBasis(int size, long t_low, long t_high, const std::optional<T>& q)
        : size_(size), top_(t_high), q_(q)
    {
        low_ = s_of(t_low);
        high_ = s_of(t_high);
        if (high_ < low_)
            std::swap(low_, high_);
    }

    void eval(long t, std::vector<T>& out) const
    {
        const T s = s_of(t);
        const T u = high_ == low_ ? T(0) : T((T(2) * s - low_ - high_) / (high_ - low_));
        out.resize(static_cast<std::size_t>(size_));
        out[0] = T(1);
        if (size_ > 1)
            out[1] = u;
        for (int l = 2; l < size_; ++l)
            out[l] = T(2) * u * out[l - 1] - out[l - 2];
        if (q_)
            for (auto& v : out)
                v *= s;
    }

private:
    T s_of(long t) const { return q_ ? ipow(*q_, top_ - t) : T(t); }

    int size_;
    long top_;
    std::optional<T> q_;
    T low_, high_;
};

// Draws row m-1 given row m (positions y, strictly decreasing) coordinate by coordinate.
// Coordinate i lives in the box [y_{i+1}+1, y_i]; its conditional law is v(t) A^{-1} e_i where
// the rows of A are interval sums of the basis, replaced by v(chosen) once a coordinate is drawn.
// Returns false when the scalar type is not precise enough for this row.
template <class T>
bool sample_row(const std::vector<int>& y, const std::vector<double>& draws, const std::optional<T>& q,
                std::vector<int>& out)
{
    const int size = static_cast<int>(y.size()) - 1;
    out.assign(static_cast<std::size_t>(std::max(size, 0)), 0);
    if (size <= 0)
        return true;
    for (int j = 0; j < size; ++j)
        if (!(y[j + 1] + 1 <= y[j]))
            throw std::logic_error("coordinate boxes of a row transition must be nonempty and disjoint");

    const RowBasis<T> basis(size, y[size] + 1, y[0], q);
    Matrix<T> a(size, std::vector<T>(size, T(0)));
    std::vector<T> v;
    for (int j = 0; j < size; ++j)
        for (long t = y[j + 1] + 1; t <= y[j]; ++t) {
            basis.eval(t, v);
            for (int l = 0; l < size; ++l)
                a[j][l] += v[l];
        }
    Matrix<T> inv;
    if (!invert(a, inv)) {
        if constexpr (is_exact_v<T>)
            throw std::logic_error("singular moment matrix in exact row sampling");
        return false;
    }
    if constexpr (!is_exact_v<T>) {
        const T cond = norm_one(a) * norm_one(inv);
        if (!(cond * std::numeric_limits<T>::epsilon() <= T(1e-8)))
            return false;
    }

    std::vector<T> weights, chosen, row_vector(size);
    for (int i = 0; i < size; ++i) {
        const long lo = y[i + 1] + 1, hi = y[i];
        weights.clear();
        T total(0), smallest(0);
        for (long t = lo; t <= hi; ++t) {
            basis.eval(t, v);
            T w(0);
            for (int l = 0; l < size; ++l)
                w += v[l] * inv[l][i];
            weights.push_back(w);
            total += w;
            if (w < smallest)
                smallest = w;
        }
        if constexpr (is_exact_v<T>) {
            if (total != 1 || smallest < 0)
                throw std::logic_error("exact conditional weights are not a probability vector");
        } else {
            if (!(magnitude(T(total - T(1))) <= T(1e-9)) || smallest < T(-1e-9))
                return false;
        }

        const T target = T(draws[i]) * total;
        T running(0);
        long pick = hi;
        for (long t = lo; t <= hi; ++t) {
            const T& w = weights[t - lo];
            if (w > T(0)) {
                running += w;
                pick = t;
                if (target < running)
                    break;
            }
        }
        out[i] = static_cast<int>(pick);

        basis.eval(pick, chosen);
        for (int l = 0; l < size; ++l)
            v[l] = chosen[l] - a[i][l];
        for (int k = 0; k < size; ++k) {
            T acc(0);
            for (int l = 0; l < size; ++l)
                acc += v[l] * inv[l][k];
            row_vector[k] = acc;
        }
        const T denom = T(1) + row_vector[i];
        if (!(denom > T(0))) {
            if constexpr (is_exact_v<T>)
                throw std::logic_error("chosen coordinate has zero weight");
            return false;
        }
        std::vector<T> column(size);
        for (int l = 0; l < size; ++l)
            column[l] = inv[l][i];
        for (int l = 0; l < size; ++l) {
            if (column[l] == T(0))
                continue;
            const T f = column[l] / denom;
            for (int k = 0; k < size; ++k)
                inv[l][k] -= f * row_vector[k];
        }
        a[i] = chosen;
    }
    return true;
}

template <unsigned Digits>
using Mpfr = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                           boost::multiprecision::et_off>;

template <class T>
std::optional<T> convert_q(const std::optional<Rational>& q)
{
    if (!q)
        return std::nullopt;
    if constexpr (is_exact_v<T>)
        return *q;
    else if constexpr (std::is_same_v<T, double>)
        return to_double(*q);
    else
        return T(*q);
}

// precision ladder: double, 50, 100, 200, 400 digits, then exact rationals
inline int sample_row_ladder(const std::vector<int>& y, const std::vector<double>& draws,
                             const std::optional<Rational>& q, std::vector<int>& out)
{
    if (sample_row<double>(y, draws, convert_q<double>(q), out))
        return 0;
    if (sample_row<Mpfr<50>>(y, draws, convert_q<Mpfr<50>>(q), out))
        return 1;
    if (sample_row<Mpfr<100>>(y, draws, convert_q<Mpfr<100>>(q), out))
        return 2;
    if (sample_row<Mpfr<200>>(y, draws, convert_q<Mpfr<200>>(q), out))
        return 3;
    if (sample_row<Mpfr<400>>(y, draws, convert_q<Mpfr<400>>(q), out))
        return 4;
    sample_row<Rational>(y, draws, q, out);
    return 5;
}

inline double unit_draw(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

enum class Arithmetic { ladder, exact };

inline ParticleArray sample_scheme(const Signature& nu, std::uint64_t seed, const std::optional<Rational>& q,
                                   Arithmetic arithmetic)
{
    const int depth = nu.length();
    if (depth < 1)
        throw InvalidSignature("empty signature");
    ParticleArray arr;
    arr.rows.resize(static_cast<std::size_t>(depth));
    arr.rows[depth - 1] = nu.positions();
    for (std::size_t j = 1; j < arr.rows[depth - 1].size(); ++j)
        if (arr.rows[depth - 1][j] >= arr.rows[depth - 1][j - 1])
            throw InvalidSignature("signature positions must be strictly decreasing");
    std::mt19937_64 rng(seed);
    std::vector<double> draws;
    for (int m = depth; m >= 2; --m) {
        draws.resize(static_cast<std::size_t>(m - 1));
        for (auto& d : draws)
            d = unit_draw(rng);
        if (arithmetic == Arithmetic::exact)
            sample_row<Rational>(arr.rows[m - 1], draws, q, arr.rows[m - 2]);
        else
            sample_row_ladder(arr.rows[m - 1], draws, q, arr.rows[m - 2]);
    }
    return arr;
}

inline void check_q(const Rational& q)
{
    if (!(q > 0 && q < 1))
        throw InvalidQ("q must lie in (0, 1)");
}

}  // namespace detail

inline ParticleArray sample_uniform(const Signature& nu, std::uint64_t seed)
{
    return detail::sample_scheme(nu, seed, std::nullopt, detail::Arithmetic::ladder);
}

inline ParticleArray sample_uniform_exact(const Signature& nu, std::uint64_t seed)
{
    return detail::sample_scheme(nu, seed, std::nullopt, detail::Arithmetic::exact);
}

// q is used at its exact binary value
inline ParticleArray sample_qvol(const Signature& nu, double q, std::uint64_t seed)
{
    if (!(q > 0 && q < 1))
        throw InvalidQ("q must lie in (0, 1)");
    return detail::sample_scheme(nu, seed, Rational(q), detail::Arithmetic::ladder);
}

inline ParticleArray sample_qvol_exact(const Signature& nu, const Rational& q, std::uint64_t seed)
{
    detail::check_q(q);
    return detail::sample_scheme(nu, seed, q, detail::Arithmetic::exact);
}

// exact law of row m-1 given row m by enumeration, weights V(mu~) or q^{-|mu|(m-1)} V(q^{mu~})
inline std::vector<std::pair<std::vector<int>, Rational>> transition_distribution(
    const std::vector<int>& y, const std::optional<Rational>& q = std::nullopt)
{
    const int size = static_cast<int>(y.size()) - 1;
    std::vector<std::pair<std::vector<int>, Rational>> out;
    if (size < 0)
        return out;
    std::vector<int> mu(static_cast<std::size_t>(size));
    Rational total = 0;
    auto weight = [&]() -> Rational {
        if (!q)
            return Rational(detail::vandermonde(mu));
        std::vector<Rational> pts;
        long shifted = 0;
        for (int j = 0; j < size; ++j) {
            pts.push_back(ipow(*q, mu[j]));
            shifted += mu[j] + j + 1;
        }
        return ipow(*q, -shifted * size) * detail::vandermonde_of(pts);
    };
    std::function<void(int)> walk = [&](int j) {
        if (j == size) {
            const Rational w = weight();
            out.push_back({mu, w});
            total += w;
            return;
        }
        for (int t = y[j + 1] + 1; t <= y[j]; ++t) {
            mu[j] = t;
            walk(j + 1);
        }
    };
    walk(0);
    for (auto& entry : out)
        entry.second /= total;
    return out;
}

// det of interval sums of t^l, which equals the sum of V(mu~) over mu below y
inline Rational row_normalizer(const std::vector<int>& y)
{
    const int size = static_cast<int>(y.size()) - 1;
    if (size <= 0)
        return 1;
    std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size, Rational(0)));
    for (int j = 0; j < size; ++j)
        for (long t = y[j + 1] + 1; t <= y[j]; ++t)
            for (int l = 0; l < size; ++l)
                a[j][size - 1 - l] += ipow(Rational(t), l);
    Rational det = 1;
    for (int c = 0; c < size; ++c) {
        int p = c;
        while (p < size && a[p][c] == 0)
            ++p;
        if (p == size)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < size; ++r) {
            const Rational f = a[r][c] / a[c][c];
            for (int k = c; k < size; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

struct SampleBatch {
    Polygon polygon;
    std::uint64_t seed = 0;
    std::optional<Rational> q;
    std::vector<ParticleArray> samples;
    std::map<Site, long> occupation;
};

inline SampleBatch sample_batch(const Polygon& p, std::size_t count, std::uint64_t seed,
                                const std::optional<double>& q = std::nullopt)
{
    SampleBatch batch{p, seed, q ? std::optional<Rational>(Rational(*q)) : std::nullopt, {}, {}};
    const Signature nu = top_row(p).signature;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t s = stream_seed(seed, i);
        ParticleArray arr = q ? sample_qvol(nu, *q, s) : sample_uniform(nu, s);
        for (int n = 1; n <= arr.depth(); ++n)
            for (int x : arr.row(n))
                ++batch.occupation[{x, n}];
        batch.samples.push_back(std::move(arr));
    }
    return batch;
}

struct EmpiricalStats {
    std::size_t sample_count = 0;
    std::map<Site, double> frequency;
    // mean number of particles at positions >= x on row n, for x over the polygon's span
    int span_low = 0;
    std::vector<std::vector<double>> height;
};

inline EmpiricalStats empirical_stats(const SampleBatch& batch)
{
    EmpiricalStats st;
    st.sample_count = batch.samples.size();
    if (st.sample_count == 0)
        return st;
    const double total = static_cast<double>(st.sample_count);
    for (const auto& [site, c] : batch.occupation)
        st.frequency[site] = c / total;
    const int depth = batch.polygon.depth();
    st.span_low = batch.polygon.leftmost();
    const int width = batch.polygon.rightmost() - st.span_low + 1;
    st.height.assign(static_cast<std::size_t>(depth), std::vector<double>(static_cast<std::size_t>(width), 0.0));
    for (int n = 1; n <= depth; ++n) {
        double above = 0;
        for (int i = width - 1; i >= 0; --i) {
            const auto it = st.frequency.find({st.span_low + i, n});
            if (it != st.frequency.end())
                above += it->second;
            st.height[n - 1][i] = above;
        }
    }
    return st;
}

}  // namespace lozenge
