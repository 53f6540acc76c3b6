#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace lozenge {

// A cluster occupies the integer positions s .. e-1 of the top row.
struct Cluster {
    int s = 0;
    int e = 0;
    friend bool operator==(const Cluster&, const Cluster&) = default;
};

class Polygon {
public:
    Polygon() = default;

    explicit Polygon(std::vector<Cluster> clusters) : clusters_(std::move(clusters))
    {
        if (clusters_.empty())
            throw InvalidPolygon("polygon needs at least one cluster");
        for (std::size_t i = 0; i < clusters_.size(); ++i) {
            if (clusters_[i].s >= clusters_[i].e)
                throw InvalidPolygon("cluster " + std::to_string(i + 1) + " is empty");
            if (i + 1 < clusters_.size() && clusters_[i].e >= clusters_[i + 1].s)
                throw InvalidPolygon("clusters " + std::to_string(i + 1) + " and " +
                                     std::to_string(i + 2) + " touch or overlap");
        }
        for (const auto& c : clusters_)
            depth_ += c.e - c.s;
    }

    const std::vector<Cluster>& clusters() const { return clusters_; }
    int depth() const { return depth_; }
    int cluster_count() const { return static_cast<int>(clusters_.size()); }
    int leftmost() const { return clusters_.front().s; }
    int rightmost() const { return clusters_.back().e - 1; }

    friend bool operator==(const Polygon&, const Polygon&) = default;

private:
    std::vector<Cluster> clusters_;
    int depth_ = 0;
};

struct Signature {
    std::vector<int> parts;

    Signature() = default;
    explicit Signature(std::vector<int> p) : parts(std::move(p))
    {
        for (std::size_t j = 1; j < parts.size(); ++j)
            if (parts[j] > parts[j - 1])
                throw InvalidSignature("signature must be nonincreasing");
    }

    int length() const { return static_cast<int>(parts.size()); }

    // x_j = nu_j - j, strictly decreasing
    std::vector<int> positions() const
    {
        std::vector<int> y(parts.size());
        for (std::size_t j = 0; j < parts.size(); ++j)
            y[j] = parts[j] - static_cast<int>(j + 1);
        return y;
    }

    static Signature from_positions(const std::vector<int>& y)
    {
        std::vector<int> p(y.size());
        for (std::size_t j = 0; j < y.size(); ++j)
            p[j] = y[j] + static_cast<int>(j + 1);
        return Signature(std::move(p));
    }

    friend bool operator==(const Signature&, const Signature&) = default;
};

// rows[m-1] holds x_1^m > ... > x_m^m
struct ParticleArray {
    std::vector<std::vector<int>> rows;

    int depth() const { return static_cast<int>(rows.size()); }
    const std::vector<int>& row(int m) const { return rows[static_cast<std::size_t>(m - 1)]; }
    bool occupied(int x, int n) const
    {
        const auto& r = row(n);
        return std::binary_search(r.rbegin(), r.rend(), x);
    }

    friend bool operator==(const ParticleArray&, const ParticleArray&) = default;
    friend auto operator<=>(const ParticleArray&, const ParticleArray&) = default;
};

struct ScaledPolygon {
    std::vector<double> a;
    std::vector<double> b;

    ScaledPolygon() = default;
    ScaledPolygon(std::vector<double> left, std::vector<double> right)
        : a(std::move(left)), b(std::move(right))
    {
        if (a.empty() || a.size() != b.size())
            throw InvalidPolygon("scaled polygon needs k >= 1 matching endpoints");
        double total = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!(a[i] < b[i]) || (i + 1 < a.size() && !(b[i] < a[i + 1])))
                throw InvalidPolygon("scaled endpoints must interlace a_1 < b_1 < ... < b_k");
            total += b[i] - a[i];
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw InvalidPolygon("cluster lengths of a scaled polygon must sum to 1");
    }

    int cluster_count() const { return static_cast<int>(a.size()); }

    // open interior of the polygon in (chi, eta) coordinates
    bool contains(double chi, double eta) const
    {
        if (!(eta > 0 && eta < 1) || !(chi < b.back()) || !(chi + eta > a.front() + 1))
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (chi <= b[i] && chi + eta >= a[i] + 1)
                return false;
        return true;
    }
};

struct TopRow {
    std::vector<int> positions;
    Signature signature;
};

inline TopRow top_row(const Polygon& p)
{
    TopRow t;
    for (auto it = p.clusters().rbegin(); it != p.clusters().rend(); ++it)
        for (int x = it->e - 1; x >= it->s; --x)
            t.positions.push_back(x);
    t.signature = Signature::from_positions(t.positions);
    return t;
}

inline Polygon polygon_from_signature(const Signature& nu)
{
    std::vector<int> y = nu.positions();
    for (std::size_t j = 1; j < y.size(); ++j)
        if (y[j] >= y[j - 1])
            throw InvalidSignature("signature does not come from a polygon");
    std::vector<Cluster> clusters;
    for (auto it = y.rbegin(); it != y.rend(); ++it) {
        if (!clusters.empty() && clusters.back().e == *it)
            ++clusters.back().e;
        else
            clusters.push_back({*it, *it + 1});
    }
    return Polygon(std::move(clusters));
}

inline ScaledPolygon scale(const Polygon& p)
{
    const double n = p.depth();
    std::vector<double> a, b;
    for (const auto& c : p.clusters()) {
        a.push_back((c.s - 0.5) / n);
        b.push_back((c.e - 0.5) / n);
    }
    return ScaledPolygon(std::move(a), std::move(b));
}

struct Violation {
    int m = 0;
    int j = 0;
    std::string what;
};

inline std::optional<Violation> validate_array(const Polygon& p, const ParticleArray& arr)
{
    const int depth = p.depth();
    if (arr.depth() != depth)
        return Violation{arr.depth(), 0, "array depth differs from polygon depth"};
    for (int m = 1; m <= depth; ++m) {
        const auto& r = arr.row(m);
        if (static_cast<int>(r.size()) != m)
            return Violation{m, 0, "row length differs from row index"};
        for (int j = 2; j <= m; ++j)
            if (!(r[j - 1] < r[j - 2]))
                return Violation{m, j, "row is not strictly decreasing"};
    }
    for (int m = 2; m <= depth; ++m) {
        const auto& up = arr.row(m);
        const auto& down = arr.row(m - 1);
        for (int j = 1; j <= m - 1; ++j) {
            if (!(down[j - 1] <= up[j - 1]))
                return Violation{m, j, "x_j^{m-1} exceeds x_j^m"};
            if (!(up[j] < down[j - 1]))
                return Violation{m, j + 1, "x_{j+1}^m does not lie below x_j^{m-1}"};
        }
    }
    if (arr.row(depth) != top_row(p).positions)
        return Violation{depth, 0, "top row differs from the polygon's top row"};
    return std::nullopt;
}

// sum over rows 1..N-1 of |lambda^(m)|, lambda_j^(m) = x_j^m + j
inline long scheme_volume(const ParticleArray& arr)
{
    long v = 0;
    for (int m = 1; m < arr.depth(); ++m) {
        const auto& r = arr.row(m);
        for (int j = 1; j <= m; ++j)
            v += r[j - 1] + j;
    }
    return v;
}

inline std::vector<std::vector<int>> array_to_scheme(const ParticleArray& arr)
{
    std::vector<std::vector<int>> lam(arr.rows.size());
    for (std::size_t m = 0; m < arr.rows.size(); ++m)
        for (std::size_t j = 0; j < arr.rows[m].size(); ++j)
            lam[m].push_back(arr.rows[m][j] + static_cast<int>(j + 1));
    return lam;
}

inline ParticleArray scheme_to_array(const std::vector<std::vector<int>>& lam)
{
    ParticleArray arr;
    arr.rows.resize(lam.size());
    for (std::size_t m = 0; m < lam.size(); ++m)
        for (std::size_t j = 0; j < lam[m].size(); ++j)
            arr.rows[m].push_back(lam[m][j] - static_cast<int>(j + 1));
    return arr;
}

}  // namespace lozenge
