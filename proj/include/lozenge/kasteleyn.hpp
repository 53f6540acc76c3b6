#pragma once

#include "kernel.hpp"

#include <map>
#include <vector>

namespace lozenge {

// White triangle (x,n): vertices (x-1/2,n), (x+1/2,n), (x+1/2,n-1).
// Black triangle (y,m): vertices (y-1/2,m), (y+1/2,m), (y-1/2,m+1).
// A particle at (x,n) is the lozenge made of white (x,n) and black (x,n).
struct Triangle {
    int x = 0;
    int n = 0;
    friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

class TriangleGraph {
public:
    explicit TriangleGraph(const Polygon& p) : polygon_(p), top_(top_row(p).positions)
    {
        const int depth = p.depth();
        const int left = p.leftmost() + depth;
        const int right = p.clusters().back().e - 1;
        for (int n = 1; n <= depth; ++n)
            for (int x = left - n; x <= right; ++x)
                if (has_white({x, n}))
                    whites_.push_back({x, n});
        for (int m = 0; m <= depth - 1; ++m)
            for (int y = left - m; y <= right; ++y)
                if (has_black({y, m}))
                    blacks_.push_back({y, m});
        for (std::size_t i = 0; i < whites_.size(); ++i)
            white_index_[whites_[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < blacks_.size(); ++i)
            black_index_[blacks_[i]] = static_cast<int>(i);
    }

    bool has_white(Triangle w) const { return w.n >= 1 && inside(w, polygon_.depth()); }
    bool has_black(Triangle b) const { return b.n >= 0 && inside(b, polygon_.depth() - 1); }

    const std::vector<Triangle>& whites() const { return whites_; }
    const std::vector<Triangle>& blacks() const { return blacks_; }
    int white_index(Triangle w) const { return white_index_.at(w); }
    int black_index(Triangle b) const { return black_index_.at(b); }
    const Polygon& polygon() const { return polygon_; }
    const std::vector<int>& top() const { return top_; }

    static std::vector<Triangle> neighbours_of_white(Triangle w)
    {
        return {{w.x, w.n}, {w.x, w.n - 1}, {w.x + 1, w.n - 1}};
    }
    static std::vector<Triangle> neighbours_of_black(Triangle b)
    {
        return {{b.x, b.n}, {b.x, b.n + 1}, {b.x - 1, b.n + 1}};
    }

private:
    // inside the outer trapezoid and outside every region above a cluster of the top row
    bool inside(Triangle t, int top_level) const
    {
        const int depth = polygon_.depth();
        if (t.n > top_level || t.x + t.n < polygon_.leftmost() + depth || t.x > polygon_.clusters().back().e - 1)
            return false;
        for (const auto& c : polygon_.clusters())
            if (t.x <= c.e - 1 && t.x + t.n >= c.s + depth)
                return false;
        return true;
    }

    Polygon polygon_;
    std::vector<int> top_;
    std::vector<Triangle> whites_;
    std::vector<Triangle> blacks_;
    std::map<Triangle, int> white_index_;
    std::map<Triangle, int> black_index_;
};

// rows: white triangles, columns: black triangles
struct KasteleynMatrix {
    std::vector<Triangle> whites;
    std::vector<Triangle> blacks;
    std::vector<std::pair<int, int>> ones;

    std::vector<std::vector<int>> dense() const
    {
        std::vector<std::vector<int>> m(whites.size(), std::vector<int>(blacks.size(), 0));
        for (auto [r, c] : ones)
            m[r][c] = 1;
        return m;
    }
};

inline KasteleynMatrix kasteleyn(const Polygon& p)
{
    const TriangleGraph g(p);
    KasteleynMatrix k{g.whites(), g.blacks(), {}};
    for (std::size_t r = 0; r < k.whites.size(); ++r)
        for (const Triangle& b : TriangleGraph::neighbours_of_white(k.whites[r]))
            if (g.has_black(b))
                k.ones.push_back({static_cast<int>(r), g.black_index(b)});
    return k;
}

namespace detail {

inline Rational inverse_entry(const std::vector<int>& top, Triangle black, Triangle white)
{
    const int parity = (black.x - white.x + black.n - white.n) % 2;
    const Rational k = kernel_exact_extended(top, white.x, white.n, black.x, black.n);
    return parity == 0 ? k : Rational(-k);
}

}  // namespace detail

// entry (black, white) of the inverse Kasteleyn matrix
inline Rational inverse_kasteleyn(const Polygon& p, Triangle black, Triangle white)
{
    const TriangleGraph g(p);
    if (!g.has_black(black))
        throw TriangleOutsidePolygon("black triangle (" + std::to_string(black.x) + "," +
                                     std::to_string(black.n) + ") is not inside the polygon");
    if (!g.has_white(white))
        throw TriangleOutsidePolygon("white triangle (" + std::to_string(white.x) + "," +
                                     std::to_string(white.n) + ") is not inside the polygon");
    return detail::inverse_entry(g.top(), black, white);
}

// full inverse, rows indexed by blacks and columns by whites of kasteleyn(p)
inline std::vector<std::vector<Rational>> inverse_kasteleyn_matrix(const Polygon& p)
{
    const TriangleGraph g(p);
    std::vector<std::vector<Rational>> m(g.blacks().size(), std::vector<Rational>(g.whites().size()));
    for (std::size_t i = 0; i < g.blacks().size(); ++i)
        for (std::size_t j = 0; j < g.whites().size(); ++j)
            m[i][j] = detail::inverse_entry(g.top(), g.blacks()[i], g.whites()[j]);
    return m;
}

}  // namespace lozenge
