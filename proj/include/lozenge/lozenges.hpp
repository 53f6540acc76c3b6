#pragma once

#include "polygon.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace lozenge {

// Every lozenge is a white triangle (x,n) glued to one of its black neighbours:
// particle -> black (x,n), slanted -> black (x,n-1), vertical -> black (x+1,n-1).
enum class LozengeType { particle, slanted, vertical };

struct Lozenge {
    LozengeType type = LozengeType::particle;
    int x = 0;
    int n = 0;
    friend bool operator==(const Lozenge&, const Lozenge&) = default;
};

// strips[n-1] holds the lozenges whose white triangle lies between heights n-1 and n
struct LozengeTiling {
    int depth = 0;
    std::vector<std::vector<Lozenge>> strips;

    int count(int n, LozengeType t) const
    {
        return static_cast<int>(std::count_if(strips[n - 1].begin(), strips[n - 1].end(),
                                              [t](const Lozenge& l) { return l.type == t; }));
    }
};

inline LozengeTiling classify_lozenges(const ParticleArray& arr)
{
    LozengeTiling tiling;
    tiling.depth = arr.depth();
    tiling.strips.resize(static_cast<std::size_t>(arr.depth()));
    if (arr.depth() == 0)
        return tiling;
    const int depth = arr.depth();
    const auto& top = arr.row(depth);
    const int left = top.back() + depth;
    const int right = top.front();

    for (int n = 1; n <= depth; ++n) {
        auto& strip = tiling.strips[n - 1];
        const auto& here = arr.row(n);
        std::vector<int> whites, blacks;
        for (int x = left - n; x <= right; ++x)
            if (!std::binary_search(here.rbegin(), here.rend(), x))
                whites.push_back(x);
        for (int y = left - (n - 1); y <= right; ++y)
            if (n == 1 || !std::binary_search(arr.row(n - 1).rbegin(), arr.row(n - 1).rend(), y))
                blacks.push_back(y);
        if (whites.size() != blacks.size())
            throw std::invalid_argument("array does not tile its strip " + std::to_string(n));
        for (std::size_t i = 0; i < whites.size(); ++i) {
            if (blacks[i] == whites[i])
                strip.push_back({LozengeType::slanted, whites[i], n});
            else if (blacks[i] == whites[i] + 1)
                strip.push_back({LozengeType::vertical, whites[i], n});
            else
                throw std::invalid_argument("array does not tile its strip " + std::to_string(n));
        }
        for (auto it = here.rbegin(); it != here.rend(); ++it)
            strip.push_back({LozengeType::particle, *it, n});
        std::sort(strip.begin(), strip.end(), [](const Lozenge& a, const Lozenge& b) { return a.x < b.x; });
    }
    return tiling;
}

}  // namespace lozenge
