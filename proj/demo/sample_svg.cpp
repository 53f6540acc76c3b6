// one uniformly random tiling of a three-cluster polygon, written as SVG
#include <lozenge/lozenge.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>

using namespace lozenge;

int main(int argc, char** argv)
{
    const char* out = argc > 1 ? argv[1] : "tiling.svg";
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    const Polygon p({{0, 8}, {12, 20}, {26, 30}});
    const ParticleArray arr = sample_uniform(top_row(p).signature, seed);
    const LozengeTiling t = classify_lozenges(arr);
    int counts[3] = {0, 0, 0};
    for (const auto& strip : t.strips)
        for (const auto& l : strip)
            ++counts[static_cast<int>(l.type)];
    std::ofstream(out) << render_svg(arr);
    std::printf("depth %d, seed %llu: %d particle, %d slanted, %d vertical lozenges -> %s\n", p.depth(),
                static_cast<unsigned long long>(seed), counts[0], counts[1], counts[2], out);
}
