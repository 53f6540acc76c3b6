// tilings of the a x b x c hexagon, by formula and (for small sizes) by enumeration
#include <lozenge/lozenge.hpp>

#include <cstdio>
#include <cstdlib>

using namespace lozenge;

int main(int argc, char** argv)
{
    const int a = argc > 1 ? std::atoi(argv[1]) : 2;
    const int b = argc > 2 ? std::atoi(argv[2]) : 2;
    const int c = argc > 3 ? std::atoi(argv[3]) : 2;
    if (a < 1 || b < 1 || c < 1) {
        std::fprintf(stderr, "usage: demo_count_hexagon [a b c]\n");
        return 2;
    }
    // top row: a particles, a gap of c holes, then b particles
    const Polygon p({{0, a}, {a + c, a + c + b}});
    const Signature nu = top_row(p).signature;
    std::printf("hexagon %d x %d x %d, depth %d\n", a, b, c, p.depth());
    std::printf("tilings        %s\n", to_string(count_uniform(nu)).c_str());
    std::printf("q=1/2 weight   %s\n", to_string(count_q(nu, Rational(1, 2))).c_str());
    if (p.depth() <= 6)
        std::printf("enumerated     %zu\n", enumerate_schemes(nu).size());
}
