// frozen boundary of a limit shape with its tangency points
#include <lozenge/lozenge.hpp>

#include <cstdio>
#include <fstream>

using namespace lozenge;

int main(int argc, char** argv)
{
    const ScaledPolygon sp({0.0, 0.5, 1.0}, {0.3, 0.7, 1.5});
    const char* out = argc > 1 ? argv[1] : "frozen.svg";
    const char* names[] = {"S", "V", "H"};
    const TangentReport r = classify_tangents(sp);
    for (const auto& t : r.points)
        std::printf("%s  w=%9.5f  (chi, eta) = (%.5f, %.5f)\n", names[static_cast<int>(t.type)], t.w_c, t.chi, t.eta);
    for (double w : r.turning_points) {
        const BoundarySample b = frozen_boundary(w, sp);
        std::printf("turning point  w=%9.5f  (chi, eta) = (%.5f, %.5f)\n", w, b.chi, b.eta);
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : frozen_curve(sp))
        pts.push_back({s.chi, s.eta});
    std::ofstream(out) << render_curve_svg(sp, pts);
    std::printf("%zu curve points -> %s\n", pts.size(), out);
}
