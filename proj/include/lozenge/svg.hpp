#pragma once

#include "lozenges.hpp"
#include "polygon.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace lozenge {

namespace detail {

inline std::string fmt_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// lattice (x,n) onto the plane so that triangles become equilateral; SVG y grows downward
struct Canvas {
    double scale = 24.0;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

    std::pair<double, double> map(double x, double n) const
    {
        return {(x + n / 2.0 - x_min) * scale + scale, (y_max - n * std::sqrt(3.0) / 2.0) * scale + scale};
    }

    std::string header() const
    {
        const double w = (x_max - x_min) * scale + 2 * scale;
        const double h = (y_max - y_min) * scale + 2 * scale;
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_num(w) + "\" height=\"" + fmt_num(h) +
               "\" viewBox=\"0 0 " + fmt_num(w) + " " + fmt_num(h) + "\">\n";
    }

    std::string polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill) const
    {
        std::string s = "<polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto [px, py] = map(pts[i].first, pts[i].second);
            s += (i ? " " : "") + fmt_num(px) + "," + fmt_num(py);
        }
        return s + "\" fill=\"" + fill + "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
    }
};

inline Canvas canvas_for(const ParticleArray& arr)
{
    Canvas c;
    const int depth = arr.depth();
    const auto& top = arr.row(depth);
    c.x_min = top.back() + depth / 2.0 - 1.0;
    c.x_max = top.front() + depth / 2.0 + 1.0;
    c.y_min = 0;
    c.y_max = (depth + 1) * std::sqrt(3.0) / 2.0;
    return c;
}

}  // namespace detail

inline std::string render_svg(const ParticleArray& arr)
{
    std::string out;
    if (arr.depth() == 0)
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"0\" height=\"0\"/>\n";
    const detail::Canvas c = detail::canvas_for(arr);
    out += c.header();
    const LozengeTiling tiling = classify_lozenges(arr);
    for (const auto& strip : tiling.strips)
        for (const Lozenge& l : strip) {
            const double x = l.x, n = l.n;
            switch (l.type) {
            case LozengeType::particle:
                out += c.polygon({{x + 0.5, n - 1}, {x + 0.5, n}, {x - 0.5, n + 1}, {x - 0.5, n}}, "#e8c547");
                break;
            case LozengeType::slanted:
                out += c.polygon({{x - 0.5, n - 1}, {x + 0.5, n - 1}, {x + 0.5, n}, {x - 0.5, n}}, "#5b8fd6");
                break;
            case LozengeType::vertical:
                out += c.polygon({{x - 0.5, n}, {x + 0.5, n}, {x + 1.5, n - 1}, {x + 0.5, n - 1}}, "#c95a5a");
                break;
            }
        }
    for (int n = 1; n <= arr.depth(); ++n)
        for (int x : arr.row(n)) {
            const auto [px, py] = c.map(x, n);
            out += "<circle class=\"particle\" cx=\"" + detail::fmt_num(px) + "\" cy=\"" + detail::fmt_num(py) +
                   "\" r=\"" + detail::fmt_num(c.scale * 0.2) + "\" fill=\"#222\"/>\n";
        }
    return out + "</svg>\n";
}

// closed curve given in (chi, eta) coordinates; the polygon outline is drawn underneath
inline std::string render_curve_svg(const ScaledPolygon& sp, const std::vector<std::pair<double, double>>& curve)
{
    detail::Canvas c;
    c.scale = 400.0;
    c.x_min = sp.a.front();
    c.x_max = sp.b.back() + 0.5;
    c.y_max = std::sqrt(3.0) / 2.0;
    std::string out = c.header();
    std::vector<std::pair<double, double>> outline{{sp.a.front() + 1.0, 0.0}, {sp.b.back(), 0.0}};
    for (int i = sp.cluster_count() - 1; i >= 0; --i) {
        outline.push_back({sp.b[i], 1.0 - (sp.b[i] - sp.a[i])});
        if (i > 0) {
            outline.push_back({sp.a[i], 1.0});
            outline.push_back({sp.b[i - 1], 1.0});
        }
    }
    // the outline uses (chi, eta) with lattice-like coordinates x = chi, n = eta
    std::string poly = "<polygon points=\"";
    for (std::size_t i = 0; i < outline.size(); ++i) {
        const auto [px, py] = c.map(outline[i].first, outline[i].second);
        poly += (i ? " " : "") + detail::fmt_num(px) + "," + detail::fmt_num(py);
    }
    out += poly + "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    std::string path = "<path d=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto [px, py] = c.map(curve[i].first, curve[i].second);
        path += (i ? " L " : "M ") + detail::fmt_num(px) + " " + detail::fmt_num(py);
    }
    out += path + " Z\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"1.5\"/>\n";
    return out + "</svg>\n";
}

struct DensityCell {
    double chi = 0;
    double eta = 0;
    double value = 0;  // in [0,1]; negative marks cells outside the polygon
};

inline std::string render_density_svg(const std::vector<DensityCell>& cells, double cell_size)
{
    detail::Canvas c;
    c.scale = 400.0;
    c.x_min = 1e300;
    c.x_max = -1e300;
    for (const auto& cell : cells) {
        c.x_min = std::min(c.x_min, cell.chi + cell.eta / 2.0 - cell_size);
        c.x_max = std::max(c.x_max, cell.chi + cell.eta / 2.0 + cell_size);
    }
    if (cells.empty())
        c.x_min = c.x_max = 0;
    c.y_max = std::sqrt(3.0) / 2.0;
    std::string out = c.header();
    for (const auto& cell : cells) {
        if (cell.value < 0)
            continue;
        const int shade = static_cast<int>(std::lround(255.0 * (1.0 - cell.value)));
        char fill[16];
        std::snprintf(fill, sizeof fill, "#%02x%02xff", shade, shade);
        const double h = cell_size / 2.0;
        const auto [x0, y0] = c.map(cell.chi - h, cell.eta - h);
        const auto [x1, y1] = c.map(cell.chi + h, cell.eta - h);
        const auto [x2, y2] = c.map(cell.chi + h, cell.eta + h);
        const auto [x3, y3] = c.map(cell.chi - h, cell.eta + h);
        out += "<polygon points=\"" + detail::fmt_num(x0) + "," + detail::fmt_num(y0) + " " + detail::fmt_num(x1) +
               "," + detail::fmt_num(y1) + " " + detail::fmt_num(x2) + "," + detail::fmt_num(y2) + " " +
               detail::fmt_num(x3) + "," + detail::fmt_num(y3) + "\" fill=\"" + fill + "\"/>\n";
    }
    return out + "</svg>\n";
}

}  // namespace lozenge
