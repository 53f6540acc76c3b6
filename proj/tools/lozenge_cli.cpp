#include <lozenge/lozenge.hpp>
#include <lozenge/verify.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace lozenge;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string polygon;
    std::string limit_shape;
    std::string out;
    std::string mode = "exact";
    std::string at;
    std::string points;
    std::string q;
    std::string suite = "small";
    std::uint64_t seed = 0;
    int samples = 1;
    int grid = 0;
    int depth = 0;
    double wc = 0;
    long long budget = default_budget;
};

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string extension_of(const std::string& path)
{
    return fs::path(path).extension().string();
}

void require_extension(const std::string& path, std::initializer_list<const char*> allowed)
{
    if (path.empty())
        return;
    const std::string ext = extension_of(path);
    for (const char* a : allowed)
        if (ext == a)
            return;
    throw UsageError("unsupported output extension '" + ext + "' for this subcommand");
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << text;
}

Polygon need_polygon(const RunConfig& c)
{
    if (c.polygon.empty())
        throw UsageError("--polygon is required");
    if (!c.limit_shape.empty())
        throw UsageError("give exactly one of --polygon and --limit-shape");
    return read_polygon(c.polygon);
}

ScaledPolygon need_shape(const RunConfig& c)
{
    if (c.polygon.empty() == c.limit_shape.empty())
        throw UsageError("give exactly one of --polygon and --limit-shape");
    return c.polygon.empty() ? read_scaled_polygon(c.limit_shape) : scale(read_polygon(c.polygon));
}

bool exact_mode(const RunConfig& c)
{
    if (c.mode != "exact" && c.mode != "float")
        throw UsageError("--mode must be exact or float");
    return c.mode == "exact";
}

std::optional<Rational> parse_q(const RunConfig& c)
{
    if (c.q.empty())
        return std::nullopt;
    try {
        return parse_rational(c.q);
    } catch (const std::exception&) {
        throw UsageError("--q must be a rational such as 1/2");
    }
}

std::vector<int> parse_ints(const std::string& text, std::size_t expected, const char* flag)
{
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + " expects comma separated integers");
        }
    }
    if (v.size() != expected)
        throw UsageError(std::string(flag) + " expects " + std::to_string(expected) + " integers");
    return v;
}

std::string scalar_json(const char* key, const std::string& value)
{
    return nlohmann::json{{key, value}}.dump() + "\n";
}

int run_count(const RunConfig& c)
{
    require_extension(c.out, {".json"});
    const Polygon p = need_polygon(c);
    const Signature nu = top_row(p).signature;
    const auto q = parse_q(c);
    emit(c.out, scalar_json("count", q ? to_string(count_q(nu, *q)) : to_string(count_uniform(nu))));
    return 0;
}

int run_kernel(const RunConfig& c)
{
    require_extension(c.out, {".json"});
    const Polygon p = need_polygon(c);
    if (c.at.empty())
        throw UsageError("--at x1,n1,x2,n2 is required");
    const auto v = parse_ints(c.at, 4, "--at");
    const Signature nu = top_row(p).signature;
    const auto q = parse_q(c);
    const KernelPoint a{v[0], v[1]}, b{v[2], v[3]};
    std::string value;
    if (exact_mode(c))
        value = to_string(q ? kernel_q<Rational>(nu, *q, a, b) : kernel<Rational>(nu, a, b));
    else
        value = num(q ? kernel_q<double>(nu, to_double(*q), a, b) : kernel<double>(nu, a, b));
    emit(c.out, c.out.empty() ? value + "\n" : scalar_json("kernel", value));
    return 0;
}

int run_correlation(const RunConfig& c)
{
    require_extension(c.out, {".json"});
    const Polygon p = need_polygon(c);
    if (c.points.empty())
        throw UsageError("--points FILE is required");
    const auto pts = read_sites(c.points);
    const Signature nu = top_row(p).signature;
    const auto q = parse_q(c);
    std::string value;
    if (exact_mode(c))
        value = to_string(q ? correlation_q<Rational>(nu, *q, pts) : correlation<Rational>(nu, pts));
    else
        value = num(q ? correlation_q<double>(nu, to_double(*q), pts) : correlation<double>(nu, pts));
    emit(c.out, c.out.empty() ? value + "\n" : scalar_json("correlation", value));
    return 0;
}

int run_sample(const RunConfig& c)
{
    require_extension(c.out, {".csv", ".svg"});
    const Polygon p = need_polygon(c);
    if (c.samples < 1)
        throw UsageError("--n must be positive");
    const Signature nu = top_row(p).signature;
    const bool exact = exact_mode(c);
    const auto q = parse_q(c);
    std::vector<ParticleArray> arrays;
    for (int i = 0; i < c.samples; ++i) {
        const std::uint64_t s = stream_seed(c.seed, static_cast<std::uint64_t>(i));
        if (q)
            arrays.push_back(exact ? sample_qvol_exact(nu, *q, s) : sample_qvol(nu, to_double(*q), s));
        else
            arrays.push_back(exact ? sample_uniform_exact(nu, s) : sample_uniform(nu, s));
    }
    if (!c.out.empty() && extension_of(c.out) == ".svg") {
        if (arrays.size() == 1) {
            emit(c.out, render_svg(arrays[0]));
            return 0;
        }
        const fs::path base(c.out);
        for (std::size_t i = 0; i < arrays.size(); ++i) {
            fs::path one = base;
            one.replace_filename(base.stem().string() + "-" + std::to_string(i) + ".svg");
            emit(one.string(), render_svg(arrays[i]));
        }
        return 0;
    }
    std::string csv = "sample_id,m,j,x\n";
    for (std::size_t i = 0; i < arrays.size(); ++i)
        for (int m = 1; m <= arrays[i].depth(); ++m)
            for (int j = 1; j <= m; ++j)
                csv += std::to_string(i) + "," + std::to_string(m) + "," + std::to_string(j) + "," +
                       std::to_string(arrays[i].row(m)[j - 1]) + "\n";
    emit(c.out, csv);
    return 0;
}

int run_frozen(const RunConfig& c)
{
    require_extension(c.out, {".csv", ".svg"});
    const ScaledPolygon sp = need_shape(c);
    const auto curve = frozen_curve(sp, c.grid > 0 ? c.grid : 50);
    if (!c.out.empty() && extension_of(c.out) == ".svg") {
        std::vector<std::pair<double, double>> pts;
        for (const auto& b : curve)
            pts.push_back({b.chi, b.eta});
        emit(c.out, render_curve_svg(sp, pts));
        return 0;
    }
    std::string csv = "wc,chi,eta,Omega,T,S3\n";
    for (const auto& b : curve)
        csv += num(b.w_c) + "," + num(b.chi) + "," + num(b.eta) + "," + num(b.omega) + "," + num(b.tangent) + "," +
               num(b.s3) + "\n";
    emit(c.out, csv);
    return 0;
}

int run_density(const RunConfig& c)
{
    require_extension(c.out, {".csv", ".svg", ".json"});
    const ScaledPolygon sp = need_shape(c);
    const int g = c.grid > 0 ? c.grid : 40;
    const double left = sp.a.front(), right = sp.b.back();
    const double cell = (right - left) / g;
    std::vector<DensityCell> cells;
    std::string csv = "chi,eta,liquid,Omega_re,Omega_im,p_particle\n";
    nlohmann::json rows = nlohmann::json::array();
    for (int j = 0; j < g; ++j)
        for (int i = 0; i < g; ++i) {
            const double chi = left + (i + 0.5) * cell, eta = (j + 0.5) / g;
            if (!sp.contains(chi, eta))
                continue;
            const auto lp = liquid(chi, eta, sp);
            cells.push_back({chi, eta, lp ? lp->densities.particle : -1.0});
            if (lp) {
                csv += num(chi) + "," + num(eta) + ",1," + num(lp->omega.real()) + "," + num(lp->omega.imag()) + "," +
                       num(lp->densities.particle) + "\n";
                rows.push_back({{"chi", chi},
                                {"eta", eta},
                                {"liquid", true},
                                {"Omega_re", lp->omega.real()},
                                {"Omega_im", lp->omega.imag()},
                                {"p_particle", lp->densities.particle}});
            } else {
                csv += num(chi) + "," + num(eta) + ",0,,,\n";
                rows.push_back({{"chi", chi}, {"eta", eta}, {"liquid", false}});
            }
        }
    const std::string ext = c.out.empty() ? ".csv" : extension_of(c.out);
    if (ext == ".svg")
        emit(c.out, render_density_svg(cells, 1.0 / g));
    else if (ext == ".json")
        emit(c.out, rows.dump(1) + "\n");
    else
        emit(c.out, csv);
    return 0;
}

std::vector<std::pair<double, double>> read_pairs(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::vector<std::pair<double, double>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a))
            continue;
        if (!(ls >> b))
            throw std::runtime_error(path + ": malformed line '" + line + "'");
        out.push_back({a, b});
    }
    return out;
}

int run_edge(const RunConfig& c)
{
    require_extension(c.out, {".csv"});
    const ScaledPolygon shape = need_shape(c);
    if (c.depth < 2)
        throw UsageError("--N must be at least 2");
    const Polygon p = lattice_polygon(shape, c.depth);
    const auto pts = c.points.empty() ? std::vector<std::pair<double, double>>{{0, 0}, {0, 1}, {0, -1}}
                                      : read_pairs(c.points);
    const EdgeFrame f = edge_frame(c.wc, scale(p), c.depth, pts);
    const auto k = scaled_edge_kernel(p, f);
    std::string csv = "tau,sigma,K_scaled,Airy,abs_err\n";
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const auto& e = f.points[i];
        const double a = extended_airy(e.tau_effective, e.sigma_effective, e.tau_effective, e.sigma_effective);
        csv += num(e.tau) + "," + num(e.sigma) + "," + num(k[i][i]) + "," + num(a) + "," + num(std::abs(k[i][i] - a)) +
               "\n";
    }
    emit(c.out, csv);
    return 0;
}

int run_verify(const RunConfig& c)
{
    std::vector<CheckResult> results;
    if (c.suite == "small") {
        const std::string where = c.polygon.empty() ? std::string(LOZENGE_DATA_DIR) + "/small" : c.polygon;
        std::vector<std::pair<std::string, Polygon>> polygons;
        if (fs::is_directory(where))
            polygons = read_polygon_dir(where);
        else
            polygons.emplace_back(fs::path(where).stem().string(), read_polygon(where));
        results = small_suite(polygons, c.budget);
    } else if (c.suite == "asymptotic") {
        results = asymptotic_suite();
    } else {
        throw UsageError("--suite must be small or asymptotic");
    }
    int failed = 0;
    std::string report;
    for (const auto& r : results) {
        report += std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
        failed += !r.passed;
    }
    report += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " checks passed\n";
    emit(c.out, report);
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Lozenge tilings of polygons: counts, kernels, samples and limit shapes"};
    app.require_subcommand(1);
    RunConfig c;

    auto geometry = [&](CLI::App* s) {
        s->add_option("--polygon", c.polygon, "polygon JSON {\"clusters\": [[s,e],...]}");
        s->add_option("--out", c.out, "output path; format from the extension");
    };
    auto shape = [&](CLI::App* s) {
        geometry(s);
        s->add_option("--limit-shape", c.limit_shape, "scaled polygon JSON {\"a\": [...], \"b\": [...]}");
        s->add_option("--grid", c.grid, "grid resolution");
    };

    auto* count = app.add_subcommand("count", "number of tilings");
    geometry(count);
    count->add_option("--q", c.q, "q for the q^-vol partition function");

    auto* kern = app.add_subcommand("kernel", "correlation kernel K(x1,n1;x2,n2)");
    geometry(kern);
    kern->add_option("--at", c.at, "x1,n1,x2,n2");
    kern->add_option("--mode", c.mode, "exact or float");
    kern->add_option("--q", c.q, "q for the q^-vol kernel");

    auto* corr = app.add_subcommand("correlation", "probability that all listed sites are occupied");
    geometry(corr);
    corr->add_option("--points", c.points, "file of \"x n\" lines");
    corr->add_option("--mode", c.mode, "exact or float");
    corr->add_option("--q", c.q, "q for the q^-vol measure");

    auto* sample = app.add_subcommand("sample", "exact random tilings");
    geometry(sample);
    sample->add_option("--n", c.samples, "number of samples");
    sample->add_option("--seed", c.seed, "master seed");
    sample->add_option("--mode", c.mode, "exact or float");
    sample->add_option("--q", c.q, "q for q^-vol sampling");

    auto* frozen = app.add_subcommand("frozen", "frozen boundary curve");
    shape(frozen);

    auto* density = app.add_subcommand("density", "complex slope and particle density on a grid");
    shape(density);

    auto* edge = app.add_subcommand("edge", "rescaled kernel against the extended Airy kernel");
    shape(edge);
    edge->add_option("--wc", c.wc, "boundary parameter")->required();
    edge->add_option("--N", c.depth, "polygon depth")->required();
    edge->add_option("--points", c.points, "file of \"tau sigma\" lines");

    auto* verify = app.add_subcommand("verify", "built-in checks");
    verify->add_option("--suite", c.suite, "small or asymptotic");
    verify->add_option("--polygon", c.polygon, "polygon file or directory for the small suite");
    verify->add_option("--out", c.out, "report path");
    verify->add_option("--budget", c.budget, "largest number of tilings to enumerate per polygon");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*count)
            return run_count(c);
        if (*kern)
            return run_kernel(c);
        if (*corr)
            return run_correlation(c);
        if (*sample)
            return run_sample(c);
        if (*frozen)
            return run_frozen(c);
        if (*density)
            return run_density(c);
        if (*edge)
            return run_edge(c);
        if (*verify)
            return run_verify(c);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
