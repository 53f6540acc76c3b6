#pragma once

#include "count.hpp"
#include "polygon.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace lozenge {

namespace detail {

inline nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace detail

inline Polygon polygon_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("clusters") || !j["clusters"].is_array())
        throw InvalidPolygon("expected {\"clusters\": [[s,e], ...]}");
    std::vector<Cluster> clusters;
    for (const auto& c : j["clusters"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
            throw InvalidPolygon("each cluster must be a pair of integers");
        clusters.push_back({c[0].get<int>(), c[1].get<int>()});
    }
    return Polygon(std::move(clusters));
}

inline nlohmann::json polygon_to_json(const Polygon& p)
{
    nlohmann::json cl = nlohmann::json::array();
    for (const auto& c : p.clusters())
        cl.push_back({c.s, c.e});
    return {{"clusters", cl}};
}

inline ScaledPolygon scaled_polygon_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("a") || !j.contains("b"))
        throw InvalidPolygon("expected {\"a\": [...], \"b\": [...]}");
    try {
        return ScaledPolygon(j["a"].get<std::vector<double>>(), j["b"].get<std::vector<double>>());
    } catch (const nlohmann::json::exception&) {
        throw InvalidPolygon("scaled polygon endpoints must be numbers");
    }
}

inline Polygon read_polygon(const std::string& path)
{
    return polygon_from_json(detail::read_json(path));
}

inline ScaledPolygon read_scaled_polygon(const std::string& path)
{
    return scaled_polygon_from_json(detail::read_json(path));
}

// whitespace separated "x n" pairs, one site per line; '#' starts a comment
inline std::vector<Site> read_sites(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::vector<Site> sites;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        Site s;
        if (!(ls >> s.x))
            continue;
        if (!(ls >> s.n))
            throw std::runtime_error(path + ": malformed site line '" + line + "'");
        sites.push_back(s);
    }
    return sites;
}

// the shipped small suite: every *.json polygon in a directory, sorted by file name
inline std::vector<std::pair<std::string, Polygon>> read_polygon_dir(const std::string& dir)
{
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".json")
            names.push_back(entry.path().string());
    std::sort(names.begin(), names.end());
    std::vector<std::pair<std::string, Polygon>> out;
    for (const auto& n : names)
        out.emplace_back(std::filesystem::path(n).stem().string(), read_polygon(n));
    return out;
}

}  // namespace lozenge
