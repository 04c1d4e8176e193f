#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geodiam/domain.hpp"

namespace fixtures {

inline std::filesystem::path corpus_dir() { return std::filesystem::path(GEODIAM_FIXTURES) / "corpus"; }

inline std::string read(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline geodiam::PolygonalDomain load(const std::string& name) { return geodiam::parse_domain(read(corpus_dir() / name)); }

/// File names listed in the corpus index, in index order.
inline std::vector<std::string> corpus()
{
    std::vector<std::string> out;
    for (const auto& e : nlohmann::json::parse(read(corpus_dir() / "index.json"))) out.push_back(e["file"].get<std::string>());
    return out;
}

inline geodiam::PolygonalDomain unit_square() { return geodiam::PolygonalDomain({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}); }

/// 4x4 square with a thin vertical slot-shaped hole in the middle.
inline geodiam::PolygonalDomain hole_square()
{
    return geodiam::PolygonalDomain({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{1.9, 0.5}, {2.1, 0.5}, {2.1, 3.5}, {1.9, 3.5}}});
}

} // namespace fixtures
