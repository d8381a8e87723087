#include "mcport/manifest.hpp"

#include "mcport/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace mcport {

namespace {

using nlohmann::json;

UniverseSpec parse_universe(const json& j, const std::filesystem::path& base_dir)
{
    UniverseSpec u;
    u.name = j.value("name", std::string("universe"));
    if (u.name.empty() || u.name.find_first_of("/\\") != std::string::npos || u.name[0] == '.')
        throw DataError("manifest: invalid universe name '" + u.name + "'");
    if (!j.contains("assets") || !j["assets"].is_array())
        throw DataError("manifest: universe '" + u.name + "' has no 'assets' array");

    std::set<std::string> seen;
    for (const auto& a : j["assets"]) {
        AssetEntry e;
        e.ticker = a.at("ticker").get<std::string>();
        e.path = a.at("path").get<std::string>();
        if (e.path.is_relative())
            e.path = base_dir / e.path;
        if (a.contains("index_weight") && !a["index_weight"].is_null())
            e.index_weight = a["index_weight"].get<double>();
        if (e.ticker.empty() || !seen.insert(e.ticker).second)
            throw DataError("manifest: empty or duplicate ticker '" + e.ticker + "' in '" + u.name + "'");
        u.assets.push_back(std::move(e));
    }
    return u;
}

} // namespace

std::vector<UniverseSpec> parse_manifest(const std::string& text,
                                         const std::filesystem::path& base_dir)
{
    try {
        json j = json::parse(text);
        std::vector<UniverseSpec> out;
        if (j.contains("universes")) {
            for (const auto& u : j.at("universes"))
                out.push_back(parse_universe(u, base_dir));
        } else {
            out.push_back(parse_universe(j, base_dir));
        }
        if (out.empty())
            throw DataError("manifest: no universes");
        std::set<std::string> names;
        for (const auto& u : out)
            if (!names.insert(u.name).second)
                throw DataError("manifest: duplicate universe name '" + u.name + "'");
        return out;
    } catch (const json::exception& e) {
        throw DataError(std::string("manifest: ") + e.what());
    }
}

std::vector<UniverseSpec> load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError(path.string() + ": cannot open manifest");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_manifest(ss.str(), path.parent_path());
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace mcport
