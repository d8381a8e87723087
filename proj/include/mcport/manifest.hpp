#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mcport {

struct AssetEntry {
    std::string ticker;
    std::filesystem::path path; ///< resolved against the manifest's directory
    std::optional<double> index_weight;
};

struct UniverseSpec {
    std::string name;
    std::vector<AssetEntry> assets;
};

/// A manifest is JSON holding either one universe
///   {"name": "auto", "assets": [{"ticker": "MSZ", "path": "MSZ.csv", "index_weight": 19.53}, ...]}
/// or a batch {"universes": [ <universe>, ... ]}. Universe names must be
/// unique and usable as directory names. Throws DataError on any problem.
std::vector<UniverseSpec> load_manifest(const std::filesystem::path& path);
std::vector<UniverseSpec> parse_manifest(const std::string& text,
                                         const std::filesystem::path& base_dir);

} // namespace mcport
