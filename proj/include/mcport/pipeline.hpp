#pragma once

#include "mcport/manifest.hpp"
#include "mcport/report.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mcport {

struct RunConfig {
    std::filesystem::path manifest;
    SplitSpec split;
    SearchConfig search;
    CumMode cum_mode = CumMode::arithmetic;
    std::filesystem::path out_dir;

    /// Checks the manifest exists and the split/search settings are valid.
    void validate() const;
};

/// Default windows: train 2017-01-01..2020-12-31, test 2021-01-01..2021-12-31.
SplitSpec default_split();

struct UniverseData {
    std::string name;
    std::vector<std::string> excluded;
    AlignedReturnPanel train;
    AlignedReturnPanel test;
};

/// Loads every asset, drops those whose history starts after the training
/// start, aligns the rest and splits into windows.
UniverseData load_universe(const UniverseSpec& spec, const SplitSpec& split);

struct TrainingRun {
    std::vector<AssetStats> stats;
    CovarianceMatrix cov;
    OptimizationResult result;
};

TrainingRun optimize_window(const AlignedReturnPanel& train, const SearchConfig& config);

/// Train and test reports for every objective the selection has weights for.
std::vector<BacktestReport> backtest_selection(const UniverseData& data, const report::Selection& sel,
                                               CumMode mode);

enum class Command { optimize, backtest, frontier, run };

/// Runs one command over every universe in the manifest and writes its
/// artifacts under config.out_dir/<universe>/ (plus summary files at the top
/// for backtest and run). On any error the files written so far are
/// removed, the error is printed and 1 is returned; otherwise 0.
int execute(Command command, const RunConfig& config);

} // namespace mcport
