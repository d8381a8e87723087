#pragma once

#include "mcport/backtest.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mcport::report {

/// Table values: four decimals, never "-0.0000".
std::string fixed4(double v);
/// Data values: 17 significant digits, parses back to the same double.
std::string exact(double v);
/// fixed4 of a valid ratio, "NA" otherwise.
std::string ratio_cell(const Ratio& r);

/// What an optimization run chose, in the form later commands reload.
struct Selection {
    std::string universe;
    std::vector<std::string> tickers;
    std::vector<std::string> excluded;
    std::array<std::optional<std::size_t>, 3> best;
    std::array<std::optional<std::size_t>, 3> min_risk;
    std::array<std::optional<Weights>, 3> weights; ///< weights of `best`
    TrainingMaxima max_ratio;
    std::vector<std::string> diagnostics;

    bool operator==(const Selection&) const = default;
};

Selection make_selection(std::string universe, const OptimizationResult& result,
                         std::vector<std::string> tickers, std::vector<std::string> excluded);

std::string selection_json(const Selection& s);
Selection parse_selection_json(const std::string& text);

/// One row per asset, one column per objective, weights to 4 decimals.
std::string weights_csv(const Selection& s);
/// Max ratio, the selected candidate and the min-risk candidate per objective.
std::string ratios_csv(const Selection& s, const std::vector<Candidate>& candidates);

/// Every candidate's weights and metrics at full precision.
std::string candidates_csv(const std::vector<std::string>& tickers,
                           const std::vector<Candidate>& candidates);
std::vector<Candidate> parse_candidates_csv(const std::string& text);

/// Frontier members on the objective's risk axis: index, risk, return.
std::string frontier_csv(const std::vector<Candidate>& candidates,
                         const std::vector<std::size_t>& members, Objective objective);

std::string curve_csv(const BacktestReport& r);
/// Period rows (train, test) by objective columns, 4 decimals.
std::string cumulative_table_csv(const std::vector<BacktestReport>& reports);

using NamedSummary = std::pair<std::string, SummaryRow>;
std::string summary_csv(const std::vector<NamedSummary>& rows);
std::string summary_json(const std::vector<NamedSummary>& rows);

/// Risk/return scatter of every candidate with a defined risk on the
/// objective's axis. The min-risk point is drawn blue, the max-ratio point
/// red; either is omitted when absent.
std::string frontier_svg(const std::vector<Candidate>& candidates, Objective objective,
                         std::optional<std::size_t> best, std::optional<std::size_t> min_risk,
                         const std::vector<std::size_t>& frontier_members,
                         const std::string& title);

} // namespace mcport::report
