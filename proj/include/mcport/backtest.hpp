#pragma once

#include "mcport/optimizer.hpp"

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mcport {

enum class Window { train = 0, test = 1 };
std::string_view to_string(Window w);
std::string_view to_string(CumMode m);
std::optional<CumMode> parse_cum_mode(std::string_view s);

struct CurvePoint {
    Date date;
    double value;

    bool operator==(const CurvePoint&) const = default;
};

struct BacktestReport {
    Objective objective = Objective::sharpe;
    Window window = Window::train;
    CumMode mode = CumMode::arithmetic;
    double cumulative_return = 0.0;
    /// One point per panel date; the last value equals cumulative_return.
    std::vector<CurvePoint> curve;

    bool operator==(const BacktestReport&) const = default;
};

/// Applies fixed weights to every day of `window_panel` and accumulates the
/// portfolio stream (running sum, or running product minus one).
BacktestReport run_backtest(const AlignedReturnPanel& window_panel, const Weights& weights,
                            CumMode mode, Objective objective, Window window);

struct SummaryRow {
    std::optional<Objective> best_train;
    std::optional<Objective> best_test;
    std::array<Ratio, 3> max_ratio; ///< by Objective, from the training run

    bool operator==(const SummaryRow&) const = default;
};

/// Max ratio per objective from a training run; nullopt where the run
/// selected no portfolio for that objective.
using TrainingMaxima = std::array<std::optional<Ratio>, 3>;

TrainingMaxima training_maxima(const OptimizationResult& training);

/// Picks the objective with the highest cumulative return per window (ties
/// go to the earlier objective: sharpe, sortino, calmar) and copies the
/// training maxima. Every objective with a training selection must have
/// both a train and a test report; objectives without one are left out.
/// Throws DataError on a missing report.
SummaryRow summarize(std::span<const BacktestReport> reports, const TrainingMaxima& training);
SummaryRow summarize(std::span<const BacktestReport> reports, const OptimizationResult& training);

} // namespace mcport
