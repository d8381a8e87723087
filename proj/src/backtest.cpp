#include "mcport/backtest.hpp"

namespace mcport {

std::string_view to_string(Window w)
{
    return w == Window::train ? "train" : "test";
}

std::string_view to_string(CumMode m)
{
    return m == CumMode::arithmetic ? "arithmetic" : "compounded";
}

std::optional<CumMode> parse_cum_mode(std::string_view s)
{
    if (s == "arithmetic")
        return CumMode::arithmetic;
    if (s == "compounded")
        return CumMode::compounded;
    return std::nullopt;
}

BacktestReport run_backtest(const AlignedReturnPanel& window_panel, const Weights& weights,
                            CumMode mode, Objective objective, Window window)
{
    const auto stream = portfolio_daily_returns(window_panel, weights);
    if (stream.empty())
        throw DataError("backtest: empty " + std::string(to_string(window)) + " window");

    BacktestReport report{objective, window, mode, 0.0, {}};
    report.curve.reserve(stream.size());
    const auto& dates = window_panel.dates();
    double sum = 0.0;
    double growth = 1.0;
    for (std::size_t t = 0; t < stream.size(); ++t) {
        double v;
        if (mode == CumMode::arithmetic) {
            sum += stream[t];
            v = sum;
        } else {
            growth *= 1.0 + stream[t];
            v = growth - 1.0;
        }
        report.curve.push_back({dates[t], v});
    }
    report.cumulative_return = report.curve.back().value;
    return report;
}

TrainingMaxima training_maxima(const OptimizationResult& training)
{
    TrainingMaxima out;
    for (auto o : kAllObjectives)
        if (auto idx = training.best_for(o))
            out[static_cast<int>(o)] = training.candidates.at(*idx).metrics.ratio(o);
    return out;
}

SummaryRow summarize(std::span<const BacktestReport> reports, const OptimizationResult& training)
{
    return summarize(reports, training_maxima(training));
}

SummaryRow summarize(std::span<const BacktestReport> reports, const TrainingMaxima& training)
{
    SummaryRow row;
    std::array<std::array<const BacktestReport*, 2>, 3> table{};
    for (const auto& r : reports)
        table[static_cast<int>(r.objective)][static_cast<int>(r.window)] = &r;

    std::array<std::optional<double>, 2> best_value;
    for (auto o : kAllObjectives) {
        const int slot = static_cast<int>(o);
        if (!training[slot])
            continue;
        row.max_ratio[slot] = *training[slot];
        for (auto w : {Window::train, Window::test}) {
            const auto* rep = table[slot][static_cast<int>(w)];
            if (!rep)
                throw DataError("summary: missing " + std::string(to_string(w)) + " report for " +
                                std::string(to_string(o)));
            auto& best = best_value[static_cast<int>(w)];
            auto& pick = w == Window::train ? row.best_train : row.best_test;
            if (!best || rep->cumulative_return > *best) {
                best = rep->cumulative_return;
                pick = o;
            }
        }
    }
    return row;
}

} // namespace mcport
