#pragma once

#include "mcport/market_data.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcport {

/// Trading days per year used to annualize daily figures.
inline constexpr double kDefaultAnnualization = 252.0;

struct AssetStats {
    std::string ticker;
    double mean_daily_return = 0.0;
    double daily_volatility = 0.0;
    double annual_return = 0.0;     ///< mean_daily_return * A
    double annual_volatility = 0.0; ///< daily_volatility * sqrt(A)

    bool operator==(const AssetStats&) const = default;
};

/// Mean and sample (n-1) standard deviation of a daily return column,
/// annualized with factor `annualization`.
AssetStats asset_stats(std::string ticker, std::span<const double> returns, double annualization);

/// asset_stats for every panel column, in ticker order.
std::vector<AssetStats> asset_stats(const AlignedReturnPanel& panel, double annualization);

/// Sample covariance of daily returns, n x n row-major.
class CovarianceMatrix {
public:
    CovarianceMatrix(std::vector<std::string> tickers, std::vector<double> values);

    std::size_t size() const { return tickers_.size(); }
    const std::vector<std::string>& tickers() const { return tickers_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
    std::span<const double> values() const { return values_; }

    bool operator==(const CovarianceMatrix&) const = default;

private:
    std::vector<std::string> tickers_;
    std::vector<double> values_;
};

CovarianceMatrix covariance(const AlignedReturnPanel& panel);

/// Sample standard deviation of the strictly negative entries of `returns`.
/// nullopt when fewer than two returns are negative. Throws on empty input.
std::optional<double> downside_deviation(std::span<const double> returns);

/// Compounded wealth starting at 1: w[0] = 1, w[t] = w[t-1] * (1 + r[t-1]).
/// Throws DataError if any return is <= -1.
std::vector<double> wealth_curve(std::span<const double> returns);

struct DrawdownStats {
    double max_drawdown = 0.0; ///< in [0, 1)
    std::size_t peak_index = 0;
    std::size_t trough_index = 0;

    bool operator==(const DrawdownStats&) const = default;
};

/// Largest (peak - w[t]) / peak seen along a running peak, in one pass.
/// A curve that never falls gives 0 with peak = trough = 0.
DrawdownStats max_drawdown(std::span<const double> wealth);

enum class CumMode { arithmetic, compounded };

/// Arithmetic: sum of returns. Compounded: prod(1 + r) - 1.
double cumulative_return(std::span<const double> returns, CumMode mode);

} // namespace mcport
