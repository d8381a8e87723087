#pragma once

#include "mcport/market_data.hpp"
#include "mcport/metrics.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcport {

/// Long-only allocation: every weight >= 0 and the weights sum to 1
/// (within 1e-9).
class Weights {
public:
    Weights(std::vector<std::string> tickers, std::vector<double> w);

    static Weights one_hot(std::vector<std::string> tickers, std::size_t k);
    static Weights equal(std::vector<std::string> tickers);

    std::size_t size() const { return w_.size(); }
    const std::vector<std::string>& tickers() const { return tickers_; }
    std::span<const double> values() const { return w_; }
    double operator[](std::size_t i) const { return w_[i]; }

    bool operator==(const Weights&) const = default;

private:
    std::vector<std::string> tickers_;
    std::vector<double> w_;
};

/// A risk-adjusted ratio that may be undefined (zero or missing risk).
/// There is deliberately no conversion to double: callers must check
/// valid() and call value(), which throws std::bad_optional_access when
/// the ratio is invalid.
class Ratio {
public:
    static Ratio invalid() { return Ratio{}; }
    static Ratio of(double v);

    bool valid() const { return v_.has_value(); }
    double value() const { return v_.value(); }

    bool operator==(const Ratio&) const = default;

private:
    std::optional<double> v_;
};

enum class Objective { sharpe = 0, sortino = 1, calmar = 2 };
inline constexpr std::array<Objective, 3> kAllObjectives{Objective::sharpe, Objective::sortino,
                                                         Objective::calmar};

std::string_view to_string(Objective o);
std::optional<Objective> parse_objective(std::string_view s);

struct PortfolioMetrics {
    double annual_return = 0.0;
    double annual_volatility = 0.0;
    /// Annualized (daily * sqrt(A)); absent with fewer than two negative days.
    std::optional<double> downside_deviation;
    double max_drawdown = 0.0;
    Ratio sharpe;
    Ratio sortino;
    Ratio calmar;

    Ratio ratio(Objective o) const;

    bool operator==(const PortfolioMetrics&) const = default;
};

struct EvalConfig {
    double annualization = kDefaultAnnualization;
    double risk_free_rate = 0.0; ///< annual, >= 0
    /// Trailing rows used for the Calmar ratio; 0 means the whole window.
    std::size_t calmar_window = 0;

    void validate() const;
};

/// r_p[t] = sum_i w_i * r[t][i]. Throws ShapeError on ticker mismatch.
std::vector<double> portfolio_daily_returns(const AlignedReturnPanel& panel, const Weights& weights);

/// R = sum_i w_i * R_i.
double portfolio_annual_return(std::span<const AssetStats> stats, const Weights& weights);

/// Annualized variance A * w' S w for the daily covariance S. Round-off
/// negatives down to -1e-12 are clamped to 0; anything lower throws.
double portfolio_variance(const CovarianceMatrix& cov, const Weights& weights, double annualization);

/// Ratios below this risk are invalid.
inline constexpr double kMinRisk = 1e-12;

Ratio sharpe(double annual_return, double annual_volatility, double risk_free_rate);
Ratio sortino(double annual_return, std::optional<double> annual_downside_deviation,
              double risk_free_rate);
/// Raw annual return over drawdown; the risk-free rate is not subtracted.
Ratio calmar(double annual_return, double max_drawdown);

/// Full metrics for one weight vector. `stats` and `cov` must come from
/// the same panel.
PortfolioMetrics evaluate(const AlignedReturnPanel& panel, const Weights& weights,
                          const CovarianceMatrix& cov, std::span<const AssetStats> stats,
                          const EvalConfig& config);

} // namespace mcport
