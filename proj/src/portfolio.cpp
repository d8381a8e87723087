#include "mcport/portfolio.hpp"

#include <cmath>
#include <stdexcept>

namespace mcport {

namespace {

void require_same_universe(const std::vector<std::string>& a, const std::vector<std::string>& b,
                           const char* what)
{
    if (a != b)
        throw ShapeError(std::string(what) + ": weights tickers do not match universe");
}

} // namespace

Weights::Weights(std::vector<std::string> tickers, std::vector<double> w)
    : tickers_(std::move(tickers)), w_(std::move(w))
{
    if (tickers_.size() != w_.size())
        throw ShapeError("weights: " + std::to_string(w_.size()) + " values for " +
                         std::to_string(tickers_.size()) + " tickers");
    if (w_.empty())
        throw std::invalid_argument("weights: empty universe");
    double sum = 0.0;
    for (double x : w_) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("weights: negative or non-finite weight");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("weights: sum is " + std::to_string(sum) + ", expected 1");
}

Weights Weights::one_hot(std::vector<std::string> tickers, std::size_t k)
{
    std::vector<double> w(tickers.size(), 0.0);
    w.at(k) = 1.0;
    return Weights(std::move(tickers), std::move(w));
}

Weights Weights::equal(std::vector<std::string> tickers)
{
    std::vector<double> w(tickers.size(), 1.0 / static_cast<double>(tickers.size()));
    return Weights(std::move(tickers), std::move(w));
}

Ratio Ratio::of(double v)
{
    Ratio r;
    if (std::isfinite(v))
        r.v_ = v;
    return r;
}

std::string_view to_string(Objective o)
{
    switch (o) {
    case Objective::sharpe: return "sharpe";
    case Objective::sortino: return "sortino";
    case Objective::calmar: return "calmar";
    }
    return "?";
}

std::optional<Objective> parse_objective(std::string_view s)
{
    for (auto o : kAllObjectives)
        if (to_string(o) == s)
            return o;
    return std::nullopt;
}

Ratio PortfolioMetrics::ratio(Objective o) const
{
    switch (o) {
    case Objective::sharpe: return sharpe;
    case Objective::sortino: return sortino;
    case Objective::calmar: return calmar;
    }
    return Ratio::invalid();
}

void EvalConfig::validate() const
{
    if (!(annualization > 0.0))
        throw std::invalid_argument("annualization factor must be positive");
    if (!(risk_free_rate >= 0.0))
        throw std::invalid_argument("risk-free rate must be >= 0");
}

std::vector<double> portfolio_daily_returns(const AlignedReturnPanel& panel, const Weights& weights)
{
    require_same_universe(weights.tickers(), panel.tickers(), "portfolio returns");
    const std::size_t n = panel.num_assets();
    std::vector<double> out(panel.num_rows());
    for (std::size_t t = 0; t < panel.num_rows(); ++t) {
        auto row = panel.row(t);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += weights[i] * row[i];
        out[t] = s;
    }
    return out;
}

double portfolio_annual_return(std::span<const AssetStats> stats, const Weights& weights)
{
    if (stats.size() != weights.size())
        throw ShapeError("annual return: stats and weights differ in size");
    double r = 0.0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (stats[i].ticker != weights.tickers()[i])
            throw ShapeError("annual return: weights tickers do not match stats");
        r += weights[i] * stats[i].annual_return;
    }
    return r;
}

double portfolio_variance(const CovarianceMatrix& cov, const Weights& weights, double annualization)
{
    require_same_universe(weights.tickers(), cov.tickers(), "portfolio variance");
    const std::size_t n = cov.size();
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            row += cov(i, j) * weights[j];
        q += weights[i] * row;
    }
    double v = annualization * q;
    if (v < -1e-12)
        throw std::domain_error("portfolio variance is negative; covariance input is not PSD");
    return v < 0.0 ? 0.0 : v;
}

Ratio sharpe(double annual_return, double annual_volatility, double risk_free_rate)
{
    if (!(annual_volatility >= kMinRisk))
        return Ratio::invalid();
    return Ratio::of((annual_return - risk_free_rate) / annual_volatility);
}

Ratio sortino(double annual_return, std::optional<double> annual_downside_deviation,
              double risk_free_rate)
{
    if (!annual_downside_deviation || !(*annual_downside_deviation >= kMinRisk))
        return Ratio::invalid();
    return Ratio::of((annual_return - risk_free_rate) / *annual_downside_deviation);
}

Ratio calmar(double annual_return, double max_drawdown)
{
    if (!(max_drawdown >= kMinRisk))
        return Ratio::invalid();
    return Ratio::of(annual_return / max_drawdown);
}

PortfolioMetrics evaluate(const AlignedReturnPanel& panel, const Weights& weights,
                          const CovarianceMatrix& cov, std::span<const AssetStats> stats,
                          const EvalConfig& config)
{
    const auto stream = portfolio_daily_returns(panel, weights);
    const double root_a = std::sqrt(config.annualization);

    PortfolioMetrics m;
    m.annual_return = portfolio_annual_return(stats, weights);
    m.annual_volatility = std::sqrt(portfolio_variance(cov, weights, config.annualization));
    if (auto dd = downside_deviation(stream))
        m.downside_deviation = *dd * root_a;

    std::span<const double> calmar_span = stream;
    double calmar_return = m.annual_return;
    if (config.calmar_window > 0 && config.calmar_window < stream.size()) {
        calmar_span = calmar_span.last(config.calmar_window);
        double s = 0.0;
        for (double r : calmar_span)
            s += r;
        calmar_return = s / static_cast<double>(calmar_span.size()) * config.annualization;
    }
    m.max_drawdown = max_drawdown(wealth_curve(calmar_span)).max_drawdown;

    m.sharpe = sharpe(m.annual_return, m.annual_volatility, config.risk_free_rate);
    m.sortino = sortino(m.annual_return, m.downside_deviation, config.risk_free_rate);
    m.calmar = calmar(calmar_return, m.max_drawdown);
    return m;
}

} // namespace mcport
