#include "mcport/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mcport {

namespace {

double mean(std::span<const double> xs)
{
    double s = 0.0;
    for (double x : xs)
        s += x;
    return s / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs, double mu)
{
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

} // namespace

AssetStats asset_stats(std::string ticker, std::span<const double> returns, double annualization)
{
    if (returns.size() < 2)
        throw DataError(ticker + ": need at least 2 returns for statistics");
    if (!(annualization > 0.0))
        throw std::invalid_argument("annualization factor must be positive");
    AssetStats s;
    s.ticker = std::move(ticker);
    s.mean_daily_return = mean(returns);
    s.daily_volatility = sample_std(returns, s.mean_daily_return);
    s.annual_return = s.mean_daily_return * annualization;
    s.annual_volatility = s.daily_volatility * std::sqrt(annualization);
    return s;
}

std::vector<AssetStats> asset_stats(const AlignedReturnPanel& panel, double annualization)
{
    std::vector<AssetStats> out;
    out.reserve(panel.num_assets());
    for (std::size_t i = 0; i < panel.num_assets(); ++i) {
        auto col = panel.column(i);
        out.push_back(asset_stats(panel.tickers()[i], col, annualization));
    }
    return out;
}

CovarianceMatrix::CovarianceMatrix(std::vector<std::string> tickers, std::vector<double> values)
    : tickers_(std::move(tickers)), values_(std::move(values))
{
    if (values_.size() != tickers_.size() * tickers_.size())
        throw ShapeError("covariance matrix: values do not match ticker count");
}

CovarianceMatrix covariance(const AlignedReturnPanel& panel)
{
    const std::size_t n = panel.num_assets();
    const std::size_t rows = panel.num_rows();
    if (rows < 2)
        throw DataError("covariance needs at least 2 rows");

    std::vector<double> mu(n, 0.0);
    for (std::size_t t = 0; t < rows; ++t)
        for (std::size_t i = 0; i < n; ++i)
            mu[i] += panel(t, i);
    for (auto& m : mu)
        m /= static_cast<double>(rows);

    // Upper triangle, mirrored so the result is exactly symmetric.
    std::vector<double> cov(n * n, 0.0);
    std::vector<double> dev(n);
    for (std::size_t t = 0; t < rows; ++t) {
        for (std::size_t i = 0; i < n; ++i)
            dev[i] = panel(t, i) - mu[i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                cov[i * n + j] += dev[i] * dev[j];
    }
    const double denom = static_cast<double>(rows - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cov[i * n + j] /= denom;
            cov[j * n + i] = cov[i * n + j];
        }
    }
    return CovarianceMatrix(panel.tickers(), std::move(cov));
}

std::optional<double> downside_deviation(std::span<const double> returns)
{
    if (returns.empty())
        throw std::invalid_argument("downside deviation of an empty return stream");
    std::vector<double> negatives;
    for (double r : returns)
        if (r < 0.0)
            negatives.push_back(r);
    if (negatives.size() < 2)
        return std::nullopt;
    return sample_std(negatives, mean(negatives));
}

std::vector<double> wealth_curve(std::span<const double> returns)
{
    if (returns.empty())
        throw std::invalid_argument("wealth curve of an empty return stream");
    std::vector<double> w;
    w.reserve(returns.size() + 1);
    w.push_back(1.0);
    for (double r : returns) {
        if (!(r > -1.0))
            throw DataError("return <= -1 wipes out wealth");
        w.push_back(w.back() * (1.0 + r));
    }
    return w;
}

DrawdownStats max_drawdown(std::span<const double> wealth)
{
    DrawdownStats best;
    if (wealth.empty())
        return best;
    std::size_t peak = 0;
    for (std::size_t t = 1; t < wealth.size(); ++t) {
        if (wealth[t] > wealth[peak]) {
            peak = t;
            continue;
        }
        double dd = (wealth[peak] - wealth[t]) / wealth[peak];
        if (dd > best.max_drawdown) {
            best.max_drawdown = dd;
            best.peak_index = peak;
            best.trough_index = t;
        }
    }
    return best;
}

double cumulative_return(std::span<const double> returns, CumMode mode)
{
    if (mode == CumMode::arithmetic) {
        double s = 0.0;
        for (double r : returns)
            s += r;
        return s;
    }
    double g = 1.0;
    for (double r : returns)
        g *= 1.0 + r;
    return g - 1.0;
}

} // namespace mcport
