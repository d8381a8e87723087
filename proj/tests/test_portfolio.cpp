#include <catch_amalgamated.hpp>

#include "mcport/portfolio.hpp"
#include "test_support.hpp"

#include <type_traits>

using namespace mcport;
using namespace mcport::testing;
using Catch::Matchers::WithinAbs;

namespace {

// The quadratic form written out as diagonal plus twice the upper pairs,
// using annual variances s_i^2 = A * cov(i, i).
double pairwise_variance(const CovarianceMatrix& c, const Weights& w, double a)
{
    double v = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        v += w[i] * w[i] * (a * c(i, i));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            v += 2.0 * w[i] * w[j] * (a * c(i, j));
    return v;
}

Weights random_weights(std::mt19937_64& rng, const std::vector<std::string>& tickers)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(tickers.size());
    double s = 0;
    for (auto& x : w)
        s += (x = u(rng));
    for (auto& x : w)
        x /= s;
    return Weights(tickers, w);
}

template <class T>
concept Addable = requires(T a, T b) { a + b; };
template <class T>
concept ComparableToDouble = requires(T a) { a < 1.0; };

} // namespace

TEST_CASE("Weights enforce the simplex", "[portfolio]")
{
    CHECK_NOTHROW(Weights({"A", "B"}, {0.25, 0.75}));
    CHECK_THROWS(Weights({"A", "B"}, {-0.1, 1.1}));
    CHECK_THROWS(Weights({"A", "B"}, {0.5, 0.6}));
    CHECK_THROWS_AS(Weights({"A", "B", "C"}, {0.5, 0.5}), ShapeError);
    auto eq = Weights::equal({"A", "B", "C", "D"});
    CHECK(eq[2] == 0.25);
    auto oh = Weights::one_hot({"A", "B", "C"}, 1);
    CHECK(oh[0] == 0.0);
    CHECK(oh[1] == 1.0);
}

TEST_CASE("Ratio cannot be used as a number without checking", "[portfolio]")
{
    static_assert(!std::is_convertible_v<Ratio, double>);
    static_assert(!Addable<Ratio>);
    static_assert(!ComparableToDouble<Ratio>);
    Ratio bad = Ratio::invalid();
    CHECK_FALSE(bad.valid());
    CHECK_THROWS_AS(bad.value(), std::bad_optional_access);
    CHECK_FALSE(Ratio::of(std::numeric_limits<double>::infinity()).valid());
    CHECK_FALSE(Ratio::of(std::nan("")).valid());
    CHECK(Ratio::of(0.5).value() == 0.5);
}

TEST_CASE("portfolio_daily_returns is the weighted row sum", "[portfolio]")
{
    std::mt19937_64 rng(43);
    auto panel = random_panel(rng, 3, 50);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(portfolio_daily_returns(panel, Weights::one_hot(panel.tickers(), k)) == panel.column(k));

    AlignedReturnPanel one_day({"A", "B"}, {day(1), day(2)}, {0.02, 0.04, 0.0, 0.0});
    auto s = portfolio_daily_returns(one_day, Weights::equal({"A", "B"}));
    CHECK_THAT(s[0], WithinAbs(0.03, 1e-15));

    auto w = random_weights(rng, panel.tickers());
    auto stream = portfolio_daily_returns(panel, w);
    for (std::size_t t = 0; t < panel.num_rows(); ++t) {
        double dot = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            dot += w[i] * panel(t, i);
        REQUIRE_THAT(stream[t], WithinAbs(dot, 1e-15));
    }

    CHECK_THROWS_AS(portfolio_daily_returns(panel, Weights::equal({"X", "Y", "Z"})), ShapeError);
}

TEST_CASE("portfolio_annual_return is the weighted mean of asset returns", "[portfolio]")
{
    std::vector<AssetStats> stats{{"A", 0, 0, 0.10, 0.2}, {"B", 0, 0, 0.20, 0.3}};
    CHECK(portfolio_annual_return(stats, Weights::one_hot({"A", "B"}, 1)) == 0.20);
    CHECK_THAT(portfolio_annual_return(stats, Weights::equal({"A", "B"})), WithinAbs(0.15, 1e-15));

    std::vector<AssetStats> four{{"A", 0, 0, 0.1, 0}, {"B", 0, 0, -0.2, 0}, {"C", 0, 0, 0.3, 0}, {"D", 0, 0, 0.05, 0}};
    CHECK_THAT(portfolio_annual_return(four, Weights::equal({"A", "B", "C", "D"})), WithinAbs(0.0625, 1e-15));
    CHECK_THROWS_AS(portfolio_annual_return(stats, Weights::equal({"B", "A"})), ShapeError);
}

TEST_CASE("portfolio_variance is the annualized quadratic form", "[portfolio]")
{
    std::mt19937_64 rng(47);
    auto panel = random_panel(rng, 3, 80);
    auto cov = covariance(panel);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK_THAT(portfolio_variance(cov, Weights::one_hot(panel.tickers(), k), 252), WithinAbs(252 * cov(k, k), 1e-15));

    AlignedReturnPanel anti({"A", "B"}, {day(1), day(2), day(3), day(4)}, {0.01, -0.01, -0.02, 0.02, 0.015, -0.015, -0.005, 0.005});
    CHECK_THAT(portfolio_variance(covariance(anti), Weights::equal({"A", "B"}), 252), WithinAbs(0.0, 1e-15));

    auto w = random_weights(rng, panel.tickers());
    CHECK_THAT(portfolio_variance(cov, w, 252), WithinAbs(pairwise_variance(cov, w, 252), 1e-12));

    CovarianceMatrix broken({"A", "B"}, {0.01, -0.02, -0.02, 0.01});
    CHECK_THROWS_AS(portfolio_variance(broken, Weights::equal({"A", "B"}), 252), std::domain_error);
}

TEST_CASE("variance is nonnegative and matches the pairwise form on random fixtures", "[portfolio][property]")
{
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
        auto panel = random_panel(rng, n, 10 + static_cast<std::size_t>(trial % 50));
        auto cov = covariance(panel);
        auto w = random_weights(rng, panel.tickers());
        double v = portfolio_variance(cov, w, 252);
        REQUIRE(v >= -1e-12);
        REQUIRE_THAT(v, WithinAbs(pairwise_variance(cov, w, 252), 1e-12));
    }
}

TEST_CASE("ratio formulas", "[portfolio]")
{
    CHECK_THAT(sharpe(0.10, 0.20, 0.0).value(), WithinAbs(0.5, 1e-15));
    CHECK_FALSE(sharpe(0.10, 0.0, 0.0).valid());
    CHECK_THAT(sharpe(0.12, 0.15, 0.04).value(), WithinAbs(0.5333333333333333, 1e-12));

    CHECK_THAT(sortino(0.10, 0.05, 0.0).value(), WithinAbs(2.0, 1e-15));
    CHECK_FALSE(sortino(0.10, std::nullopt, 0.0).valid());
    CHECK_FALSE(sortino(0.10, 0.0, 0.0).valid());
    CHECK_THAT(sortino(0.20, 0.16, 0.02).value(), WithinAbs(1.125, 1e-12));

    CHECK_THAT(calmar(0.10, 0.25).value(), WithinAbs(0.4, 1e-15));
    CHECK_FALSE(calmar(0.10, 0.0).valid());
    CHECK_THAT(calmar(0.30, 0.12).value(), WithinAbs(2.5, 1e-12));
}

TEST_CASE("sharpe is monotone in return and volatility", "[portfolio][property]")
{
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> r(-0.5, 0.5), v(0.01, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        double vol = v(rng), a = r(rng), b = r(rng);
        if (a == b)
            continue;
        if (a > b)
            std::swap(a, b);
        REQUIRE(sharpe(a, vol, 0.0).value() < sharpe(b, vol, 0.0).value());

        double ret = std::abs(a) + 0.01, v1 = v(rng), v2 = v(rng);
        if (v1 == v2)
            continue;
        if (v1 > v2)
            std::swap(v1, v2);
        REQUIRE(sharpe(ret, v1, 0.0).value() > sharpe(ret, v2, 0.0).value());
    }
}

TEST_CASE("evaluate on one-hot weights reproduces the asset", "[portfolio]")
{
    std::mt19937_64 rng(61);
    auto panel = random_panel(rng, 4, 120);
    auto stats = asset_stats(panel, 252);
    auto cov = covariance(panel);
    EvalConfig cfg;
    for (std::size_t k = 0; k < 4; ++k) {
        auto m = evaluate(panel, Weights::one_hot(panel.tickers(), k), cov, stats, cfg);
        CHECK_THAT(m.annual_return, WithinAbs(stats[k].annual_return, 1e-12));
        CHECK_THAT(m.annual_volatility, WithinAbs(stats[k].annual_volatility, 1e-12));
        auto col = panel.column(k);
        CHECK(m.max_drawdown == max_drawdown(wealth_curve(col)).max_drawdown);
        CHECK(m.downside_deviation == *downside_deviation(col) * std::sqrt(252.0));
    }
}

TEST_CASE("evaluate matches recomputation from the weighted stream", "[portfolio]")
{
    std::mt19937_64 rng(67);
    auto panel = random_panel(rng, 2, 200);
    auto stats = asset_stats(panel, 252);
    auto cov = covariance(panel);
    EvalConfig cfg;
    cfg.risk_free_rate = 0.01;
    auto w = Weights::equal(panel.tickers());
    auto m = evaluate(panel, w, cov, stats, cfg);

    // Independent route: statistics of the raw weighted stream.
    std::vector<double> stream;
    for (std::size_t t = 0; t < panel.num_rows(); ++t)
        stream.push_back(0.5 * panel(t, 0) + 0.5 * panel(t, 1));
    double mean = 0;
    for (double x : stream)
        mean += x;
    mean /= static_cast<double>(stream.size());
    double ss = 0;
    for (double x : stream)
        ss += (x - mean) * (x - mean);
    double vol = std::sqrt(ss / static_cast<double>(stream.size() - 1)) * std::sqrt(252.0);
    std::vector<double> neg;
    for (double x : stream)
        if (x < 0)
            neg.push_back(x);
    double nm = 0;
    for (double x : neg)
        nm += x;
    nm /= static_cast<double>(neg.size());
    double nss = 0;
    for (double x : neg)
        nss += (x - nm) * (x - nm);
    double dd = std::sqrt(nss / static_cast<double>(neg.size() - 1)) * std::sqrt(252.0);
    double wealth = 1, peak = 1, mdd = 0;
    for (double x : stream) {
        wealth *= 1 + x;
        peak = std::max(peak, wealth);
        mdd = std::max(mdd, (peak - wealth) / peak);
    }

    CHECK_THAT(m.annual_return, WithinAbs(mean * 252, 1e-12));
    CHECK_THAT(m.annual_volatility, WithinAbs(vol, 1e-12));
    CHECK_THAT(*m.downside_deviation, WithinAbs(dd, 1e-12));
    CHECK_THAT(m.max_drawdown, WithinAbs(mdd, 1e-12));
    CHECK_THAT(m.sharpe.value(), WithinAbs((mean * 252 - 0.01) / vol, 1e-9));
    CHECK_THAT(m.sortino.value(), WithinAbs((mean * 252 - 0.01) / dd, 1e-9));
    CHECK_THAT(m.calmar.value(), WithinAbs(mean * 252 / mdd, 1e-9));
}

TEST_CASE("evaluate flags degenerate ratios as invalid", "[portfolio]")
{
    std::vector<Date> dates;
    std::vector<double> r;
    for (int t = 0; t < 30; ++t) {
        dates.push_back(day(t));
        r.push_back(0.001);
        r.push_back(0.001);
    }
    AlignedReturnPanel flat({"A", "B"}, dates, r);
    auto stats = asset_stats(flat, 252);
    auto m = evaluate(flat, Weights({"A", "B"}, {0.3, 0.7}), covariance(flat), stats, EvalConfig{});
    CHECK_FALSE(m.sharpe.valid());
    CHECK_FALSE(m.calmar.valid());
    CHECK_FALSE(m.sortino.valid());
    CHECK_THAT(m.annual_return, WithinAbs(252 * 0.001, 1e-12));
}

TEST_CASE("calmar window restricts to the trailing rows", "[portfolio]")
{
    // Crash early, steady gains late: the trailing window sees no drawdown.
    std::vector<Date> dates;
    std::vector<double> r;
    for (int t = 0; t < 40; ++t) {
        dates.push_back(day(t));
        double x = t < 5 ? -0.05 : (t % 2 ? 0.01 : -0.002);
        r.push_back(x);
        r.push_back(x);
    }
    AlignedReturnPanel panel({"A", "B"}, dates, r);
    auto stats = asset_stats(panel, 252);
    auto cov = covariance(panel);
    EvalConfig full;
    EvalConfig tail;
    tail.calmar_window = 20;
    auto w = Weights::equal({"A", "B"});
    auto a = evaluate(panel, w, cov, stats, full);
    auto b = evaluate(panel, w, cov, stats, tail);
    CHECK(b.max_drawdown < a.max_drawdown);
    CHECK_THAT(b.max_drawdown, WithinAbs(0.002, 1e-12));
    CHECK(a.sharpe == b.sharpe);
    CHECK_THAT(b.calmar.value(), WithinAbs((0.004 * 252) / 0.002, 1e-9));
}
