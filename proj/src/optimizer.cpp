#include "mcport/optimizer.hpp"

#include "mcport/log.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace mcport {

void SearchConfig::validate() const
{
    if (num_candidates < 1)
        throw std::invalid_argument("number of candidates must be >= 1");
    eval.validate();
}

CandidateRng::CandidateRng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
}

double CandidateRng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::optional<std::vector<double>> normalize_draws(std::span<const double> draws)
{
    double sum = 0.0;
    for (double d : draws)
        sum += d;
    if (!(sum > 0.0))
        return std::nullopt;
    std::vector<double> w(draws.begin(), draws.end());
    for (auto& x : w)
        x /= sum;
    return w;
}

Weights sample_weights(const std::vector<std::string>& tickers, CandidateRng& rng, Sampler sampler)
{
    const std::size_t n = tickers.size();
    if (n < 2)
        throw std::invalid_argument("sample_weights: need at least 2 assets");
    std::vector<double> draws(n);
    for (int attempt = 0; attempt < 16; ++attempt) {
        for (auto& d : draws) {
            double u = rng.uniform();
            d = sampler == Sampler::flat_dirichlet ? -std::log1p(-u) : u;
        }
        if (auto w = normalize_draws(draws))
            return Weights(tickers, std::move(*w));
    }
    throw std::runtime_error("sample_weights: repeated all-zero draws");
}

RiskAxis risk_axis(Objective o)
{
    switch (o) {
    case Objective::sharpe: return RiskAxis::volatility;
    case Objective::sortino: return RiskAxis::downside_deviation;
    case Objective::calmar: return RiskAxis::drawdown;
    }
    return RiskAxis::volatility;
}

std::string_view to_string(RiskAxis axis)
{
    switch (axis) {
    case RiskAxis::volatility: return "volatility";
    case RiskAxis::downside_deviation: return "downside_deviation";
    case RiskAxis::drawdown: return "max_drawdown";
    }
    return "?";
}

std::optional<double> risk_value(const PortfolioMetrics& m, RiskAxis axis)
{
    switch (axis) {
    case RiskAxis::volatility: return m.annual_volatility;
    case RiskAxis::downside_deviation: return m.downside_deviation;
    case RiskAxis::drawdown: return m.max_drawdown;
    }
    return std::nullopt;
}

std::size_t select_max(std::span<const Candidate> candidates, Objective objective)
{
    std::optional<std::size_t> best;
    double best_value = 0.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        Ratio r = candidates[k].metrics.ratio(objective);
        if (!r.valid())
            continue;
        if (!best || r.value() > best_value) {
            best = k;
            best_value = r.value();
        }
    }
    if (!best)
        throw NoValidCandidate("no candidate has a valid " + std::string(to_string(objective)) +
                               " ratio");
    return *best;
}

std::optional<std::size_t> select_min_risk(std::span<const Candidate> candidates, RiskAxis axis)
{
    std::optional<std::size_t> best;
    double best_risk = 0.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto risk = risk_value(candidates[k].metrics, axis);
        if (!risk)
            continue;
        if (!best || *risk < best_risk) {
            best = k;
            best_risk = *risk;
        }
    }
    return best;
}

std::vector<std::size_t> frontier(std::span<const Candidate> candidates, RiskAxis axis)
{
    struct Point {
        double risk;
        double ret;
        std::size_t k;
    };
    std::vector<Point> pts;
    pts.reserve(candidates.size());
    for (std::size_t k = 0; k < candidates.size(); ++k)
        if (auto risk = risk_value(candidates[k].metrics, axis))
            pts.push_back({*risk, candidates[k].metrics.annual_return, k});

    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        if (a.risk != b.risk)
            return a.risk < b.risk;
        if (a.ret != b.ret)
            return a.ret > b.ret;
        return a.k < b.k;
    });

    std::vector<std::size_t> out;
    bool have = false;
    double best_ret = 0.0;
    for (const auto& p : pts) {
        if (!have || p.ret > best_ret) {
            out.push_back(p.k);
            best_ret = p.ret;
            have = true;
        }
    }
    return out;
}

OptimizationResult generate(const AlignedReturnPanel& panel, std::span<const AssetStats> stats,
                            const CovarianceMatrix& cov, const SearchConfig& config)
{
    config.validate();
    if (stats.size() != panel.num_assets() || cov.tickers() != panel.tickers())
        throw ShapeError("generate: statistics do not describe the panel");

    const std::size_t total = config.num_candidates;
    std::vector<std::optional<Candidate>> slots(total);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            CandidateRng rng(config.seed, k);
            Weights w = sample_weights(panel.tickers(), rng, config.sampler);
            auto m = evaluate(panel, w, cov, stats, config.eval);
            slots[k] = Candidate{k, std::move(w), std::move(m)};
        }
    };

    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    if (threads <= 1) {
        work(0, total);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        const std::size_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t b = std::min(total, t * chunk), e = std::min(total, b + chunk);
            pool.emplace_back([&, t, b, e] {
                try {
                    work(b, e);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool)
            th.join();
        for (auto& err : errors)
            if (err)
                std::rethrow_exception(err);
    }

    OptimizationResult result;
    result.candidates.reserve(total);
    for (auto& s : slots)
        result.candidates.push_back(std::move(*s));

    for (auto o : kAllObjectives) {
        const int slot = static_cast<int>(o);
        const RiskAxis axis = risk_axis(o);
        try {
            result.best[slot] = select_max(result.candidates, o);
        } catch (const NoValidCandidate& e) {
            result.diagnostics.push_back(e.what());
            log::warn(e.what());
        }
        result.min_risk[slot] = select_min_risk(result.candidates, axis);
        result.frontiers[slot] = frontier(result.candidates, axis);
    }
    return result;
}

} // namespace mcport
