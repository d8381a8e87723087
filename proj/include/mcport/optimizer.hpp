#pragma once

#include "mcport/portfolio.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace mcport {

enum class Sampler {
    /// n uniform(0,1) draws divided by their sum (not uniform on the simplex).
    normalized_uniform,
    /// Exponential draws divided by their sum, i.e. flat Dirichlet.
    flat_dirichlet,
};

struct SearchConfig {
    std::size_t num_candidates = 10000;
    std::uint64_t seed = 42;
    EvalConfig eval;
    Sampler sampler = Sampler::normalized_uniform;
    /// Worker threads for candidate evaluation; 0 picks hardware concurrency.
    /// Results do not depend on this.
    unsigned threads = 0;

    void validate() const;
};

/// Random stream owned by one candidate index. Derived from (seed, index)
/// alone, so candidate k draws the same weights whatever order or thread
/// evaluates it.
class CandidateRng {
public:
    CandidateRng(std::uint64_t seed, std::uint64_t index);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

private:
    std::mt19937_64 engine_;
};

/// Normalizes raw nonnegative draws to sum to one. Returns nullopt when the
/// draws sum to zero.
std::optional<std::vector<double>> normalize_draws(std::span<const double> draws);

/// Draws one weight vector over `tickers`. Consumes exactly n draws per
/// attempt; an all-zero attempt is redrawn up to 16 times before throwing.
Weights sample_weights(const std::vector<std::string>& tickers, CandidateRng& rng,
                       Sampler sampler = Sampler::normalized_uniform);

struct Candidate {
    std::size_t index = 0;
    Weights weights;
    PortfolioMetrics metrics;

    bool operator==(const Candidate&) const = default;
};

enum class RiskAxis { volatility = 0, downside_deviation = 1, drawdown = 2 };

RiskAxis risk_axis(Objective o);
std::string_view to_string(RiskAxis axis);
/// The candidate's risk on `axis`; absent only for an undefined downside
/// deviation.
std::optional<double> risk_value(const PortfolioMetrics& m, RiskAxis axis);

class NoValidCandidate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index (position in `candidates`) of the largest valid ratio; ties go to
/// the lowest index. Throws NoValidCandidate if every ratio is invalid.
std::size_t select_max(std::span<const Candidate> candidates, Objective objective);

/// Index of the smallest defined risk on `axis`, lowest index on ties;
/// nullopt when no candidate has a defined risk there.
std::optional<std::size_t> select_min_risk(std::span<const Candidate> candidates, RiskAxis axis);

/// Pareto-efficient candidates in (risk, annual return): nothing else has
/// risk <= and return >= with one strict. Exact duplicates keep only the
/// lowest index. Sorted by risk ascending, so returns strictly increase.
/// Candidates without a defined risk on `axis` are ignored.
std::vector<std::size_t> frontier(std::span<const Candidate> candidates, RiskAxis axis);

struct OptimizationResult {
    std::vector<Candidate> candidates;
    std::array<std::optional<std::size_t>, 3> best;     ///< by Objective
    std::array<std::optional<std::size_t>, 3> min_risk; ///< by Objective's risk axis
    std::array<std::vector<std::size_t>, 3> frontiers;  ///< by Objective's risk axis
    std::vector<std::string> diagnostics;

    std::optional<std::size_t> best_for(Objective o) const { return best[static_cast<int>(o)]; }
    std::optional<std::size_t> min_risk_for(Objective o) const { return min_risk[static_cast<int>(o)]; }
    const std::vector<std::size_t>& frontier_for(Objective o) const
    {
        return frontiers[static_cast<int>(o)];
    }

    bool operator==(const OptimizationResult&) const = default;
};

/// Samples and evaluates config.num_candidates portfolios on one shared
/// cloud, then selects per objective. `stats` and `cov` must describe `panel`.
OptimizationResult generate(const AlignedReturnPanel& panel, std::span<const AssetStats> stats,
                            const CovarianceMatrix& cov, const SearchConfig& config);

} // namespace mcport
