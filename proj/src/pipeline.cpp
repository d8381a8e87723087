#include "mcport/pipeline.hpp"

#include "mcport/log.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace mcport {

namespace fs = std::filesystem;

namespace {

/// Writes files atomically (temp + rename) and can undo everything it wrote.
class ArtifactWriter {
public:
    void write(const fs::path& path, const std::string& content)
    {
        ensure_dir(path.parent_path());
        fs::path tmp = path;
        tmp += ".partial";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw DataError(path.string() + ": cannot open for writing");
            out << content;
            out.flush();
            if (!out)
                throw DataError(path.string() + ": write failed");
        }
        written_.push_back(path);
        fs::rename(tmp, path);
    }

    void rollback() noexcept
    {
        std::error_code ec;
        for (auto it = written_.rbegin(); it != written_.rend(); ++it) {
            fs::remove(*it, ec);
            fs::path tmp = *it;
            tmp += ".partial";
            fs::remove(tmp, ec);
        }
        for (auto it = created_dirs_.rbegin(); it != created_dirs_.rend(); ++it)
            if (fs::is_empty(*it, ec))
                fs::remove(*it, ec);
        written_.clear();
        created_dirs_.clear();
    }

private:
    void ensure_dir(const fs::path& dir)
    {
        if (dir.empty() || fs::exists(dir))
            return;
        ensure_dir(dir.parent_path());
        fs::create_directory(dir);
        created_dirs_.push_back(dir);
    }

    std::vector<fs::path> written_;
    std::vector<fs::path> created_dirs_;
};

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError(path.string() + ": missing (run 'optimize' first?)");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string objective_title(Objective o)
{
    switch (o) {
    case Objective::sharpe: return "Max Sharpe ratio";
    case Objective::sortino: return "Max Sortino ratio";
    case Objective::calmar: return "Max Calmar ratio";
    }
    return "";
}

struct UniverseOutputs {
    std::string name;
    std::optional<SummaryRow> summary;
};

void write_optimize(ArtifactWriter& out, const fs::path& dir, const report::Selection& sel,
                    const OptimizationResult& result)
{
    out.write(dir / "selection.json", report::selection_json(sel));
    out.write(dir / "weights.csv", report::weights_csv(sel));
    out.write(dir / "ratios.csv", report::ratios_csv(sel, result.candidates));
    out.write(dir / "candidates.csv", report::candidates_csv(sel.tickers, result.candidates));
    for (auto o : kAllObjectives)
        out.write(dir / ("frontier_" + std::string(to_string(o)) + ".csv"),
                  report::frontier_csv(result.candidates, result.frontier_for(o), o));
}

SummaryRow write_backtest(ArtifactWriter& out, const fs::path& dir, const UniverseData& data,
                          const report::Selection& sel, CumMode mode)
{
    auto reports = backtest_selection(data, sel, mode);
    for (const auto& r : reports)
        out.write(dir / ("cumret_" + std::string(to_string(r.objective)) + "_" +
                         std::string(to_string(r.window)) + ".csv"),
                  report::curve_csv(r));
    out.write(dir / "cumulative_returns.csv", report::cumulative_table_csv(reports));
    return summarize(reports, sel.max_ratio);
}

void write_frontier_plots(ArtifactWriter& out, const fs::path& dir, const report::Selection& sel,
                          const std::vector<Candidate>& candidates)
{
    if (candidates.empty())
        throw DataError(sel.universe + ": empty candidate set");
    for (auto o : kAllObjectives) {
        const int slot = static_cast<int>(o);
        auto members = frontier(candidates, risk_axis(o));
        if (members.empty()) {
            log::warn(sel.universe + ": no candidate has a defined " +
                      std::string(to_string(risk_axis(o))) + "; skipping " +
                      std::string(to_string(o)) + " plot");
            continue;
        }
        out.write(dir / ("frontier_" + std::string(to_string(o)) + ".svg"),
                  report::frontier_svg(candidates, o, sel.best[slot], sel.min_risk[slot], members,
                                       sel.universe + ": " + objective_title(o)));
    }
}

} // namespace

void RunConfig::validate() const
{
    if (!fs::exists(manifest))
        throw DataError(manifest.string() + ": manifest not found");
    if (out_dir.empty())
        throw std::invalid_argument("output directory not set");
    split.validate();
    search.validate();
}

SplitSpec default_split()
{
    using namespace std::chrono;
    return {Date{2017y / January / 1}, Date{2020y / December / 31}, Date{2021y / January / 1},
            Date{2021y / December / 31}};
}

UniverseData load_universe(const UniverseSpec& spec, const SplitSpec& split_spec)
{
    std::vector<PriceSeries> series;
    for (const auto& a : spec.assets)
        series.push_back(load_prices(a.path, a.ticker).series);
    auto filtered = filter_full_history(std::move(series), split_spec.train_start);
    if (filtered.kept.size() < 2)
        throw DataError(spec.name + ": universe too small: " + std::to_string(filtered.kept.size()) +
                        " asset(s) with full history, need at least 2");
    auto panel = align(filtered.kept);
    try {
        auto windows = split(panel, split_spec);
        return {spec.name, std::move(filtered.excluded), std::move(windows.train), std::move(windows.test)};
    } catch (const DataError& e) {
        throw DataError(spec.name + ": " + e.what());
    }
}

TrainingRun optimize_window(const AlignedReturnPanel& train, const SearchConfig& config)
{
    auto stats = asset_stats(train, config.eval.annualization);
    auto cov = covariance(train);
    auto result = generate(train, stats, cov, config);
    return {std::move(stats), std::move(cov), std::move(result)};
}

std::vector<BacktestReport> backtest_selection(const UniverseData& data, const report::Selection& sel,
                                               CumMode mode)
{
    if (sel.tickers != data.train.tickers())
        throw DataError(data.name + ": saved selection does not match the universe's assets");
    std::vector<BacktestReport> reports;
    for (auto o : kAllObjectives) {
        const auto& w = sel.weights[static_cast<int>(o)];
        if (!w)
            continue;
        reports.push_back(run_backtest(data.train, *w, mode, o, Window::train));
        reports.push_back(run_backtest(data.test, *w, mode, o, Window::test));
    }
    return reports;
}

int execute(Command command, const RunConfig& config)
{
    ArtifactWriter out;
    try {
        config.validate();
        auto universes = load_manifest(config.manifest);
        std::vector<report::NamedSummary> summaries;

        for (const auto& spec : universes) {
            const fs::path dir = config.out_dir / spec.name;
            log::info(spec.name + ": loading " + std::to_string(spec.assets.size()) + " asset(s)");
            auto data = load_universe(spec, config.split);

            std::optional<report::Selection> sel;
            std::vector<Candidate> candidates;
            if (command == Command::optimize || command == Command::run) {
                auto run = optimize_window(data.train, config.search);
                sel = report::make_selection(spec.name, run.result, data.train.tickers(), data.excluded);
                write_optimize(out, dir, *sel, run.result);
                candidates = std::move(run.result.candidates);
            } else {
                sel = report::parse_selection_json(read_file(dir / "selection.json"));
                if (command == Command::frontier)
                    candidates = report::parse_candidates_csv(read_file(dir / "candidates.csv"));
            }
            for (const auto& d : sel->diagnostics)
                log::warn(spec.name + ": " + d);

            if (command == Command::backtest || command == Command::run)
                summaries.emplace_back(spec.name, write_backtest(out, dir, data, *sel, config.cum_mode));
            if (command == Command::frontier || command == Command::run)
                write_frontier_plots(out, dir, *sel, candidates);
            log::info(spec.name + ": done");
        }

        if (!summaries.empty()) {
            out.write(config.out_dir / "summary.csv", report::summary_csv(summaries));
            out.write(config.out_dir / "summary.json", report::summary_json(summaries));
        }
        return 0;
    } catch (const std::exception& e) {
        out.rollback();
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace mcport
