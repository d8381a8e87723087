// mcport: Monte Carlo ratio-maximizing portfolios with train/test backtests.
#include "mcport/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv)
{
    using namespace mcport;

    CLI::App app{"Monte Carlo max-Sharpe/Sortino/Calmar portfolio construction and backtesting"};
    app.set_config("--config", "", "TOML/INI file supplying any option; command-line flags win");

    std::string command;
    std::string manifest, out_dir;
    std::string train_start = "2017-01-01", train_end = "2020-12-31";
    std::string test_start = "2021-01-01", test_end = "2021-12-31";
    std::size_t candidates = 10000;
    std::uint64_t seed = 42;
    double risk_free = 0.0;
    int annualization = 252;
    std::string cum_mode = "arithmetic";
    std::string sampler = "uniform";
    std::size_t calmar_window = 0;
    unsigned threads = 0;

    const std::map<std::string, Command> commands{{"optimize", Command::optimize},
                                                  {"backtest", Command::backtest},
                                                  {"frontier", Command::frontier},
                                                  {"run", Command::run}};

    app.add_option("command", command, "optimize | backtest | frontier | run")
        ->required()
        ->check(CLI::IsMember({"optimize", "backtest", "frontier", "run"}));
    app.add_option("--manifest", manifest, "Universe manifest (JSON)")->required();
    app.add_option("--out", out_dir, "Output directory")->required();
    app.add_option("--train-start", train_start, "YYYY-MM-DD")->capture_default_str();
    app.add_option("--train-end", train_end, "YYYY-MM-DD")->capture_default_str();
    app.add_option("--test-start", test_start, "YYYY-MM-DD")->capture_default_str();
    app.add_option("--test-end", test_end, "YYYY-MM-DD")->capture_default_str();
    app.add_option("--candidates", candidates, "Random portfolios per universe")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--risk-free", risk_free, "Annual risk-free rate")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--annualization", annualization, "Trading days per year")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--cum-mode", cum_mode, "Cumulative return: arithmetic | compounded")
        ->capture_default_str()
        ->check(CLI::IsMember({"arithmetic", "compounded"}));
    app.add_option("--sampler", sampler, "Weight sampler: uniform (normalized) | dirichlet")
        ->capture_default_str()
        ->check(CLI::IsMember({"uniform", "dirichlet"}));
    app.add_option("--calmar-window", calmar_window, "Trailing rows for Calmar (0 = whole window)")
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (0 = all cores); output does not depend on it")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    RunConfig config;
    try {
        config.manifest = manifest;
        config.out_dir = out_dir;
        config.split = SplitSpec{parse_date_or_throw(train_start, "--train-start"),
                                 parse_date_or_throw(train_end, "--train-end"),
                                 parse_date_or_throw(test_start, "--test-start"),
                                 parse_date_or_throw(test_end, "--test-end")};
        config.search.num_candidates = candidates;
        config.search.seed = seed;
        config.search.eval.annualization = annualization;
        config.search.eval.risk_free_rate = risk_free;
        config.search.eval.calmar_window = calmar_window;
        config.search.sampler = sampler == "dirichlet" ? Sampler::flat_dirichlet : Sampler::normalized_uniform;
        config.search.threads = threads;
        config.cum_mode = *parse_cum_mode(cum_mode);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return execute(commands.at(command), config);
}
