// Regenerates the synthetic price fixtures under a target directory.
// Usage: make_fixtures <fixtures-dir>
#include "mcport/date.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <vector>

namespace fs = std::filesystem;
using mcport::Date;

namespace {

struct Gauss {
    std::mt19937_64 eng;
    explicit Gauss(std::uint64_t seed) : eng(seed) {}
    double uniform() { return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53; }
    // Box-Muller, one variate per call.
    double next() { return std::sqrt(-2.0 * std::log(uniform())) * std::cos(2.0 * M_PI * uniform()); }
};

std::vector<Date> business_days(Date from, Date to)
{
    std::vector<Date> out;
    for (Date d = from; d <= to; d += std::chrono::days{1}) {
        std::chrono::weekday wd{d};
        if (wd != std::chrono::Saturday && wd != std::chrono::Sunday)
            out.push_back(d);
    }
    return out;
}

void write_csv(const fs::path& path, const std::vector<Date>& dates, const std::vector<double>& prices,
               std::size_t first = 0)
{
    std::ofstream out(path);
    out << "date,adj_close\n";
    char buf[64];
    for (std::size_t t = first; t < dates.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%.6f", prices[t]);
        out << mcport::format_date(dates[t]) << ',' << buf << '\n';
    }
}

struct AssetSpec {
    const char* ticker;
    double drift;  // annual
    double vol;    // annual idiosyncratic
    double beta;   // loading on the common factor
    double start;  // initial price
    double weight; // index weight annotation
};

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2 || argc > 3) {
        std::cerr << "usage: make_fixtures <fixtures-dir> [seed]\n";
        return 2;
    }
    using namespace std::chrono;
    const fs::path root = argv[1];
    const auto dates = business_days(Date{2016y / January / 4}, Date{2021y / December / 31});
    const double dt = 1.0 / 252.0;

    // Nine full-history assets plus one listed late (excluded by the loader).
    const std::vector<AssetSpec> specs{
        {"MSZ", 0.10, 0.22, 0.9, 6100.0, 19.53}, {"TAM", 0.02, 0.38, 1.3, 480.0, 17.11},
        {"MHM", 0.06, 0.25, 1.0, 1300.0, 15.85}, {"BAJ", 0.12, 0.20, 0.8, 2500.0, 8.37},
        {"ECM", 0.08, 0.27, 1.0, 1650.0, 7.15},  {"HMC", 0.04, 0.24, 0.8, 2800.0, 6.33},
        {"BAL", 0.28, 0.30, 1.1, 420.0, 3.73},   {"BFG", 0.09, 0.32, 1.2, 450.0, 3.54},
        {"ASL", 0.18, 0.36, 1.3, 90.0, 3.48},    {"TII", 0.30, 0.30, 1.0, 310.0, 3.42},
    };

    const std::uint64_t base = argc == 3 ? std::stoull(argv[2]) : 3;
    Gauss market(base);
    std::vector<double> factor(dates.size());
    for (auto& f : factor)
        f = 0.15 * std::sqrt(dt) * market.next();

    fs::create_directories(root / "auto_like");
    nlohmann::json manifest;
    manifest["name"] = "auto_like";
    manifest["assets"] = nlohmann::json::array();
    std::uint64_t seed = base % 100000;
    for (const auto& a : specs) {
        Gauss g(++seed);
        std::vector<double> p(dates.size());
        p[0] = a.start;
        for (std::size_t t = 1; t < dates.size(); ++t) {
            double shock = a.beta * factor[t] + a.vol * std::sqrt(dt) * g.next();
            p[t] = p[t - 1] * std::exp((a.drift - 0.5 * a.vol * a.vol) * dt + shock);
        }
        std::size_t first = 0;
        if (std::string(a.ticker) == "TII")
            while (dates[first] < Date{2017y / November / 2})
                ++first;
        write_csv(root / "auto_like" / (std::string(a.ticker) + ".csv"), dates, p, first);
        manifest["assets"].push_back({{"ticker", a.ticker},
                                      {"path", std::string(a.ticker) + ".csv"},
                                      {"index_weight", a.weight}});
    }
    std::ofstream(root / "auto_like" / "manifest.json") << manifest.dump(2) << '\n';

    // Every daily return strictly positive: no downside, no drawdown.
    fs::create_directories(root / "all_positive");
    nlohmann::json pos;
    pos["name"] = "all_positive";
    pos["assets"] = nlohmann::json::array();
    for (int k = 0; k < 3; ++k) {
        Gauss g(5000 + static_cast<std::uint64_t>(k));
        std::vector<double> p(dates.size());
        p[0] = 100.0;
        for (std::size_t t = 1; t < dates.size(); ++t)
            p[t] = p[t - 1] * (1.0 + 0.0005 + 0.0015 * g.uniform());
        std::string ticker = "UP" + std::to_string(k + 1);
        write_csv(root / "all_positive" / (ticker + ".csv"), dates, p);
        pos["assets"].push_back({{"ticker", ticker}, {"path", ticker + ".csv"}});
    }
    std::ofstream(root / "all_positive" / "manifest.json") << pos.dump(2) << '\n';
    return 0;
}
