#include "mcport/market_data.hpp"

#include "mcport/log.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace mcport {

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

std::optional<double> parse_double(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

} // namespace

PriceSeries::PriceSeries(std::string ticker, std::vector<Observation> observations)
    : ticker_(std::move(ticker)), obs_(std::move(observations))
{
    if (ticker_.empty())
        throw DataError("price series: empty ticker");
    if (obs_.empty())
        throw DataError(ticker_ + ": no observations");
    for (std::size_t t = 0; t < obs_.size(); ++t) {
        if (!(obs_[t].adj_close > 0.0) || !std::isfinite(obs_[t].adj_close))
            throw DataError(ticker_ + ": non-positive price on " + format_date(obs_[t].date));
        if (t > 0 && obs_[t].date <= obs_[t - 1].date) {
            throw DataError(ticker_ + ": " +
                            (obs_[t].date == obs_[t - 1].date ? "duplicate date "
                                                              : "dates not ascending at ") +
                            format_date(obs_[t].date));
        }
    }
}

LoadedPrices parse_prices(std::istream& in, std::string ticker, const std::string& source)
{
    std::string line;
    if (!std::getline(in, line))
        throw DataError(source + ": empty file");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF)
        line.erase(0, 3); // UTF-8 BOM

    auto header = split_csv_line(line);
    std::size_t date_col = header.size(), price_col = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        auto h = lower(header[c]);
        if (h == "date")
            date_col = c;
        else if (h == "adj_close" || h == "adj close")
            price_col = c;
    }
    if (date_col == header.size() || price_col == header.size())
        throw DataError(source + ": header must contain 'date' and 'adj_close' columns");

    std::vector<Observation> obs;
    std::size_t dropped = 0;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        auto fields = split_csv_line(line);
        std::optional<Date> date;
        std::optional<double> price;
        if (fields.size() > std::max(date_col, price_col)) {
            date = parse_date(fields[date_col]);
            price = parse_double(fields[price_col]);
        }
        if (!date || !price) {
            ++dropped;
            log::debug(source + ":" + std::to_string(lineno) + ": dropped unparseable row");
            continue;
        }
        if (*price <= 0.0)
            throw DataError(source + ":" + std::to_string(lineno) + ": non-positive price");
        obs.push_back({*date, *price});
    }
    if (obs.empty())
        throw DataError(source + ": no valid rows");
    if (dropped > 0)
        log::warn(source + ": dropped " + std::to_string(dropped) + " row(s) with missing values");

    try {
        return {PriceSeries(std::move(ticker), std::move(obs)), dropped};
    } catch (const DataError& e) {
        throw DataError(source + ": " + e.what());
    }
}

LoadedPrices load_prices(const std::filesystem::path& path, std::string ticker)
{
    std::ifstream in(path);
    if (!in)
        throw DataError(path.string() + ": cannot open file");
    return parse_prices(in, std::move(ticker), path.string());
}

std::vector<DatedReturn> compute_daily_returns(const PriceSeries& series)
{
    auto obs = series.observations();
    if (obs.size() < 2)
        throw DataError(series.ticker() + ": need at least 2 observations for returns");
    std::vector<DatedReturn> out;
    out.reserve(obs.size() - 1);
    for (std::size_t t = 1; t < obs.size(); ++t)
        out.push_back({obs[t].date, obs[t].adj_close / obs[t - 1].adj_close - 1.0});
    return out;
}

AlignedReturnPanel::AlignedReturnPanel(std::vector<std::string> tickers, std::vector<Date> dates,
                                       std::vector<double> returns)
    : tickers_(std::move(tickers)), dates_(std::move(dates)), returns_(std::move(returns))
{
    if (tickers_.size() < 2)
        throw DataError("return panel needs at least 2 assets");
    if (dates_.size() < 2)
        throw DataError("return panel needs at least 2 rows");
    if (returns_.size() != tickers_.size() * dates_.size())
        throw ShapeError("return panel: matrix size does not match tickers x dates");
    for (std::size_t t = 1; t < dates_.size(); ++t)
        if (dates_[t] <= dates_[t - 1])
            throw DataError("return panel: dates not strictly increasing");
}

std::vector<double> AlignedReturnPanel::column(std::size_t i) const
{
    std::vector<double> col(num_rows());
    for (std::size_t t = 0; t < num_rows(); ++t)
        col[t] = (*this)(t, i);
    return col;
}

AlignedReturnPanel AlignedReturnPanel::slice(Date from, Date to) const
{
    auto lo = std::lower_bound(dates_.begin(), dates_.end(), from);
    auto hi = std::upper_bound(dates_.begin(), dates_.end(), to);
    if (lo >= hi)
        throw DataError("no rows between " + format_date(from) + " and " + format_date(to));
    auto first = static_cast<std::size_t>(lo - dates_.begin());
    auto last = static_cast<std::size_t>(hi - dates_.begin());
    if (last - first < 2)
        throw DataError("fewer than 2 rows between " + format_date(from) + " and " + format_date(to));
    std::vector<Date> d(lo, hi);
    std::vector<double> r(returns_.begin() + static_cast<std::ptrdiff_t>(first * num_assets()),
                          returns_.begin() + static_cast<std::ptrdiff_t>(last * num_assets()));
    return AlignedReturnPanel(tickers_, std::move(d), std::move(r));
}

AlignedReturnPanel align(std::span<const PriceSeries> series)
{
    if (series.size() < 2)
        throw DataError("universe too small: need at least 2 assets, got " +
                        std::to_string(series.size()));

    std::vector<Date> common;
    for (const auto& o : series[0].observations())
        common.push_back(o.date);
    for (std::size_t s = 1; s < series.size(); ++s) {
        std::vector<Date> dates;
        for (const auto& o : series[s].observations())
            dates.push_back(o.date);
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(), dates.begin(), dates.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    if (common.size() < 3)
        throw DataError("insufficient overlap: " + std::to_string(common.size()) +
                        " common date(s) across the universe, need at least 3");

    const std::size_t n = series.size();
    const std::size_t rows = common.size() - 1;
    std::vector<double> returns(rows * n);
    std::vector<std::string> tickers;
    for (std::size_t i = 0; i < n; ++i) {
        tickers.push_back(series[i].ticker());
        auto obs = series[i].observations();
        std::size_t k = 0;
        double prev = 0.0;
        for (std::size_t t = 0; t < common.size(); ++t) {
            while (obs[k].date < common[t])
                ++k;
            double price = obs[k].adj_close;
            if (t > 0)
                returns[(t - 1) * n + i] = price / prev - 1.0;
            prev = price;
        }
    }
    return AlignedReturnPanel(std::move(tickers), std::vector<Date>(common.begin() + 1, common.end()),
                              std::move(returns));
}

HistoryFilter filter_full_history(std::vector<PriceSeries> series, Date window_start)
{
    HistoryFilter out;
    for (auto& s : series) {
        if (s.first_date() > window_start) {
            log::warn(s.ticker() + ": history starts " + format_date(s.first_date()) + ", after " +
                      format_date(window_start) + "; excluded");
            out.excluded.push_back(s.ticker());
        } else {
            out.kept.push_back(std::move(s));
        }
    }
    return out;
}

void SplitSpec::validate() const
{
    if (!(train_start < train_end))
        throw std::invalid_argument("split: train_start must precede train_end");
    if (!(train_end < test_start))
        throw std::invalid_argument("split: train window must end before test window starts");
    if (!(test_start <= test_end))
        throw std::invalid_argument("split: test_end is before test_start");
}

TrainTestPanels split(const AlignedReturnPanel& panel, const SplitSpec& spec)
{
    spec.validate();
    auto window = [&](Date from, Date to, const char* name) {
        try {
            return panel.slice(from, to);
        } catch (const DataError& e) {
            throw DataError(std::string("empty ") + name + " window [" + format_date(from) + ", " +
                            format_date(to) + "]: " + e.what());
        }
    };
    auto train = window(spec.train_start, spec.train_end, "train");
    auto test = window(spec.test_start, spec.test_end, "test");
    return {std::move(train), std::move(test)};
}

} // namespace mcport
