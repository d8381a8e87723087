#pragma once

#include "mcport/date.hpp"
#include "mcport/error.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mcport {

struct Observation {
    Date date;
    double adj_close;

    bool operator==(const Observation&) const = default;
};

/// Adjusted-close history of one asset. Dates strictly increase and every
/// price is positive; the constructor throws DataError otherwise.
class PriceSeries {
public:
    PriceSeries(std::string ticker, std::vector<Observation> observations);

    const std::string& ticker() const { return ticker_; }
    std::span<const Observation> observations() const { return obs_; }
    std::size_t size() const { return obs_.size(); }
    Date first_date() const { return obs_.front().date; }
    Date last_date() const { return obs_.back().date; }

    bool operator==(const PriceSeries&) const = default;

private:
    std::string ticker_;
    std::vector<Observation> obs_;
};

struct LoadedPrices {
    PriceSeries series;
    /// Rows skipped because the date or price field was missing/unparseable.
    std::size_t dropped_rows = 0;
};

/// Reads a `date,adj_close` CSV. The header must name both columns (extra
/// columns are ignored; `Adj Close` is accepted as an alias). Rows must be in
/// ascending date order: unsorted or duplicate dates are errors, not sorted
/// or deduplicated. `source` only labels error messages.
LoadedPrices parse_prices(std::istream& in, std::string ticker, const std::string& source);
LoadedPrices load_prices(const std::filesystem::path& path, std::string ticker);

struct DatedReturn {
    Date date;
    double value;

    bool operator==(const DatedReturn&) const = default;
};

/// Simple returns p[t]/p[t-1] - 1, dated by the later observation.
std::vector<DatedReturn> compute_daily_returns(const PriceSeries& series);

/// Daily simple returns for a universe on a common calendar, stored
/// row-major: row t holds every asset's return on dates()[t].
class AlignedReturnPanel {
public:
    AlignedReturnPanel(std::vector<std::string> tickers, std::vector<Date> dates,
                       std::vector<double> returns);

    std::size_t num_assets() const { return tickers_.size(); }
    std::size_t num_rows() const { return dates_.size(); }
    const std::vector<std::string>& tickers() const { return tickers_; }
    const std::vector<Date>& dates() const { return dates_; }

    double operator()(std::size_t t, std::size_t i) const { return returns_[t * num_assets() + i]; }
    std::span<const double> row(std::size_t t) const
    {
        return std::span<const double>(returns_).subspan(t * num_assets(), num_assets());
    }
    std::vector<double> column(std::size_t i) const;
    std::span<const double> values() const { return returns_; }

    /// Rows whose dates fall in [from, to]; throws DataError if fewer than two.
    AlignedReturnPanel slice(Date from, Date to) const;

    bool operator==(const AlignedReturnPanel&) const = default;

private:
    std::vector<std::string> tickers_;
    std::vector<Date> dates_;
    std::vector<double> returns_;
};

/// Inner join on dates, then returns over consecutive common dates.
/// Ticker order follows the input. Needs at least three common dates.
AlignedReturnPanel align(std::span<const PriceSeries> series);

struct HistoryFilter {
    std::vector<PriceSeries> kept;
    std::vector<std::string> excluded;
};

/// Drops every series whose first observation is after `window_start`.
HistoryFilter filter_full_history(std::vector<PriceSeries> series, Date window_start);

struct SplitSpec {
    Date train_start;
    Date train_end;
    Date test_start;
    Date test_end;

    /// Throws std::invalid_argument unless
    /// train_start < train_end < test_start <= test_end.
    void validate() const;
};

struct TrainTestPanels {
    AlignedReturnPanel train;
    AlignedReturnPanel test;
};

TrainTestPanels split(const AlignedReturnPanel& panel, const SplitSpec& spec);

} // namespace mcport
