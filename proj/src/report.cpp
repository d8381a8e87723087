#include "mcport/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mcport::report {

namespace {

using nlohmann::json;

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError("candidates file: bad number '" + s + "'");
    return v;
}

std::optional<double> to_optional(const std::string& s)
{
    if (s == "NA")
        return std::nullopt;
    return to_double(s);
}

Ratio to_ratio(const std::string& s)
{
    auto v = to_optional(s);
    return v ? Ratio::of(*v) : Ratio::invalid();
}

std::string na_or(const std::optional<double>& v, std::string (*fmt)(double))
{
    return v ? fmt(*v) : std::string("NA");
}

std::string objective_column(Objective o)
{
    return "max_" + std::string(to_string(o));
}

json optional_index(const std::optional<std::size_t>& i)
{
    return i ? json(*i) : json(nullptr);
}

double round4(double v)
{
    double r = std::round(v * 1e4) / 1e4;
    return r == 0.0 ? 0.0 : r;
}

std::string svg_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string axis_label(Objective o)
{
    switch (risk_axis(o)) {
    case RiskAxis::volatility: return "Annual volatility";
    case RiskAxis::downside_deviation: return "Annual downside deviation";
    case RiskAxis::drawdown: return "Maximum drawdown";
    }
    return "Risk";
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

} // namespace

std::string fixed4(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    if (s == "-0.0000")
        s = "0.0000";
    return s;
}

std::string exact(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string ratio_cell(const Ratio& r)
{
    return r.valid() ? fixed4(r.value()) : "NA";
}

Selection make_selection(std::string universe, const OptimizationResult& result,
                         std::vector<std::string> tickers, std::vector<std::string> excluded)
{
    Selection s;
    s.universe = std::move(universe);
    s.tickers = std::move(tickers);
    s.excluded = std::move(excluded);
    s.best = result.best;
    s.min_risk = result.min_risk;
    s.max_ratio = training_maxima(result);
    for (auto o : kAllObjectives) {
        const int slot = static_cast<int>(o);
        if (result.best[slot])
            s.weights[slot] = result.candidates.at(*result.best[slot]).weights;
    }
    s.diagnostics = result.diagnostics;
    return s;
}

std::string selection_json(const Selection& s)
{
    json j;
    j["universe"] = s.universe;
    j["tickers"] = s.tickers;
    j["excluded"] = s.excluded;
    json objectives = json::object();
    for (auto o : kAllObjectives) {
        const int slot = static_cast<int>(o);
        json e;
        e["best_index"] = optional_index(s.best[slot]);
        e["min_risk_index"] = optional_index(s.min_risk[slot]);
        const auto& r = s.max_ratio[slot];
        e["max_ratio"] = (r && r->valid()) ? json(r->value()) : json(nullptr);
        if (s.weights[slot]) {
            auto v = s.weights[slot]->values();
            e["weights"] = std::vector<double>(v.begin(), v.end());
        } else {
            e["weights"] = nullptr;
        }
        objectives[std::string(to_string(o))] = e;
    }
    j["objectives"] = objectives;
    j["diagnostics"] = s.diagnostics;
    return j.dump(2) + "\n";
}

Selection parse_selection_json(const std::string& text)
{
    try {
        json j = json::parse(text);
        Selection s;
        s.universe = j.at("universe").get<std::string>();
        s.tickers = j.at("tickers").get<std::vector<std::string>>();
        s.excluded = j.at("excluded").get<std::vector<std::string>>();
        s.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
        for (auto o : kAllObjectives) {
            const int slot = static_cast<int>(o);
            const auto& e = j.at("objectives").at(std::string(to_string(o)));
            if (!e.at("best_index").is_null())
                s.best[slot] = e["best_index"].get<std::size_t>();
            if (!e.at("min_risk_index").is_null())
                s.min_risk[slot] = e["min_risk_index"].get<std::size_t>();
            if (!e.at("weights").is_null())
                s.weights[slot] = Weights(s.tickers, e["weights"].get<std::vector<double>>());
            if (s.best[slot])
                s.max_ratio[slot] = e.at("max_ratio").is_null()
                                        ? Ratio::invalid()
                                        : Ratio::of(e["max_ratio"].get<double>());
        }
        return s;
    } catch (const json::exception& e) {
        throw DataError(std::string("selection file: ") + e.what());
    }
}

std::string weights_csv(const Selection& s)
{
    std::ostringstream out;
    out << "ticker";
    for (auto o : kAllObjectives)
        out << ',' << objective_column(o);
    out << '\n';
    for (std::size_t i = 0; i < s.tickers.size(); ++i) {
        out << s.tickers[i];
        for (auto o : kAllObjectives) {
            const auto& w = s.weights[static_cast<int>(o)];
            out << ',' << (w ? fixed4((*w)[i]) : "NA");
        }
        out << '\n';
    }
    return out.str();
}

std::string ratios_csv(const Selection& s, const std::vector<Candidate>& candidates)
{
    std::ostringstream out;
    out << "objective,max_ratio,best_index,annual_return,risk,min_risk_index,min_risk\n";
    for (auto o : kAllObjectives) {
        const int slot = static_cast<int>(o);
        const auto axis = risk_axis(o);
        out << to_string(o) << ',';
        if (s.best[slot]) {
            const auto& m = candidates.at(*s.best[slot]).metrics;
            out << ratio_cell(m.ratio(o)) << ',' << *s.best[slot] << ',' << fixed4(m.annual_return)
                << ',' << na_or(risk_value(m, axis), fixed4);
        } else {
            out << "NA,NA,NA,NA";
        }
        out << ',';
        if (s.min_risk[slot]) {
            const auto& m = candidates.at(*s.min_risk[slot]).metrics;
            out << *s.min_risk[slot] << ',' << na_or(risk_value(m, axis), fixed4);
        } else {
            out << "NA,NA";
        }
        out << '\n';
    }
    return out.str();
}

std::string candidates_csv(const std::vector<std::string>& tickers,
                           const std::vector<Candidate>& candidates)
{
    std::string out = "index";
    for (const auto& t : tickers)
        out += ",w_" + t;
    out += ",annual_return,annual_volatility,downside_deviation,max_drawdown,sharpe,sortino,calmar\n";
    for (const auto& c : candidates) {
        out += std::to_string(c.index);
        for (double w : c.weights.values())
            out += ',' + exact(w);
        const auto& m = c.metrics;
        out += ',' + exact(m.annual_return);
        out += ',' + exact(m.annual_volatility);
        out += ',' + na_or(m.downside_deviation, exact);
        out += ',' + exact(m.max_drawdown);
        for (auto o : kAllObjectives) {
            Ratio r = m.ratio(o);
            out += ',' + (r.valid() ? exact(r.value()) : std::string("NA"));
        }
        out += '\n';
    }
    return out;
}

std::vector<Candidate> parse_candidates_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw DataError("candidates file: empty");
    auto header = split_fields(line);
    std::vector<std::string> tickers;
    for (std::size_t c = 1; c < header.size() && header[c].rfind("w_", 0) == 0; ++c)
        tickers.push_back(header[c].substr(2));
    const std::size_t n = tickers.size();
    if (n < 2 || header.size() != 1 + n + 7)
        throw DataError("candidates file: unexpected header");

    std::vector<Candidate> out;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto f = split_fields(line);
        if (f.size() != header.size())
            throw DataError("candidates file: wrong field count");
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = to_double(f[1 + i]);
        PortfolioMetrics m;
        m.annual_return = to_double(f[n + 1]);
        m.annual_volatility = to_double(f[n + 2]);
        m.downside_deviation = to_optional(f[n + 3]);
        m.max_drawdown = to_double(f[n + 4]);
        m.sharpe = to_ratio(f[n + 5]);
        m.sortino = to_ratio(f[n + 6]);
        m.calmar = to_ratio(f[n + 7]);
        auto index = static_cast<std::size_t>(std::stoull(f[0]));
        out.push_back(Candidate{index, Weights(tickers, std::move(w)), m});
    }
    return out;
}

std::string frontier_csv(const std::vector<Candidate>& candidates,
                         const std::vector<std::size_t>& members, Objective objective)
{
    const auto axis = risk_axis(objective);
    std::string out = "index," + std::string(to_string(axis)) + ",annual_return\n";
    for (auto k : members) {
        const auto& m = candidates.at(k).metrics;
        out += std::to_string(candidates[k].index) + ',' + na_or(risk_value(m, axis), exact) + ',' +
               exact(m.annual_return) + '\n';
    }
    return out;
}

std::string curve_csv(const BacktestReport& r)
{
    std::string out = "date,cumulative_return\n";
    for (const auto& p : r.curve)
        out += format_date(p.date) + ',' + exact(p.value) + '\n';
    return out;
}

std::string cumulative_table_csv(const std::vector<BacktestReport>& reports)
{
    std::ostringstream out;
    out << "period";
    for (auto o : kAllObjectives)
        out << ',' << objective_column(o);
    out << '\n';
    for (auto w : {Window::train, Window::test}) {
        out << (w == Window::train ? "training" : "test");
        for (auto o : kAllObjectives) {
            auto it = std::find_if(reports.begin(), reports.end(), [&](const BacktestReport& r) {
                return r.objective == o && r.window == w;
            });
            out << ',' << (it != reports.end() ? fixed4(it->cumulative_return) : "NA");
        }
        out << '\n';
    }
    return out.str();
}

std::string summary_csv(const std::vector<NamedSummary>& rows)
{
    std::ostringstream out;
    out << "universe,best_train,best_test,max_sharpe,max_sortino,max_calmar\n";
    auto name = [](const std::optional<Objective>& o) {
        return o ? std::string(to_string(*o)) : std::string("NA");
    };
    for (const auto& [universe, row] : rows) {
        out << universe << ',' << name(row.best_train) << ',' << name(row.best_test);
        for (const auto& r : row.max_ratio)
            out << ',' << ratio_cell(r);
        out << '\n';
    }
    return out.str();
}

std::string summary_json(const std::vector<NamedSummary>& rows)
{
    json arr = json::array();
    for (const auto& [universe, row] : rows) {
        json j;
        j["universe"] = universe;
        j["best_train"] = row.best_train ? json(std::string(to_string(*row.best_train))) : json(nullptr);
        j["best_test"] = row.best_test ? json(std::string(to_string(*row.best_test))) : json(nullptr);
        for (auto o : kAllObjectives) {
            const auto& r = row.max_ratio[static_cast<int>(o)];
            j[objective_column(o)] = r.valid() ? json(round4(r.value())) : json(nullptr);
        }
        arr.push_back(j);
    }
    json doc;
    doc["summary"] = arr;
    return doc.dump(2) + "\n";
}

std::string frontier_svg(const std::vector<Candidate>& candidates, Objective objective,
                         std::optional<std::size_t> best, std::optional<std::size_t> min_risk,
                         const std::vector<std::size_t>& frontier_members, const std::string& title)
{
    if (candidates.empty())
        throw DataError("frontier plot: empty candidate set");
    const auto axis = risk_axis(objective);

    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    bool any = false;
    for (const auto& c : candidates) {
        auto x = risk_value(c.metrics, axis);
        if (!x)
            continue;
        double y = c.metrics.annual_return;
        if (!any) {
            x_lo = x_hi = *x;
            y_lo = y_hi = y;
            any = true;
        }
        x_lo = std::min(x_lo, *x);
        x_hi = std::max(x_hi, *x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
    }
    if (!any)
        throw DataError("frontier plot: no candidate has a defined " + std::string(to_string(axis)));
    auto pad = [](double& lo, double& hi) {
        double span = hi - lo;
        if (span <= 0.0)
            span = std::max(std::abs(hi), 1e-3);
        lo -= 0.05 * span;
        hi += 0.05 * span;
    };
    pad(x_lo, x_hi);
    pad(y_lo, y_hi);

    constexpr double W = 640, H = 480, L = 70, R = 20, T = 40, B = 60;
    auto px = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y_lo) / (y_hi - y_lo) * (H - T - B); };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << xml_escape(title) << "</text>\n";

    // axes and ticks
    s << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\"/>\n"
      << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int k = 0; k <= 5; ++k) {
        double xv = x_lo + (x_hi - x_lo) * k / 5.0;
        double yv = y_lo + (y_hi - y_lo) * k / 5.0;
        s << "<text x=\"" << svg_num(px(xv)) << "\" y=\"" << H - B + 16
          << "\" text-anchor=\"middle\">" << fixed4(xv) << "</text>\n"
          << "<text x=\"" << L - 6 << "\" y=\"" << svg_num(py(yv) + 4)
          << "\" text-anchor=\"end\">" << fixed4(yv) << "</text>\n";
    }
    s << "</g>\n"
      << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << axis_label(objective)
      << "</text>\n"
      << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << (T + H - B) / 2 << ")\">Annual return</text>\n";

    s << "<g class=\"candidates\" fill=\"#7f7f7f\" fill-opacity=\"0.45\">\n";
    for (const auto& c : candidates) {
        auto x = risk_value(c.metrics, axis);
        if (!x)
            continue;
        s << "<circle cx=\"" << svg_num(px(*x)) << "\" cy=\"" << svg_num(py(c.metrics.annual_return))
          << "\" r=\"1.5\"/>\n";
    }
    s << "</g>\n";

    if (!frontier_members.empty()) {
        s << "<polyline class=\"frontier\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < frontier_members.size(); ++i) {
            const auto& m = candidates.at(frontier_members[i]).metrics;
            s << (i ? " " : "") << svg_num(px(*risk_value(m, axis))) << ','
              << svg_num(py(m.annual_return));
        }
        s << "\"/>\n";
    }

    auto marker = [&](std::size_t k, const char* cls, const char* color) {
        const auto& m = candidates.at(k).metrics;
        s << "<circle class=\"" << cls << "\" cx=\"" << svg_num(px(*risk_value(m, axis))) << "\" cy=\""
          << svg_num(py(m.annual_return)) << "\" r=\"6\" fill=\"" << color
          << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    };
    if (min_risk)
        marker(*min_risk, "min-risk", "blue");
    if (best)
        marker(*best, "max-ratio", "red");
    s << "</svg>\n";
    return s.str();
}

} // namespace mcport::report
