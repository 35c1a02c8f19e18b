#include "mev/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "mev/errors.hpp"

namespace mev {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Howard Hinnant's civil-from-days / days-from-civil arithmetic.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

std::int64_t year_start_epoch(int y) { return days_from_civil(y, 1, 1) * 86400; }

std::int64_t seconds_in_year(int y) { return (is_leap(y) ? 366 : 365) * std::int64_t{86400}; }

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line, const std::string& what) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": " << what;
    throw ParseError(msg.str());
}

// "YYYY-MM-DDTHH:MM:SSZ" or the date-only prefix.
bool parse_iso8601(const std::string& s, std::int64_t& epoch, int& year) {
    int y, mo, d, h = 0, mi = 0, se = 0;
    if (s.size() == 20 && s[10] == 'T' && s.back() == 'Z') {
        if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2dZ", &y, &mo, &d, &h, &mi, &se) != 6)
            return false;
    } else if (s.size() == 10) {
        if (std::sscanf(s.c_str(), "%4d-%2d-%2d", &y, &mo, &d) != 3) return false;
    } else {
        return false;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) return false;
    epoch = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
    year = y;
    return true;
}

}  // namespace

std::string format_timestamp(std::int64_t epoch_s) {
    std::int64_t days = epoch_s / 86400;
    std::int64_t rem = epoch_s % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

double round_sig10(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::strtod(buf, nullptr);
}

TimeSeriesFile read_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");

    TimeSeriesFile series;
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
    ++line_no;
    if (line.rfind("# ", 0) != 0) parse_fail(path, line_no, "missing '# variable=... units=...' header");
    {
        std::istringstream hs(line.substr(2));
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("variable=", 0) == 0) series.variable = tok.substr(9);
            else if (tok.rfind("units=", 0) == 0) series.units = tok.substr(6);
        }
        if (series.variable.empty()) parse_fail(path, line_no, "header missing variable=");
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line == "timestamp,value") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) parse_fail(path, line_no, "expected 'timestamp,value'");
        const std::string ts = line.substr(0, comma);
        std::string val = line.substr(comma + 1);
        while (!val.empty() && (val.back() == '\r' || val.back() == ' ')) val.pop_back();

        SeriesRecord rec;
        if (!parse_iso8601(ts, rec.epoch_s, rec.year))
            parse_fail(path, line_no, "invalid ISO-8601 UTC timestamp '" + ts + "'");
        if (val.empty() || val == "NaN" || val == "nan") {
            rec.value = kNaN;
        } else {
            char* end = nullptr;
            rec.value = std::strtod(val.c_str(), &end);
            if (end == val.c_str() || *end != '\0')
                parse_fail(path, line_no, "invalid value '" + val + "'");
            if (std::isinf(rec.value)) parse_fail(path, line_no, "non-finite value");
        }
        if (!series.records.empty() && rec.epoch_s <= series.records.back().epoch_s)
            parse_fail(path, line_no, "timestamps not strictly increasing");
        series.records.push_back(rec);
    }
    if (series.records.empty()) throw ParseError(path.string() + ": no data rows");
    return series;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_series(const std::filesystem::path& path, const TimeSeriesFile& series) {
    std::ostringstream out;
    out << "# variable=" << series.variable << " units=" << series.units << "\n";
    char buf[48];
    for (const SeriesRecord& r : series.records) {
        out << format_timestamp(r.epoch_s) << ",";
        if (std::isnan(r.value)) {
            out << "NaN";
        } else {
            std::snprintf(buf, sizeof buf, "%.17g", r.value);
            out << buf;
        }
        out << "\n";
    }
    write_text_atomic(path, out.str());
}

AnnualMaximaSeries annual_maxima(const TimeSeriesFile& series, double coverage_floor) {
    // Cadence from the median positive timestamp delta.
    std::int64_t cadence = 0;
    if (series.records.size() >= 2) {
        std::vector<std::int64_t> diffs;
        diffs.reserve(series.records.size() - 1);
        for (std::size_t i = 1; i < series.records.size(); ++i)
            diffs.push_back(series.records[i].epoch_s - series.records[i - 1].epoch_s);
        std::nth_element(diffs.begin(), diffs.begin() + diffs.size() / 2, diffs.end());
        cadence = diffs[diffs.size() / 2];
    }

    struct YearAgg {
        int observed = 0;
        double max = -std::numeric_limits<double>::infinity();
    };
    std::map<int, YearAgg> agg;
    for (const SeriesRecord& r : series.records) {
        YearAgg& a = agg[r.year];
        if (!std::isnan(r.value)) {
            ++a.observed;
            a.max = std::max(a.max, r.value);
        }
    }

    AnnualMaximaSeries out;
    for (const auto& [year, a] : agg) {
        double expected = 1.0;
        if (cadence > 0)
            expected = std::max(1.0, std::floor(static_cast<double>(seconds_in_year(year)) /
                                                static_cast<double>(cadence)));
        const double coverage = std::min(1.0, a.observed / expected);
        if (a.observed == 0 || coverage < coverage_floor) {
            out.dropped_years.push_back(year);
            continue;
        }
        out.entries.push_back({year, a.max, coverage});
    }
    return out;
}

PairingResult pair_differences(const AnnualMaximaSeries& x_max, const AnnualMaximaSeries& z_max) {
    std::map<int, double> x_by_year, z_by_year;
    for (const auto& e : x_max.entries) x_by_year[e.year] = e.max;
    for (const auto& e : z_max.entries) z_by_year[e.year] = e.max;

    PairingResult res;
    for (const auto& [year, xv] : x_by_year) {
        const auto it = z_by_year.find(year);
        if (it == z_by_year.end()) {
            res.unpaired_x.push_back(year);
            continue;
        }
        res.pairs.x.push_back(xv);
        res.pairs.y.push_back(it->second - xv);
        res.pairs.years.push_back(year);
    }
    for (const auto& [year, zv] : z_by_year) {
        (void)zv;
        if (!x_by_year.count(year)) res.unpaired_z.push_back(year);
    }
    return res;
}

TimeSeriesFile make_annual_series(const std::string& variable, const std::string& units,
                                  int start_year, const std::vector<double>& values) {
    TimeSeriesFile s;
    s.variable = variable;
    s.units = units;
    s.records.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const int year = start_year + static_cast<int>(i);
        SeriesRecord r;
        r.year = year;
        r.epoch_s = days_from_civil(year, 7, 1) * 86400;
        r.value = values[i];
        s.records.push_back(r);
    }
    return s;
}

TimeSeriesFile make_exceedance_series(const std::string& variable, const std::string& units,
                                      int start_year, const std::vector<double>& values,
                                      const std::vector<int>& counts) {
    TimeSeriesFile s;
    s.variable = variable;
    s.units = units;
    s.records.reserve(values.size());
    std::size_t idx = 0;
    for (std::size_t yi = 0; yi < counts.size(); ++yi) {
        const int year = start_year + static_cast<int>(yi);
        const int m = counts[yi];
        const std::int64_t base = year_start_epoch(year);
        const std::int64_t span = seconds_in_year(year);
        for (int j = 0; j < m; ++j, ++idx) {
            SeriesRecord r;
            r.year = year;
            r.epoch_s = base + span * (j + 1) / (m + 1);
            r.value = values.at(idx);
            s.records.push_back(r);
        }
    }
    return s;
}

}  // namespace mev
