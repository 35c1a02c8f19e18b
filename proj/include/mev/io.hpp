#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mev/hetreg.hpp"

namespace mev {

struct SeriesRecord {
    std::int64_t epoch_s = 0;  // seconds since 1970-01-01T00:00:00Z
    int year = 0;              // UTC calendar year
    double value = 0.0;        // NaN marks an explicit missing value
};

/// Delimiter-separated series: `# variable=<name> units=<u>` header, then
/// `timestamp,value` rows with strictly increasing ISO-8601 UTC timestamps.
struct TimeSeriesFile {
    std::string variable;
    std::string units;
    std::vector<SeriesRecord> records;
};

TimeSeriesFile read_series(const std::filesystem::path& path);

/// Values are written with %.17g so a read-back reproduces the doubles
/// exactly. Write is atomic (temp file + rename).
void write_series(const std::filesystem::path& path, const TimeSeriesFile& series);

struct AnnualMaximaSeries {
    struct Entry {
        int year = 0;
        double max = 0.0;
        double coverage = 1.0;  // observed / expected samples
    };
    std::vector<Entry> entries;        // one per retained year, ascending
    std::vector<int> dropped_years;    // coverage below the floor
};

/// Per-calendar-year maxima of the present values. The expected sample count
/// per year comes from the median sampling interval of the series, so both
/// hourly records and one-value-per-year maxima files work unchanged.
AnnualMaximaSeries annual_maxima(const TimeSeriesFile& series, double coverage_floor);

struct PairingResult {
    PairedMaxima pairs;             // y = z - x on the common years
    std::vector<int> unpaired_x;    // years only in x
    std::vector<int> unpaired_z;    // years only in z
};

PairingResult pair_differences(const AnnualMaximaSeries& x_max, const AnnualMaximaSeries& z_max);

// --- helpers shared by the CLI and the simulators ---

/// Annual-maxima series with one mid-year stamped row per year.
TimeSeriesFile make_annual_series(const std::string& variable, const std::string& units,
                                  int start_year, const std::vector<double>& values);

/// Exceedance series with counts[i] values in year start_year + i, stamped
/// evenly through each year.
TimeSeriesFile make_exceedance_series(const std::string& variable, const std::string& units,
                                      int start_year, const std::vector<double>& values,
                                      const std::vector<int>& counts);

void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string format_timestamp(std::int64_t epoch_s);

/// Nearest double to the %.10g rendering of v; fixes the float precision of
/// all JSON report fields.
double round_sig10(double v);

}  // namespace mev
