#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "climkit/core.hpp"
#include "climkit/csv.hpp"

namespace climkit::ingest {

struct DailyLoadResult {
    std::vector<DailyWeatherRecord> records;
    std::size_t rejected = 0;  // rows dropped for tmax < tmin
};

namespace detail {

inline bool parse_date(const std::string& s, int& y, int& m, int& d) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    y = std::stoi(s.substr(0, 4));
    m = std::stoi(s.substr(5, 2));
    d = std::stoi(s.substr(8, 2));
    return m >= 1 && m <= 12 && d >= 1 && d <= 31;
}

inline long date_ordinal(int y, int m, int d) {
    return static_cast<long>(y) * 416 + m * 32 + d;  // strictly monotone in (y,m,d)
}

}  // namespace detail

/// Loads one station file with columns date,tmax_f,tmin_f,rain_mm.
/// Rows violating tmax >= tmin are rejected and counted; any malformed row
/// aborts with its line number. Dates must be strictly increasing.
inline DailyLoadResult load_daily_weather(const std::filesystem::path& path) {
    auto table = csv::read(path);
    csv::expect_header(table, {"date", "tmax_f", "tmin_f", "rain_mm"}, path.string());
    DailyLoadResult result;
    long prev_ordinal = -1;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string context = path.string() + " row " + std::to_string(i + 2);
        if (row.size() != 4) throw Error("malformed row (field count) in " + context);
        DailyWeatherRecord rec;
        if (!detail::parse_date(row[0], rec.year, rec.month, rec.day))
            throw Error("malformed date '" + row[0] + "' in " + context);
        rec.tmax = csv::parse_double(row[1], context);
        rec.tmin = csv::parse_double(row[2], context);
        if (!row[3].empty()) {
            rec.rain = csv::parse_double(row[3], context);
            rec.has_rain = true;
            if (rec.rain < 0.0) throw Error("negative rainfall in " + context);
        }
        long ord = detail::date_ordinal(rec.year, rec.month, rec.day);
        if (ord <= prev_ordinal) throw Error("dates not strictly increasing at " + context);
        prev_ordinal = ord;
        if (rec.tmax < rec.tmin) {
            ++result.rejected;  // sensor error, drop the row
            continue;
        }
        result.records.push_back(rec);
    }
    if (result.records.empty()) throw Error("no records in " + path.string());
    return result;
}

struct MonthlyObservation {
    std::string region;
    Variable variable = Variable::cdd;
    int year = 0;
    int month = 0;
    double value = 0.0;
};

/// Loads region,variable,year,month,value rows ("region" holds a state id
/// for state-level files).
inline std::vector<MonthlyObservation> load_index_monthly(const std::filesystem::path& path) {
    auto table = csv::read(path);
    csv::expect_header(table, {"region", "variable", "year", "month", "value"}, path.string());
    std::vector<MonthlyObservation> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string context = path.string() + " row " + std::to_string(i + 2);
        if (row.size() != 5) throw Error("malformed row (field count) in " + context);
        MonthlyObservation obs;
        obs.region = row[0];
        obs.variable = variable_from_string(row[1]);
        obs.year = csv::parse_int(row[2], context);
        obs.month = csv::parse_int(row[3], context);
        if (obs.month < 1 || obs.month > 12) throw Error("month out of range in " + context);
        obs.value = csv::parse_double(row[4], context);
        rows.push_back(std::move(obs));
    }
    if (rows.empty()) throw Error("no records in " + path.string());
    return rows;
}

/// Loads the canonical seasonal format region,variable,year,season,value.
/// Used both for published ACI anomaly downloads and for this library's own
/// seasonal index output.
inline SeasonalTable load_seasonal(const std::filesystem::path& path) {
    auto table = csv::read(path);
    csv::expect_header(table, {"region", "variable", "year", "season", "value"}, path.string());
    SeasonalTable out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string context = path.string() + " row " + std::to_string(i + 2);
        if (row.size() != 5) throw Error("malformed row (field count) in " + context);
        SeasonalObservation obs;
        obs.region = row[0];
        obs.variable = variable_from_string(row[1]);
        obs.year = csv::parse_int(row[2], context);
        obs.season = season_from_string(row[3]);
        obs.value = csv::parse_double(row[4], context);
        out.insert(std::move(obs));
    }
    if (out.empty()) throw Error("no records in " + path.string());
    return out;
}

inline YieldTable load_yields(const std::filesystem::path& path) {
    auto table = csv::read(path);
    csv::expect_header(table, {"crop", "region", "year", "yield_bu_acre"}, path.string());
    YieldTable out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string context = path.string() + " row " + std::to_string(i + 2);
        if (row.size() != 4) throw Error("malformed row (field count) in " + context);
        YieldRecord rec;
        rec.crop = crop_from_string(row[0]);
        rec.region = row[1];
        rec.year = csv::parse_int(row[2], context);
        rec.yield = csv::parse_double(row[3], context);
        if (!(rec.yield > 0.0)) throw Error("non-positive yield in " + context);
        out.insert(std::move(rec));
    }
    if (out.empty()) throw Error("no records in " + path.string());
    return out;
}

/// state,region mapping. Alaska-style exclusions are handled here: a state
/// absent from the file simply never contributes.
inline std::map<std::string, std::string> load_regions(const std::filesystem::path& path) {
    auto table = csv::read(path);
    csv::expect_header(table, {"state", "region"}, path.string());
    std::map<std::string, std::string> mapping;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (row.size() != 2)
            throw Error("malformed row in " + path.string() + " row " + std::to_string(i + 2));
        if (!mapping.emplace(row[0], row[1]).second)
            throw Error("duplicate state '" + row[0] + "' in " + path.string());
    }
    return mapping;
}

struct SeasonGap {
    std::string region;
    Variable variable = Variable::cdd;
    int year = 0;
    Season season = Season::winter;
    int months_present = 0;
};

struct SeasonalAggregation {
    SeasonalTable table;
    std::vector<SeasonGap> gaps;
};

namespace detail {

/// Maps a calendar month to its meteorological season and label year.
/// December belongs to the following year's winter.
inline std::pair<Season, int> season_of_month(int year, int month) {
    switch (month) {
        case 12: return {Season::winter, year + 1};
        case 1:
        case 2: return {Season::winter, year};
        case 3:
        case 4:
        case 5: return {Season::spring, year};
        case 6:
        case 7:
        case 8: return {Season::summer, year};
        case 9:
        case 10:
        case 11: return {Season::autumn, year};
        default: throw Error("month out of range: " + std::to_string(month));
    }
}

}  // namespace detail

/// Sums monthly values into meteorological seasons. A season is emitted only
/// when all three months are present; incomplete seasons land in the gap
/// report instead of being imputed.
inline SeasonalAggregation monthly_to_seasonal(const std::vector<MonthlyObservation>& monthly) {
    using Key = std::tuple<std::string, Variable, int, Season>;
    std::map<Key, std::pair<double, int>> acc;  // sum, month count
    std::set<std::tuple<std::string, Variable, int, int>> seen;
    for (const auto& obs : monthly) {
        if (!seen.emplace(obs.region, obs.variable, obs.year, obs.month).second)
            throw Error("duplicate monthly observation: " + obs.region + "," +
                        to_string(obs.variable) + "," + std::to_string(obs.year) + "-" +
                        std::to_string(obs.month));
        auto [season, label_year] = detail::season_of_month(obs.year, obs.month);
        auto& slot = acc[Key{obs.region, obs.variable, label_year, season}];
        slot.first += obs.value;
        slot.second += 1;
    }
    SeasonalAggregation out;
    for (const auto& [key, slot] : acc) {
        const auto& [region, variable, year, season] = key;
        if (slot.second == 3) {
            out.table.insert({region, variable, year, season, slot.first});
        } else {
            out.gaps.push_back({region, variable, year, season, slot.second});
        }
    }
    return out;
}

/// Unweighted mean of the member states' seasonal values per region.
/// States are summed in lexicographic order so the result does not depend
/// on input row order.
inline SeasonalTable aggregate_states_to_region(const SeasonalTable& state_rows,
                                                const std::map<std::string, std::string>& mapping) {
    using Key = std::tuple<std::string, Variable, int, Season>;
    std::map<Key, std::map<std::string, double>> groups;
    for (const auto& obs : state_rows.rows()) {
        auto it = mapping.find(obs.region);
        if (it == mapping.end())
            throw Error("state '" + obs.region + "' missing from region mapping");
        groups[Key{it->second, obs.variable, obs.year, obs.season}].emplace(obs.region, obs.value);
    }
    SeasonalTable out;
    for (const auto& [key, states] : groups) {
        double sum = 0.0;
        for (const auto& [state, value] : states) sum += value;
        out.insert({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key),
                    sum / static_cast<double>(states.size())});
    }
    return out;
}

/// Same equal-weight averaging for state-level yields.
inline YieldTable aggregate_yields_to_region(const YieldTable& state_rows,
                                             const std::map<std::string, std::string>& mapping) {
    using Key = std::tuple<Crop, std::string, int>;
    std::map<Key, std::map<std::string, double>> groups;
    for (const auto& rec : state_rows.rows()) {
        auto it = mapping.find(rec.region);
        if (it == mapping.end())
            throw Error("state '" + rec.region + "' missing from region mapping");
        groups[Key{rec.crop, it->second, rec.year}].emplace(rec.region, rec.yield);
    }
    YieldTable out;
    for (const auto& [key, states] : groups) {
        double sum = 0.0;
        for (const auto& [state, value] : states) sum += value;
        out.insert({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                    sum / static_cast<double>(states.size())});
    }
    return out;
}

inline std::string seasonal_to_csv(const SeasonalTable& table) {
    std::string out = "region,variable,year,season,value\n";
    for (const auto& obs : table.rows()) {
        out += obs.region;
        out += ',';
        out += to_string(obs.variable);
        out += ',';
        out += std::to_string(obs.year);
        out += ',';
        out += to_string(obs.season);
        out += ',';
        out += csv::format_double(obs.value);
        out += '\n';
    }
    return out;
}

inline std::string yields_to_csv(const YieldTable& table) {
    std::string out = "crop,region,year,yield_bu_acre\n";
    for (const auto& rec : table.rows()) {
        out += to_string(rec.crop);
        out += ',';
        out += rec.region;
        out += ',';
        out += std::to_string(rec.year);
        out += ',';
        out += csv::format_double(rec.yield);
        out += '\n';
    }
    return out;
}

}  // namespace climkit::ingest
