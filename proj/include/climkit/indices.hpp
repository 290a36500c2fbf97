#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "climkit/core.hpp"
#include "climkit/ingest.hpp"

namespace climkit::indices {

constexpr double kBaseTempF = 65.0;
constexpr double kBaseTempC = 18.0;

/// Reference mean / standard deviation for one (variable, period). Period
/// keys 1..12 are calendar months, 13..16 the four seasons.
struct ReferenceStats {
    Variable variable = Variable::t90;
    int period_key = 0;
    double mu = 0.0;
    double sigma = 0.0;
};

inline int period_key(Season s) { return 13 + static_cast<int>(s); }
inline int period_key_month(int month) { return month; }

class ReferenceTable {
  public:
    void insert(ReferenceStats stats) {
        if (!(stats.sigma > 0.0))
            throw Error("reference sigma must be positive for " +
                        std::string(to_string(stats.variable)) + " period " +
                        std::to_string(stats.period_key));
        auto key = std::make_pair(stats.variable, stats.period_key);
        if (!entries_.emplace(key, stats).second)
            throw Error("duplicate reference entry");
    }

    const ReferenceStats& at(Variable v, int period) const {
        auto it = entries_.find(std::make_pair(v, period));
        if (it == entries_.end())
            throw Error("missing reference entry for " + std::string(to_string(v)) +
                        " period " + std::to_string(period));
        return it->second;
    }

    std::size_t size() const { return entries_.size(); }

  private:
    std::map<std::pair<Variable, int>, ReferenceStats> entries_;
};

inline double daily_mean_temp(const DailyWeatherRecord& rec) {
    if (rec.tmax < rec.tmin) throw Error("tmax < tmin in daily record");
    return (rec.tmax + rec.tmin) / 2.0;
}

inline double daily_cdd(double t_mean, double base = kBaseTempF) {
    return std::max(t_mean - base, 0.0);
}

inline double daily_hdd(double t_mean, double base = kBaseTempF) {
    return std::max(base - t_mean, 0.0);
}

/// Total rainfall over a window of daily measurements.
inline double accumulate_pre(std::span<const double> daily_rain) {
    double sum = 0.0;
    for (double r : daily_rain) {
        if (r < 0.0) throw Error("negative rainfall in accumulation window");
        sum += r;
    }
    return sum;
}

namespace detail {

inline int days_in_month(int year, int month) {
    static constexpr int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return month == 2 && leap ? 29 : days[month - 1];
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v, double mu) {
    if (v.size() < 2) throw Error("need at least 2 values for a standard deviation");
    double ss = 0.0;
    for (double x : v) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/// Nearest-rank empirical percentile (q in (0,1)) of a sorted copy.
inline double percentile_nearest_rank(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    auto n = static_cast<double>(v.size());
    auto rank = static_cast<std::size_t>(std::ceil(q * n));
    rank = std::max<std::size_t>(rank, 1);
    return v[rank - 1];
}

}  // namespace detail

/// Monthly CDD/HDD/PRE for one station. Only calendar-complete months are
/// emitted; partial months are skipped and counted.
struct MonthlyIndices {
    std::vector<ingest::MonthlyObservation> rows;
    std::size_t skipped_months = 0;
};

inline MonthlyIndices monthly_weather_indices(const std::vector<DailyWeatherRecord>& daily,
                                              const std::string& station,
                                              double base = kBaseTempF) {
    std::map<std::pair<int, int>, std::vector<const DailyWeatherRecord*>> by_month;
    for (const auto& rec : daily) by_month[{rec.year, rec.month}].push_back(&rec);

    MonthlyIndices out;
    for (const auto& [ym, recs] : by_month) {
        auto [year, month] = ym;
        if (static_cast<int>(recs.size()) != detail::days_in_month(year, month)) {
            ++out.skipped_months;
            continue;
        }
        double cdd = 0.0, hdd = 0.0, pre = 0.0;
        for (const auto* rec : recs) {
            double t = daily_mean_temp(*rec);
            cdd += daily_cdd(t, base);
            hdd += daily_hdd(t, base);
            if (rec->has_rain) pre += rec->rain;
        }
        out.rows.push_back({station, Variable::cdd, year, month, cdd});
        out.rows.push_back({station, Variable::hdd, year, month, hdd});
        out.rows.push_back({station, Variable::pre, year, month, pre});
    }
    return out;
}

/// Per-(variable, season) mean and sd over the reference window, for later
/// anomaly standardization. Defaults to the 1961-1990 reference period.
inline ReferenceTable make_reference_stats(const SeasonalTable& raw, int ref_first = 1961,
                                           int ref_last = 1990) {
    std::map<std::pair<Variable, int>, std::vector<double>> groups;
    for (const auto& obs : raw.rows()) {
        if (obs.year < ref_first || obs.year > ref_last) continue;
        groups[{obs.variable, period_key(obs.season)}].push_back(obs.value);
    }
    if (groups.empty()) throw Error("no observations inside the reference period");
    ReferenceTable table;
    for (const auto& [key, values] : groups) {
        double mu = detail::mean_of(values);
        double sigma = detail::sample_sd(values, mu);
        if (!(sigma > 0.0))
            throw Error("zero variance in reference period for " +
                        std::string(to_string(key.first)));
        table.insert({key.first, key.second, mu, sigma});
    }
    return table;
}

/// (value - mu) / sigma with period-matched reference stats: a summer value
/// is standardized by the summer entry for its variable.
inline SeasonalTable standardize_component(const SeasonalTable& raw, const ReferenceTable& ref) {
    SeasonalTable out;
    for (const auto& obs : raw.rows()) {
        const auto& stats = ref.at(obs.variable, period_key(obs.season));
        out.insert({obs.region, obs.variable, obs.year, obs.season,
                    (obs.value - stats.mu) / stats.sigma});
    }
    return out;
}

/// Composite index: mean of the six standardized components with T10
/// entering negatively. Every (region, year, season) touched by any
/// component must carry all six.
inline SeasonalTable composite_aci(const SeasonalTable& anomalies) {
    static const Variable components[6] = {Variable::t90, Variable::t10, Variable::p,
                                           Variable::d, Variable::w, Variable::s};
    std::set<std::tuple<std::string, int, Season>> periods;
    for (const auto& obs : anomalies.rows())
        periods.emplace(obs.region, obs.year, obs.season);

    SeasonalTable out;
    for (const auto& [region, year, season] : periods) {
        double values[6];
        for (int i = 0; i < 6; ++i) {
            const double* v = anomalies.find(region, components[i], year, season);
            if (!v)
                throw Error("missing component " + std::string(to_string(components[i])) +
                            " for " + region + " " + std::to_string(year) + " " +
                            to_string(season));
            values[i] = *v;
        }
        double aci = (values[0] - values[1] + values[2] + values[3] + values[4] + values[5]) / 6.0;
        out.insert({region, Variable::aci, year, season, aci});
    }
    return out;
}

/// Raw T90/T10/P values from daily station data, for synthetic-data tests
/// only (production pipelines consume the published anomaly series).
///
/// T90/T10 thresholds are empirical 90th/10th percentiles of same-calendar-day
/// mean temperatures over the reference years, exceedance counted inclusively
/// (>= / <=). P is the largest 5-day rainfall sum with the window kept inside
/// a single month.
struct RawAciComponents {
    SeasonalTable seasonal;  // T90/T10 as percentage of days, P in mm
};

inline RawAciComponents aci_raw_seasonal(const std::vector<DailyWeatherRecord>& daily,
                                         const std::string& region, int ref_first = 1961,
                                         int ref_last = 1990) {
    // Percentile thresholds per calendar day.
    std::map<std::pair<int, int>, std::vector<double>> ref_temps;
    for (const auto& rec : daily) {
        if (rec.year < ref_first || rec.year > ref_last) continue;
        ref_temps[{rec.month, rec.day}].push_back(daily_mean_temp(rec));
    }
    if (ref_temps.empty()) throw Error("no daily data inside the reference period");
    std::map<std::pair<int, int>, std::pair<double, double>> thresholds;  // p90, p10
    for (const auto& [day, temps] : ref_temps) {
        thresholds[day] = {detail::percentile_nearest_rank(temps, 0.90),
                           detail::percentile_nearest_rank(temps, 0.10)};
    }

    // Monthly exceedance counts and Rx5day, complete months only.
    std::map<std::pair<int, int>, std::vector<const DailyWeatherRecord*>> by_month;
    for (const auto& rec : daily) by_month[{rec.year, rec.month}].push_back(&rec);

    struct MonthStats {
        int days = 0, hot = 0, cold = 0;
        double rx5 = 0.0;
    };
    std::map<std::pair<int, int>, MonthStats> months;
    for (const auto& [ym, recs] : by_month) {
        auto [year, month] = ym;
        if (static_cast<int>(recs.size()) != detail::days_in_month(year, month)) continue;
        MonthStats st;
        st.days = static_cast<int>(recs.size());
        std::vector<double> rain;
        rain.reserve(recs.size());
        for (const auto* rec : recs) {
            auto it = thresholds.find({rec->month, rec->day});
            if (it == thresholds.end())
                throw Error("no reference threshold for calendar day " +
                            std::to_string(rec->month) + "-" + std::to_string(rec->day));
            double t = daily_mean_temp(*rec);
            if (t >= it->second.first) ++st.hot;
            if (t <= it->second.second) ++st.cold;
            rain.push_back(rec->has_rain ? rec->rain : 0.0);
        }
        for (std::size_t i = 0; i + 5 <= rain.size(); ++i) {
            double w = accumulate_pre(std::span<const double>(rain.data() + i, 5));
            st.rx5 = std::max(st.rx5, w);
        }
        months[ym] = st;
    }

    // Seasonal: percentages over the season's days, Rx5day as the seasonal max.
    using SKey = std::pair<int, Season>;
    std::map<SKey, std::pair<MonthStats, int>> seasons;  // accumulated, month count
    for (const auto& [ym, st] : months) {
        auto [season, label_year] = ingest::detail::season_of_month(ym.first, ym.second);
        auto& slot = seasons[{label_year, season}];
        slot.first.days += st.days;
        slot.first.hot += st.hot;
        slot.first.cold += st.cold;
        slot.first.rx5 = std::max(slot.first.rx5, st.rx5);
        slot.second += 1;
    }
    RawAciComponents out;
    for (const auto& [key, slot] : seasons) {
        if (slot.second != 3) continue;  // incomplete season
        const auto& st = slot.first;
        double days = static_cast<double>(st.days);
        out.seasonal.insert({region, Variable::t90, key.first, key.second, 100.0 * st.hot / days});
        out.seasonal.insert({region, Variable::t10, key.first, key.second, 100.0 * st.cold / days});
        out.seasonal.insert({region, Variable::p, key.first, key.second, st.rx5});
    }
    return out;
}

}  // namespace climkit::indices
