#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace climkit {

/// Base error type for all library failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a run configuration fails validation (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

/// Meteorological seasons: three-month blocks ending in February, May,
/// August and November. Winter (Dec-Feb) carries the year of its February.
enum class Season : std::uint8_t { winter = 0, spring, summer, autumn };

/// Index variables. cdd/hdd/pre are weather-based indexes, the rest are
/// standardized anomaly components (d, w, s are consumed, never computed).
enum class Variable : std::uint8_t { cdd = 0, hdd, pre, t90, t10, p, d, w, s, aci };

enum class Crop : std::uint8_t { corn = 0, wheat, soybeans };

inline const char* to_string(Season s) {
    switch (s) {
        case Season::winter: return "winter";
        case Season::spring: return "spring";
        case Season::summer: return "summer";
        case Season::autumn: return "autumn";
    }
    throw Error("invalid season value");
}

inline const char* to_string(Variable v) {
    switch (v) {
        case Variable::cdd: return "CDD";
        case Variable::hdd: return "HDD";
        case Variable::pre: return "PRE";
        case Variable::t90: return "T90";
        case Variable::t10: return "T10";
        case Variable::p: return "P";
        case Variable::d: return "D";
        case Variable::w: return "W";
        case Variable::s: return "S";
        case Variable::aci: return "ACI";
    }
    throw Error("invalid variable value");
}

inline const char* to_string(Crop c) {
    switch (c) {
        case Crop::corn: return "corn";
        case Crop::wheat: return "wheat";
        case Crop::soybeans: return "soybeans";
    }
    throw Error("invalid crop value");
}

inline Season season_from_string(const std::string& s) {
    if (s == "winter") return Season::winter;
    if (s == "spring") return Season::spring;
    if (s == "summer") return Season::summer;
    if (s == "autumn") return Season::autumn;
    throw Error("unknown season: '" + s + "'");
}

inline Variable variable_from_string(const std::string& s) {
    if (s == "CDD") return Variable::cdd;
    if (s == "HDD") return Variable::hdd;
    if (s == "PRE") return Variable::pre;
    if (s == "T90") return Variable::t90;
    if (s == "T10") return Variable::t10;
    if (s == "P") return Variable::p;
    if (s == "D") return Variable::d;
    if (s == "W") return Variable::w;
    if (s == "S") return Variable::s;
    if (s == "ACI") return Variable::aci;
    throw Error("unknown variable: '" + s + "'");
}

inline Crop crop_from_string(const std::string& s) {
    if (s == "corn") return Crop::corn;
    if (s == "wheat") return Crop::wheat;
    if (s == "soybeans") return Crop::soybeans;
    throw Error("unknown crop: '" + s + "'");
}

constexpr std::uint8_t kSeasonCount = 4;

inline const std::vector<Season>& all_seasons() {
    static const std::vector<Season> seasons = {Season::winter, Season::spring,
                                                Season::summer, Season::autumn};
    return seasons;
}

/// One daily station record. Temperatures in Fahrenheit unless the
/// pipeline is configured for Celsius, rainfall in millimeters.
struct DailyWeatherRecord {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31
    double tmax = 0.0;
    double tmin = 0.0;
    double rain = 0.0;
    bool has_rain = false;
};

/// One (region, variable, year, season) value: degree-days for CDD/HDD,
/// millimeters for PRE, dimensionless anomaly for ACI components.
struct SeasonalObservation {
    std::string region;
    Variable variable = Variable::cdd;
    int year = 0;
    Season season = Season::winter;
    double value = 0.0;
};

/// Annual regional (or state-level, before aggregation) crop yield in
/// bushels per acre.
struct YieldRecord {
    Crop crop = Crop::corn;
    std::string region;
    int year = 0;
    double yield = 0.0;
};

/// Keyed store of seasonal observations. Enforces uniqueness of the
/// (region, variable, year, season) key; iteration follows insertion order.
class SeasonalTable {
  public:
    using Key = std::tuple<std::string, Variable, int, Season>;

    void insert(SeasonalObservation obs) {
        Key key{obs.region, obs.variable, obs.year, obs.season};
        auto [it, inserted] = index_.emplace(key, rows_.size());
        if (!inserted)
            throw Error("duplicate seasonal observation: " + obs.region + "," +
                        to_string(obs.variable) + "," + std::to_string(obs.year) + "," +
                        to_string(obs.season));
        rows_.push_back(std::move(obs));
    }

    const double* find(const std::string& region, Variable v, int year, Season s) const {
        auto it = index_.find(Key{region, v, year, s});
        return it == index_.end() ? nullptr : &rows_[it->second].value;
    }

    bool contains(const std::string& region, Variable v, int year, Season s) const {
        return find(region, v, year, s) != nullptr;
    }

    const std::vector<SeasonalObservation>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

  private:
    std::vector<SeasonalObservation> rows_;
    std::map<Key, std::size_t> index_;
};

/// Keyed store of yield records, one per (crop, region, year).
class YieldTable {
  public:
    using Key = std::tuple<Crop, std::string, int>;

    void insert(YieldRecord rec) {
        if (!(rec.yield > 0.0))
            throw Error("non-positive yield for " + rec.region + "/" +
                        std::to_string(rec.year));
        Key key{rec.crop, rec.region, rec.year};
        auto [it, inserted] = index_.emplace(key, rows_.size());
        if (!inserted)
            throw Error("duplicate yield record: " + rec.region + "," +
                        std::to_string(rec.year));
        rows_.push_back(std::move(rec));
    }

    const double* find(Crop c, const std::string& region, int year) const {
        auto it = index_.find(Key{c, region, year});
        return it == index_.end() ? nullptr : &rows_[it->second].yield;
    }

    const std::vector<YieldRecord>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

  private:
    std::vector<YieldRecord> rows_;
    std::map<Key, std::size_t> index_;
};

}  // namespace climkit
