#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "climkit/indices.hpp"

using namespace climkit;

TEST_CASE("daily mean temperature", "[indices]") {
    CHECK(indices::daily_mean_temp({2001, 7, 4, 80.0, 70.0}) == 75.0);
    CHECK(indices::daily_mean_temp({2001, 7, 4, 65.0, 65.0}) == 65.0);
    CHECK(indices::daily_mean_temp({2001, 7, 4, 100.0, 0.0}) == 50.0);
    CHECK_THROWS(indices::daily_mean_temp({2001, 7, 4, 60.0, 70.0}));
}

TEST_CASE("degree day clamping", "[indices]") {
    CHECK(indices::daily_cdd(75.0) == 10.0);
    CHECK(indices::daily_cdd(65.0) == 0.0);
    CHECK(indices::daily_cdd(60.0) == 0.0);
    CHECK(indices::daily_hdd(60.0) == 5.0);
    CHECK(indices::daily_hdd(65.0) == 0.0);
    CHECK(indices::daily_hdd(80.0) == 0.0);
    // 18C base for Celsius inputs
    CHECK(indices::daily_cdd(21.0, indices::kBaseTempC) == 3.0);
}

TEST_CASE("cdd/hdd complementarity property", "[indices]") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> temp(-30.0, 120.0);
    std::uniform_real_distribution<double> base(50.0, 70.0);
    for (int i = 0; i < 2000; ++i) {
        double t = temp(rng), b = base(rng);
        double cdd = indices::daily_cdd(t, b), hdd = indices::daily_hdd(t, b);
        CHECK(cdd + hdd == std::abs(t - b));
        CHECK(std::min(cdd, hdd) == 0.0);
    }
}

TEST_CASE("rainfall accumulation", "[indices]") {
    std::vector<double> rain = {1.0, 2.0, 3.0};
    CHECK(indices::accumulate_pre(rain) == 6.0);
    std::vector<double> zeros(10, 0.0);
    CHECK(indices::accumulate_pre(zeros) == 0.0);
    CHECK(indices::accumulate_pre({}) == 0.0);
    std::vector<double> bad = {1.0, -0.5};
    CHECK_THROWS(indices::accumulate_pre(bad));
}

namespace {

SeasonalTable synthetic_component(Variable v, int first_year, int last_year, unsigned seed,
                                  double mu = 10.0, double spread = 2.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    SeasonalTable table;
    for (int year = first_year; year <= last_year; ++year)
        for (Season s : all_seasons())
            table.insert({"SYN", v, year, s,
                          mu + static_cast<int>(s) + spread * noise(rng)});
    return table;
}

}  // namespace

TEST_CASE("standardize_component matches the anomaly formula", "[indices]") {
    SECTION("single value against explicit stats") {
        indices::ReferenceTable ref;
        ref.insert({Variable::t90, indices::period_key(Season::summer), 10.0, 2.0});
        SeasonalTable raw;
        raw.insert({"SYN", Variable::t90, 2000, Season::summer, 12.0});
        auto anoms = indices::standardize_component(raw, ref);
        CHECK(*anoms.find("SYN", Variable::t90, 2000, Season::summer) == 1.0);

        SeasonalTable at_mean;
        at_mean.insert({"SYN", Variable::t90, 2001, Season::summer, 10.0});
        CHECK(*indices::standardize_component(at_mean, ref)
                   .find("SYN", Variable::t90, 2001, Season::summer) == 0.0);
    }

    SECTION("missing reference entry fails") {
        indices::ReferenceTable ref;
        ref.insert({Variable::t90, indices::period_key(Season::summer), 10.0, 2.0});
        SeasonalTable raw;
        raw.insert({"SYN", Variable::t90, 2000, Season::winter, 12.0});
        CHECK_THROWS_WITH(indices::standardize_component(raw, ref),
                          Catch::Matchers::ContainsSubstring("missing reference"));
    }

    SECTION("standardizing the reference window gives mean 0, sd 1 per period") {
        auto raw = synthetic_component(Variable::t90, 1961, 1990, 101);
        auto ref = indices::make_reference_stats(raw, 1961, 1990);
        auto anoms = indices::standardize_component(raw, ref);
        // Independent two-pass mean/sd per season over the output.
        for (Season s : all_seasons()) {
            std::vector<double> values;
            for (const auto& obs : anoms.rows())
                if (obs.season == s) values.push_back(obs.value);
            REQUIRE(values.size() == 30);
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
            CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.0, 1e-12));
            CHECK_THAT(sd, Catch::Matchers::WithinAbs(1.0, 1e-12));
        }
    }

    SECTION("affine equivariance: shifting raw by c shifts anomalies by c/sigma") {
        auto raw = synthetic_component(Variable::p, 1961, 1990, 103);
        auto ref = indices::make_reference_stats(raw, 1961, 1990);
        SeasonalTable shifted;
        const double c = 3.75;
        for (const auto& obs : raw.rows())
            shifted.insert({obs.region, obs.variable, obs.year, obs.season, obs.value + c});
        auto base = indices::standardize_component(raw, ref);
        auto moved = indices::standardize_component(shifted, ref);
        for (const auto& obs : base.rows()) {
            double sigma = ref.at(obs.variable, indices::period_key(obs.season)).sigma;
            const double* got = moved.find(obs.region, obs.variable, obs.year, obs.season);
            REQUIRE(got != nullptr);
            CHECK_THAT(*got - obs.value, Catch::Matchers::WithinAbs(c / sigma, 1e-10));
        }
    }
}

TEST_CASE("composite ACI", "[indices]") {
    auto make_anoms = [](double t90, double t10, double p, double d, double w, double s) {
        SeasonalTable t;
        t.insert({"SYN", Variable::t90, 2000, Season::summer, t90});
        t.insert({"SYN", Variable::t10, 2000, Season::summer, t10});
        t.insert({"SYN", Variable::p, 2000, Season::summer, p});
        t.insert({"SYN", Variable::d, 2000, Season::summer, d});
        t.insert({"SYN", Variable::w, 2000, Season::summer, w});
        t.insert({"SYN", Variable::s, 2000, Season::summer, s});
        return t;
    };

    SECTION("all zero components give zero") {
        auto aci = indices::composite_aci(make_anoms(0, 0, 0, 0, 0, 0));
        CHECK(*aci.find("SYN", Variable::aci, 2000, Season::summer) == 0.0);
    }

    SECTION("single T90 contribution divides by six") {
        auto aci = indices::composite_aci(make_anoms(6, 0, 0, 0, 0, 0));
        CHECK(*aci.find("SYN", Variable::aci, 2000, Season::summer) == 1.0);
    }

    SECTION("T10 enters with negative sign") {
        auto aci = indices::composite_aci(make_anoms(0, 6, 0, 0, 0, 0));
        CHECK(*aci.find("SYN", Variable::aci, 2000, Season::summer) == -1.0);
    }

    SECTION("missing component is an error") {
        SeasonalTable incomplete;
        incomplete.insert({"SYN", Variable::t90, 2000, Season::summer, 1.0});
        CHECK_THROWS_WITH(indices::composite_aci(incomplete),
                          Catch::Matchers::ContainsSubstring("missing component"));
    }

    SECTION("linearity and T90/T10 swap negates only their contributions") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> val(-2.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            double t90 = val(rng), t10 = val(rng), p = val(rng), d = val(rng), w = val(rng),
                   s = val(rng);
            auto aci = *indices::composite_aci(make_anoms(t90, t10, p, d, w, s))
                            .find("SYN", Variable::aci, 2000, Season::summer);
            auto swapped = *indices::composite_aci(make_anoms(t10, t90, p, d, w, s))
                                .find("SYN", Variable::aci, 2000, Season::summer);
            CHECK_THAT(aci, Catch::Matchers::WithinAbs((t90 - t10 + p + d + w + s) / 6.0, 1e-12));
            CHECK_THAT(aci + swapped,
                       Catch::Matchers::WithinAbs(2.0 * (p + d + w + s) / 6.0, 1e-12));
        }
    }
}

TEST_CASE("monthly weather indices from daily records", "[indices]") {
    std::vector<DailyWeatherRecord> june;
    for (int d = 1; d <= 30; ++d)
        june.push_back({2000, 6, d, 80.0, 70.0, 2.0, true});  // mean temp 75, cdd 10
    auto monthly = indices::monthly_weather_indices(june, "S1");
    REQUIRE(monthly.rows.size() == 3);
    CHECK(monthly.skipped_months == 0);
    for (const auto& row : monthly.rows) {
        if (row.variable == Variable::cdd) CHECK(row.value == 300.0);
        if (row.variable == Variable::hdd) CHECK(row.value == 0.0);
        if (row.variable == Variable::pre) CHECK(row.value == 60.0);
    }

    SECTION("partial month is skipped") {
        june.pop_back();
        auto partial = indices::monthly_weather_indices(june, "S1");
        CHECK(partial.rows.empty());
        CHECK(partial.skipped_months == 1);
    }
}

TEST_CASE("raw ACI components from daily data", "[indices]") {
    // Three ref years with a linear-in-day temperature ramp plus one target
    // year sitting above the ramp: every day counts as hot, none as cold.
    std::vector<DailyWeatherRecord> daily;
    for (int year = 1961; year <= 1963; ++year)
        for (int d = 1; d <= 30; ++d) {
            double t = 60.0 + (year - 1961);
            daily.push_back({year, 6, d, t + 5, t - 5, 0.0, true});
        }
    for (int d = 1; d <= 31; ++d) daily.push_back({1963, 7, d, 70.0, 60.0, 0.0, true});
    for (int d = 1; d <= 31; ++d) daily.push_back({1963, 8, d, 70.0, 60.0, 0.0, true});
    // Complete the seasons for 1961/1962 as well.
    for (int year = 1961; year <= 1962; ++year) {
        for (int d = 1; d <= 31; ++d) daily.push_back({year, 7, d, 70.0, 60.0, 0.0, true});
        for (int d = 1; d <= 31; ++d) daily.push_back({year, 8, d, 70.0, 60.0, 0.0, true});
    }
    std::sort(daily.begin(), daily.end(), [](const auto& a, const auto& b) {
        return std::tuple(a.year, a.month, a.day) < std::tuple(b.year, b.month, b.day);
    });
    // Rain: a 5-day burst in July 1963 inside the month.
    for (auto& rec : daily)
        if (rec.year == 1963 && rec.month == 7 && rec.day >= 10 && rec.day <= 14) rec.rain = 8.0;

    auto raw = indices::aci_raw_seasonal(daily, "SYN", 1961, 1963);
    const double* t90 = raw.seasonal.find("SYN", Variable::t90, 1963, Season::summer);
    const double* p = raw.seasonal.find("SYN", Variable::p, 1963, Season::summer);
    REQUIRE(t90 != nullptr);
    REQUIRE(p != nullptr);
    // June 1963 is the hottest of the three reference Junes: inclusive rule
    // makes each of its 30 days count; July/August are all ties at the
    // maximum, also counted.
    CHECK_THAT(*t90, Catch::Matchers::WithinAbs(100.0, 1e-12));
    CHECK(*p == 40.0);  // 5 days x 8 mm, window within July
}
