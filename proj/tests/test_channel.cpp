#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mmthz/channel.hpp"

using namespace mmthz;
using Catch::Approx;

namespace {
const double GHz = 1e9;
const double c0 = constants::speed_of_light_m_per_s;
}  // namespace

TEST_CASE("fspl reference points") {
    // unit argument: d = c / (4 pi f) gives exactly 0 dB
    const double f = 300.0 * GHz;
    CHECK(fspl_db(c0 / (4.0 * M_PI * f), f) == Approx(0.0).margin(1e-10));

    // 1 mm at 300 GHz: d*f/c = 1.00069.., 20*log10(4*pi*1.00069) = 21.994
    CHECK(fspl_db(0.001, 300.0 * GHz) ==
          Approx(20.0 * std::log10(4.0 * M_PI * 0.001 * 300.0e9 / c0)).margin(1e-12));
    CHECK(fspl_db(0.001, 300.0 * GHz) == Approx(22.0).margin(0.05));

    // 100 m at 30 GHz
    CHECK(fspl_db(100.0, 30.0 * GHz) == Approx(102.0).margin(0.05));

    CHECK_THROWS_AS(fspl_db(0.0, f), std::domain_error);
    CHECK_THROWS_AS(fspl_db(-1.0, f), std::domain_error);
    CHECK_THROWS_AS(fspl_db(1.0, 0.0), std::domain_error);
}

TEST_CASE("fspl may be negative below the unit argument and is never clamped") {
    CHECK(fspl_db(1e-4, 30.0 * GHz) < 0.0);
}

TEST_CASE("fspl gains exactly 20 dB per distance decade") {
    std::mt19937_64 rng(20240830);
    std::uniform_real_distribution<double> d_exp(-4.0, 3.0);
    std::uniform_real_distribution<double> f_dist(1.0, 1000.0);
    for (int i = 0; i < 10000; ++i) {
        const double d = std::pow(10.0, d_exp(rng));
        const double f = f_dist(rng) * GHz;
        REQUIRE(fspl_db(10.0 * d, f) - fspl_db(d, f) == Approx(20.0).margin(1e-9));
    }
}

TEST_CASE("absorption loss anchors") {
    const auto hot = AtmosphericConditions::hot();
    GasAttenuationModel model(hot);
    CHECK(absorption_loss_db(0.0, 183.31 * GHz, model) == 0.0);
    CHECK(absorption_loss_db(100.0, 183.31 * GHz, model) == Approx(15.0).margin(3.0));
    CHECK(absorption_loss_db(1000.0, 325.15 * GHz, model) > 180.0);
    CHECK_THROWS_AS(absorption_loss_db(-1.0, 183.31 * GHz, model), std::domain_error);
}

TEST_CASE("absorption loss is additive in dB") {
    GasAttenuationModel model(AtmosphericConditions::hot());
    std::mt19937_64 rng(20240831);
    std::uniform_real_distribution<double> d_dist(0.0, 800.0);
    std::uniform_real_distribution<double> f_dist(30.0, 500.0);
    for (int i = 0; i < 3000; ++i) {
        const double d1 = d_dist(rng), d2 = d_dist(rng);
        const double f = f_dist(rng) * GHz;
        const double split =
            absorption_loss_db(d1, f, model) + absorption_loss_db(d2, f, model);
        REQUIRE(std::abs(absorption_loss_db(d1 + d2, f, model) - split) < 1e-9);
    }
}

TEST_CASE("total path loss composition") {
    const auto hot = AtmosphericConditions::hot();
    GasAttenuationModel model(hot);

    // FSPL dominates at millimeter range; absorption contributes micro-dB
    const double total = total_path_loss_db(0.001, 300.0 * GHz, model);
    CHECK(total == Approx(fspl_db(0.001, 300.0 * GHz)).margin(1e-3));
    CHECK(total - fspl_db(0.001, 300.0 * GHz) < 0.001);

    // the 183 GHz / 100 m point: FSPL ~ 117.7 dB plus the ~15 dB line
    CHECK(total_path_loss_db(100.0, 183.31 * GHz, model) ==
          Approx(117.7 + 15.0).margin(3.5));

    // strictly increasing in distance
    double prev = 0.0;
    bool first = true;
    for (double d = 0.5; d <= 2000.0; d *= 2.0) {
        const double loss = total_path_loss_db(d, 140.0 * GHz, model);
        if (!first) REQUIRE(loss > prev);
        prev = loss;
        first = false;
    }
}

TEST_CASE("short paths stay transparent outside the strong water lines") {
    // Up to 1 m the molecular absorption is negligible (< 0.5 dB) across the
    // band, except inside the 380 / 448 GHz water lines where the hot
    // atmosphere is close to opaque even over a meter.
    GasAttenuationModel hot(AtmosphericConditions::hot());
    for (double f = 30.0; f <= 500.0; f += 0.5) {
        if ((f > 370.0 && f < 392.0) || (f > 433.0 && f < 462.0)) continue;
        REQUIRE(absorption_loss_db(1.0, f * GHz, hot) < 0.5);
    }
    // and specifically at the case-study carriers
    for (double f : {60.0, 140.0, 250.0, 300.0})
        REQUIRE(absorption_loss_db(1.0, f * GHz, hot) < 0.05);
}

TEST_CASE("near-field diagnostic flag") {
    // Fraunhofer distance of the 0.1 m reference aperture at 300 GHz is ~20 m
    CHECK(near_field_warning(19.0, 300.0 * GHz));
    CHECK_FALSE(near_field_warning(21.0, 300.0 * GHz));
    CHECK(near_field_warning(0.001, 300.0 * GHz));
}

TEST_CASE("geometry validation") {
    LinkGeometry g{1.0, 0.0, 0.0};
    CHECK_NOTHROW(g.validate());
    g.distance_m = 0.0;
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    g = {1.0, 90.0, 0.0};
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    g = {1.0, 0.0, -20.0};
    CHECK_THROWS_AS(g.validate(), std::domain_error);
}
