#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mmthz/units.hpp"

using namespace mmthz;
using Catch::Approx;

TEST_CASE("physical constants are exact") {
    REQUIRE(constants::boltzmann_j_per_k == 1.380649e-23);
    REQUIRE(constants::speed_of_light_m_per_s == 2.99792458e8);
}

TEST_CASE("to_db known values") {
    CHECK(to_db(1.0) == 0.0);
    // 10*log10(0.26) -- the rounded onset ratio maps to the rounded -5.9 threshold
    CHECK(to_db(0.26) == Approx(-5.8503).margin(1e-3));
    CHECK(to_db(2.0) == Approx(3.0102999566).margin(1e-9));
}

TEST_CASE("to_db rejects non-positive and non-finite input") {
    CHECK_THROWS_AS(to_db(0.0), std::domain_error);
    CHECK_THROWS_AS(to_db(-1.0), std::domain_error);
    CHECK_THROWS_AS(to_db(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(to_db(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("from_db known values") {
    CHECK(from_db(0.0) == 1.0);
    CHECK(from_db(1.0) == Approx(1.2589254118).margin(1e-9));  // 10^(1/10) = 1.259
    CHECK(from_db(-5.9) == Approx(0.2570395783).margin(1e-9)); // consistent with ratio 0.26
    CHECK_THROWS_AS(from_db(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(from_db(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("dbm conversions") {
    CHECK(dbm_to_watts(0.0) == Approx(1e-3).epsilon(1e-15));
    CHECK(dbm_to_watts(30.0) == Approx(1.0).epsilon(1e-15));
    CHECK(dbm_to_watts(25.0) == Approx(0.3162277660).margin(1e-9));
    CHECK(watts_to_dbm(1e-3) == Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(watts_to_dbm(0.0), std::domain_error);
    CHECK_THROWS_AS(watts_to_dbm(-1.0), std::domain_error);
}

TEST_CASE("db round trip over 60 decades") {
    std::mt19937_64 rng(20240801);
    std::uniform_real_distribution<double> exp_dist(-30.0, 30.0);
    for (int i = 0; i < 1000000; ++i) {
        const double x = std::pow(10.0, exp_dist(rng));
        const double back = from_db(to_db(x));
        REQUIRE(std::abs(back - x) / x < 1e-12);
    }
}

TEST_CASE("dbm round trip") {
    std::mt19937_64 rng(20240802);
    std::uniform_real_distribution<double> exp_dist(-25.0, 5.0);
    for (int i = 0; i < 100000; ++i) {
        const double w = std::pow(10.0, exp_dist(rng));
        REQUIRE(std::abs(dbm_to_watts(watts_to_dbm(w)) - w) / w < 1e-12);
    }
}

TEST_CASE("to_db is strictly increasing") {
    std::mt19937_64 rng(20240803);
    std::uniform_real_distribution<double> exp_dist(-20.0, 20.0);
    for (int i = 0; i < 10000; ++i) {
        const double a = std::pow(10.0, exp_dist(rng));
        const double b = a * (1.0 + 1e-9);
        REQUIRE(to_db(b) > to_db(a));
    }
}
