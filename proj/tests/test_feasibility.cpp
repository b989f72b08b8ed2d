#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kickchain/feasibility.hpp"

using namespace kickchain;

TEST_CASE("laboratory estimate for a 10^4 site chain") {
  const auto r = feasibility({1e-6, 10000, 1e9, 1e-6});
  CHECK(r.b_q_au == doctest::Approx(2e-14));
  CHECK(r.b_range_tesla == doctest::Approx(0.47));
  // Order of magnitude: the lower pulse bound lies within a decade of [1e8, 1e9] au.
  CHECK(std::log10(r.pulse_min_au) >= 7.0);
  CHECK(std::log10(r.pulse_min_au) <= 10.0);
  CHECK(r.kick_phase_ok);
}

TEST_CASE("no field range is infeasible, not an error") {
  const auto r = feasibility({0.0, 10000, 1e9, 1e-6});
  CHECK_FALSE(r.kick_phase_ok);
  CHECK_FALSE(r.feasible);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("GHz exchange with microsecond period") {
  const auto r = feasibility({1e-6, 10000, 1e9, 1e-6});
  CHECK(r.two_j_t0 == doctest::Approx(2000.0));
  CHECK(r.exchange_period_ok);
}

TEST_CASE("pulse window closes when exchange is too fast") {
  // 2 J dt <= 1/100 with J ~ 1e14 Hz leaves no room above the kick-phase bound.
  const auto r = feasibility({1e-6, 10000, 1e14, 1e-6});
  CHECK(r.pulse_max_au < r.pulse_min_au);
  CHECK_FALSE(r.pulse_window_ok);
  CHECK_FALSE(r.feasible);
}

TEST_CASE("negative inputs are rejected") {
  CHECK_THROWS_AS(feasibility({-1.0, 10, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(feasibility({1.0, 10, -1.0, 1.0}), std::invalid_argument);
}
