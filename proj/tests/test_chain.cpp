#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "kickchain/chain.hpp"
#include "kickchain/errors.hpp"
#include "kickchain/evolution.hpp"

using namespace kickchain;
using std::numbers::pi;

TEST_CASE("wavenumber grid small sizes") {
  const auto g2 = wavenumber_grid(2);
  REQUIRE(g2.size() == 2);
  CHECK(g2[0] == doctest::Approx(0.0));
  CHECK(g2[1] == doctest::Approx(pi));

  const auto g4 = wavenumber_grid(4);
  REQUIRE(g4.size() == 4);
  CHECK(g4[0] == doctest::Approx(-pi / 2));
  CHECK(g4[1] == doctest::Approx(0.0));
  CHECK(g4[2] == doctest::Approx(pi / 2));
  CHECK(g4[3] == doctest::Approx(pi));
}

TEST_CASE("wavenumber grid matches DFT frequencies") {
  // Frequencies of an n-point DFT: j / n for j < n/2 and (j - n) / n above, folded to (-1/2, 1/2].
  for (std::size_t n : {5u, 6u, 7u, 16u}) {
    std::multiset<long> expected;
    for (std::size_t j = 0; j < n; ++j) {
      long f = static_cast<long>(j);
      if (2 * f > static_cast<long>(n)) f -= static_cast<long>(n);
      expected.insert(f);
    }
    std::multiset<long> got;
    for (double k : wavenumber_grid(n)) got.insert(std::lround(k * static_cast<double>(n) / (2 * pi)));
    CHECK(got == expected);
  }
}

TEST_CASE("wavenumber grid properties") {
  for (std::size_t n = 2; n <= 33; ++n) {
    const auto g = wavenumber_grid(n);
    REQUIRE(g.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(g[i] > -pi);
      CHECK(g[i] <= pi + 1e-15);
      if (i > 0) CHECK(g[i] > g[i - 1]);
      if (std::abs(g[i] - pi) > 1e-12) {
        bool has_neg = false;
        for (double k : g) has_neg |= std::abs(k + g[i]) < 1e-12;
        CHECK(has_neg);
      }
    }
  }
}

TEST_CASE("dispersion examples") {
  ChainConfig c = ChainConfig::ferromagnet(8);
  CHECK(dispersion(c, 0.0) == doctest::Approx(0.0));
  CHECK(dispersion(c, pi) == doctest::Approx(2.0));
  c.model = DispersionModel::NNNLadder;
  c.J2 = 1.0;
  CHECK(dispersion(c, pi) == doctest::Approx(2.0));
  c.model = DispersionModel::AntiferroLinear;
  c.J2 = 0.0;
  CHECK(dispersion(c, pi / 2) == doctest::Approx(1.0));
}

TEST_CASE("dispersion is even and ferromagnet range is [0, 2 J1]") {
  for (auto model : {DispersionModel::Ferromagnet, DispersionModel::NNNLadder, DispersionModel::AntiferroLinear}) {
    ChainConfig c = ChainConfig::ferromagnet(8, 1.3);
    c.model = model;
    c.J2 = model == DispersionModel::NNNLadder ? 0.4 : 0.0;
    for (double k = 0.0; k <= pi; k += 0.01) CHECK(dispersion(c, k) == doctest::Approx(dispersion(c, -k)).epsilon(1e-14));
  }
  const ChainConfig f = ChainConfig::ferromagnet(8, 1.3);
  double lo = 1e9, hi = -1e9;
  for (double k = -pi; k <= pi; k += 1e-3) {
    lo = std::min(lo, dispersion(f, k));
    hi = std::max(hi, dispersion(f, k));
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 2.0 * 1.3 + 1e-12);
  CHECK(dispersion(f, pi) == doctest::Approx(2.6));
}

TEST_CASE("magnon states: examples and orthonormality") {
  const auto s = magnon_state(4, 0);
  for (auto a : s.amplitudes()) CHECK(std::abs(a - complex(0.5, 0.0)) < 1e-15);

  for (std::size_t N = 2; N <= 16; ++N) {
    const auto [lo, hi] = wavenumber_index_range(N);
    CHECK(hi - lo + 1 == static_cast<long>(N));
    for (long m = lo; m <= hi; ++m) {
      const auto a = magnon_state(N, m);
      for (long mp = lo; mp <= hi; ++mp) {
        const auto b = magnon_state(N, mp);
        complex dot = 0.0;
        for (std::size_t j = 0; j < N; ++j) dot += std::conj(a[j]) * b[j];
        CHECK(std::abs(std::abs(dot) - (m == mp ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(magnon_state(8, 5), std::invalid_argument);
}

TEST_CASE("magnon states are exchange eigenstates") {
  for (auto model : {DispersionModel::Ferromagnet, DispersionModel::NNNLadder, DispersionModel::AntiferroLinear}) {
    ChainConfig c = ChainConfig::ferromagnet(12, 0.9);
    c.model = model;
    c.J2 = model == DispersionModel::NNNLadder ? 0.3 : 0.0;
    const double T0 = 2.7;
    const auto grid = wavenumber_grid(12);
    for (long m = -5; m <= 6; ++m) {
      const auto in = magnon_state(12, m);
      const auto out = apply_exchange(in, c, T0);
      const complex phase = std::polar(1.0, -dispersion(c, grid[static_cast<std::size_t>(m + 5)]) * T0);
      for (std::size_t j = 0; j < 12; ++j) CHECK(std::abs(out[j] - phase * in[j]) < 1e-12);
    }
  }
}

TEST_CASE("rotor image") {
  const auto c = ChainConfig::ferromagnet(64);
  const auto fig1 = rotor_image(c, 100.0, 1.0 / 15.0);
  CHECK(fig1.K == doctest::Approx(6.6667).epsilon(1e-4));
  CHECK(fig1.hbar_eff == doctest::Approx(1.0 / 15.0));
  CHECK(rotor_image(c, 7.0, 0.025).K == doctest::Approx(0.175));
  CHECK(rotor_image(c, 100.0, 0.0).K == 0.0);
  for (double scale : {0.5, 2.0, 7.0})
    CHECK(rotor_image(c, scale * 3.0, 0.2).K == doctest::Approx(scale * rotor_image(c, 3.0, 0.2).K));

  ChainConfig afm = c;
  afm.model = DispersionModel::AntiferroLinear;
  CHECK_THROWS_AS(rotor_image(afm, 1.0, 0.1), UnsupportedError);
}

TEST_CASE("chain config validation") {
  ChainConfig c = ChainConfig::ferromagnet(16);
  CHECK_NOTHROW(c.validate());
  c.n0 = 16;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(ChainConfig::ferromagnet(0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(MagnonState(std::vector<complex>{1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("cyclic displacement") {
  CHECK(cyclic_displacement(3, 1, 10) == 2);
  CHECK(cyclic_displacement(1, 3, 10) == -2);
  CHECK(cyclic_displacement(9, 0, 10) == -1);
  CHECK(cyclic_displacement(5, 0, 10) == -5);
  CHECK(cyclic_displacement(4, 0, 9) == 4);
  CHECK(cyclic_displacement(5, 0, 9) == -4);
}
