#include <doctest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "kickchain/chain.hpp"
#include "kickchain/errors.hpp"
#include "kickchain/evolution.hpp"
#include "kickchain/rng.hpp"

using namespace kickchain;
using std::numbers::pi;

namespace {

MagnonState random_state(std::size_t N, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  std::vector<complex> a(N);
  double norm = 0.0;
  for (auto& z : a) {
    z = {g(gen), g(gen)};
    norm += std::norm(z);
  }
  for (auto& z : a) z /= std::sqrt(norm);
  return MagnonState(std::move(a));
}

double max_diff(std::span<const complex> a, std::span<const complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Exchange kernel by direct summation over the integer-m grid.
Eigen::MatrixXcd exchange_kernel(std::size_t N, double J1T0) {
  Eigen::MatrixXcd U(N, N);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t s = 0; s < N; ++s) {
      complex sum = 0.0;
      for (long m = -static_cast<long>(N) / 2 + 1; m <= static_cast<long>(N) / 2; ++m) {
        const double k = 2.0 * pi * static_cast<double>(m) / static_cast<double>(N);
        sum += std::polar(1.0, (static_cast<double>(r) - static_cast<double>(s)) * k - J1T0 * (1.0 - std::cos(k)));
      }
      U(r, s) = sum / static_cast<double>(N);
    }
  return U;
}

}  // namespace

TEST_CASE("exchange: identity at T0 = 0 and dense kernel oracle") {
  const auto c = ChainConfig::ferromagnet(16);
  const auto psi = random_state(16, 11);
  CHECK(max_diff(apply_exchange(psi, c, 0.0).amplitudes(), psi.amplitudes()) < 1e-14);

  const auto U = exchange_kernel(16, 3.0);
  Eigen::VectorXcd v(16);
  for (int i = 0; i < 16; ++i) v(i) = psi[static_cast<std::size_t>(i)];
  const Eigen::VectorXcd expected = U * v;
  const auto got = apply_exchange(psi, c, 3.0);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(got[static_cast<std::size_t>(i)] - expected(i)) < 1e-12);
}

TEST_CASE("parabolic kick: trivial cases and high-precision phase") {
  const auto psi = random_state(200, 3);
  CHECK(max_diff(apply_parabolic_kick(psi, 0.0, 100).amplitudes(), psi.amplitudes()) == 0.0);
  const auto kicked = apply_parabolic_kick(psi, 0.37, 100);
  CHECK(std::abs(kicked[100] - psi[100]) < 1e-15);
  for (std::size_t s = 0; s < 200; ++s) CHECK(std::abs(std::abs(kicked[s]) - std::abs(psi[s])) < 1e-14);

  using big = boost::multiprecision::cpp_dec_float_50;
  const big two_pi = 2 * boost::math::constants::pi<big>();
  const big exact = big(94 * 94) / big(30);
  const big reduced = exact - two_pi * boost::multiprecision::floor(exact / two_pi);
  CHECK(std::abs(parabolic_phase(1.0 / 15.0, 94) - reduced.convert_to<double>()) < 1e-12);
  CHECK(std::abs(parabolic_phase(1.0 / 15.0, -94) - reduced.convert_to<double>()) < 1e-12);

  const auto delta = MagnonState::delta(256, 128 + 94);
  const auto k = apply_parabolic_kick(delta, 1.0 / 15.0, 128);
  const complex expected = std::polar(1.0, -reduced.convert_to<double>());
  CHECK(std::abs(k[128 + 94] - expected) < 1e-12);
}

TEST_CASE("random kick is phase-only and reproducible") {
  const auto psi = random_state(64, 5);
  RandomStream a(42, 7), b(42, 7), c(43, 7);
  const auto x = apply_random_kick(psi, a);
  const auto y = apply_random_kick(psi, b);
  const auto z = apply_random_kick(psi, c);
  CHECK(x.norm_squared() == doctest::Approx(psi.norm_squared()).epsilon(1e-15));
  bool identical = true, differs = false;
  for (std::size_t s = 0; s < 64; ++s) {
    CHECK(std::abs(std::abs(x[s]) - std::abs(psi[s])) < 1e-15);
    identical &= x[s] == y[s];
    differs |= x[s] != z[s];
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("evolve: zero periods and snapshot schedule") {
  const auto c = ChainConfig::ferromagnet(32);
  const auto psi = MagnonState::delta(32, 16);
  const auto r0 = evolve(psi, c, SingleKick{0.3, 2.0}, 0, 1);
  REQUIRE(r0.snapshots.size() == 1);
  CHECK(r0.snapshots[0].period == 0);
  CHECK(max_diff(r0.final_state.amplitudes(), psi.amplitudes()) == 0.0);

  const auto r = evolve(psi, c, SingleKick{0.3, 2.0}, 7, 3);
  std::vector<long> periods;
  for (const auto& s : r.snapshots) periods.push_back(s.period);
  CHECK(periods == std::vector<long>{0, 3, 6, 7});
}

TEST_CASE("build_floquet: identity, unitarity and Bessel diagonal") {
  const auto c0 = ChainConfig::ferromagnet(16);
  const auto I = build_floquet(c0, SingleKick{0.0, 1e-300});
  CHECK((I - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);

  const auto c = ChainConfig::ferromagnet(32);
  for (const KickSchedule& s : {KickSchedule{SingleKick{0.23, 4.1}}, KickSchedule{DoubleKick{0.05, 1.7, 2.2}}}) {
    const auto U = build_floquet(c, s);
    CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-10);
  }

  // Jacobi-Anger: (1/N) sum_m e^{i z cos k_m} = sum_q i^{qN} J_{qN}(z).
  for (std::size_t N : {8u, 12u, 32u}) {
    const double z = 5.5;
    const auto U = build_floquet(ChainConfig::ferromagnet(N), SingleKick{0.0, z});
    complex series = std::cyl_bessel_j(0.0, z);
    for (int q = 1; q * static_cast<int>(N) < 80; ++q) {
      const int n = q * static_cast<int>(N);
      const complex in = std::pow(complex(0.0, 1.0), n);
      series += 2.0 * in * std::cyl_bessel_j(static_cast<double>(n), z);
    }
    const complex expected = std::polar(1.0, -z) * series;
    for (std::size_t r = 0; r < N; ++r)
      CHECK(std::abs(U(static_cast<long>(r), static_cast<long>(r)) - expected) < 1e-12);
  }

  CHECK_THROWS_AS(build_floquet(ChainConfig::ferromagnet(8), DoubleKickRandom{0.1, 1.0, 3}), UnsupportedError);
  CHECK_THROWS_AS(build_floquet(ChainConfig::ferromagnet(64), SingleKick{0.1, 1.0}, 32), ResourceLimitError);
}

TEST_CASE("evolve matches dense Floquet powers") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t N : {5u, 16u, 33u, 64u}) {
    for (int trial = 0; trial < 2; ++trial) {
      const auto c = ChainConfig::ferromagnet(N);
      const KickSchedule s = trial == 0 ? KickSchedule{SingleKick{u(gen), 1.0 + 40.0 * u(gen)}}
                                        : KickSchedule{DoubleKick{0.1 * u(gen), u(gen), 1.0 + 10.0 * u(gen)}};
      const auto psi = random_state(N, 17 + N);
      const auto U = build_floquet(c, s);
      Eigen::VectorXcd v(static_cast<long>(N));
      for (std::size_t i = 0; i < N; ++i) v(static_cast<long>(i)) = psi[i];
      for (int t = 0; t < 100; ++t) v = U * v;
      const auto r = evolve(psi, c, s, 100, 100);
      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) err = std::max(err, std::abs(r.final_state[i] - v(static_cast<long>(i))));
      CHECK(err < 1e-8);
    }
  }
}

TEST_CASE("norm preservation budget") {
  const auto c = ChainConfig::ferromagnet(512);
  for (const KickSchedule& s : {KickSchedule{SingleKick{1.0 / 15.0, 100.0}}, KickSchedule{DoubleKickRandom{0.025, 7.0, 9}}}) {
    const auto r = evolve(MagnonState::delta(512, 256), c, s, 1000, 1000);
    CHECK(std::abs(r.final_state.norm_squared() - 1.0) < 1e-10);
  }
}

TEST_CASE("translation covariance without kick") {
  const auto c = ChainConfig::ferromagnet(48);
  const auto a = evolve(MagnonState::delta(48, 10), c, SingleKick{0.0, 3.3}, 9, 9);
  const auto b = evolve(MagnonState::delta(48, 10 + 17), c, SingleKick{0.0, 3.3}, 9, 9);
  const auto& Pa = a.snapshots.back().distribution;
  const auto& Pb = b.snapshots.back().distribution;
  for (std::size_t s = 0; s < 48; ++s) CHECK(std::abs(Pb[(s + 17) % 48] - Pa[s]) < 1e-12);
}

TEST_CASE("parity about n0 for a delta start") {
  for (std::size_t N : {64u, 65u, 256u}) {
    const auto c = ChainConfig::ferromagnet(N);
    const auto r = evolve(MagnonState::delta(N, c.n0), c, SingleKick{1.0 / 15.0, 100.0}, 12, 1);
    for (const auto& snap : r.snapshots) {
      double worst = 0.0;
      for (long d = 0; d < static_cast<long>(N) / 2; ++d) {
        const auto plus = static_cast<std::size_t>((static_cast<long>(c.n0) + d) % static_cast<long>(N));
        const auto minus = static_cast<std::size_t>((static_cast<long>(c.n0) - d + static_cast<long>(N)) % static_cast<long>(N));
        worst = std::max(worst, std::abs(snap.distribution[plus] - snap.distribution[minus]));
      }
      // Odd rings have no mirror partner for the field; only check even N.
      if (N % 2 == 0) CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("random schedule is bit-reproducible") {
  const auto c = ChainConfig::ferromagnet(128);
  const DoubleKickRandom s{0.025, 7.0, 1234};
  const auto a = evolve(MagnonState::delta(128, 64), c, s, 50, 10);
  const auto b = evolve(MagnonState::delta(128, 64), c, s, 50, 10);
  for (std::size_t i = 0; i < 128; ++i) CHECK(a.final_state[i] == b.final_state[i]);
  const auto other = evolve(MagnonState::delta(128, 64), c, DoubleKickRandom{0.025, 7.0, 1235}, 50, 10);
  CHECK(max_diff(a.final_state.amplitudes(), other.final_state.amplitudes()) > 1e-3);
}

TEST_CASE("propagator rejects size mismatch and validates schedules") {
  FloquetPropagator p(ChainConfig::ferromagnet(16), SingleKick{0.1, 1.0});
  auto wrong = MagnonState::delta(8, 0);
  CHECK_THROWS_AS(p.step(wrong), std::invalid_argument);
  CHECK_THROWS_AS(validate(KickSchedule{SingleKick{-1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(KickSchedule{SingleKick{0.1, 0.0}}), std::invalid_argument);
}

TEST_CASE("qkr: free rotor and one-kick Bessel weights") {
  const auto free = qkr_evolve(0, 0.0, 0.7, 20, 64);
  for (const auto& snap : free.snapshots) CHECK(snap.distribution[32] == doctest::Approx(1.0).epsilon(1e-12));

  const auto one = qkr_evolve(0, 100.0, 1.0, 1, 512);
  const auto& P = one.snapshots.back().distribution;
  for (int n = -150; n <= 150; ++n) {
    const double j = std::cyl_bessel_j(static_cast<double>(std::abs(n)), 100.0);
    CHECK(std::abs(P[static_cast<std::size_t>(256 + n)] - j * j) < 1e-10);
  }
  CHECK(one.warnings.empty());

  const auto leaky = qkr_evolve(0, 100.0, 1.0, 1, 64);
  CHECK_FALSE(leaky.warnings.empty());
}

TEST_CASE("qkr matches the kicked ferromagnet under relabeling") {
  const std::size_t N = 64;
  const auto c = ChainConfig::ferromagnet(N);
  for (const auto& [B, JT] : {std::pair{1.0 / 15.0, 100.0}, std::pair{0.25, 20.0}, std::pair{0.9, 3.0}}) {
    const auto chain = evolve(MagnonState::delta(N, c.n0), c, SingleKick{B, JT}, 40, 1);
    const auto image = rotor_image(c, JT, B);
    const auto rotor = qkr_evolve(0, image.K, image.hbar_eff, 40, N);
    REQUIRE(chain.snapshots.size() == rotor.snapshots.size());
    double err = 0.0;
    for (std::size_t i = 0; i < chain.snapshots.size(); ++i)
      for (std::size_t s = 0; s < N; ++s)
        err = std::max(err, std::abs(chain.snapshots[i].distribution[s] - rotor.snapshots[i].distribution[s]));
    CHECK(err < 1e-8);
  }
}
