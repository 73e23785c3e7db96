#include "qbcharge/bath.hpp"

#include "oracles.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <doctest.h>

using namespace qbcharge;

namespace {

using big = boost::multiprecision::cpp_dec_float_50;

big reference_density(const big& gamma, const big& w, const big& w0) {
  return gamma * w / (w0 * w0 + w * w);
}

big reference_rate(const big& j, const big& w, const big& t) {
  const big x = w / (2 * t);
  const big coth = boost::multiprecision::cosh(x) / boost::multiprecision::sinh(x);
  return j * (coth + 1);
}

BathConfig table_row() {
  BathConfig b;
  b.gamma = 1e-6;
  b.omega0 = 0.05;
  b.temperature = 300.0;
  b.omega_k = 0.085;
  return b;
}

}  // namespace

TEST_CASE("Debye spectral density") {
  BathConfig b = table_row();
  const double j = spectral_density(0.085, b);
  const double ref = static_cast<double>(reference_density(big("1e-6"), big("0.085"), big("0.05")));
  CHECK(std::abs(j - ref) / ref < 1e-12);
  CHECK(j == doctest::Approx(8.7404e-6).epsilon(1e-4));

  b.gamma = 0.0;
  for (double w : {0.01, 0.085, 3.0}) CHECK(spectral_density(w, b) == 0.0);

  b = table_row();
  double best_w = 0.0, best = -1.0;
  for (int k = 1; k <= 2000; ++k) {
    const double w = 1e-4 * k;
    const double v = spectral_density(w, b);
    if (v > best) best = v, best_w = w;
  }
  CHECK(best_w == doctest::Approx(b.omega0).epsilon(2e-3));
}

TEST_CASE("Redfield rate") {
  const double j = spectral_density(0.085, table_row());
  const double r = redfield_rate(j, 0.085, 300.0);
  const double ref = static_cast<double>(
      reference_rate(reference_density(big("1e-6"), big("0.085"), big("0.05")), big("0.085"), big(300)));
  CHECK(std::abs(r - ref) / ref < 1e-10);
  CHECK(r == doctest::Approx(6.171e-2).epsilon(1e-3));
  CHECK(redfield_rate(0.0, 0.085, 300.0) == 0.0);

  // High-temperature asymptote 2 J T / omega: doubling T doubles R.
  const double r1 = redfield_rate(j, 0.085, 1e5), r2 = redfield_rate(j, 0.085, 2e5);
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(r1 == doctest::Approx(2.0 * j * 1e5 / 0.085).epsilon(1e-5));
}

TEST_CASE("Gibbs ratio of upward to downward rates") {
  const double j = 1e-3;
  for (double w : {0.01, 0.5, 2.0, 8.0})
    for (double t : {0.1, 1.0, 300.0}) {
      const double ratio = absorption_rate(j, w, t) / redfield_rate(j, w, t);
      CHECK(ratio == doctest::Approx(std::exp(-w / t)).epsilon(1e-10));
    }
}

TEST_CASE("paper-literal channels") {
  OperatorMatrix h = OperatorMatrix::Zero(2, 2);
  h(1, 1) = 0.7;
  const ChannelSet two = jump_channels(h, table_row());
  REQUIRE(two.size() == 1);
  const OperatorMatrix op = two.operator_matrix(two.channels()[0]);
  OperatorMatrix lower = OperatorMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  CHECK(oracle::max_abs_diff(op.cwiseAbs().cast<Complex>(), lower) < 1e-15);
  const double r = redfield_rate(spectral_density(0.085, table_row()), 0.085, 300.0);
  CHECK(two.channels()[0].rate == doctest::Approx(r).epsilon(1e-14));

  std::mt19937_64 rng(2);
  const OperatorMatrix hr = oracle::random_hermitian(7, rng);
  const ChannelSet many = jump_channels(hr, table_row());
  CHECK(many.size() == 21);
  for (const JumpChannel& c : many.channels()) {
    CHECK(c.rate >= 0.0);
    CHECK(c.transition_frequency > 0.0);
  }
  CHECK(many.max_decay_rate() == doctest::Approx(2.0 * 6.0 * r));
}

TEST_CASE("transition-frequency channels obey detailed balance") {
  BathConfig b = table_row();
  b.mode = DissipatorMode::transition_frequency;
  b.temperature = 0.05;
  OperatorMatrix h = OperatorMatrix::Zero(2, 2);
  h(1, 1) = 0.04;
  const ChannelSet set = jump_channels(h, b);
  REQUIRE(set.size() == 2);
  const Eigen::MatrixXd& w = set.rate_matrix();
  CHECK(w(1, 0) / w(0, 1) == doctest::Approx(std::exp(-0.04 / 0.05)).epsilon(1e-12));
  CHECK(set.outflow()(1) == doctest::Approx(w(0, 1)));

  // Degenerate levels produce no channel.
  OperatorMatrix flat = OperatorMatrix::Identity(3, 3);
  CHECK(jump_channels(flat, b).empty());
}

TEST_CASE("rate matrix bookkeeping") {
  std::mt19937_64 rng(8);
  const ChannelSet set = jump_channels(oracle::random_hermitian(5, rng), table_row());
  const Eigen::MatrixXd& w = set.rate_matrix();
  for (Eigen::Index s = 0; s < 5; ++s) {
    CHECK(w(s, s) == 0.0);
    CHECK(set.outflow()(s) == doctest::Approx(w.col(s).sum()));
  }
  CHECK(no_channels(4).empty());
  CHECK(no_channels(4).dimension() == 4);
}

TEST_CASE("bath config validation and names") {
  BathConfig b;
  b.temperature = 0.0;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b = BathConfig{};
  b.gamma = -1.0;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  CHECK(parse_dissipator_mode("paper-literal") == DissipatorMode::paper_literal);
  CHECK(parse_dissipator_mode(to_string(DissipatorMode::transition_frequency)) == DissipatorMode::transition_frequency);
  CHECK(parse_channel_basis("rotating") == ChannelBasis::rotating_frame);
  CHECK_THROWS_AS(parse_dissipator_mode("lindblad"), std::invalid_argument);
  OperatorMatrix skew = OperatorMatrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(jump_channels(skew, BathConfig{}), std::invalid_argument);
}
