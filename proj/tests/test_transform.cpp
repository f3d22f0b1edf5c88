#include <doctest.h>

#include <random>

#include "logfsk/transform.hpp"
#include "logfsk/waveform.hpp"

using namespace logfsk;

TEST_CASE("analysis is the exact inverse of synthesis") {
  for (Index n : {16, 32, 64, 256}) {
    const AnalysisOperator op = build_analysis(n);
    const double res =
        (op.analysis * op.synthesis - MatX::Identity(n, n)).cwiseAbs().maxCoeff();
    CHECK(res < 1e-10);
  }
}

TEST_CASE("delta response on every basis vector") {
  const Index N = 32;
  const AnalysisOperator op = build_analysis(N);
  for (Index m = 0; m < N; ++m) {
    VecX d = analyze(op, cosine_basis(m, N));
    d[m] -= 1.0;
    CHECK(d.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("linearity: zero frame and weighted sums") {
  const AnalysisOperator op = build_analysis(64);
  CHECK(analyze(op, VecX::Zero(64)).cwiseAbs().maxCoeff() == 0.0);

  const VecX frame = cosine_basis(3, 64) + 2.0 * cosine_basis(7, 64);
  const VecX d = analyze(op, frame);
  CHECK(d[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d[7] == doctest::Approx(2.0).epsilon(1e-12));
  for (Index i = 0; i < 64; ++i) {
    if (i == 3 || i == 7) continue;
    CHECK(std::abs(d[i]) < 1e-10);
  }
}

TEST_CASE("analyze/synthesize round trip on random frames") {
  const AnalysisOperator op = build_analysis(64);
  std::mt19937_64 gen(99);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 10; ++rep) {
    VecX f(64);
    for (auto& v : f) v = gauss(gen);
    const VecX back = synthesize(op, analyze(op, f));
    CHECK((back - f).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const AnalysisOperator op = build_analysis(16);
  CHECK_THROWS_AS(analyze(op, VecX::Zero(15)), std::invalid_argument);
  CHECK_THROWS_AS(synthesize(op, VecX::Zero(17)), std::invalid_argument);
}

TEST_CASE("detection picks the largest qualifying index, not the largest peak") {
  VecX d = VecX::Zero(32);
  d[10] = 5.0;
  d[20] = 1.0;
  const Detection det = detect_max_frequency(d, 0.5);
  CHECK(det.index == 20);
  CHECK(det.peak_magnitude == doctest::Approx(1.0));
  CHECK(!det.below_threshold);
  REQUIRE(det.candidates.size() == 2);
  CHECK(det.candidates[0] == 10);
  CHECK(det.candidates[1] == 20);
}

TEST_CASE("detection ignores sign") {
  VecX d = VecX::Zero(8);
  d[3] = -2.0;
  const Detection det = detect_max_frequency(d, 1.0);
  CHECK(det.index == 3);
  CHECK(det.peak_magnitude == doctest::Approx(2.0));
}

TEST_CASE("all-zero spectrum falls back to index 0 with the flag set") {
  const Detection det = detect_max_frequency(VecX::Zero(16), 1.0);
  CHECK(det.index == 0);
  CHECK(det.below_threshold);
  CHECK(det.candidates.empty());
}

TEST_CASE("detection is invariant under joint scaling") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 50; ++rep) {
    VecX d(24);
    for (auto& v : d) v = gauss(gen);
    const double tau = 0.3 + 0.5 * std::abs(gauss(gen));
    const double c = 0.01 + 10.0 * std::abs(gauss(gen));
    const Detection base = detect_max_frequency(d, tau);
    const Detection scaled = detect_max_frequency((c * d).eval(), c * tau);
    CHECK(base.index == scaled.index);
    CHECK(base.below_threshold == scaled.below_threshold);
    CHECK(base.candidates == scaled.candidates);
  }
}

TEST_CASE("non-positive thresholds are rejected") {
  CHECK_THROWS_AS(detect_max_frequency(VecX::Ones(4), 0.0), std::domain_error);
  CHECK_THROWS_AS(detect_max_frequency(VecX::Ones(4), -1.0), std::domain_error);
}
