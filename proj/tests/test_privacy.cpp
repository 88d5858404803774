#include <doctest.h>

#include <cmath>
#include <vector>

#include "dplqr/privacy.hpp"
#include "dplqr/rng.hpp"

using namespace dplqr;

namespace {

WeightPair iso(double q, double r, int n = 3) {
  return WeightPair(q * Eigen::MatrixXd::Identity(n, n),
                    r * Eigen::MatrixXd::Identity(n, n));
}

}  // namespace

TEST_CASE("trace normalization") {
  const WeightPair w = normalize_pair(iso(8.0, 2.0));
  CHECK(w.Q(0, 0) == doctest::Approx(8.0 / 30.0).epsilon(1e-14));
  CHECK(w.R(0, 0) == doctest::Approx(2.0 / 30.0).epsilon(1e-14));
  CHECK(w.Q.trace() + w.R.trace() == doctest::Approx(1.0).epsilon(1e-14));

  const WeightPair again = normalize_pair(w);
  CHECK((again.Q - w.Q).cwiseAbs().maxCoeff() < 1e-15);

  // proportional pairs normalize identically
  const WeightPair v = normalize_pair(iso(4.0, 1.0));
  CHECK((v.Q - w.Q).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("database adjacency") {
  WeightDatabase w{{iso(8, 2), iso(6, 3), iso(7, 2), iso(8, 3)}};

  SUBCASE("identical databases are adjacent") { CHECK(are_adjacent(w, w)); }

  SUBCASE("single-agent replacement") {
    WeightDatabase v = w;
    v.entries[1] = iso(123.0, 4.5);
    CHECK(are_adjacent(w, v));
    CHECK(are_adjacent(v, w));  // symmetry
  }

  SUBCASE("two non-proportional replacements") {
    WeightDatabase v = w;
    v.entries[0] = iso(1.0, 5.0);
    v.entries[2] = iso(2.0, 9.0);
    CHECK_FALSE(are_adjacent(w, v));
  }

  SUBCASE("joint rescaling of a non-differing pair is invisible") {
    WeightDatabase v = w;
    v.entries[1] = iso(321.0, 7.0);
    v.entries[3] = iso(8.0 * 2.5, 3.0 * 2.5);
    CHECK(are_adjacent(w, v));
  }

  SUBCASE("length mismatch") {
    WeightDatabase v{{iso(8, 2)}};
    CHECK_THROWS(are_adjacent(w, v));
  }
}

TEST_CASE("noise scale formula") {
  CHECK(noise_scale(3, 0.5, 2.0, 1.5, 0.0, 5.0) == 0.0);
  CHECK(noise_scale(3, 1.0 / 15.0, 1.0, 2.0, 3.0, 5.0) ==
        doctest::Approx(0.12 * 2.0).epsilon(1e-14));
  CHECK(noise_scale(3, 0.5, 2.0, 0.0, 9.0, 5.0) == 0.0);
  CHECK_THROWS(noise_scale(3, 0.5, 2.0, 1.5, 1.0, 0.0));
}

TEST_CASE("laplace sampling") {
  CHECK(sample_laplace(0.0, 0.3) == 0.0);
  CHECK(sample_laplace(7.0, 0.5) == 0.0);
  CHECK_THROWS(sample_laplace(1.0, 0.0));
  CHECK_THROWS(sample_laplace(1.0, 1.0));
  CHECK_THROWS(sample_laplace(-1.0, 0.5));

  CounterRng rng(42);
  const int samples = 1'000'000;
  double sum = 0.0, sumsq = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double x = sample_laplace(1.0, rng.next_uniform());
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / samples;
  const double var = sumsq / samples - mean * mean;
  CHECK(std::abs(mean) < 5.0 * 3.0 / std::sqrt(static_cast<double>(samples)));
  CHECK(var > 1.96);
  CHECK(var < 2.04);
}

TEST_CASE("ledger accounting") {
  PowerLawSchedule sched(1.0 / 15.0, 1.3, 1.1);
  PrivacyLedger ledger;
  ledger.record_step(0, 5.0, sched);
  CHECK(ledger.per_step()[0] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS(ledger.record_step(5, 5.0, sched));  // out of order

  for (int t = 1; t <= 120; ++t) ledger.record_step(t, 5.0, sched);
  CHECK(ledger.cumulative() == doctest::Approx(21.9828170753).epsilon(1e-9));

  PowerLawSchedule flat(1.0, 1.3, 0.0);  // p(t) = 1
  PrivacyLedger ledger2;
  for (int t = 0; t < 10; ++t) ledger2.record_step(t, 2.0, flat);
  CHECK(ledger2.cumulative() == doctest::Approx(20.0));
  CHECK(ledger_tail_bound(2.0, 0.0, 10) == kInfiniteBudget);
}

TEST_CASE("ledger tail bound") {
  CHECK(ledger_tail_bound(5.0, 1.1, 121) ==
        doctest::Approx(50.0 * std::pow(121.0, -0.1)).epsilon(1e-14));
  CHECK(ledger_tail_bound(1.0, 1.0, 10) == kInfiniteBudget);
  CHECK(ledger_tail_bound(1.0, 2.0, 10) == doctest::Approx(0.1).epsilon(1e-14));

  // cumulative-plus-tail dominates a long high-precision partial sum
  const double gamma = 1.1, eps = 5.0;
  PowerLawSchedule sched(1.0, 1.0, gamma);
  PrivacyLedger ledger;
  for (int t = 0; t < 500; ++t) ledger.record_step(t, eps, sched);
  long double partial = 0.0L;
  for (int t = 0; t < 1'000'000; ++t) {
    partial += eps / std::pow(static_cast<long double>(t + 1), gamma);
  }
  CHECK(ledger.cumulative() + ledger_tail_bound(eps, gamma, 500) >
        static_cast<double>(partial));
}

TEST_CASE("one-step mechanism satisfies the histogram ratio bound") {
  // adjacent scalar releases v and v' with |v - v'| = s, scale b = s / eps
  const double s = 1.0, eps = 1.0, b = s / eps;
  const int samples = 1'000'000;
  const double lo = -4.0, width = 0.25;
  const int bins = 40;
  std::vector<int> h0(bins, 0), h1(bins, 0);
  CounterRng r0(101), r1(202);
  for (int k = 0; k < samples; ++k) {
    const double x0 = 0.0 + sample_laplace(b, r0.next_uniform());
    const double x1 = s + sample_laplace(b, r1.next_uniform());
    const int b0 = static_cast<int>(std::floor((x0 - lo) / width));
    const int b1 = static_cast<int>(std::floor((x1 - lo) / width));
    if (b0 >= 0 && b0 < bins) ++h0[b0];
    if (b1 >= 0 && b1 < bins) ++h1[b1];
  }
  int checked = 0;
  for (int k = 0; k < bins; ++k) {
    if (h0[k] < 1000 || h1[k] < 1000) continue;
    ++checked;
    const double ratio = static_cast<double>(h0[k]) / h1[k];
    CHECK(std::log(ratio) <= eps + 0.15);   // statistical slack
    CHECK(std::log(ratio) >= -eps - 0.15);
  }
  CHECK(checked > 10);
}
