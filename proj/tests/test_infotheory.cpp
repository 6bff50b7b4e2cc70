#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "infotheory.hpp"

using namespace rlc;

namespace {

// A memoryless binary symmetric channel on 1-bit strings as a JointDist law.
JointDist bsc(double p, double input_weight) {
  JointDist j;
  j.input_dist = {{"0", 1 - input_weight}, {"1", input_weight}};
  j.law = [p](const BitString& x) {
    Dist d;
    d[x] = 1 - p;
    d[x == "0" ? "1" : "0"] = p;
    return d;
  };
  return j;
}

}  // namespace

TEST_CASE("entropy basics") {
  CHECK(entropy({1.0}) == doctest::Approx(0.0));
  CHECK(entropy({0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(entropy({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
  CHECK(entropy({0.5, 0.5, 0.0}) == doctest::Approx(1.0));  // 0 log 0 = 0
  CHECK_THROWS_WITH(entropy({0.4, 0.4}), "non-normalized input");
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.11) == doctest::Approx(binary_entropy(0.89)));
  CHECK(binary_entropy(0.11) == doctest::Approx(0.49992).epsilon(1e-4));
}

TEST_CASE("mutual information of a BSC matches the closed form") {
  // Uniform input: I = 1 - h(p).
  for (double p : {0.11, 0.25, 0.4}) {
    JointDist j = bsc(p, 0.5);
    CHECK(mutual_information(j) ==
          doctest::Approx(1 - binary_entropy(p)).epsilon(1e-9));
  }
  // Degenerate input: no information.
  CHECK(mutual_information(bsc(0.11, 0.0)) == doctest::Approx(0.0));
}

TEST_CASE("information density averages to mutual information") {
  JointDist j = bsc(0.2, 0.3);
  double avg = 0;
  for (const auto& [x, px] : j.input_dist)
    for (const auto& [z, pz_x] : j.law(x))
      if (px > 0 && pz_x > 0) avg += px * pz_x * information_density(j, x, z);
  CHECK(avg == doctest::Approx(mutual_information(j)).epsilon(1e-9));
  CHECK_THROWS_WITH(information_density(bsc(0.2, 0.0), "1", "1"),
                    "zero-probability pair");
}

TEST_CASE("capacity of a run-protected block is noiseless") {
  // n = 1 under BDC-Thr(2, d): single bits form runs of length 1 < 2 and are
  // never deleted, so the channel is the identity and capacity is 1 bit.
  ChannelSpec ch = make_threshold_channel(2, 0.7);
  CHECK(capacity_small_n(ch, 1, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("capacity at n=1 of the unprotected channel is the BEC value") {
  // tau = 1: every bit is deleted w.p. d; on 1-bit inputs the output alphabet
  // is {empty, 0, 1} and the channel is exactly a binary erasure channel, so
  // the capacity is 1 - d.
  for (double d : {0.1, 0.5, 0.8}) {
    ChannelSpec ch = make_threshold_channel(1, d);
    CHECK(capacity_small_n(ch, 1, 1e-9) == doctest::Approx(1 - d).epsilon(1e-6));
  }
}

TEST_CASE("trimming never increases capacity") {
  ChannelSpec plain = make_threshold_channel(2, 0.4);
  double base = capacity_small_n(plain, 4, 1e-7);
  for (auto trim : {TrimMode::trim00, TrimMode::trim01, TrimMode::trim11}) {
    ChannelSpec t = plain;
    t.trim = trim;
    CHECK(capacity_small_n(t, 4, 1e-7) <= base + 1e-5);
  }
}

TEST_CASE("the star channel dominates the plain channel") {
  ChannelSpec ch = make_threshold_channel(2, 0.5);
  for (int n : {2, 3, 4}) {
    double plain = capacity_small_n(ch, n, 1e-7);
    double star = capacity_small_n(ch, n, 1e-7, true);
    CHECK(star >= plain - 1e-5);
    CHECK(star <= n + 1e-9);
  }
}

TEST_CASE("dg_bound closed form and hypothesis check") {
  for (int tau : {2, 3, 4})
    for (double d : {0.0, 0.2, 0.5}) {
      double arg = d * (tau + 1) / std::pow(2.0, tau);
      if (arg <= 0.5)
        CHECK(dg_bound(tau, d) ==
              doctest::Approx(1 - binary_entropy(arg)).epsilon(1e-12));
    }
  // tau = 1, d = 0.6: 0.6*2/2 = 0.6 > 1/2.
  CHECK_THROWS_WITH(dg_bound(1, 0.6), "hypothesis-violated");
}

TEST_CASE("g_of_d hand evaluation") {
  // tau = 2, M = 2, d: g = 4 d^2 + 1*C(2,1)(1-d) d = 4d^2 + 2d(1-d).
  for (double d : {0.1, 0.3, 0.6})
    CHECK(g_of_d(2, 2, d) == doctest::Approx(4 * d * d + 2 * d * (1 - d)));
  // d = 0 kills every term.
  CHECK(g_of_d(3, 5, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("greedy_rate constraint and degenerate cases") {
  // sum i*beta_i must be 1.
  CHECK_THROWS_WITH(greedy_rate(2, 4, 0.1, {0.5, 0.5}), "constraint-violated");
  // Valid profile: beta = (0.5, 0.25) has 0.5 + 2*0.25 = 1.
  double r = greedy_rate(2, 4, 0.1, {0.5, 0.25});
  CHECK(r > 0);
  CHECK(r < 1);
  // Noiseless: adversary budget 0, rate is the profile entropy over the
  // blown-up length.
  double r0 = greedy_rate(2, 2, 0.0, {0.5, 0.25});
  double beta = 0.75;
  double num = -(0.5 * std::log2(0.5 / beta) + 0.25 * std::log2(0.25 / beta));
  CHECK(r0 == doctest::Approx(num / 1.0));
}

TEST_CASE("greedy_search is deterministic and beats single profiles") {
  BoundResult r = greedy_search(2, 0.3, 16);
  BoundResult again = greedy_search(2, 0.3, 16);
  CHECK(r.rate == again.rate);
  CHECK(r.M == again.M);
  CHECK(r.beta == again.beta);
  CHECK(r.rate >= greedy_rate(2, r.M, 0.3, {0.5, 0.25}) - 1e-12);
  CHECK(r.method == "greedy");
}

TEST_CASE("rll counting and baseline") {
  // Strings whose runs all have length < tau. tau = 2: alternating only.
  CHECK(count_rll_strings(1, 2) == 2);
  CHECK(count_rll_strings(5, 2) == 2);
  // tau = 3: runs of length 1 or 2 -> Fibonacci-type growth.
  // Oracle by direct enumeration at small n.
  for (int n = 1; n <= 12; n++) {
    std::uint64_t count = 0;
    for (unsigned mask = 0; mask < (1u << n); mask++) {
      BitString s;
      for (int i = 0; i < n; i++) s.push_back((mask >> i) & 1 ? '1' : '0');
      bool ok = true;
      for (const Run& r : runs(s)) ok &= r.length < 3;
      count += ok;
    }
    CHECK(count_rll_strings(n, 3) == count);
  }
  CHECK(rll_baseline(2) == doctest::Approx(0.0));
  CHECK(rll_baseline(3) ==
        doctest::Approx(std::log2((1 + std::sqrt(5.0)) / 2)).epsilon(1e-9));
}

TEST_CASE("emit_curve header and row shape") {
  std::ostringstream os;
  emit_curve(2, {0.0, 0.2}, os, 8);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "d,rate_dg,rate_greedy,rate_baseline,best_M,best_beta");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) rows++;
  CHECK(rows == 2);
}
