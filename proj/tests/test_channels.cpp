#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "channels.hpp"
#include "doctest.h"

using namespace rlc;

namespace {

double total_prob(const Dist& d) {
  double s = 0;
  for (const auto& [_, p] : d) s += p;
  return s;
}

double tv_distance(const Dist& a, const Dist& b) {
  double tv = 0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    tv += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, p] : b)
    if (!a.count(k)) tv += p;
  return tv / 2;
}

}  // namespace

TEST_CASE("channel spec validation") {
  CHECK_THROWS_WITH(make_runlength_channel({0.2, 0.1}, 0.1, 2, TrimMode::none),
                    "monotonicity-violation");
  CHECK_THROWS_WITH(make_runlength_channel({0.0, 0.95}, 0.1, 2, TrimMode::none),
                    "saturation-violation");
  ChannelSpec ok = make_runlength_channel({0.0, 0.5}, 0.2, 2, TrimMode::none);
  CHECK(ok.d(1) == 0.0);
  CHECK(ok.d(2) == 0.5);
  CHECK(ok.d(7) == 0.5);  // saturates at M
}

TEST_CASE("threshold channel shape") {
  ChannelSpec ch = make_threshold_channel(3, 0.4);
  CHECK(ch.M == 3);
  CHECK(ch.d(1) == 0.0);
  CHECK(ch.d(2) == 0.0);
  CHECK(ch.d(3) == 0.4);
  CHECK(ch.d(9) == 0.4);
  CHECK(ch.mu == doctest::Approx((1 - 0.4) / 2));
  CHECK_THROWS_WITH(make_threshold_channel(2, 1.0), "saturation-violation");
}

TEST_CASE("trim mode names round-trip") {
  for (TrimMode m : {TrimMode::none, TrimMode::trim00, TrimMode::trim01,
                     TrimMode::trim10, TrimMode::trim11}) {
    auto back = trim_mode_from_name(trim_mode_name(m));
    REQUIRE(back.has_value());
    CHECK(*back == m);
  }
  CHECK(!trim_mode_from_name("bogus").has_value());
}

TEST_CASE("apply_trim hand cases") {
  CHECK(apply_trim(TrimMode::none, "00101100") == "00101100");
  CHECK(apply_trim(TrimMode::trim00, "00101100") == "1011");
  CHECK(apply_trim(TrimMode::trim01, "0010110011") == "101100");
  CHECK(apply_trim(TrimMode::trim10, "110100") == "01");  // leading 1s, trailing 0s
  CHECK(apply_trim(TrimMode::trim11, "1101011") == "010");
  CHECK(apply_trim(TrimMode::trim00, "0000") == "");
  CHECK(apply_trim(TrimMode::trim00, "1111") == "1111");
}

TEST_CASE("transmit respects run protection") {
  // Runs shorter than tau are never deleted.
  ChannelSpec ch = make_threshold_channel(3, 0.9);
  std::mt19937_64 seeds(11);
  for (int it = 0; it < 50; it++) {
    BitString y = transmit(ch, "0101101101", seeds());  // all runs < 3
    CHECK(y == "0101101101");
  }
  // d = 0 is the identity on any input.
  ChannelSpec clean = make_threshold_channel(2, 0.0);
  CHECK(transmit(clean, "0011010111000", 5) == "0011010111000");
}

TEST_CASE("transmit is deterministic in the seed") {
  ChannelSpec ch = make_threshold_channel(2, 0.5);
  BitString x = "0011100101110001";
  CHECK(transmit(ch, x, 42) == transmit(ch, x, 42));
  bool any_diff = false;
  for (int s = 0; s < 20 && !any_diff; s++)
    any_diff = transmit(ch, x, s) != transmit(ch, x, s + 1000);
  CHECK(any_diff);
}

TEST_CASE("transition_dist is a probability distribution") {
  for (auto trim : {TrimMode::none, TrimMode::trim00, TrimMode::trim11}) {
    ChannelSpec ch = make_threshold_channel(2, 0.3, trim);
    for (BitString x : {"0", "0110", "00111010", "1111111111"}) {
      Dist d = transition_dist(ch, x);
      CHECK(total_prob(d) == doctest::Approx(1.0).epsilon(1e-12));
      for (const auto& [y, p] : d) CHECK(p > 0);
    }
  }
}

TEST_CASE("transition_dist hand oracle on a single run") {
  // Input 11 through BDC-Thr(2, d): each bit i.i.d. deleted w.p. d.
  double d = 0.3;
  Dist dist = transition_dist(make_threshold_channel(2, d), "11");
  CHECK(dist[""] == doctest::Approx(d * d));
  CHECK(dist["1"] == doctest::Approx(2 * d * (1 - d)));
  CHECK(dist["11"] == doctest::Approx((1 - d) * (1 - d)));

  // Input 011: the 0-run has length 1 < 2 and survives surely.
  Dist dist2 = transition_dist(make_threshold_channel(2, d), "011");
  CHECK(dist2["0"] == doctest::Approx(d * d));
  CHECK(dist2["01"] == doctest::Approx(2 * d * (1 - d)));
  CHECK(dist2["011"] == doctest::Approx((1 - d) * (1 - d)));
  CHECK(dist2.size() == 3);
}

TEST_CASE("trimmed law is the push-forward of the untrimmed law") {
  ChannelSpec plain = make_threshold_channel(2, 0.35);
  for (BitString x : {"010011", "00110100", "111000"}) {
    Dist untrimmed = transition_dist(plain, x);
    for (auto trim : {TrimMode::trim00, TrimMode::trim01, TrimMode::trim10,
                      TrimMode::trim11}) {
      ChannelSpec trimmed_ch = plain;
      trimmed_ch.trim = trim;
      Dist pushed;
      for (const auto& [y, p] : untrimmed) pushed[apply_trim(trim, y)] += p;
      Dist direct = transition_dist(trimmed_ch, x);
      CHECK(tv_distance(pushed, direct) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("sampler agrees with the oracle in total variation") {
  ChannelSpec ch = make_threshold_channel(2, 0.4, TrimMode::trim00);
  BitString x = "001101";
  Dist oracle = transition_dist(ch, x);
  Dist empirical;
  const int samples = 20000;
  for (int i = 0; i < samples; i++)
    empirical[transmit(ch, x, subseed(99, i))] += 1.0 / samples;
  CHECK(tv_distance(oracle, empirical) < 0.02);
}

TEST_CASE("transmit_multi emits independent reproducible traces") {
  ChannelSpec ch = make_threshold_channel(2, 0.5, TrimMode::none, 4);
  BitString x = "0011001110011";
  TraceSet ts = transmit_multi(ch, x, 7);
  REQUIRE(ts.traces.size() == 4);
  CHECK(ts.origin_length == x.size());
  TraceSet again = transmit_multi(ch, x, 7);
  CHECK(ts.traces == again.traces);
  // Product law: per-trace empirical marginals each match the single-trace
  // oracle, and traces are not all identical.
  bool differ = false;
  for (size_t t = 1; t < ts.traces.size(); t++)
    differ |= ts.traces[t] != ts.traces[0];
  CHECK(differ);
  Dist oracle = transition_dist(make_threshold_channel(2, 0.5), "0011");
  const int samples = 20000;
  std::vector<Dist> marg(2);
  ChannelSpec two = make_threshold_channel(2, 0.5, TrimMode::none, 2);
  // Joint empirical over two traces factorizes as the product of the oracle.
  std::map<std::pair<BitString, BitString>, double> joint;
  for (int i = 0; i < samples; i++) {
    TraceSet s = transmit_multi(two, "0011", subseed(123, i));
    joint[{s.traces[0], s.traces[1]}] += 1.0 / samples;
    marg[0][s.traces[0]] += 1.0 / samples;
    marg[1][s.traces[1]] += 1.0 / samples;
  }
  CHECK(tv_distance(marg[0], oracle) < 0.02);
  CHECK(tv_distance(marg[1], oracle) < 0.02);
  double tv_joint = 0;
  for (const auto& [yy, p] : joint)
    tv_joint += std::abs(p - oracle[yy.first] * oracle[yy.second]);
  CHECK(tv_joint / 2 < 0.03);
}

TEST_CASE("star channel keeps and reveals the boundary runs") {
  ChannelSpec ch = make_threshold_channel(2, 0.4);
  // Single-run input: first run == last run, never deleted.
  StarDist single = star_transition_dist(ch, "1111");
  REQUIRE(single.size() == 1);
  const auto& [so, p] = *single.begin();
  CHECK(p == doctest::Approx(1.0));
  CHECK(so.body == "1111");
  CHECK(so.first_run_len == 4);
  CHECK(so.last_run_len == 4);

  // Two runs: both are boundary runs, so the law is deterministic too.
  StarDist two = star_transition_dist(ch, "0011");
  REQUIRE(two.size() == 1);
  CHECK(two.begin()->first.body == "0011");

  // Interior run of length 2 may be thinned; boundary lengths are fixed.
  StarDist three = star_transition_dist(ch, "011100");
  double total = 0;
  for (const auto& [out, prob] : three) {
    CHECK(out.first_run_len == 1);
    CHECK(out.last_run_len == 2);
    CHECK(out.body.front() == '0');
    CHECK(out.body.substr(out.body.size() - 2) == "00");
    total += prob;
  }
  CHECK(total == doctest::Approx(1.0));
  // The interior 111 run thins i.i.d. at rate d.
  double d = 0.4;
  StarOutput full{"011100", 1, 2};
  CHECK(three.at(full) == doctest::Approx((1 - d) * (1 - d) * (1 - d)));
  StarOutput gone{"0" + BitString("00"), 1, 2};
  CHECK(three.at(gone) == doctest::Approx(d * d * d));
}

TEST_CASE("subseed separates streams") {
  CHECK(subseed(1, 0) != subseed(1, 1));
  CHECK(subseed(1, 0) != subseed(2, 0));
  CHECK(subseed(5, 7) == subseed(5, 7));
}

TEST_CASE("isi_transmit hand law") {
  // Memoryless substitution: context is just x_i; flip every bit surely.
  ISISpec flip;
  flip.ell = 0;
  flip.a = 1;
  flip.law["0"] = {{"1", 1.0}};
  flip.law["1"] = {{"0", 1.0}};
  CHECK(isi_transmit(flip, "0011", 1) == "1100");

  // Context length 1 with zero-padded history: first bit sees context "0"+x_0.
  ISISpec dup;
  dup.ell = 1;
  dup.a = 2;
  dup.law["00"] = {{"00", 1.0}};
  dup.law["01"] = {{"1", 1.0}};
  dup.law["10"] = {{"0", 1.0}};
  dup.law["11"] = {{"11", 1.0}};
  CHECK(isi_transmit(dup, "011", 1) == "00" "1" "11");

  // leave_first_uncorrupted passes the first ell bits through unchanged.
  ISISpec keep = dup;
  keep.leave_first_uncorrupted = true;
  CHECK(isi_transmit(keep, "011", 1) == "0" "1" "11");
}
