#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "outer_codes.hpp"

using namespace rlc;

namespace {

int hamming(const std::vector<int>& a, const std::vector<int>& b) {
  int d = 0;
  for (size_t i = 0; i < a.size(); i++) d += a[i] != b[i];
  return d;
}

}  // namespace

TEST_CASE("GF arithmetic") {
  for (int m : {4, 5, 6, 8}) {
    GF gf(m);
    CHECK(gf.q() == (1 << m));
    // Every nonzero element has a working inverse.
    for (int a = 1; a < gf.q(); a++) {
      CHECK(gf.mul(a, gf.inv(a)) == 1);
      CHECK(gf.div(a, a) == 1);
    }
    // alpha generates the multiplicative group.
    std::vector<char> seen(static_cast<size_t>(gf.q()), 0);
    for (int e = 0; e < gf.q() - 1; e++) seen[static_cast<size_t>(gf.pow_alpha(e))] = 1;
    int count = 0;
    for (char c : seen) count += c;
    CHECK(count == gf.q() - 1);
    // Spot-check distributivity on a few triples.
    std::mt19937_64 rng(static_cast<std::uint64_t>(m));
    for (int it = 0; it < 50; it++) {
      int a = static_cast<int>(rng() % static_cast<unsigned>(gf.q()));
      int b = static_cast<int>(rng() % static_cast<unsigned>(gf.q()));
      int c = static_cast<int>(rng() % static_cast<unsigned>(gf.q()));
      CHECK(gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c)));
    }
    CHECK(gf.pow_alpha(-1) == gf.inv(gf.pow_alpha(1)));
  }
}

TEST_CASE("RS encode is systematic and decode inverts it") {
  RSCode rs(15, 7, 4);
  std::mt19937_64 rng(1);
  for (int it = 0; it < 50; it++) {
    std::vector<int> msg(7);
    for (int& s : msg) s = static_cast<int>(rng() % 16);
    std::vector<int> cw = rs.encode(msg);
    REQUIRE(cw.size() == 15);
    for (int i = 0; i < 7; i++) CHECK(cw[static_cast<size_t>(i)] == msg[static_cast<size_t>(i)]);
    auto back = rs.decode(cw);
    REQUIRE(back.has_value());
    CHECK(*back == msg);
  }
}

TEST_CASE("RS corrects e erasures plus t errors whenever e + 2t <= n - k") {
  RSCode rs(15, 7, 4);  // n - k = 8
  std::mt19937_64 rng(2);
  for (int it = 0; it < 400; it++) {
    std::vector<int> msg(7);
    for (int& s : msg) s = static_cast<int>(rng() % 16);
    std::vector<int> cw = rs.encode(msg);
    int t = static_cast<int>(rng() % 5);               // 0..4 errors
    int e = static_cast<int>(rng() % static_cast<unsigned>(8 - 2 * t + 1));
    std::vector<int> pos(15);
    for (int i = 0; i < 15; i++) pos[static_cast<size_t>(i)] = i;
    std::shuffle(pos.begin(), pos.end(), rng);
    std::vector<int> word = cw;
    for (int i = 0; i < t; i++) {
      int p = pos[static_cast<size_t>(i)];
      word[static_cast<size_t>(p)] ^= 1 + static_cast<int>(rng() % 15);
    }
    for (int i = t; i < t + e; i++) word[static_cast<size_t>(pos[static_cast<size_t>(i)])] = kErasedSymbol;
    auto back = rs.decode(word);
    REQUIRE(back.has_value());
    CHECK(*back == msg);
  }
}

TEST_CASE("RS decode matches nearest-codeword brute force inside the radius") {
  // Small dimension so the whole code is enumerable: 256 codewords.
  RSCode rs(15, 2, 4);  // distance 14, corrects up to 6 errors
  std::vector<std::vector<int>> all;
  for (int a = 0; a < 16; a++)
    for (int b = 0; b < 16; b++) all.push_back(rs.encode({a, b}));
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; it++) {
    const std::vector<int>& cw = all[rng() % all.size()];
    std::vector<int> word = cw;
    int t = static_cast<int>(rng() % 7);  // within the unique-decoding radius
    std::vector<int> pos(15);
    for (int i = 0; i < 15; i++) pos[static_cast<size_t>(i)] = i;
    std::shuffle(pos.begin(), pos.end(), rng);
    for (int i = 0; i < t; i++)
      word[static_cast<size_t>(pos[static_cast<size_t>(i)])] ^= 1 + static_cast<int>(rng() % 15);
    // Brute-force nearest codeword.
    int best = 0, best_d = 99;
    for (size_t c = 0; c < all.size(); c++)
      if (hamming(all[c], word) < best_d) {
        best_d = hamming(all[c], word);
        best = static_cast<int>(c);
      }
    auto dec = rs.decode(word);
    REQUIRE(dec.has_value());
    CHECK(rs.encode(*dec) == all[static_cast<size_t>(best)]);
  }
}

TEST_CASE("RS reports failure beyond its radius rather than miscorrecting") {
  RSCode rs(15, 11, 4);  // corrects 2 errors
  std::mt19937_64 rng(4);
  int failures = 0, miscorrections = 0;
  for (int it = 0; it < 300; it++) {
    std::vector<int> msg(11);
    for (int& s : msg) s = static_cast<int>(rng() % 16);
    std::vector<int> word = rs.encode(msg);
    // 5 random errors: far outside the radius.
    std::vector<int> pos(15);
    for (int i = 0; i < 15; i++) pos[static_cast<size_t>(i)] = i;
    std::shuffle(pos.begin(), pos.end(), rng);
    for (int i = 0; i < 5; i++)
      word[static_cast<size_t>(pos[static_cast<size_t>(i)])] ^= 1 + static_cast<int>(rng() % 15);
    auto dec = rs.decode(word);
    if (!dec)
      failures++;
    else if (*dec != msg)
      miscorrections++;  // legitimate: the word landed in another ball
  }
  // Most corruptions should be flagged, not silently miscorrected.
  CHECK(failures > miscorrections);
  CHECK(failures + miscorrections > 0);
}

TEST_CASE("too many erasures fail cleanly") {
  RSCode rs(15, 7, 4);
  std::vector<int> word(15, kErasedSymbol);
  CHECK(!rs.decode(word).has_value());
}

TEST_CASE("SubCode dimension formula") {
  SubCode c1(48, 0.25, 6);  // k = 48 - 12 + 1 = 37
  CHECK(c1.rs.n() == 48);
  CHECK(c1.rs.k() == 37);
  SubCode c2(20, 0.1, 8);  // k = 20 - 2 + 1 = 19
  CHECK(c2.rs.k() == 19);
  // Round trip with e + 2t < delta*n.
  std::mt19937_64 rng(5);
  std::vector<int> msg(37);
  for (int& s : msg) s = static_cast<int>(rng() % 64);
  std::vector<int> cw = sub_encode(c1, msg);
  cw[3] = kErasedSymbol;
  cw[10] = kErasedSymbol;
  cw[20] ^= 5;
  cw[40] ^= 9;  // 2 erasures + 2 errors: 2 + 4 < 12
  auto back = sub_decode(c1, cw);
  REQUIRE(back.has_value());
  CHECK(*back == msg);
}

TEST_CASE("sync strings verify and serialize") {
  SyncString s = build_sync_string(16, 0.25, 16);
  CHECK(s.verified);
  CHECK(static_cast<int>(s.symbols.size()) == 16);
  CHECK(verify_sync_string(s.symbols, 0.25));
  for (int sym : s.symbols) {
    CHECK(sym >= 0);
    CHECK(sym < 16);
  }
  std::stringstream ss;
  s.serialize(ss);
  SyncString back = SyncString::deserialize(ss);
  CHECK(back.symbols == s.symbols);
  CHECK(back.eta == s.eta);
  CHECK(back.alphabet_size == s.alphabet_size);
  CHECK(back.verified);
}

TEST_CASE("verify_sync_string rejects repetitive strings") {
  // aaaa: the pair (a, a) has edit distance 0, far below (1-eta)*2.
  CHECK(!verify_sync_string({0, 0, 0, 0}, 0.25));
  // abab at eta = 0.25: ED(ab, ab) = 0 < 0.75*4.
  CHECK(!verify_sync_string({0, 1, 0, 1}, 0.25));
  // Distinct symbols always verify.
  CHECK(verify_sync_string({0, 1, 2, 3, 4}, 0.25));
}

TEST_CASE("impossible sync parameters fail with construction-failed") {
  CHECK_THROWS_WITH(build_sync_string(16, 0.01, 4), "construction-failed");
}

TEST_CASE("match_sync basics") {
  // Perfect reception matches everything in order.
  Matching full = match_sync({0, 1, 2, 3}, {0, 1, 2, 3});
  CHECK(full.left == std::vector<int>{0, 1, 2, 3});
  CHECK(full.right == std::vector<int>{0, 1, 2, 3});
  // One deletion: the survivors still match.
  Matching del = match_sync({0, 1, 2}, {0, 2});
  CHECK(del.left == std::vector<int>{0, 2});
  CHECK(del.right == std::vector<int>{0, 1});
  // Matches are an LCS: never more than the true common subsequence.
  Matching ins = match_sync({0, 1, 2, 3}, {0, 9, 1, 2, 9, 3});
  CHECK(ins.left == std::vector<int>{0, 1, 2, 3});
  CHECK(ins.right == std::vector<int>{0, 2, 3, 5});
  // Indices are strictly increasing on both sides.
  Matching m = match_sync({0, 1, 0, 2, 1}, {1, 0, 2, 2, 1});
  for (size_t i = 1; i < m.left.size(); i++) {
    CHECK(m.left[i] > m.left[i - 1]);
    CHECK(m.right[i] > m.right[i - 1]);
  }
  for (size_t i = 0; i < m.left.size(); i++)
    CHECK(std::vector<int>{0, 1, 0, 2, 1}[static_cast<size_t>(m.left[i])] ==
          std::vector<int>{1, 0, 2, 2, 1}[static_cast<size_t>(m.right[i])]);
}

TEST_CASE("insdel code round-trips and absorbs synchronization errors") {
  SubCode sub(15, 0.5, 4);  // k = 15 - 8 + 1 = 8 over GF(16)
  SyncString sync = build_sync_string(15, 0.25, 16);
  InsdelCode code(sub, sync);
  std::mt19937_64 rng(6);
  std::vector<int> msg(static_cast<size_t>(sub.rs.k()));
  for (int& s : msg) s = static_cast<int>(rng() % 16);
  auto pairs = insdel_encode(code, msg);
  REQUIRE(pairs.size() == 15);
  for (size_t i = 0; i < pairs.size(); i++)
    CHECK(pairs[i].second == sync.symbols[i]);
  auto back = insdel_decode(code, pairs);
  REQUIRE(back.has_value());
  CHECK(*back == msg);
  // One deleted pair and one junk insertion still decode.
  auto corrupted = pairs;
  corrupted.erase(corrupted.begin() + 5);
  corrupted.insert(corrupted.begin() + 9, {3, 15});
  auto rec = insdel_decode(code, corrupted);
  REQUIRE(rec.has_value());
  CHECK(*rec == msg);
}

TEST_CASE("insdel code constructor validates its parts") {
  SubCode sub(15, 0.5, 4);
  SyncString sync = build_sync_string(15, 0.25, 16);
  SyncString wrong_len = build_sync_string(8, 0.25, 16);
  CHECK_THROWS(InsdelCode(sub, wrong_len));
  SyncString unverified = sync;
  unverified.verified = false;
  CHECK_THROWS(InsdelCode(sub, unverified));
}
