#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace rlc {

// Symbol value marking an erasure in outer words.
inline constexpr int kErasedSymbol = -1;

// GF(2^m) with log/antilog tables, m in {4, 5, 6, 8}.
class GF {
 public:
  explicit GF(int m);
  int q() const { return q_; }
  int add(int a, int b) const { return a ^ b; }
  int mul(int a, int b) const;
  int div(int a, int b) const;
  int pow_alpha(int e) const;  // alpha^e, e may be negative
  int inv(int a) const;

 private:
  int m_, q_;
  std::vector<int> exp_, log_;
};

// Systematic Reed-Solomon code of length n <= q-1 and dimension k over
// GF(2^m); corrects e erasures plus t errors whenever e + 2t <= n - k.
class RSCode {
 public:
  RSCode(int n, int k, int field_bits = 8);
  int n() const { return n_; }
  int k() const { return k_; }

  // msg: k symbols in [0, q). Returns n symbols, message-first.
  std::vector<int> encode(const std::vector<int>& msg) const;

  // word: n symbols with kErasedSymbol marking erasures. Returns the decoded
  // message, or nullopt when decoding fails.
  std::optional<std::vector<int>> decode(const std::vector<int>& word) const;

 private:
  GF gf_;
  int n_, k_;
  std::vector<int> gen_;  // generator polynomial, low degree first
};

// Substitution/erasure outer code with designed relative distance delta_sub:
// k = n - ceil(delta_sub*n) + 1, so e + 2t < delta_sub*n is always correctable.
struct SubCode {
  RSCode rs;
  double delta_sub;
  SubCode(int n_out, double delta_sub_, int field_bits = 8);
};

std::vector<int> sub_encode(const SubCode& code, const std::vector<int>& msg);
std::optional<std::vector<int>> sub_decode(const SubCode& code,
                                           const std::vector<int>& word);

// A verified eta-synchronization string over the alphabet {0..alphabet_size-1}:
// every pair of adjacent substrings S[i,j), S[j,k) satisfies
// ED(S[i,j), S[j,k)) > (1-eta)(k-i).
struct SyncString {
  std::vector<int> symbols;
  double eta = 0;
  int alphabet_size = 0;
  bool verified = false;

  void serialize(std::ostream& os) const;
  static SyncString deserialize(std::istream& is);
};

// Exhaustive check over all index triples.
bool verify_sync_string(const std::vector<int>& s, double eta);

// Greedy symbol-by-symbol construction with backtracking; every prefix is
// re-verified incrementally. Throws std::runtime_error("construction-failed")
// when the backtracking budget is exhausted (raise alphabet_size).
SyncString build_sync_string(int n, double eta, int alphabet_size);

struct Matching {
  std::vector<int> left;   // indices into the sync string, strictly increasing
  std::vector<int> right;  // indices into the received sequence
};

// Leftmost-greedy longest-common-subsequence alignment of the sync string
// against a received symbol sequence. Deterministic.
Matching match_sync(const std::vector<int>& sync, const std::vector<int>& received);

// Insdel outer code: each codeword position carries (payload symbol, sync
// symbol); the decoder realigns via match_sync, turning insertions/deletions
// into erasures and substitutions for the substitution code.
struct InsdelCode {
  SubCode sub;
  SyncString sync;
  InsdelCode(SubCode sub_, SyncString sync_);
};

std::vector<std::pair<int, int>> insdel_encode(const InsdelCode& code,
                                               const std::vector<int>& msg);
std::optional<std::vector<int>> insdel_decode(
    const InsdelCode& code, const std::vector<std::pair<int, int>>& received);

}  // namespace rlc
