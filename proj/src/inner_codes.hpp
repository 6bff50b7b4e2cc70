#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <vector>

#include "bitseq.hpp"
#include "channels.hpp"

namespace rlc {

// Symbol returned by the decoders when no codeword has positive likelihood.
inline constexpr int kErasure = -1;

// A symbol -> codeword table. Symbols are the indices 0..size-1. Either kind
// of metadata may be present: density metadata for dense random codes,
// run-profile metadata for the greedy adversarial codes.
struct Codebook {
  std::vector<BitString> words;
  int n = 0;  // shared block length
  // dense metadata
  double zeta = 0, gamma = 0;
  int prefix_bit = -1, suffix_bit = -1;  // -1: unconstrained
  // greedy metadata
  std::vector<double> beta;
  int tau = 0, M = 0;
  double delta = 0;

  int size() const { return static_cast<int>(words.size()); }
  void serialize(std::ostream& os) const;
  static Codebook deserialize(std::istream& is);
};

struct RestrictedBall {
  BitString center;
  int budget = 0;
  std::set<BitString> members;
};

// i.i.d.-uniform rejection sampling of `num_codewords` distinct words that
// pass density_ok(zeta, gamma) and match the requested first/last bits
// (pass -1 to leave either end unconstrained). Deterministic given seed.
// Throws std::runtime_error("feasibility-exhausted") when the rejection
// budget runs out.
Codebook build_dense_codebook(int n, int num_codewords, double zeta, double gamma,
                              int prefix_bit, int suffix_bit, std::uint64_t seed);

// Exact-likelihood decoder for a codebook over a channel oracle; per-codeword
// output distributions are precomputed once, so decode calls are lookups.
class InnerDecoder {
 public:
  InnerDecoder(const Codebook& book, const ChannelSpec& spec);

  // argmax_c P(y|c); ties broken by smallest symbol index; kErasure when all
  // likelihoods vanish.
  int decode(const BitString& y) const;

  // argmax_c prod_t P(y_t|c) over the present traces; absent entries are
  // skipped; kErasure when no trace is present or all likelihoods vanish.
  int decode_traces(const std::vector<std::optional<BitString>>& ts) const;

  double likelihood(int symbol, const BitString& y) const;
  const Codebook& book() const { return book_; }

 private:
  Codebook book_;
  ChannelSpec spec_;
  std::vector<Dist> dists_;  // one exact output law per codeword
};

int ml_decode_single(const InnerDecoder& dec, const BitString& y);
int ml_decode_traces(const InnerDecoder& dec,
                     const std::vector<std::optional<BitString>>& ts);

// All strings of length N whose run-length multiset has exactly
// round(beta_i*N) runs of each length i <= tau (both starting bits), sorted.
// Throws std::invalid_argument on non-integral compositions.
std::vector<BitString> enumerate_S_beta(int N, int tau,
                                        const std::vector<double>& beta);

// Ball of the (delta,tau)-restricted adversary around c: strings reachable by
// at most `budget` deletions where deleting in run r_i requires |r_i| = tau or
// |r_{i-1}| = tau (indices of the original string). Includes c.
RestrictedBall restricted_deletion_ball(const BitString& c, int budget, int tau);

// Plain deletion ball: all subsequences within `budget` deletions.
std::set<BitString> deletion_ball(const BitString& c, int budget);

// Greedy packing over S_beta in ascending lexicographic order: a candidate is
// accepted iff its deletion ball at budget delta*N is disjoint from the balls
// of all accepted codewords (see the design notes: packing uses plain
// deletion balls, which dominate the restricted adversary).
Codebook build_greedy_code(int N, int tau, const std::vector<double>& beta,
                           double delta);

// Stretches every run of length exactly tau to length M.
Codebook blow_up(const Codebook& book, int tau, int M);
BitString blow_up_word(const BitString& w, int tau, int M);

// Collapses every run of y of length >= tau down to tau.
BitString collapse_runs(const BitString& y, int tau);

inline constexpr int kNoCandidate = -2;
inline constexpr int kAmbiguous = -3;

// Threshold decoding for a blown-up greedy code: collapse runs >= tau in y to
// tau, then return the unique pre-blowup codeword whose restricted ball at
// budget deltaN contains the collapsed string. Returns kNoCandidate or
// kAmbiguous on failure.
int threshold_decode(const Codebook& pre_blowup, int tau, int M, int deltaN,
                     const BitString& y);

}  // namespace rlc
