#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "channels.hpp"
#include "inner_codes.hpp"
#include "outer_codes.hpp"

namespace rlc {

// Full constant set binding encoder and decoder for either scheme.
struct SchemeParams {
  double epsilon = 0.1;  // target gap-to-capacity (asymptotic intent only)
  double nu = 1.0;       // buffer density constant
  int B = 0;             // buffer length
  int m = 0;             // single-trace inner block length
  int n_R = 0;           // multi-trace payload inner block length
  int n_S = 0;           // multi-trace sync inner block length
  int n_out = 0;         // outer block length
  double d_M = 0;        // saturation deletion probability d(M)
  int T = 1;             // traces
  double R_in = 0;       // payload bits per inner bit
  double R_out = 0;      // outer code rate
  double delta_out = 0;  // designed outer distance
  int q_sync = 4;        // sync alphabet size
  double eta = 0.25;     // sync string parameter
  int payload_field_bits = 6;

  // Single trace: a run of zeros of length at least nu*m/2 is a buffer.
  int st_zero_threshold() const;
  // Multi trace: a run of length greater than (1-d_M)*B/2 is a buffer.
  int mt_buffer_threshold() const;
  // Single-trace buffer length ceil(nu*m/(1-d_M)).
  static int st_buffer_length(double nu, int m, double d_M);
  // Multi-trace buffer length (nu/(16*(1-d_M)))*n_R, rounded up.
  static int mt_buffer_length(double nu, int n_R, double d_M);
};

// Table-style defaults derived from epsilon alone. The constant chains are
// asymptotic-intent only and generally useless at desk scale; desk configs
// should set the fields explicitly.
SchemeParams table_defaults_single(double epsilon, double mu, double d_M, int m);
SchemeParams table_defaults_multi(double epsilon, double mu, double d_M, int n_R,
                                  int T);

struct DecodeRecord {
  bool ok = false;
  std::vector<int> msg;
  // Single trace: the (payload, sync) pair stream seen before outer decoding.
  std::vector<std::pair<int, int>> outer_received;
  // Multi trace: the outer word (with erasures) before outer decoding.
  std::vector<int> outer_word;
  int segments = 0;
  int inner_erasures = 0;
  int matched = 0;
};

// Single-trace scheme: C_in(sigma_1) 0^B C_in(sigma_2) ... C_in(sigma_n),
// inner codewords start and end with 1, decoded under 00-trimming likelihoods.
class STScheme {
 public:
  STScheme(SchemeParams p, ChannelSpec channel, Codebook inner, InsdelCode outer);

  BitString encode(const std::vector<int>& msg) const;
  DecodeRecord decode(const BitString& y) const;
  // The pair stream extracted from y, before outer decoding (for error
  // accounting).
  std::vector<std::pair<int, int>> extract_pairs(const BitString& y) const;
  std::vector<std::pair<int, int>> true_pairs(const std::vector<int>& msg) const;

  const SchemeParams& params() const { return p_; }
  const ChannelSpec& channel() const { return channel_; }
  const Codebook& inner() const { return inner_; }
  int message_symbols() const { return outer_.sub.rs.k(); }
  int payload_q() const;

 private:
  SchemeParams p_;
  ChannelSpec channel_;
  Codebook inner_;
  InsdelCode outer_;
  InnerDecoder dec_;  // 00-trimming likelihoods
};

// Multi-trace scheme: a_1 0^B b_1 1^B ... a_n 0^B b_n 1^B with payload inner
// code C_R (starts 0, ends 1) and sync inner code C_S (starts 1, ends 0).
class MTScheme {
 public:
  MTScheme(SchemeParams p, ChannelSpec channel, Codebook c_r, Codebook c_s,
           SubCode sub, SyncString sync);

  BitString encode(const std::vector<int>& msg) const;
  // Per-outer-position payload candidates from one trace (10-trimmed), or
  // nullopt where alignment failed.
  std::vector<std::optional<BitString>> align(const BitString& trace) const;
  DecodeRecord decode(const TraceSet& ts) const;

  const SchemeParams& params() const { return p_; }
  const ChannelSpec& channel() const { return channel_; }
  int message_symbols() const { return sub_.rs.k(); }

 private:
  SchemeParams p_;
  ChannelSpec channel_;
  Codebook c_r_, c_s_;
  SubCode sub_;
  SyncString sync_;
  InnerDecoder dec_r_;  // 10-trimming likelihoods
  InnerDecoder dec_s_;  // 01-trimming likelihoods
};

// Nominal rate from the parameter set alone:
//   single: R_out*R_in*m*n_out / (m*n_out + (n_out-1)*B)
//   multi:  R_out*R_in*n_R / (n_R + 2B + n_S)
double scheme_rate(const SchemeParams& p, const std::string& which);

// All length-n strings with the requested first/last bits, lexicographic,
// truncated to `count` entries (tiny inner codes such as C_S).
Codebook build_exhaustive_codebook(int n, int count, int prefix_bit, int suffix_bit);

// Convenience builders for a full desk-scale scheme instance.
STScheme make_st_scheme(const SchemeParams& p, const ChannelSpec& channel,
                        std::uint64_t seed, double zeta, double gamma);
MTScheme make_mt_scheme(const SchemeParams& p, const ChannelSpec& channel,
                        std::uint64_t seed, double zeta, double gamma);

}  // namespace rlc
