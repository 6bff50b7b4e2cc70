#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bitseq.hpp"

namespace rlc {

enum class TrimMode { none, trim00, trim01, trim10, trim11 };

const char* trim_mode_name(TrimMode m);
std::optional<TrimMode> trim_mode_from_name(const std::string& name);

// A runlength-dependent deletion law: each bit in a run of length l is deleted
// independently with probability d(min(l, M)), where d is non-decreasing and
// d(M) < 1 - mu. Optionally followed by boundary-run trimming, and optionally
// emitting several independent traces.
struct ChannelSpec {
  std::vector<double> d_table;  // d(1..M)
  double mu = 0.0;
  int M = 0;
  TrimMode trim = TrimMode::none;
  int traces = 1;

  double d(int run_len) const {
    return d_table[static_cast<size_t>(std::min(run_len, M)) - 1];
  }
};

struct TraceSet {
  std::vector<BitString> traces;
  size_t origin_length = 0;
};

// Exact output law of a channel on one input, keyed by output string.
using Dist = std::map<BitString, double>;

// Output of the star channel Z*: the first and last input runs pass through
// undeleted and their lengths are revealed.
struct StarOutput {
  BitString body;
  int first_run_len = 0;
  int last_run_len = 0;
  auto operator<=>(const StarOutput&) const = default;
};
using StarDist = std::map<StarOutput, double>;

// Per-bit replacement channel with memory ell: bit x_i is replaced by a string
// of length <= a drawn from law(context), where the context is the ell+1 bits
// x_{i-ell}..x_i (oldest first). Positions with incomplete history use
// zero-padding by default; with leave_first_uncorrupted set, the first ell
// bits pass through unchanged instead.
struct ISISpec {
  int ell = 0;
  int a = 1;
  bool leave_first_uncorrupted = false;
  std::map<std::string, std::vector<std::pair<BitString, double>>> law;
};

// Validates and builds a spec. Throws std::invalid_argument with message
// "monotonicity-violation" or "saturation-violation".
ChannelSpec make_runlength_channel(const std::vector<double>& d_table, double mu,
                                   int M, TrimMode trim = TrimMode::none,
                                   int traces = 1);

// BDC-Thr(tau, d): runs shorter than tau pass untouched, every bit of a run of
// length >= tau is deleted independently with probability d.
ChannelSpec make_threshold_channel(int tau, double d, TrimMode trim = TrimMode::none,
                                   int traces = 1);

// Derives a fresh 64-bit subseed from (master, index); used for per-trace and
// per-trial seeding so runs are reproducible and order-independent.
std::uint64_t subseed(std::uint64_t master, std::uint64_t index);

BitString apply_trim(TrimMode mode, const BitString& s);

// One channel draw, deterministic given seed.
BitString transmit(const ChannelSpec& spec, const BitString& x, std::uint64_t seed);

// spec.traces independent draws with subseeds derived from seed.
TraceSet transmit_multi(const ChannelSpec& spec, const BitString& x,
                        std::uint64_t seed);

// Exact output distribution by enumeration of all 2^|x| deletion patterns
// (post-trimming if the spec trims). |x| <= 16.
Dist transition_dist(const ChannelSpec& spec, const BitString& x);

// Exact law of the star channel Z* for this spec (trim mode ignored).
StarDist star_transition_dist(const ChannelSpec& spec, const BitString& x);

// One draw of the ISI replacement channel.
BitString isi_transmit(const ISISpec& isi, const BitString& x, std::uint64_t seed);

}  // namespace rlc
