#include "channels.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rlc {

const char* trim_mode_name(TrimMode m) {
  switch (m) {
    case TrimMode::none: return "none";
    case TrimMode::trim00: return "trim00";
    case TrimMode::trim01: return "trim01";
    case TrimMode::trim10: return "trim10";
    case TrimMode::trim11: return "trim11";
  }
  return "none";
}

std::optional<TrimMode> trim_mode_from_name(const std::string& name) {
  if (name == "none") return TrimMode::none;
  if (name == "trim00") return TrimMode::trim00;
  if (name == "trim01") return TrimMode::trim01;
  if (name == "trim10") return TrimMode::trim10;
  if (name == "trim11") return TrimMode::trim11;
  return std::nullopt;
}

ChannelSpec make_runlength_channel(const std::vector<double>& d_table, double mu,
                                   int M, TrimMode trim, int traces) {
  if (M < 1 || static_cast<int>(d_table.size()) != M)
    throw std::invalid_argument("d_table length must equal M");
  if (!(mu > 0 && mu < 1)) throw std::invalid_argument("mu must lie in (0,1)");
  if (traces < 1) throw std::invalid_argument("traces must be >= 1");
  for (int i = 0; i < M; i++) {
    if (d_table[i] < 0 || d_table[i] > 1)
      throw std::invalid_argument("deletion probabilities must lie in [0,1]");
    if (i > 0 && d_table[i] < d_table[i - 1])
      throw std::invalid_argument("monotonicity-violation");
  }
  if (d_table[M - 1] >= 1 - mu) throw std::invalid_argument("saturation-violation");
  return ChannelSpec{d_table, mu, M, trim, traces};
}

ChannelSpec make_threshold_channel(int tau, double d, TrimMode trim, int traces) {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (!(d >= 0 && d < 1))
    throw std::invalid_argument("saturation-violation");  // d = 1 admits no mu
  std::vector<double> table(static_cast<size_t>(tau), 0.0);
  table.back() = d;
  return make_runlength_channel(table, (1 - d) / 2, tau, trim, traces);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0,1) from the top 53 bits; avoids the
// implementation-defined std distributions for cross-toolchain stability.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Per-bit deletion probability, derived from the run containing each bit.
std::vector<double> per_bit_del_prob(const ChannelSpec& spec, const BitString& x) {
  std::vector<double> p;
  p.reserve(x.size());
  for (const Run& r : runs(x)) {
    double pr = spec.d(r.length);
    for (int i = 0; i < r.length; i++) p.push_back(pr);
  }
  return p;
}

}  // namespace

std::uint64_t subseed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x51ed2701ab0cd343ULL));
}

BitString apply_trim(TrimMode mode, const BitString& s) {
  if (mode == TrimMode::none || s.empty()) return s;
  char lead = (mode == TrimMode::trim00 || mode == TrimMode::trim01) ? '0' : '1';
  char tail = (mode == TrimMode::trim00 || mode == TrimMode::trim10) ? '0' : '1';
  size_t b = 0, e = s.size();
  while (b < e && s[b] == lead) b++;
  while (e > b && s[e - 1] == tail) e--;
  return s.substr(b, e - b);
}

BitString transmit(const ChannelSpec& spec, const BitString& x, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> p = per_bit_del_prob(spec, x);
  BitString out;
  out.reserve(x.size());
  for (size_t i = 0; i < x.size(); i++)
    if (!(uniform01(rng) < p[i])) out.push_back(x[i]);
  return apply_trim(spec.trim, out);
}

TraceSet transmit_multi(const ChannelSpec& spec, const BitString& x,
                        std::uint64_t seed) {
  TraceSet ts;
  ts.origin_length = x.size();
  ts.traces.reserve(static_cast<size_t>(spec.traces));
  for (int t = 0; t < spec.traces; t++)
    ts.traces.push_back(transmit(spec, x, subseed(seed, static_cast<std::uint64_t>(t))));
  return ts;
}

Dist transition_dist(const ChannelSpec& spec, const BitString& x) {
  const int n = static_cast<int>(x.size());
  if (n > 16) throw std::invalid_argument("instance-too-large");
  std::vector<double> p = per_bit_del_prob(spec, x);
  Dist dist;
  BitString out;
  out.reserve(x.size());
  for (std::uint32_t mask = 0; mask < (1u << n); mask++) {
    double prob = 1.0;
    out.clear();
    for (int i = 0; i < n; i++) {
      if (mask & (1u << i)) {  // bit kept
        prob *= 1 - p[i];
        out.push_back(x[static_cast<size_t>(i)]);
      } else {
        prob *= p[i];
      }
    }
    if (prob > 0) dist[apply_trim(spec.trim, out)] += prob;
  }
  return dist;
}

StarDist star_transition_dist(const ChannelSpec& spec, const BitString& x) {
  const int n = static_cast<int>(x.size());
  if (n > 16) throw std::invalid_argument("instance-too-large");
  StarDist dist;
  if (x.empty()) {
    dist[StarOutput{"", 0, 0}] = 1.0;
    return dist;
  }
  RunList rl = runs(x);
  const int first_len = rl.front().length;
  const int last_len = rl.back().length;
  if (rl.size() == 1) {
    // The single run is both first and last: passes through undeleted.
    dist[StarOutput{x, first_len, last_len}] = 1.0;
    return dist;
  }
  // Enumerate deletion patterns over the interior bits only.
  const int lo = first_len;              // first interior position
  const int hi = n - last_len;           // one past last interior position
  const int k = hi - lo;
  std::vector<double> p = per_bit_del_prob(spec, x);
  BitString out;
  for (std::uint32_t mask = 0; mask < (1u << k); mask++) {
    double prob = 1.0;
    out.assign(x, 0, static_cast<size_t>(lo));
    for (int i = 0; i < k; i++) {
      if (mask & (1u << i)) {
        prob *= 1 - p[static_cast<size_t>(lo + i)];
        out.push_back(x[static_cast<size_t>(lo + i)]);
      } else {
        prob *= p[static_cast<size_t>(lo + i)];
      }
    }
    out.append(x, static_cast<size_t>(hi), static_cast<size_t>(last_len));
    if (prob > 0) dist[StarOutput{out, first_len, last_len}] += prob;
  }
  return dist;
}

BitString isi_transmit(const ISISpec& isi, const BitString& x, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitString out;
  for (size_t i = 0; i < x.size(); i++) {
    if (isi.leave_first_uncorrupted && static_cast<int>(i) < isi.ell) {
      out.push_back(x[i]);
      continue;
    }
    std::string ctx;  // x_{i-ell}..x_i, zero-padded on the left
    for (int j = isi.ell; j >= 0; j--) {
      int pos = static_cast<int>(i) - j;
      ctx.push_back(pos >= 0 ? x[static_cast<size_t>(pos)] : '0');
    }
    auto it = isi.law.find(ctx);
    if (it == isi.law.end()) throw std::invalid_argument("missing ISI context: " + ctx);
    double u = uniform01(rng), acc = 0.0;
    const auto& options = it->second;
    const BitString* chosen = &options.back().first;
    for (const auto& [rep, pr] : options) {
      acc += pr;
      if (u < acc) {
        chosen = &rep;
        break;
      }
    }
    out += *chosen;
  }
  return out;
}

}  // namespace rlc
