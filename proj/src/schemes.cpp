#include "schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace rlc {

int SchemeParams::st_zero_threshold() const {
  return static_cast<int>(std::ceil(nu * m / 2.0 - 1e-9));
}

int SchemeParams::mt_buffer_threshold() const {
  return static_cast<int>(std::ceil((1 - d_M) * B / 2.0 - 1e-9));
}

int SchemeParams::st_buffer_length(double nu, int m, double d_M) {
  return static_cast<int>(std::ceil(nu * m / (1 - d_M) - 1e-9));
}

int SchemeParams::mt_buffer_length(double nu, int n_R, double d_M) {
  return static_cast<int>(std::ceil(nu / (16 * (1 - d_M)) * n_R - 1e-9));
}

SchemeParams table_defaults_single(double epsilon, double mu, double d_M, int m) {
  SchemeParams p;
  p.epsilon = epsilon;
  p.nu = epsilon * mu / 5;
  p.m = m;
  p.d_M = d_M;
  p.B = SchemeParams::st_buffer_length(p.nu, m, d_M);
  p.delta_out = epsilon / 5;
  p.T = 1;
  return p;
}

SchemeParams table_defaults_multi(double epsilon, double mu, double d_M, int n_R,
                                  int T) {
  SchemeParams p;
  p.epsilon = epsilon;
  p.nu = epsilon * mu;
  p.n_R = n_R;
  p.n_S = static_cast<int>(std::lround(std::log2(n_R)));
  p.d_M = d_M;
  p.B = SchemeParams::mt_buffer_length(p.nu, n_R, d_M);
  p.delta_out = epsilon * epsilon * epsilon / 40;
  p.eta = std::pow(epsilon, 8) / T;
  p.T = T;
  return p;
}

double scheme_rate(const SchemeParams& p, const std::string& which) {
  if (which == "single") {
    double len = static_cast<double>(p.m) * p.n_out +
                 static_cast<double>(p.n_out - 1) * p.B;
    return p.R_out * p.R_in * p.m * p.n_out / len;
  }
  if (which == "multi") {
    double len = p.n_R + 2.0 * p.B + p.n_S;
    return p.R_out * p.R_in * p.n_R / len;
  }
  throw std::invalid_argument("which must be 'single' or 'multi'");
}

// ---------------------------------------------------------------- STScheme

STScheme::STScheme(SchemeParams p, ChannelSpec channel, Codebook inner,
                   InsdelCode outer)
    : p_(std::move(p)),
      channel_(std::move(channel)),
      inner_(std::move(inner)),
      outer_(std::move(outer)),
      dec_(inner_, [&] {
        ChannelSpec s = channel_;
        s.trim = TrimMode::trim00;
        return s;
      }()) {
  if (inner_.size() < payload_q() * p_.q_sync)
    throw std::invalid_argument("inner codebook too small for pair alphabet");
}

int STScheme::payload_q() const { return 1 << p_.payload_field_bits; }

std::vector<std::pair<int, int>> STScheme::true_pairs(
    const std::vector<int>& msg) const {
  return insdel_encode(outer_, msg);
}

BitString STScheme::encode(const std::vector<int>& msg) const {
  std::vector<std::pair<int, int>> pairs = insdel_encode(outer_, msg);
  BitString out;
  for (size_t i = 0; i < pairs.size(); i++) {
    int combined = pairs[i].first * p_.q_sync + pairs[i].second;
    if (combined >= inner_.size()) throw std::invalid_argument("symbol-out-of-alphabet");
    if (i) out.append(static_cast<size_t>(p_.B), '0');
    out += inner_.words[static_cast<size_t>(combined)];
  }
  return out;
}

std::vector<std::pair<int, int>> STScheme::extract_pairs(const BitString& y) const {
  Segmentation seg = identify_buffers(y, '0', p_.st_zero_threshold());
  std::vector<std::pair<int, int>> pairs;
  for (const BitString& s : seg.segments) {
    int combined = dec_.decode(apply_trim(TrimMode::trim00, s));
    if (combined == kErasure) continue;
    pairs.push_back({combined / p_.q_sync, combined % p_.q_sync});
  }
  return pairs;
}

DecodeRecord STScheme::decode(const BitString& y) const {
  // The sync string is known at the decoder, so segment a is aligned to outer
  // positions by a Viterbi pass over (segments consumed, positions consumed):
  // matching a segment to position j scores log P(segment | best codeword with
  // sync symbol s_j), and skipping either side pays a flat penalty sized like
  // a buffer loss. Matched positions whose posterior mass is not concentrated
  // on the winner are erased rather than guessed, which trades outer erasures
  // for the far more expensive outer errors.
  constexpr double kSkipPenalty = -20.0;   // log2, ~ one lost buffer
  constexpr double kPosteriorFloor = 0.5;  // erase below this winner share
  DecodeRecord rec;
  Segmentation seg = identify_buffers(y, '0', p_.st_zero_threshold());
  const int S = static_cast<int>(seg.segments.size());
  const int n = p_.n_out;
  rec.segments = S;
  std::vector<BitString> trimmed(seg.segments.size());
  for (size_t a = 0; a < seg.segments.size(); a++)
    trimmed[a] = apply_trim(TrimMode::trim00, seg.segments[a]);

  // Best sync-consistent codeword, its likelihood, and the restricted
  // likelihood sum for every (segment, position) cell.
  std::vector<std::vector<double>> score(static_cast<size_t>(S));
  std::vector<std::vector<int>> arg(static_cast<size_t>(S));
  std::vector<std::vector<double>> share(static_cast<size_t>(S));
  for (int a = 0; a < S; a++) {
    score[a].assign(static_cast<size_t>(n), -1e300);
    arg[a].assign(static_cast<size_t>(n), kErasure);
    share[a].assign(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; j++) {
      double best = 0, sum = 0;
      int best_c = kErasure;
      for (int c = outer_.sync.symbols[static_cast<size_t>(j)];
           c < inner_.size(); c += p_.q_sync) {
        double l = dec_.likelihood(c, trimmed[static_cast<size_t>(a)]);
        sum += l;
        if (l > best) best = l, best_c = c;
      }
      if (best_c == kErasure) continue;
      score[a][j] = std::log2(best);
      arg[a][j] = best_c;
      share[a][j] = best / sum;
    }
  }

  std::vector<std::vector<double>> value(
      static_cast<size_t>(S) + 1, std::vector<double>(static_cast<size_t>(n) + 1, -1e300));
  std::vector<std::vector<int>> move(
      static_cast<size_t>(S) + 1, std::vector<int>(static_cast<size_t>(n) + 1, 0));
  value[0][0] = 0;
  for (int a = 0; a <= S; a++)
    for (int j = 0; j <= n; j++) {
      if (value[a][j] <= -1e299) continue;
      if (a < S && j < n && score[a][j] > -1e299 &&
          value[a][j] + score[a][j] > value[a + 1][j + 1]) {
        value[a + 1][j + 1] = value[a][j] + score[a][j];
        move[a + 1][j + 1] = 1;
      }
      if (j < n && value[a][j] + kSkipPenalty > value[a][j + 1]) {
        value[a][j + 1] = value[a][j] + kSkipPenalty;
        move[a][j + 1] = 2;
      }
      if (a < S && value[a][j] + kSkipPenalty > value[a + 1][j]) {
        value[a + 1][j] = value[a][j] + kSkipPenalty;
        move[a + 1][j] = 3;
      }
    }

  rec.outer_word.assign(static_cast<size_t>(n), kErasedSymbol);
  for (int a = S, j = n; a > 0 || j > 0;) {
    if (move[a][j] == 1) {
      a--, j--;
      if (share[a][j] >= kPosteriorFloor)
        rec.outer_word[static_cast<size_t>(j)] = arg[a][j] / p_.q_sync;
    } else if (move[a][j] == 2) {
      j--;
    } else {
      a--;
    }
  }
  for (int j = 0; j < n; j++) {
    if (rec.outer_word[static_cast<size_t>(j)] == kErasedSymbol) {
      rec.inner_erasures++;
    } else {
      rec.matched++;
      rec.outer_received.push_back({rec.outer_word[static_cast<size_t>(j)],
                                    outer_.sync.symbols[static_cast<size_t>(j)]});
    }
  }
  auto decoded = sub_decode(outer_.sub, rec.outer_word);
  if (decoded) {
    rec.ok = true;
    rec.msg = *decoded;
  }
  return rec;
}

// ---------------------------------------------------------------- MTScheme

MTScheme::MTScheme(SchemeParams p, ChannelSpec channel, Codebook c_r, Codebook c_s,
                   SubCode sub, SyncString sync)
    : p_(std::move(p)),
      channel_(std::move(channel)),
      c_r_(std::move(c_r)),
      c_s_(std::move(c_s)),
      sub_(std::move(sub)),
      sync_(std::move(sync)),
      dec_r_(c_r_, [&] {
        ChannelSpec s = channel_;
        s.trim = TrimMode::trim10;
        return s;
      }()),
      dec_s_(c_s_, [&] {
        ChannelSpec s = channel_;
        s.trim = TrimMode::trim01;
        return s;
      }()) {
  if (static_cast<int>(sync_.symbols.size()) != sub_.rs.n())
    throw std::invalid_argument("sync string length must equal n_out");
  if (c_s_.size() < p_.q_sync)
    throw std::invalid_argument("sync codebook too small");
}

BitString MTScheme::encode(const std::vector<int>& msg) const {
  std::vector<int> word = sub_encode(sub_, msg);
  BitString out;
  for (size_t j = 0; j < word.size(); j++) {
    if (word[j] >= c_r_.size()) throw std::invalid_argument("symbol-out-of-alphabet");
    out += c_r_.words[static_cast<size_t>(word[j])];
    out.append(static_cast<size_t>(p_.B), '0');
    out += c_s_.words[static_cast<size_t>(sync_.symbols[j])];
    out.append(static_cast<size_t>(p_.B), '1');
  }
  return out;
}

std::vector<std::optional<BitString>> MTScheme::align(const BitString& trace) const {
  const int thresh = p_.mt_buffer_threshold();
  Segmentation one = identify_buffers(trace, '1', thresh);
  std::vector<BitString> payload_halves;
  std::vector<int> sync_seq;
  for (const BitString& segment : one.segments) {
    Segmentation zero = identify_buffers(segment, '0', thresh);
    // Exactly one 0-buffer splits the segment into its a/b halves; anything
    // else is a degenerate segment and is discarded.
    if (zero.buffer_spans.size() != 1) continue;
    auto [b0, e0] = zero.buffer_spans[0];
    if (b0 == 0 || e0 == static_cast<int>(segment.size())) continue;
    BitString a_half = segment.substr(0, static_cast<size_t>(b0));
    BitString b_half = segment.substr(static_cast<size_t>(e0));
    int sync_sym = dec_s_.decode(apply_trim(TrimMode::trim01, b_half));
    if (sync_sym == kErasure) continue;
    payload_halves.push_back(apply_trim(TrimMode::trim10, a_half));
    sync_seq.push_back(sync_sym);
  }
  Matching match = match_sync(sync_.symbols, sync_seq);
  std::vector<std::optional<BitString>> out(static_cast<size_t>(p_.n_out));
  for (size_t l = 0; l < match.left.size(); l++)
    out[static_cast<size_t>(match.left[l])] =
        payload_halves[static_cast<size_t>(match.right[l])];
  return out;
}

DecodeRecord MTScheme::decode(const TraceSet& ts) const {
  DecodeRecord rec;
  std::vector<std::vector<std::optional<BitString>>> aligned;
  aligned.reserve(ts.traces.size());
  for (const BitString& t : ts.traces) aligned.push_back(align(t));

  rec.outer_word.assign(static_cast<size_t>(p_.n_out), kErasedSymbol);
  for (int pos = 0; pos < p_.n_out; pos++) {
    std::vector<std::optional<BitString>> candidates;
    candidates.reserve(aligned.size());
    for (const auto& tr : aligned) candidates.push_back(tr[static_cast<size_t>(pos)]);
    int sym = dec_r_.decode_traces(candidates);
    if (sym == kErasure)
      rec.inner_erasures++;
    else
      rec.matched++;
    rec.outer_word[static_cast<size_t>(pos)] = sym == kErasure ? kErasedSymbol : sym;
  }
  auto decoded = sub_decode(sub_, rec.outer_word);
  if (decoded) {
    rec.ok = true;
    rec.msg = *decoded;
  }
  return rec;
}

// ---------------------------------------------------------------- builders

Codebook build_exhaustive_codebook(int n, int count, int prefix_bit, int suffix_bit) {
  Codebook book;
  book.n = n;
  book.prefix_bit = prefix_bit;
  book.suffix_bit = suffix_bit;
  for (std::uint32_t v = 0; v < (1u << n) && book.size() < count; v++) {
    BitString w;
    for (int b = n - 1; b >= 0; b--) w.push_back((v >> b) & 1 ? '1' : '0');
    if (prefix_bit >= 0 && w.front() != '0' + prefix_bit) continue;
    if (suffix_bit >= 0 && w.back() != '0' + suffix_bit) continue;
    book.words.push_back(w);
  }
  if (book.size() < count) throw std::runtime_error("feasibility-exhausted");
  return book;
}

namespace {

// Deterministic channel-matched codebook: enumerate every admissible dense
// word and keep the `count` words with the fewest bits exposed to deletion
// (bits in runs the channel can thin), tie-broken lexicographically. Against
// a threshold channel this concentrates the codeword mass on short protected
// runs, which is what makes desk-scale inner blocks decodable.
Codebook channel_matched_codebook(int n, int count, double zeta, double gamma,
                                  int prefix_bit, int suffix_bit,
                                  const ChannelSpec& channel) {
  if (n > 20) throw std::invalid_argument("instance-too-large");
  std::vector<std::pair<int, BitString>> ranked;
  for (std::uint32_t v = 0; v < (1u << n); v++) {
    BitString w;
    for (int b = n - 1; b >= 0; b--) w.push_back((v >> b) & 1 ? '1' : '0');
    if (prefix_bit >= 0 && w.front() != '0' + prefix_bit) continue;
    if (suffix_bit >= 0 && w.back() != '0' + suffix_bit) continue;
    if (!density_ok(w, zeta, gamma)) continue;
    int exposed = 0;
    for (const Run& r : runs(w))
      if (channel.d(r.length) > 0) exposed += r.length;
    ranked.emplace_back(exposed, std::move(w));
  }
  if (static_cast<int>(ranked.size()) < count)
    throw std::runtime_error("feasibility-exhausted");
  std::sort(ranked.begin(), ranked.end());
  ranked.resize(static_cast<size_t>(count));
  Codebook book;
  book.n = n;
  book.zeta = zeta;
  book.gamma = gamma;
  book.prefix_bit = prefix_bit;
  book.suffix_bit = suffix_bit;
  for (auto& [_, w] : ranked) book.words.push_back(std::move(w));
  std::sort(book.words.begin(), book.words.end());
  return book;
}

// Backward elimination on pairwise confusability: repeatedly drop the word
// whose total output-law overlap with the rest is largest, until `count`
// remain. Returns indices into the pool alongside the overlap matrix.
struct Eliminated {
  std::vector<size_t> kept;
  std::vector<std::vector<double>> overlap;
};

Eliminated eliminate_confusable(const std::vector<BitString>& pool, size_t count,
                                const ChannelSpec& law_channel) {
  const size_t P = pool.size();
  if (P < count) throw std::runtime_error("feasibility-exhausted");
  std::vector<Dist> laws(P);
  for (size_t i = 0; i < P; i++) laws[i] = transition_dist(law_channel, pool[i]);
  Eliminated out;
  out.overlap.assign(P, std::vector<double>(P, 0.0));
  for (size_t i = 0; i < P; i++)
    for (size_t j = i + 1; j < P; j++) {
      double o = 0;
      for (const auto& [z, pr] : laws[i]) {
        auto it = laws[j].find(z);
        if (it != laws[j].end()) o += std::min(pr, it->second);
      }
      out.overlap[i][j] = out.overlap[j][i] = o;
    }
  std::vector<char> alive(P, 1);
  std::vector<double> total(P, 0.0);
  for (size_t i = 0; i < P; i++)
    for (size_t j = 0; j < P; j++)
      if (i != j) total[i] += out.overlap[i][j];
  for (size_t n_alive = P; n_alive > count; n_alive--) {
    size_t worst = P;
    double most = -1;
    for (size_t i = 0; i < P; i++)
      if (alive[i] && total[i] > most) most = total[i], worst = i;
    alive[worst] = 0;
    for (size_t j = 0; j < P; j++)
      if (alive[j]) total[j] -= out.overlap[worst][j];
  }
  for (size_t i = 0; i < P; i++)
    if (alive[i]) out.kept.push_back(i);
  return out;
}

std::vector<BitString> admissible_pool(int n, double zeta, double gamma,
                                       int prefix_bit, int suffix_bit) {
  if (n > 16) throw std::invalid_argument("instance-too-large");
  std::vector<BitString> pool;
  for (std::uint32_t v = 0; v < (1u << n); v++) {
    BitString w;
    for (int b = n - 1; b >= 0; b--) w.push_back((v >> b) & 1 ? '1' : '0');
    if (prefix_bit >= 0 && w.front() != '0' + prefix_bit) continue;
    if (suffix_bit >= 0 && w.back() != '0' + suffix_bit) continue;
    if (!density_ok(w, zeta, gamma)) continue;
    pool.push_back(std::move(w));
  }
  return pool;
}

// Small maximally spread codebook: elimination over the admissible pool with
// the stated trim applied to the output laws.
Codebook separated_codebook(int n, int count, double zeta, double gamma,
                            int prefix_bit, int suffix_bit,
                            const ChannelSpec& channel, TrimMode trim) {
  ChannelSpec law = channel;
  law.trim = trim;
  std::vector<BitString> pool = admissible_pool(n, zeta, gamma, prefix_bit, suffix_bit);
  Eliminated e = eliminate_confusable(pool, static_cast<size_t>(count), law);
  Codebook book;
  book.n = n;
  book.zeta = zeta;
  book.gamma = gamma;
  book.prefix_bit = prefix_bit;
  book.suffix_bit = suffix_bit;
  for (size_t idx : e.kept) book.words.push_back(pool[idx]);
  return book;
}

// Inner codebook for the single-trace scheme, built against the decoder that
// will read it. Because the sync string is known at the decoder, a segment at
// position j is only ever compared against the q_payload codewords carrying
// sync symbol s_j; confusability across sync groups is free. So: take every
// admissible dense word, score pairwise confusability as the overlap of exact
// output laws, backward-eliminate down to the alphabet size, then deal the
// survivors into q_sync groups greedily so each group is internally spread
// out. Codeword index is payload*q_sync + sync, matching STScheme::encode.
Codebook grouped_codebook(int n, int q_payload, int q_sync, double zeta,
                          double gamma, const ChannelSpec& channel) {
  ChannelSpec law = channel;
  law.trim = TrimMode::trim00;
  std::vector<BitString> pool = admissible_pool(n, zeta, gamma, 1, 1);
  const size_t count = static_cast<size_t>(q_payload) * q_sync;
  Eliminated e = eliminate_confusable(pool, count, law);
  // Greedy partition: each survivor joins the non-full group where its worst
  // overlap with current members is smallest.
  std::vector<std::vector<size_t>> groups(static_cast<size_t>(q_sync));
  for (size_t idx : e.kept) {
    double best = 1e300;
    size_t pick = 0;
    for (size_t g = 0; g < groups.size(); g++) {
      if (static_cast<int>(groups[g].size()) == q_payload) continue;
      double worst = 0;
      for (size_t other : groups[g])
        worst = std::max(worst, e.overlap[idx][other]);
      if (worst < best) best = worst, pick = g;
    }
    groups[pick].push_back(idx);
  }
  Codebook book;
  book.n = n;
  book.zeta = zeta;
  book.gamma = gamma;
  book.prefix_bit = 1;
  book.suffix_bit = 1;
  book.words.resize(count);
  for (size_t g = 0; g < groups.size(); g++)
    for (size_t pay = 0; pay < groups[g].size(); pay++)
      book.words[pay * static_cast<size_t>(q_sync) + g] = pool[groups[g][pay]];
  return book;
}

}  // namespace

STScheme make_st_scheme(const SchemeParams& p, const ChannelSpec& channel,
                        std::uint64_t seed, double zeta, double gamma) {
  (void)seed;
  const int q_payload = 1 << p.payload_field_bits;
  Codebook inner =
      grouped_codebook(p.m, q_payload, p.q_sync, zeta, gamma, channel);
  SubCode sub(p.n_out, p.delta_out, p.payload_field_bits);
  SyncString sync = build_sync_string(p.n_out, p.eta, p.q_sync);
  return STScheme(p, channel, std::move(inner), InsdelCode(std::move(sub), std::move(sync)));
}

MTScheme make_mt_scheme(const SchemeParams& p, const ChannelSpec& channel,
                        std::uint64_t seed, double zeta, double gamma) {
  (void)seed;
  const int q_payload = 1 << p.payload_field_bits;
  Codebook c_r = separated_codebook(p.n_R, q_payload, zeta, gamma, 0, 1, channel,
                                    TrimMode::trim10);
  Codebook c_s = separated_codebook(p.n_S, p.q_sync, zeta, gamma, 1, 0, channel,
                                    TrimMode::trim01);
  SubCode sub(p.n_out, p.delta_out, p.payload_field_bits);
  SyncString sync = build_sync_string(p.n_out, p.eta, p.q_sync);
  return MTScheme(p, channel, std::move(c_r), std::move(c_s), std::move(sub),
                  std::move(sync));
}

}  // namespace rlc
