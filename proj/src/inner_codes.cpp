#include "inner_codes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rlc {

void Codebook::serialize(std::ostream& os) const {
  os << "n=" << n << " zeta=" << zeta << " gamma=" << gamma
     << " prefix=" << prefix_bit << " suffix=" << suffix_bit << " tau=" << tau
     << " M=" << M << " delta=" << delta << " beta=";
  for (size_t i = 0; i < beta.size(); i++) os << (i ? ";" : "") << beta[i];
  os << "\n";
  for (size_t i = 0; i < words.size(); i++) os << i << " " << words[i] << "\n";
}

Codebook Codebook::deserialize(std::istream& is) {
  Codebook book;
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("empty codebook stream");
  std::istringstream hs(header);
  std::string tok;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad codebook header");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "n") book.n = std::stoi(val);
    else if (key == "zeta") book.zeta = std::stod(val);
    else if (key == "gamma") book.gamma = std::stod(val);
    else if (key == "prefix") book.prefix_bit = std::stoi(val);
    else if (key == "suffix") book.suffix_bit = std::stoi(val);
    else if (key == "tau") book.tau = std::stoi(val);
    else if (key == "M") book.M = std::stoi(val);
    else if (key == "delta") book.delta = std::stod(val);
    else if (key == "beta" && !val.empty()) {
      std::istringstream bs(val);
      std::string piece;
      while (std::getline(bs, piece, ';')) book.beta.push_back(std::stod(piece));
    }
  }
  size_t idx;
  BitString w;
  while (is >> idx >> w) {
    if (idx != book.words.size()) throw std::runtime_error("bad codebook index");
    book.words.push_back(w);
  }
  return book;
}

Codebook build_dense_codebook(int n, int num_codewords, double zeta, double gamma,
                              int prefix_bit, int suffix_bit, std::uint64_t seed) {
  if (n < 2 || num_codewords < 1) throw std::invalid_argument("bad codebook size");
  Codebook book;
  book.n = n;
  book.zeta = zeta;
  book.gamma = gamma;
  book.prefix_bit = prefix_bit;
  book.suffix_bit = suffix_bit;
  std::mt19937_64 rng(seed);
  std::set<BitString> seen;
  // Generous but bounded rejection budget; exhausting it means the density
  // window cannot support the requested code size.
  const long long max_attempts = 2000LL * num_codewords + 100000LL;
  for (long long attempt = 0; attempt < max_attempts; attempt++) {
    BitString w;
    w.reserve(static_cast<size_t>(n));
    std::uint64_t bits = 0;
    for (int i = 0; i < n; i++) {
      if (i % 64 == 0) bits = rng();
      w.push_back((bits >> (i % 64)) & 1 ? '1' : '0');
    }
    if (prefix_bit >= 0 && w.front() != '0' + prefix_bit) continue;
    if (suffix_bit >= 0 && w.back() != '0' + suffix_bit) continue;
    if (!density_ok(w, zeta, gamma)) continue;
    if (!seen.insert(w).second) continue;
    book.words.push_back(w);
    if (book.size() == num_codewords) return book;
  }
  throw std::runtime_error("feasibility-exhausted");
}

InnerDecoder::InnerDecoder(const Codebook& book, const ChannelSpec& spec)
    : book_(book), spec_(spec) {
  dists_.reserve(book_.words.size());
  for (const BitString& w : book_.words) dists_.push_back(transition_dist(spec_, w));
}

double InnerDecoder::likelihood(int symbol, const BitString& y) const {
  const Dist& d = dists_[static_cast<size_t>(symbol)];
  auto it = d.find(y);
  return it == d.end() ? 0.0 : it->second;
}

int InnerDecoder::decode(const BitString& y) const {
  int best = kErasure;
  double best_p = 0;
  for (int s = 0; s < book_.size(); s++) {
    double p = likelihood(s, y);
    if (p > best_p) {
      best_p = p;
      best = s;
    }
  }
  return best;
}

int InnerDecoder::decode_traces(const std::vector<std::optional<BitString>>& ts) const {
  int best = kErasure;
  double best_ll = -1e300;
  bool any_trace = false;
  for (const auto& t : ts) any_trace |= t.has_value();
  if (!any_trace) return kErasure;
  for (int s = 0; s < book_.size(); s++) {
    double ll = 0;
    bool dead = false;
    for (const auto& t : ts) {
      if (!t) continue;
      double p = likelihood(s, *t);
      if (p <= 0) {
        dead = true;
        break;
      }
      ll += std::log(p);
    }
    if (!dead && ll > best_ll) {
      best_ll = ll;
      best = s;
    }
  }
  return best;
}

int ml_decode_single(const InnerDecoder& dec, const BitString& y) {
  return dec.decode(y);
}

int ml_decode_traces(const InnerDecoder& dec,
                     const std::vector<std::optional<BitString>>& ts) {
  return dec.decode_traces(ts);
}

std::vector<BitString> enumerate_S_beta(int N, int tau,
                                        const std::vector<double>& beta) {
  if (static_cast<int>(beta.size()) != tau)
    throw std::invalid_argument("beta must have tau entries");
  if (N > 14) throw std::invalid_argument("instance-too-large");
  std::vector<int> counts(static_cast<size_t>(tau));
  int total_len = 0;
  for (int i = 0; i < tau; i++) {
    double exact = beta[static_cast<size_t>(i)] * N;
    int k = static_cast<int>(std::lround(exact));
    if (std::abs(exact - k) > 1e-6 || k < 0)
      throw std::invalid_argument("non-integral composition");
    counts[static_cast<size_t>(i)] = k;
    total_len += (i + 1) * k;
  }
  if (total_len != N) throw std::invalid_argument("non-integral composition");

  std::vector<int> lengths;
  for (int i = 0; i < tau; i++)
    lengths.insert(lengths.end(), static_cast<size_t>(counts[static_cast<size_t>(i)]),
                   i + 1);
  std::sort(lengths.begin(), lengths.end());
  std::set<BitString> out;
  do {
    for (char start : {'0', '1'}) {
      RunList rl;
      char sym = start;
      for (int len : lengths) {
        rl.push_back({sym, len});
        sym = sym == '0' ? '1' : '0';
      }
      out.insert(from_runs(rl));
    }
  } while (std::next_permutation(lengths.begin(), lengths.end()));
  return {out.begin(), out.end()};
}

RestrictedBall restricted_deletion_ball(const BitString& c, int budget, int tau) {
  if (c.size() > 16) throw std::invalid_argument("instance-too-large");
  RestrictedBall ball;
  ball.center = c;
  ball.budget = budget;
  RunList rl = runs(c);
  std::vector<int> permitted;  // indices of runs the adversary may touch
  for (size_t i = 0; i < rl.size(); i++)
    if (rl[i].length == tau || (i > 0 && rl[i - 1].length == tau))
      permitted.push_back(static_cast<int>(i));

  // Deletions within a run are interchangeable, so a ball member is determined
  // by how much each permitted run shrinks; merging of equal neighbours falls
  // out of string reconstruction.
  std::vector<int> lengths(rl.size());
  for (size_t i = 0; i < rl.size(); i++) lengths[i] = rl[i].length;
  std::function<void(size_t, int)> rec = [&](size_t pi, int left) {
    if (pi == permitted.size()) {
      BitString s;
      for (size_t i = 0; i < rl.size(); i++)
        s.append(static_cast<size_t>(lengths[i]), rl[i].symbol);
      ball.members.insert(s);
      return;
    }
    int run = permitted[pi];
    int orig = rl[static_cast<size_t>(run)].length;
    for (int del = 0; del <= std::min(orig, left); del++) {
      lengths[static_cast<size_t>(run)] = orig - del;
      rec(pi + 1, left - del);
    }
    lengths[static_cast<size_t>(run)] = orig;
  };
  rec(0, budget);
  return ball;
}

std::set<BitString> deletion_ball(const BitString& c, int budget) {
  std::set<BitString> out;
  for (int ell = 0; ell <= std::min<int>(budget, static_cast<int>(c.size())); ell++) {
    auto sub = enumerate_subsequences(c, ell);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

Codebook build_greedy_code(int N, int tau, const std::vector<double>& beta,
                           double delta) {
  double exact = delta * N;
  int budget = static_cast<int>(std::lround(exact));
  if (std::abs(exact - budget) > 1e-6 || budget < 0)
    throw std::invalid_argument("delta*N must be integral");
  std::vector<BitString> candidates = enumerate_S_beta(N, tau, beta);
  if (candidates.empty()) throw std::invalid_argument("empty S_beta");

  Codebook book;
  book.n = N;
  book.tau = tau;
  book.beta = beta;
  book.delta = delta;
  std::set<BitString> taken;  // union of accepted balls
  for (const BitString& c : candidates) {  // ascending lexicographic
    std::set<BitString> ball = deletion_ball(c, budget);
    bool clash = std::any_of(ball.begin(), ball.end(), [&](const BitString& m) {
      return taken.count(m) > 0;
    });
    if (clash) continue;
    taken.insert(ball.begin(), ball.end());
    book.words.push_back(c);
  }
  return book;
}

BitString blow_up_word(const BitString& w, int tau, int M) {
  RunList rl = runs(w);
  for (Run& r : rl)
    if (r.length == tau) r.length = M;
  return from_runs(rl);
}

Codebook blow_up(const Codebook& book, int tau, int M) {
  if (M < tau) throw std::invalid_argument("requires M >= tau");
  Codebook out = book;
  out.M = M;
  for (BitString& w : out.words) w = blow_up_word(w, tau, M);
  out.n = out.words.empty() ? 0 : static_cast<int>(out.words.front().size());
  return out;
}

BitString collapse_runs(const BitString& y, int tau) {
  RunList rl = runs(y);
  for (Run& r : rl) r.length = std::min(r.length, tau);
  return from_runs(rl);
}

int threshold_decode(const Codebook& pre_blowup, int tau, int M, int deltaN,
                     const BitString& y) {
  (void)M;  // the blown-up length does not enter the collapsed-domain search
  BitString collapsed = collapse_runs(y, tau);
  int found = kNoCandidate;
  for (int s = 0; s < pre_blowup.size(); s++) {
    RestrictedBall ball = restricted_deletion_ball(pre_blowup.words[static_cast<size_t>(s)],
                                                   deltaN, tau);
    if (ball.members.count(collapsed)) {
      if (found != kNoCandidate) return kAmbiguous;
      found = s;
    }
  }
  return found;
}

}  // namespace rlc
