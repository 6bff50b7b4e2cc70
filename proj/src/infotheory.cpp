#include "infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rlc {

JointDist JointDist::from_channel(std::map<BitString, double> input,
                                  const ChannelSpec& spec) {
  JointDist j;
  j.input_dist = std::move(input);
  j.law = [spec](const BitString& x) { return transition_dist(spec, x); };
  return j;
}

double entropy(const std::vector<double>& v) {
  double sum = 0, h = 0;
  for (double p : v) {
    if (p < 0) throw std::invalid_argument("non-normalized input");
    sum += p;
    if (p > 0) h -= p * std::log2(p);
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("non-normalized input");
  return h;
}

double binary_entropy(double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("binary_entropy domain");
  if (p == 0 || p == 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

namespace {

// Output marginal p(z) = sum_x p(x) W(z|x).
std::map<BitString, double> output_marginal(const JointDist& j) {
  std::map<BitString, double> out;
  for (const auto& [x, px] : j.input_dist) {
    if (px <= 0) continue;
    for (const auto& [z, pz] : j.law(x)) out[z] += px * pz;
  }
  return out;
}

}  // namespace

double information_density(const JointDist& j, const BitString& x,
                           const BitString& z) {
  auto it = j.input_dist.find(x);
  if (it == j.input_dist.end() || it->second <= 0)
    throw std::invalid_argument("zero-probability pair");
  Dist wx = j.law(x);
  auto wz = wx.find(z);
  if (wz == wx.end() || wz->second <= 0)
    throw std::invalid_argument("zero-probability pair");
  double pz = output_marginal(j).at(z);
  // log2( p(x,z) / (p(x) p(z)) ) = log2( W(z|x) / p(z) ).
  return std::log2(wz->second / pz);
}

double mutual_information(const JointDist& j) {
  std::map<BitString, double> q = output_marginal(j);
  double mi = 0;
  for (const auto& [x, px] : j.input_dist) {
    if (px <= 0) continue;
    for (const auto& [z, w] : j.law(x))
      if (w > 0) mi += px * w * std::log2(w / q[z]);
  }
  return mi;
}

double capacity_small_n(const ChannelSpec& spec, int n, double tol,
                        bool use_star) {
  if (n < 1 || n > 10) throw std::invalid_argument("instance-too-large");
  const int num_inputs = 1 << n;

  // Dense transition rows over an indexed output alphabet.
  std::unordered_map<std::string, int> out_index;
  std::vector<std::vector<std::pair<int, double>>> W(
      static_cast<size_t>(num_inputs));
  for (int xi = 0; xi < num_inputs; xi++) {
    BitString x;
    for (int b = n - 1; b >= 0; b--) x.push_back((xi >> b) & 1 ? '1' : '0');
    auto add = [&](const std::string& key, double p) {
      auto [it, inserted] = out_index.try_emplace(key, static_cast<int>(out_index.size()));
      W[static_cast<size_t>(xi)].push_back({it->second, p});
    };
    if (use_star) {
      for (const auto& [z, p] : star_transition_dist(spec, x))
        add(z.body + "|" + std::to_string(z.first_run_len) + "|" +
                std::to_string(z.last_run_len),
            p);
    } else {
      for (const auto& [z, p] : transition_dist(spec, x)) add(z, p);
    }
  }
  const int num_outputs = static_cast<int>(out_index.size());

  std::vector<double> p(static_cast<size_t>(num_inputs), 1.0 / num_inputs);
  std::vector<double> q(static_cast<size_t>(num_outputs));
  std::vector<double> D(static_cast<size_t>(num_inputs));
  const int max_iters = 10000;
  for (int iter = 0; iter < max_iters; iter++) {
    std::fill(q.begin(), q.end(), 0.0);
    for (int xi = 0; xi < num_inputs; xi++)
      for (const auto& [zi, w] : W[static_cast<size_t>(xi)])
        q[static_cast<size_t>(zi)] += p[static_cast<size_t>(xi)] * w;
    double I = 0, Cup = -1e300;
    for (int xi = 0; xi < num_inputs; xi++) {
      double Dx = 0;
      for (const auto& [zi, w] : W[static_cast<size_t>(xi)])
        if (w > 0) Dx += w * std::log2(w / q[static_cast<size_t>(zi)]);
      D[static_cast<size_t>(xi)] = Dx;
      I += p[static_cast<size_t>(xi)] * Dx;
      Cup = std::max(Cup, Dx);
    }
    if (Cup - I <= tol) return I;
    double norm = 0;
    for (int xi = 0; xi < num_inputs; xi++) {
      p[static_cast<size_t>(xi)] *= std::exp2(D[static_cast<size_t>(xi)] - I);
      norm += p[static_cast<size_t>(xi)];
    }
    for (double& px : p) px /= norm;
  }
  throw std::runtime_error("non-convergence");
}

double dg_bound(int tau, double d) {
  if (tau < 1 || d < 0 || d > 1) throw std::invalid_argument("bad arguments");
  double arg = d * (tau + 1) / std::exp2(tau);
  if (arg > 0.5 + 1e-12) throw std::invalid_argument("hypothesis-violated");
  return 1 - binary_entropy(std::min(arg, 0.5));
}

double g_of_d(int tau, int M, double d) {
  if (M < tau || tau < 1) throw std::invalid_argument("requires M >= tau >= 1");
  double g = 2.0 * tau * std::pow(d, M);
  for (int i = 1; i <= tau; i++)
    g += (tau - i) * static_cast<double>(binomial(M, i)) *
         std::pow(1 - d, i) * std::pow(d, M - i);
  return g;
}

double greedy_rate(int tau, int M, double d, const std::vector<double>& beta) {
  if (static_cast<int>(beta.size()) != tau)
    throw std::invalid_argument("beta must have tau entries");
  double weighted = 0, total = 0;
  for (int i = 0; i < tau; i++) {
    if (beta[static_cast<size_t>(i)] < -1e-12)
      throw std::invalid_argument("constraint-violated");
    weighted += (i + 1) * beta[static_cast<size_t>(i)];
    total += beta[static_cast<size_t>(i)];
  }
  if (std::abs(weighted - 1.0) > 1e-6)
    throw std::invalid_argument("constraint-violated");
  if (total <= 0) return 0;

  double entropy_term = 0;
  for (double b : beta)
    if (b > 0) entropy_term -= b * std::log2(b / total);
  // entropy_term = total * H(beta/total) expanded to avoid division.

  const double beta_tau = beta.back();
  const double delta = beta_tau * g_of_d(tau, M, d);
  if (delta >= 1) return 0;  // h undefined; never optimal
  double penalty = binary_entropy(delta);
  if (beta_tau > 0 || delta > 0)
    penalty += (2 * beta_tau + delta) * binary_entropy(delta / (2 * beta_tau + delta));
  double denom = (1 - beta_tau * tau) + beta_tau * M;
  return std::max(0.0, (entropy_term - penalty) / denom);
}

BoundResult greedy_search(int tau, double d, int M_max, double beta_step) {
  if (tau < 1 || M_max < tau || beta_step <= 0)
    throw std::invalid_argument("bad search parameters");
  const int steps = static_cast<int>(std::lround(1.0 / beta_step));
  if (std::abs(steps * beta_step - 1.0) > 1e-9)
    throw std::invalid_argument("beta_step must divide 1");

  BoundResult best;
  best.tau = tau;
  best.d = d;
  best.rate = -1;
  best.method = "greedy";
  bool found = false;

  std::vector<double> beta(static_cast<size_t>(tau), 0.0);
  // Enumerate beta_2..beta_tau on the grid; beta_1 is forced by sum i*beta_i=1.
  std::function<void(int, double, int)> rec = [&](int idx, double used, int M) {
    if (idx == tau) {
      double b1 = 1.0 - used;
      if (b1 < -1e-9) return;
      beta[0] = std::max(0.0, b1);
      found = true;
      double rate = greedy_rate(tau, M, d, beta);
      bool better = rate > best.rate;
      if (!better && rate == best.rate) {
        // Tie-break: lexicographically smallest (M, beta_1..beta_tau).
        if (M < best.M ||
            (M == best.M &&
             std::lexicographical_compare(beta.begin(), beta.end(),
                                          best.beta.begin(), best.beta.end())))
          better = true;
      }
      if (better) {
        best.rate = rate;
        best.beta = beta;
        best.M = M;
      }
      return;
    }
    // beta_{idx+1} with weight idx+1; stop when the constraint is exceeded.
    for (int k = 0;; k++) {
      double b = k * beta_step;
      double w = (idx + 1) * b;
      if (used + w > 1.0 + 1e-9) break;
      beta[static_cast<size_t>(idx)] = b;
      rec(idx + 1, used + w, M);
    }
    beta[static_cast<size_t>(idx)] = 0;
  };
  for (int M = tau; M <= M_max; M++) rec(1, 0.0, M);
  if (!found) throw std::runtime_error("empty feasible grid");
  return best;
}

std::uint64_t count_rll_strings(int n, int tau) {
  if (n == 0) return 1;
  // Compose runs of length 1..tau-1 summing to n; two starting bits.
  std::vector<std::uint64_t> ways(static_cast<size_t>(n) + 1, 0);
  ways[0] = 1;
  for (int len = 1; len <= n; len++) {
    std::uint64_t total = 0;
    for (int r = 1; r < tau && r <= len; r++) total += ways[static_cast<size_t>(len - r)];
    ways[static_cast<size_t>(len)] = total;
  }
  return 2 * ways[static_cast<size_t>(n)];
}

double rll_baseline(int tau) {
  if (tau < 2) throw std::invalid_argument("tau must be >= 2");
  if (tau == 2) return 0.0;  // only the two alternating strings
  // Largest real root of f(x) = x^(tau-1) - sum_{i=0}^{tau-2} x^i in (1, 2).
  auto f = [tau](double x) {
    double acc = std::pow(x, tau - 1), pw = 1;
    for (int i = 0; i <= tau - 2; i++, pw *= x) acc -= pw;
    return acc;
  };
  double lo = 1.0, hi = 2.0;
  for (int it = 0; it < 200; it++) {
    double mid = (lo + hi) / 2;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return std::log2((lo + hi) / 2);
}

void emit_curve(int tau, const std::vector<double>& d_grid, std::ostream& os,
                int M_max, double beta_step) {
  os << "d,rate_dg,rate_greedy,rate_baseline,best_M,best_beta\n";
  const double baseline = rll_baseline(tau);
  for (double d : d_grid) {
    BoundResult r = greedy_search(tau, d, M_max, beta_step);
    os << std::setprecision(10) << d << ",";
    if (d * (tau + 1) / std::exp2(tau) <= 0.5 + 1e-12)
      os << dg_bound(tau, d);
    os << "," << r.rate << "," << baseline << "," << r.M << ",";
    for (size_t i = 0; i < r.beta.size(); i++)
      os << (i ? ";" : "") << r.beta[i];
    os << "\n";
  }
}

}  // namespace rlc
