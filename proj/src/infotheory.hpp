#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "channels.hpp"

namespace rlc {

// A finite joint law: an input distribution over equal-length bit strings plus
// a channel law giving the exact output distribution of each input. The law is
// a callback so tests can plug in toy channels alongside the exact oracles.
struct JointDist {
  std::map<BitString, double> input_dist;
  std::function<Dist(const BitString&)> law;

  static JointDist from_channel(std::map<BitString, double> input,
                                const ChannelSpec& spec);
};

// Shannon entropy (bits) of a probability vector; entries must sum to 1
// within 1e-9, else throws std::invalid_argument("non-normalized input").
double entropy(const std::vector<double>& v);

// Binary entropy h(p), with h(0) = h(1) = 0.
double binary_entropy(double p);

// log2( p(x,z) / (p(x) p(z)) ). Throws on zero-probability pairs.
double information_density(const JointDist& j, const BitString& x,
                           const BitString& z);

// Exact I(X; Z(X)) in bits.
double mutual_information(const JointDist& j);

// max over input distributions of I(X_1^n; Z(X_1^n)) by Blahut-Arimoto
// alternating maximization, stopping when the duality gap is <= tol. Throws
// std::runtime_error("non-convergence") after 10000 iterations. When use_star
// is set, the channel law is the star-channel oracle. Returns total bits (not
// per-symbol rate). n <= 10.
double capacity_small_n(const ChannelSpec& spec, int n, double tol,
                        bool use_star = false);

// 1 - h(d*(tau+1)/2^tau); requires d*(tau+1)/2^tau <= 1/2, else throws
// std::invalid_argument("hypothesis-violated").
double dg_bound(int tau, double d);

// 2*tau*d^M + sum_{i=1}^{tau} (tau-i) C(M,i) (1-d)^i d^{M-i}.
double g_of_d(int tau, int M, double d);

// Rate of the blown-up greedy code with run-length profile beta (beta_1..
// beta_tau, sum i*beta_i = 1), blow-up length M and adversary budget
// delta = beta_tau * g(d):
//   [ beta*H(beta_i/beta) - (2 beta_tau + delta) h(delta/(2 beta_tau + delta))
//     - h(delta) ] / ( (1 - beta_tau*tau) + beta_tau*M ),
// clamped below at 0; reports 0 when delta >= 1.
double greedy_rate(int tau, int M, double d, const std::vector<double>& beta);

struct BoundResult {
  int tau = 0;
  double d = 0;
  double rate = 0;
  std::vector<double> beta;
  int M = 0;
  std::string method;  // "dg", "greedy" or "baseline"
};

// Maximizes greedy_rate over the beta grid (beta_2..beta_tau multiples of
// beta_step, beta_1 solved from sum i*beta_i = 1) and M in [tau, M_max].
// Deterministic tie-break: lexicographically smallest (M, beta_1..beta_tau).
BoundResult greedy_search(int tau, double d, int M_max = 64,
                          double beta_step = 0.01);

// log2 of the largest real root of x^(tau-1) = sum_{i=0}^{tau-2} x^i:
// the noiseless rate of strings whose runs all have length < tau.
double rll_baseline(int tau);

// Number of binary strings of length n whose runs all have length < tau.
std::uint64_t count_rll_strings(int n, int tau);

// Writes the bound curves as CSV with header
//   d,rate_dg,rate_greedy,rate_baseline,best_M,best_beta
// (best_beta semicolon-joined; rate_dg empty where the dg hypothesis fails).
void emit_curve(int tau, const std::vector<double>& d_grid, std::ostream& os,
                int M_max = 64, double beta_step = 0.01);

}  // namespace rlc
