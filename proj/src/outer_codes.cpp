#include "outer_codes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "bitseq.hpp"

namespace rlc {

GF::GF(int m) : m_(m), q_(1 << m) {
  int prim;
  if (m == 4) prim = 0x13;        // x^4 + x + 1
  else if (m == 5) prim = 0x25;   // x^5 + x^2 + 1
  else if (m == 6) prim = 0x43;   // x^6 + x + 1
  else if (m == 8) prim = 0x11d;  // x^8 + x^4 + x^3 + x^2 + 1
  else throw std::invalid_argument("supported fields: GF(2^m), m in {4,5,6,8}");
  exp_.assign(static_cast<size_t>(2 * q_), 0);
  log_.assign(static_cast<size_t>(q_), 0);
  int x = 1;
  for (int i = 0; i < q_ - 1; i++) {
    exp_[static_cast<size_t>(i)] = x;
    log_[static_cast<size_t>(x)] = i;
    x <<= 1;
    if (x & q_) x ^= prim;
  }
  for (int i = q_ - 1; i < 2 * q_; i++)
    exp_[static_cast<size_t>(i)] = exp_[static_cast<size_t>(i - (q_ - 1))];
}

int GF::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[static_cast<size_t>(log_[static_cast<size_t>(a)] +
                                  log_[static_cast<size_t>(b)])];
}

int GF::div(int a, int b) const {
  if (b == 0) throw std::invalid_argument("division by zero");
  if (a == 0) return 0;
  int e = log_[static_cast<size_t>(a)] - log_[static_cast<size_t>(b)];
  if (e < 0) e += q_ - 1;
  return exp_[static_cast<size_t>(e)];
}

int GF::pow_alpha(int e) const {
  e %= q_ - 1;
  if (e < 0) e += q_ - 1;
  return exp_[static_cast<size_t>(e)];
}

int GF::inv(int a) const { return div(1, a); }

namespace {

// Polynomials are stored low-degree-first.
std::vector<int> poly_mul(const GF& gf, const std::vector<int>& a,
                          const std::vector<int>& b) {
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < b.size(); j++)
      out[i + j] ^= gf.mul(a[i], b[j]);
  return out;
}

int poly_eval(const GF& gf, const std::vector<int>& p, int x) {
  int acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = gf.mul(acc, x) ^ p[i];
  return acc;
}

int poly_deg(const std::vector<int>& p) {
  for (size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

}  // namespace

RSCode::RSCode(int n, int k, int field_bits) : gf_(field_bits), n_(n), k_(k) {
  if (k < 1 || n <= k || n > gf_.q() - 1)
    throw std::invalid_argument("need 1 <= k < n <= q-1");
  gen_ = {1};
  for (int j = 0; j < n_ - k_; j++) gen_ = poly_mul(gf_, gen_, {gf_.pow_alpha(j), 1});
}

std::vector<int> RSCode::encode(const std::vector<int>& msg) const {
  if (static_cast<int>(msg.size()) != k_)
    throw std::invalid_argument("message must have k symbols");
  for (int s : msg)
    if (s < 0 || s >= gf_.q()) throw std::invalid_argument("symbol out of field");
  // Systematic: c(x) = m(x) x^(n-k) - (m(x) x^(n-k) mod g). Work MSB-first:
  // word[i] is the coefficient of x^(n-1-i).
  std::vector<int> work(static_cast<size_t>(n_), 0);
  for (int i = 0; i < k_; i++) work[static_cast<size_t>(i)] = msg[static_cast<size_t>(i)];
  const int dg = n_ - k_;
  for (int i = 0; i < k_; i++) {
    int coef = work[static_cast<size_t>(i)];
    if (coef == 0) continue;
    for (int j = 0; j <= dg; j++)
      work[static_cast<size_t>(i + j)] ^= gf_.mul(coef, gen_[static_cast<size_t>(dg - j)]);
  }
  std::vector<int> out(msg);
  out.insert(out.end(), work.begin() + k_, work.end());
  return out;
}

std::optional<std::vector<int>> RSCode::decode(const std::vector<int>& word) const {
  if (static_cast<int>(word.size()) != n_)
    throw std::invalid_argument("word must have n symbols");
  const int twot = n_ - k_;
  std::vector<int> r(word);
  std::vector<int> erasures;
  for (int i = 0; i < n_; i++) {
    if (r[static_cast<size_t>(i)] == kErasedSymbol) {
      erasures.push_back(i);
      r[static_cast<size_t>(i)] = 0;
    } else if (r[static_cast<size_t>(i)] < 0 || r[static_cast<size_t>(i)] >= gf_.q()) {
      throw std::invalid_argument("symbol out of field");
    }
  }
  const int e = static_cast<int>(erasures.size());
  if (e > twot) return std::nullopt;

  auto locator_of = [&](int pos) { return gf_.pow_alpha(n_ - 1 - pos); };

  // Syndromes S_j = r(alpha^j), j = 0..2t-1.
  std::vector<int> S(static_cast<size_t>(twot));
  bool clean = true;
  for (int j = 0; j < twot; j++) {
    int acc = 0;
    int a = gf_.pow_alpha(j);
    for (int i = 0; i < n_; i++) acc = gf_.mul(acc, a) ^ r[static_cast<size_t>(i)];
    S[static_cast<size_t>(j)] = acc;
    clean &= acc == 0;
  }
  if (clean) return std::vector<int>(r.begin(), r.begin() + k_);

  // Erasure locator Gamma(x) = prod (1 - X_i x).
  std::vector<int> gamma = {1};
  for (int pos : erasures) gamma = poly_mul(gf_, gamma, {1, locator_of(pos)});

  // Forney syndromes: Xi = S * Gamma mod x^2t; run plain BM on Xi_e..Xi_{2t-1}.
  std::vector<int> xi = poly_mul(gf_, S, gamma);
  xi.resize(static_cast<size_t>(twot), 0);
  std::vector<int> seq(xi.begin() + e, xi.end());

  std::vector<int> C = {1}, B = {1};
  int L = 0, mshift = 1, b = 1;
  for (int nn = 0; nn < static_cast<int>(seq.size()); nn++) {
    int d = seq[static_cast<size_t>(nn)];
    for (int i = 1; i <= L && i < static_cast<int>(C.size()); i++)
      d ^= gf_.mul(C[static_cast<size_t>(i)], seq[static_cast<size_t>(nn - i)]);
    if (d == 0) {
      mshift++;
    } else if (2 * L <= nn) {
      std::vector<int> T = C;
      int scale = gf_.div(d, b);
      C.resize(std::max(C.size(), B.size() + static_cast<size_t>(mshift)), 0);
      for (size_t i = 0; i < B.size(); i++)
        C[i + static_cast<size_t>(mshift)] ^= gf_.mul(scale, B[i]);
      L = nn + 1 - L;
      B = T;
      b = d;
      mshift = 1;
    } else {
      int scale = gf_.div(d, b);
      C.resize(std::max(C.size(), B.size() + static_cast<size_t>(mshift)), 0);
      for (size_t i = 0; i < B.size(); i++)
        C[i + static_cast<size_t>(mshift)] ^= gf_.mul(scale, B[i]);
      mshift++;
    }
  }
  if (poly_deg(C) != L || 2 * L > twot - e) return std::nullopt;

  // Errata locator and evaluator.
  std::vector<int> lambda = poly_mul(gf_, C, gamma);
  std::vector<int> omega = poly_mul(gf_, S, lambda);
  omega.resize(static_cast<size_t>(twot), 0);

  // Chien search over all positions.
  std::vector<int> positions;
  for (int i = 0; i < n_; i++) {
    int xinv = gf_.inv(locator_of(i));
    if (poly_eval(gf_, lambda, xinv) == 0) positions.push_back(i);
  }
  if (static_cast<int>(positions.size()) != poly_deg(lambda)) return std::nullopt;

  // Forney: Y = X * Omega(X^-1) / Lambda'(X^-1). In char 2 the formal
  // derivative keeps the odd-degree terms one degree down.
  std::vector<int> deriv(lambda.size(), 0);
  for (size_t i = 1; i < lambda.size(); i += 2) deriv[i - 1] = lambda[i];

  std::vector<int> corrected(r);
  for (int pos : positions) {
    int X = locator_of(pos);
    int xinv = gf_.inv(X);
    int num = gf_.mul(X, poly_eval(gf_, omega, xinv));
    int den = poly_eval(gf_, deriv, xinv);
    if (den == 0) return std::nullopt;
    corrected[static_cast<size_t>(pos)] ^= gf_.div(num, den);
  }

  // Re-validate and enforce the decoding radius.
  for (int j = 0; j < twot; j++) {
    int acc = 0;
    int a = gf_.pow_alpha(j);
    for (int i = 0; i < n_; i++) acc = gf_.mul(acc, a) ^ corrected[static_cast<size_t>(i)];
    if (acc != 0) return std::nullopt;
  }
  int t_errors = 0;
  for (int pos : positions)
    if (std::find(erasures.begin(), erasures.end(), pos) == erasures.end() &&
        corrected[static_cast<size_t>(pos)] != r[static_cast<size_t>(pos)])
      t_errors++;
  if (e + 2 * t_errors > twot) return std::nullopt;
  return std::vector<int>(corrected.begin(), corrected.begin() + k_);
}

SubCode::SubCode(int n_out, double delta_sub_, int field_bits)
    : rs(n_out, n_out - static_cast<int>(std::ceil(delta_sub_ * n_out)) + 1,
         field_bits),
      delta_sub(delta_sub_) {}

std::vector<int> sub_encode(const SubCode& code, const std::vector<int>& msg) {
  return code.rs.encode(msg);
}

std::optional<std::vector<int>> sub_decode(const SubCode& code,
                                           const std::vector<int>& word) {
  return code.rs.decode(word);
}

void SyncString::serialize(std::ostream& os) const {
  os << "n=" << symbols.size() << " eta=" << eta << " alphabet=" << alphabet_size
     << " verified=" << (verified ? 1 : 0) << "\n";
  for (size_t i = 0; i < symbols.size(); i++) os << (i ? " " : "") << symbols[i];
  os << "\n";
}

SyncString SyncString::deserialize(std::istream& is) {
  SyncString s;
  size_t n = 0;
  int verified_flag = 0;
  // header: n=<n> eta=<eta> alphabet=<q> verified=<0|1>
  std::string header_word;
  for (int f = 0; f < 4; f++) {
    if (!(is >> header_word)) throw std::runtime_error("bad sync header");
    auto pos = header_word.find('=');
    std::string k = header_word.substr(0, pos), v = header_word.substr(pos + 1);
    if (k == "n") n = std::stoul(v);
    else if (k == "eta") s.eta = std::stod(v);
    else if (k == "alphabet") s.alphabet_size = std::stoi(v);
    else if (k == "verified") verified_flag = std::stoi(v);
  }
  s.symbols.resize(n);
  for (size_t i = 0; i < n; i++)
    if (!(is >> s.symbols[i])) throw std::runtime_error("bad sync payload");
  s.verified = verified_flag != 0;
  return s;
}

namespace {

// ED between s[i,j) and s[j,k) must exceed (1-eta)(k-i); checks all triples
// with a fixed right endpoint k.
bool triples_ok_at(const std::vector<int>& s, double eta, int k) {
  for (int i = 0; i < k - 1; i++) {
    for (int j = i + 1; j < k; j++) {
      std::vector<int> left(s.begin() + i, s.begin() + j);
      std::vector<int> right(s.begin() + j, s.begin() + k);
      if (edit_distance(left, right) <= (1 - eta) * (k - i) + 1e-12) return false;
    }
  }
  return true;
}

}  // namespace

bool verify_sync_string(const std::vector<int>& s, double eta) {
  for (int k = 2; k <= static_cast<int>(s.size()); k++)
    if (!triples_ok_at(s, eta, k)) return false;
  return true;
}

SyncString build_sync_string(int n, double eta, int alphabet_size) {
  if (alphabet_size < 4) throw std::invalid_argument("alphabet_size must be >= 4");
  if (n > 256) throw std::invalid_argument("instance-too-large");
  std::vector<int> s;
  std::vector<int> tried;  // number of symbols already tried per position
  s.reserve(static_cast<size_t>(n));
  tried.push_back(0);
  long long budget = 500000;
  while (static_cast<int>(s.size()) < n) {
    if (budget-- <= 0) throw std::runtime_error("construction-failed");
    int p = static_cast<int>(s.size());
    int t = tried.back();
    if (t >= alphabet_size) {
      // Dead end: backtrack.
      if (s.empty()) throw std::runtime_error("construction-failed");
      s.pop_back();
      tried.pop_back();
      continue;
    }
    tried.back() = t + 1;
    // Deterministic per-position enumeration order.
    int sym = static_cast<int>((1103515245LL * p + 12345 + t) % alphabet_size);
    s.push_back(sym);
    if (triples_ok_at(s, eta, static_cast<int>(s.size()))) {
      tried.push_back(0);
    } else {
      s.pop_back();
    }
  }
  SyncString out;
  out.symbols = std::move(s);
  out.eta = eta;
  out.alphabet_size = alphabet_size;
  out.verified = verify_sync_string(out.symbols, eta);
  if (!out.verified) throw std::runtime_error("construction-failed");
  return out;
}

Matching match_sync(const std::vector<int>& sync, const std::vector<int>& received) {
  const int n = static_cast<int>(sync.size());
  const int m = static_cast<int>(received.size());
  // L[i][j] = LCS length of sync[i..] vs received[j..].
  std::vector<std::vector<int>> L(static_cast<size_t>(n) + 1,
                                  std::vector<int>(static_cast<size_t>(m) + 1, 0));
  for (int i = n - 1; i >= 0; i--)
    for (int j = m - 1; j >= 0; j--)
      L[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          sync[static_cast<size_t>(i)] == received[static_cast<size_t>(j)]
              ? L[static_cast<size_t>(i) + 1][static_cast<size_t>(j) + 1] + 1
              : std::max(L[static_cast<size_t>(i) + 1][static_cast<size_t>(j)],
                         L[static_cast<size_t>(i)][static_cast<size_t>(j) + 1]);
  Matching match;
  int i = 0, j = 0;
  while (i < n && j < m) {
    if (sync[static_cast<size_t>(i)] == received[static_cast<size_t>(j)] &&
        L[static_cast<size_t>(i)][static_cast<size_t>(j)] ==
            L[static_cast<size_t>(i) + 1][static_cast<size_t>(j) + 1] + 1) {
      match.left.push_back(i);
      match.right.push_back(j);
      i++;
      j++;
    } else if (L[static_cast<size_t>(i) + 1][static_cast<size_t>(j)] >=
               L[static_cast<size_t>(i)][static_cast<size_t>(j) + 1]) {
      i++;
    } else {
      j++;
    }
  }
  return match;
}

InsdelCode::InsdelCode(SubCode sub_, SyncString sync_)
    : sub(std::move(sub_)), sync(std::move(sync_)) {
  if (static_cast<int>(sync.symbols.size()) != sub.rs.n())
    throw std::invalid_argument("sync string length must equal n_out");
  if (!sync.verified) throw std::invalid_argument("sync string not verified");
}

std::vector<std::pair<int, int>> insdel_encode(const InsdelCode& code,
                                               const std::vector<int>& msg) {
  std::vector<int> word = sub_encode(code.sub, msg);
  std::vector<std::pair<int, int>> out;
  out.reserve(word.size());
  for (size_t i = 0; i < word.size(); i++)
    out.push_back({word[i], code.sync.symbols[i]});
  return out;
}

std::optional<std::vector<int>> insdel_decode(
    const InsdelCode& code, const std::vector<std::pair<int, int>>& received) {
  std::vector<int> rec_sync;
  rec_sync.reserve(received.size());
  for (const auto& [payload, sync_sym] : received) rec_sync.push_back(sync_sym);
  Matching match = match_sync(code.sync.symbols, rec_sync);
  std::vector<int> word(static_cast<size_t>(code.sub.rs.n()), kErasedSymbol);
  for (size_t l = 0; l < match.left.size(); l++)
    word[static_cast<size_t>(match.left[l])] =
        received[static_cast<size_t>(match.right[l])].first;
  return sub_decode(code.sub, word);
}

}  // namespace rlc
