#include "bitseq.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace rlc {

RunList runs(const BitString& s) {
  RunList out;
  for (char c : s) {
    if (!out.empty() && out.back().symbol == c) {
      out.back().length++;
    } else {
      out.push_back({c, 1});
    }
  }
  return out;
}

BitString from_runs(const RunList& rl) {
  BitString s;
  for (const Run& r : rl) s.append(static_cast<size_t>(r.length), r.symbol);
  return s;
}

namespace {

template <typename Seq>
int lcs_impl(const Seq& a, const Seq& b) {
  const size_t na = a.size(), nb = b.size();
  std::vector<int> prev(nb + 1, 0), cur(nb + 1, 0);
  for (size_t i = 1; i <= na; i++) {
    for (size_t j = 1; j <= nb; j++) {
      if (a[i - 1] == b[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[nb];
}

}  // namespace

int lcs_length(const std::vector<int>& a, const std::vector<int>& b) {
  return lcs_impl(a, b);
}

int edit_distance(const BitString& a, const BitString& b) {
  return static_cast<int>(a.size() + b.size()) - 2 * lcs_impl(a, b);
}

int edit_distance(const std::vector<int>& a, const std::vector<int>& b) {
  return static_cast<int>(a.size() + b.size()) - 2 * lcs_impl(a, b);
}

bool is_subsequence(const BitString& y, const BitString& x) {
  size_t i = 0;
  for (size_t j = 0; j < x.size() && i < y.size(); j++)
    if (x[j] == y[i]) i++;
  return i == y.size();
}

std::set<BitString> enumerate_subsequences(const BitString& s, int ell) {
  const int n = static_cast<int>(s.size());
  if (n > 20) throw std::invalid_argument("instance-too-large");
  if (ell < 0 || ell > n) throw std::invalid_argument("bad deletion count");
  std::set<BitString> out;
  BitString cur;
  cur.reserve(n);
  // Walk positions, tracking how many deletions remain.
  std::function<void(int, int)> rec = [&](int pos, int del_left) {
    int rest = n - pos;
    if (del_left > rest) return;
    if (pos == n) {
      out.insert(cur);
      return;
    }
    cur.push_back(s[pos]);
    rec(pos + 1, del_left);
    cur.pop_back();
    if (del_left > 0) rec(pos + 1, del_left - 1);
  };
  rec(0, ell);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; i++) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

std::uint64_t supersequence_count(int n, const BitString& y) {
  const int m = static_cast<int>(y.size());
  if (n < m) throw std::invalid_argument("n must be >= |y|");
  std::uint64_t total = 0;
  for (int i = 0; i <= n - m; i++) total += binomial(n, i);
  return total;
}

bool density_ok(const BitString& c, double zeta, double gamma) {
  const int n = static_cast<int>(c.size());
  if (!(zeta > 0 && zeta < 1) || !(gamma > 0 && gamma < 0.5))
    throw std::invalid_argument("bad density parameters");
  const int L = static_cast<int>(std::lround(zeta * n));
  if (L < 1) throw std::invalid_argument("window shorter than one bit");
  std::vector<int> pre(n + 1, 0);
  for (int i = 0; i < n; i++) pre[i + 1] = pre[i] + (c[i] == '1' ? 1 : 0);
  const double lo = gamma * L - 1e-9, hi = (1 - gamma) * L + 1e-9;
  for (int i = 0; i + L <= n; i++) {
    int w = pre[i + L] - pre[i];
    if (w < lo || w > hi) return false;
  }
  return true;
}

Segmentation identify_buffers(const BitString& s, char symbol, int threshold) {
  if (threshold < 1) throw std::invalid_argument("threshold must be >= 1");
  Segmentation seg;
  const int n = static_cast<int>(s.size());
  int pos = 0;
  int seg_start = 0;
  for (const Run& r : runs(s)) {
    if (r.symbol == symbol && r.length >= threshold) {
      if (pos > seg_start) {
        seg.segments.push_back(s.substr(seg_start, pos - seg_start));
        seg.segment_spans.push_back({seg_start, pos});
      }
      seg.buffer_spans.push_back({pos, pos + r.length});
      seg_start = pos + r.length;
    }
    pos += r.length;
  }
  if (n > seg_start) {
    seg.segments.push_back(s.substr(seg_start));
    seg.segment_spans.push_back({seg_start, n});
  }
  return seg;
}

}  // namespace rlc
