#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rlc {

// Binary strings are stored as std::string over the characters '0' and '1'.
// This keeps printing, ordering and map keys trivial at desk scale.
using BitString = std::string;

struct Run {
  char symbol;  // '0' or '1'
  int length;   // > 0
  bool operator==(const Run&) const = default;
};
using RunList = std::vector<Run>;

// Result of buffer identification: the maximal inter-buffer substrings plus
// the [start,end) spans of both segments and buffers, so the caller can
// reconstruct the tiling of the input.
struct Segmentation {
  std::vector<BitString> segments;
  std::vector<std::pair<int, int>> segment_spans;  // [start,end), same order
  std::vector<std::pair<int, int>> buffer_spans;   // [start,end), left to right
};

// Maximal-run decomposition. Empty input gives an empty list.
RunList runs(const BitString& s);

// Inverse of runs(): concatenates the runs back into a string.
BitString from_runs(const RunList& rl);

// Insertion/deletion edit distance |a|+|b| - 2*LCS(a,b). No substitutions.
int edit_distance(const BitString& a, const BitString& b);
int edit_distance(const std::vector<int>& a, const std::vector<int>& b);

// Length of a longest common subsequence.
int lcs_length(const std::vector<int>& a, const std::vector<int>& b);

// True iff y can be obtained from x by deletions only.
bool is_subsequence(const BitString& y, const BitString& x);

// All distinct subsequences of s of length |s|-ell. Exhaustive; |s| <= 20.
// Throws std::invalid_argument("instance-too-large") beyond that.
std::set<BitString> enumerate_subsequences(const BitString& s, int ell);

// Number of length-n binary strings containing y as a subsequence:
// sum_{i=0}^{n-|y|} C(n,i). Requires n >= |y|.
std::uint64_t supersequence_count(int n, const BitString& y);

// Exact binomial coefficient (n <= 62 to stay within uint64).
std::uint64_t binomial(int n, int k);

// Density window check: with window length L = round(zeta*|c|), every length-L
// window of c has Hamming weight in [gamma*L, (1-gamma)*L].
bool density_ok(const BitString& c, double zeta, double gamma);

// Marks every maximal run of `symbol` with length >= threshold as a buffer and
// returns the maximal substrings between buffers. Boundary buffers produce no
// empty segments.
Segmentation identify_buffers(const BitString& s, char symbol, int threshold);

}  // namespace rlc
