#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cgk/diagram.hpp"
#include "cgk/embedding.hpp"
#include "cgk/rational.hpp"

namespace cgk {

/// Element of the topology basis of the relation R: either a tail-identity
/// bisection Beta(p, q) replacing prefix p by q, or a guest-swap bisection
/// Delta(i, p, q) exchanging the two embedded copies after prefix p -> q,
/// or the empty set. Source is the first coordinate, range the second.
struct BasisElement {
  enum class Kind { Empty, Beta, Delta };
  Kind kind = Kind::Empty;
  int i = 0;  // Delta orientation: source side follows the xi^i copy
  FinitePath p, q;

  int level() const { return p.end_level(); }
  bool is_empty() const { return kind == Kind::Empty; }
  bool operator==(const BasisElement&) const = default;
  bool operator<(const BasisElement& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (i != o.i) return i < o.i;
    if (!(p == o.p)) return p < o.p;
    return q < o.q;
  }
};

BasisElement make_beta(const EmbeddedSystem& sys, FinitePath p, FinitePath q);
BasisElement make_delta(const EmbeddedSystem& sys, int i, FinitePath p, FinitePath q);
inline BasisElement make_empty() { return {}; }

/// Depth-L pair of root paths plus a tail tag describing how it continues:
/// Identity extends both sides by one common tail, PairedGuest continues the
/// guest-swap pattern (last edges must be opposite guest images of one guest
/// edge; `orientation` refers to the first coordinate).
struct TruncatedPair {
  FinitePath x, y;
  enum class Tail { Identity, PairedGuest };
  Tail tail = Tail::Identity;
  int orientation = 0;

  int depth() const { return x.end_level(); }
  bool operator==(const TruncatedPair&) const = default;
  bool operator<(const TruncatedPair& o) const {
    if (!(x == o.x)) return x < o.x;
    if (!(y == o.y)) return y < o.y;
    if (tail != o.tail) return tail < o.tail;
    return orientation < o.orientation;
  }
};

TruncatedPair make_truncated_pair(const EmbeddedSystem& sys, FinitePath x, FinitePath y,
                                  TruncatedPair::Tail tail, int orientation = 0);

/// Inversion: Beta(p,q) -> Beta(q,p), Delta(i,p,q) -> Delta(1-i,q,p).
BasisElement invert(const BasisElement& g);

/// Set composition g1 . g2 = {(x,y) | (x,z) in g1, (z,y) in g2} as a
/// pairwise-disjoint list of basis elements (possibly empty).
std::vector<BasisElement> compose(const EmbeddedSystem& sys, const BasisElement& g1,
                                  const BasisElement& g2);

/// Set intersection as a pairwise-disjoint list of basis elements.
std::vector<BasisElement> intersect(const EmbeddedSystem& sys, const BasisElement& g1,
                                    const BasisElement& g2);

/// Children {Beta(pe, qe)} over edges e out of t(p); disjoint, union-exact.
std::vector<BasisElement> beta_refine(const EmbeddedSystem& sys, const BasisElement& beta);

struct DeltaDecomposition {
  std::vector<BasisElement> deltas;        // one level up, same orientation
  std::vector<BasisElement> swap_betas;    // guest pair then opposite pair
  std::vector<BasisElement> neutral_betas; // guest pair then a non-image edge
  std::vector<BasisElement> all() const;
};

/// Splits Delta(i,p,q) into the three disjoint families one step deeper.
DeltaDecomposition delta_decompose(const EmbeddedSystem& sys, const BasisElement& delta);

struct SourceRange {
  std::vector<Cylinder> source;
  std::vector<Cylinder> range;
};

SourceRange source_range(const EmbeddedSystem& sys, const BasisElement& g);

/// True iff some infinite extension of the truncated pair lies in g.
/// Requires pair depth >= level(g) + 1.
bool member(const EmbeddedSystem& sys, const BasisElement& g, const TruncatedPair& pair);

/// Partition of E_{0,L} under the relation generated by the level-n basis on
/// identity-tail pairs.
struct RnPartition {
  int n = 0;
  int depth = 0;
  std::vector<FinitePath> points;      // canonical order
  std::vector<int> class_of;           // point index -> class id
  std::vector<std::vector<int>> classes;
};

RnPartition rn_classes(const EmbeddedSystem& sys, int n, int L);

/// Class size predicted by the two-branch counting formula.
Int rn_class_size_formula(const EmbeddedSystem& sys, const FinitePath& x, int n);

/// The betas making up R_n - R_l, for l > n.
std::vector<BasisElement> rn_difference(const EmbeddedSystem& sys, int n, int l);

struct AmenabilityReport {
  bool row_sums_ok = false;
  bool per_h_ok = false;
  Rational defect;        // max over pairs in R_n of the g_l row difference
  Rational bound;         // 2(n+1)/l
  bool defect_ok = false;
  std::string detail;
};

/// Exact-rational amenability data for the pair (n, l) on the depth-L
/// truncation: h_i row sums, the {0,2} dichotomy for h_l across R_n, and the
/// maximal g_l defect against 2(n+1)/l. Requires L >= l + 2.
AmenabilityReport amenability_values(const EmbeddedSystem& sys, int n, int l, int L);

/// Exact row difference sum_z |g_l(x,z) - g_l(y,z)| for two points given the
/// partitions for levels 1..l (l = parts.size()); x and y index parts[0].points.
Rational g_row_difference(const EmbeddedSystem& sys, const std::vector<RnPartition>& parts,
                          int x_index, int y_index);

/// All basis elements of level n (betas over I_n, deltas over I_n^W).
std::vector<BasisElement> basis_at_level(const EmbeddedSystem& sys, int n);

// Pattern helpers shared with the algebra layer.
bool paths_tail_equal(const FinitePath& x, const FinitePath& y, int from_level);
/// Flips every guest-image edge in the leading swap window of the suffix of x
/// after `level` (the maximal same-type guest block and, when next comes the
/// opposite image, that edge too). Returns false when x has no guest-image
/// edge at level + 1.
bool mirror_suffix(const EmbeddedSystem& sys, const FinitePath& x, int level, FinitePath& out);

std::string to_string(const EmbeddedSystem& sys, const BasisElement& g);

}  // namespace cgk
