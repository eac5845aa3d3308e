#pragma once

// Exact finite-depth model of the relation, independent of the symbolic
// composition tables in core. A tagged pair at uniform depth M denotes a set
// of infinite pairs:
//   Id          (x.w, y.w) over all common tails w
//   Paired(i)   (x.u, y.v) where v mirrors u's leading xi^i block, with the
//               block allowed to break by a swapped guest pair or a shared
//               non-image edge (the delta tail pattern)
//   Pure(i,j)   (x.xi^i(G), y.xi^j(G)) over all infinite guest paths G
// Denotations at one depth determine the represented set uniquely, so two
// disjoint families represent the same set iff their tagged sets are equal.

#include <tuple>
#include <vector>

#include "cgk/embedding.hpp"
#include "cgk/groupoid.hpp"
#include "cgk/star_algebra.hpp"

namespace cgk::testing {

struct TaggedPair {
  enum class Tag { Id, Paired, Pure };
  std::vector<int> x, y;
  Tag tag = Tag::Id;
  int i = 0;  // Paired orientation, or Pure left copy
  int j = 0;  // Pure right copy

  auto key() const { return std::tie(x, y, tag, i, j); }
  bool operator==(const TaggedPair& o) const { return key() == o.key(); }
  bool operator<(const TaggedPair& o) const { return key() < o.key(); }
};

using TaggedSet = std::vector<TaggedPair>;  // sorted, duplicate-free

/// Canonical truncation of a basis element at depth M (M >= level for betas,
/// M >= level + 1 for deltas).
TaggedSet truncate_basis(const EmbeddedSystem& sys, const BasisElement& g, int M);

/// Truncates every element and merges; throws if any two elements overlap,
/// which verifies pairwise disjointness exactly.
TaggedSet model_of_list(const EmbeddedSystem& sys, const std::vector<BasisElement>& list, int M);

TaggedSet compose_tagged(const EmbeddedSystem& sys, const TaggedSet& a, const TaggedSet& b);
TaggedSet intersect_tagged(const EmbeddedSystem& sys, const TaggedSet& a, const TaggedSet& b);
TaggedSet invert_tagged(const TaggedSet& a);

/// Canonical truncation of an algebra symbol at depth M (pure tails for the
/// a-family).
TaggedSet truncate_symbol(const EmbeddedSystem& sys, const Symbol& s, int M);

/// Tagged union of symbol truncations; throws on overlap.
TaggedSet model_of_symbols(const EmbeddedSystem& sys, const std::vector<Symbol>& symbols, int M);

/// Exact containment of the denotation of tp in g.
bool tagged_pair_contained(const EmbeddedSystem& sys, const TaggedPair& tp, const BasisElement& g);

/// Converts a core TruncatedPair for comparisons against the model.
TaggedPair from_truncated(const TruncatedPair& tp);

}  // namespace cgk::testing
