#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgk/rational.hpp"

namespace cgk {

struct BratteliEdge {
  std::string label;
  int source = 0;  // vertex index in V_{n-1}
  int target = 0;  // vertex index in V_n
};

class BratteliDiagram;
struct ValidationResult;
ValidationResult validate_diagram(std::vector<std::vector<std::string>> vertex_levels,
                                  std::vector<std::vector<BratteliEdge>> edge_levels);

/// Finite-depth Bratteli diagram. Level 0 holds the single root vertex.
/// E_n (1-based) connects V_{n-1} to V_n. All values are immutable after
/// construction; edges are kept in canonical (label) order.
class BratteliDiagram {
 public:
  BratteliDiagram() = default;
  BratteliDiagram(std::vector<std::vector<std::string>> vertex_levels,
                  std::vector<std::vector<BratteliEdge>> edge_levels);

  int depth() const { return static_cast<int>(edge_levels_.size()); }
  int num_vertices(int level) const { return static_cast<int>(vertex_levels_[level].size()); }
  const std::vector<std::string>& vertex_labels(int level) const { return vertex_levels_[level]; }
  const std::string& vertex_label(int level, int v) const { return vertex_levels_[level][v]; }

  const std::vector<BratteliEdge>& edges(int n) const { return edge_levels_[n - 1]; }
  const BratteliEdge& edge(int n, int e) const { return edge_levels_[n - 1][e]; }
  int num_edges(int n) const { return static_cast<int>(edge_levels_[n - 1].size()); }

  /// Edge ids in E_{level+1} with the given source vertex.
  const std::vector<int>& out_edges(int level, int v) const { return out_edges_[level][v]; }
  /// Edge ids in E_n with the given target vertex.
  const std::vector<int>& in_edges(int n, int v) const { return in_edges_[n - 1][v]; }

  int vertex_index(int level, const std::string& label) const;
  int edge_index(int n, const std::string& label) const;

 private:
  friend ValidationResult validate_diagram(std::vector<std::vector<std::string>> vertex_levels,
                                           std::vector<std::vector<BratteliEdge>> edge_levels);

  std::vector<std::vector<std::string>> vertex_levels_;
  std::vector<std::vector<BratteliEdge>> edge_levels_;
  std::vector<std::vector<std::vector<int>>> out_edges_;  // [level][vertex]
  std::vector<std::vector<std::vector<int>>> in_edges_;   // [n-1][vertex]
};

/// Composable edge index sequence from level `start` to level
/// `start + edges.size()`.
struct FinitePath {
  int start = 0;
  std::vector<int> edges;

  int end_level() const { return start + static_cast<int>(edges.size()); }
  int length() const { return static_cast<int>(edges.size()); }
  bool operator==(const FinitePath&) const = default;
  bool operator<(const FinitePath& o) const {
    if (start != o.start) return start < o.start;
    return edges < o.edges;
  }
};

/// Cylinder set U(p) for a path p from the root.
struct Cylinder {
  FinitePath path;
};

struct IncidenceMatrix {
  int level = 0;                           // matrix of E_level
  std::vector<std::vector<Int>> entries;   // indexed V_{level-1} x V_level
};

struct ValidationResult {
  std::optional<BratteliDiagram> diagram;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the diagram invariants: single root, non-empty finite levels,
/// no dead vertices, unique labels. Returns either the diagram or the list
/// of violations.
ValidationResult validate_diagram(std::vector<std::vector<std::string>> vertex_levels,
                                  std::vector<std::vector<BratteliEdge>> edge_levels);

// Path helpers.
bool path_is_valid(const BratteliDiagram& d, const FinitePath& p);
int path_source(const BratteliDiagram& d, const FinitePath& p);
int path_target(const BratteliDiagram& d, const FinitePath& p);
std::vector<std::string> path_labels(const BratteliDiagram& d, const FinitePath& p);
FinitePath path_from_labels(const BratteliDiagram& d, int start, const std::vector<std::string>& labels);
bool path_extends(const FinitePath& p, const FinitePath& prefix);
FinitePath path_concat(const FinitePath& p, const FinitePath& tail);
FinitePath path_slice(const FinitePath& p, int from_level, int to_level);

IncidenceMatrix incidence_matrix(const BratteliDiagram& d, int n);

/// Product of incidence matrices for levels m+1..n; entry (v, w) counts the
/// paths in E_{m,n} from v to w.
std::vector<std::vector<Int>> path_count_matrix(const BratteliDiagram& d, int m, int n);

/// All composable paths from level m to level n in canonical order.
std::vector<FinitePath> enumerate_paths(const BratteliDiagram& d, int m, int n);
/// Same, restricted to paths starting at vertex `from` in V_m.
std::vector<FinitePath> enumerate_paths_from(const BratteliDiagram& d, int m, int n, int from);

/// Children {U(pe)} of U(p); pairwise disjoint with union U(p).
std::vector<Cylinder> refine_cylinder(const BratteliDiagram& d, const Cylinder& c);

/// Contracts the diagram to the given cut levels (increasing, starting at 0);
/// paths between consecutive cuts become edges.
BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<int>& cut_levels);

/// In-splits vertex `vertex` at level n into one copy per part of the given
/// partition of its incoming edge labels; outgoing edges are duplicated to
/// every copy. Root-to-level-(n+1) path counts are preserved.
BratteliDiagram symbol_split(const BratteliDiagram& d, int n, const std::string& vertex,
                             const std::vector<std::vector<std::string>>& parts);

/// True iff every composite incidence matrix over a window of that many
/// levels is strictly positive.
bool check_simplicity(const BratteliDiagram& d, int window);

}  // namespace cgk
