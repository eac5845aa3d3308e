#include "cgk/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "cgk/util.hpp"

namespace cgk {

namespace {

void sort_edges_by_label(std::vector<std::vector<BratteliEdge>>& edge_levels) {
  for (auto& level : edge_levels) {
    std::sort(level.begin(), level.end(),
              [](const BratteliEdge& a, const BratteliEdge& b) { return a.label < b.label; });
  }
}

}  // namespace

BratteliDiagram::BratteliDiagram(std::vector<std::vector<std::string>> vertex_levels,
                                 std::vector<std::vector<BratteliEdge>> edge_levels) {
  auto result = validate_diagram(std::move(vertex_levels), std::move(edge_levels));
  if (!result.ok()) {
    throw std::invalid_argument("invalid Bratteli diagram: " + join(result.violations, "; "));
  }
  *this = std::move(*result.diagram);
}

int BratteliDiagram::vertex_index(int level, const std::string& label) const {
  const auto& labels = vertex_levels_[level];
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] == label) return i;
  }
  return -1;
}

int BratteliDiagram::edge_index(int n, const std::string& label) const {
  const auto& level = edge_levels_[n - 1];
  for (int i = 0; i < static_cast<int>(level.size()); ++i) {
    if (level[i].label == label) return i;
  }
  return -1;
}

ValidationResult validate_diagram(std::vector<std::vector<std::string>> vertex_levels,
                                  std::vector<std::vector<BratteliEdge>> edge_levels) {
  ValidationResult result;
  auto fail = [&result](const std::string& msg) { result.violations.push_back(msg); };

  if (vertex_levels.empty()) {
    fail("no vertex levels");
    return result;
  }
  if (vertex_levels[0].size() != 1) fail("level 0 must hold exactly one root vertex");
  if (vertex_levels.size() != edge_levels.size() + 1) {
    fail("need one vertex level more than edge levels");
    return result;
  }
  for (std::size_t n = 0; n < vertex_levels.size(); ++n) {
    if (vertex_levels[n].empty()) fail("empty vertex level " + std::to_string(n));
    std::set<std::string> seen;
    for (const auto& v : vertex_levels[n]) {
      if (!seen.insert(v).second) fail("duplicate vertex label '" + v + "' at level " + std::to_string(n));
    }
  }
  sort_edges_by_label(edge_levels);
  for (std::size_t k = 0; k < edge_levels.size(); ++k) {
    int n = static_cast<int>(k) + 1;
    if (edge_levels[k].empty()) fail("empty edge level " + std::to_string(n));
    std::set<std::string> seen;
    int src_count = static_cast<int>(vertex_levels[k].size());
    int dst_count = static_cast<int>(vertex_levels[k + 1].size());
    std::vector<bool> has_out(src_count, false), has_in(dst_count, false);
    for (const auto& e : edge_levels[k]) {
      if (!seen.insert(e.label).second) {
        fail("duplicate edge label '" + e.label + "' at level " + std::to_string(n));
      }
      if (e.source < 0 || e.source >= src_count) {
        fail("edge '" + e.label + "' has out-of-range source");
        continue;
      }
      if (e.target < 0 || e.target >= dst_count) {
        fail("edge '" + e.label + "' has out-of-range target");
        continue;
      }
      has_out[e.source] = true;
      has_in[e.target] = true;
    }
    for (int v = 0; v < src_count; ++v) {
      if (!has_out[v]) {
        fail("dead vertex: '" + vertex_levels[k][v] + "' at level " + std::to_string(n - 1) +
             " emits no edge");
      }
    }
    for (int v = 0; v < dst_count; ++v) {
      if (!has_in[v]) {
        fail("dead vertex: '" + vertex_levels[k + 1][v] + "' at level " + std::to_string(n) +
             " receives no edge");
      }
    }
  }
  if (!result.violations.empty()) return result;

  BratteliDiagram d;
  d.vertex_levels_ = std::move(vertex_levels);
  d.edge_levels_ = std::move(edge_levels);
  d.out_edges_.resize(d.vertex_levels_.size() - 1);
  d.in_edges_.resize(d.edge_levels_.size());
  for (std::size_t k = 0; k < d.edge_levels_.size(); ++k) {
    d.out_edges_[k].assign(d.vertex_levels_[k].size(), {});
    d.in_edges_[k].assign(d.vertex_levels_[k + 1].size(), {});
    for (int e = 0; e < static_cast<int>(d.edge_levels_[k].size()); ++e) {
      d.out_edges_[k][d.edge_levels_[k][e].source].push_back(e);
      d.in_edges_[k][d.edge_levels_[k][e].target].push_back(e);
    }
  }
  result.diagram = std::move(d);
  return result;
}

bool path_is_valid(const BratteliDiagram& d, const FinitePath& p) {
  if (p.start < 0 || p.end_level() > d.depth()) return false;
  int at = -1;
  for (int k = 0; k < p.length(); ++k) {
    int n = p.start + k + 1;
    if (p.edges[k] < 0 || p.edges[k] >= d.num_edges(n)) return false;
    const auto& e = d.edge(n, p.edges[k]);
    if (k > 0 && e.source != at) return false;
    at = e.target;
  }
  return true;
}

int path_source(const BratteliDiagram& d, const FinitePath& p) {
  if (p.edges.empty()) throw std::invalid_argument("empty path has no source edge");
  return d.edge(p.start + 1, p.edges.front()).source;
}

int path_target(const BratteliDiagram& d, const FinitePath& p) {
  if (p.edges.empty()) throw std::invalid_argument("empty path has no target edge");
  return d.edge(p.end_level(), p.edges.back()).target;
}

std::vector<std::string> path_labels(const BratteliDiagram& d, const FinitePath& p) {
  std::vector<std::string> out;
  out.reserve(p.edges.size());
  for (int k = 0; k < p.length(); ++k) out.push_back(d.edge(p.start + k + 1, p.edges[k]).label);
  return out;
}

FinitePath path_from_labels(const BratteliDiagram& d, int start,
                            const std::vector<std::string>& labels) {
  FinitePath p{start, {}};
  p.edges.reserve(labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    int n = start + static_cast<int>(k) + 1;
    if (n > d.depth()) throw std::invalid_argument("path runs past diagram depth");
    int e = d.edge_index(n, labels[k]);
    if (e < 0) throw std::invalid_argument("unknown edge label '" + labels[k] + "'");
    p.edges.push_back(e);
  }
  if (!path_is_valid(d, p)) throw std::invalid_argument("labels do not form a composable path");
  return p;
}

bool path_extends(const FinitePath& p, const FinitePath& prefix) {
  if (p.start != prefix.start || p.length() < prefix.length()) return false;
  return std::equal(prefix.edges.begin(), prefix.edges.end(), p.edges.begin());
}

FinitePath path_concat(const FinitePath& p, const FinitePath& tail) {
  if (tail.start != p.end_level()) throw std::invalid_argument("path concat level mismatch");
  FinitePath out = p;
  out.edges.insert(out.edges.end(), tail.edges.begin(), tail.edges.end());
  return out;
}

FinitePath path_slice(const FinitePath& p, int from_level, int to_level) {
  if (from_level < p.start || to_level > p.end_level() || from_level > to_level) {
    throw std::invalid_argument("path slice out of range");
  }
  FinitePath out{from_level, {}};
  out.edges.assign(p.edges.begin() + (from_level - p.start), p.edges.begin() + (to_level - p.start));
  return out;
}

IncidenceMatrix incidence_matrix(const BratteliDiagram& d, int n) {
  if (n < 1 || n > d.depth()) throw std::invalid_argument("incidence level out of range");
  IncidenceMatrix m;
  m.level = n;
  m.entries.assign(d.num_vertices(n - 1), std::vector<Int>(d.num_vertices(n), 0));
  for (const auto& e : d.edges(n)) m.entries[e.source][e.target] += 1;
  return m;
}

std::vector<std::vector<Int>> path_count_matrix(const BratteliDiagram& d, int m, int n) {
  if (m < 0 || n > d.depth() || m >= n) throw std::invalid_argument("path count range invalid");
  std::vector<std::vector<Int>> acc = incidence_matrix(d, m + 1).entries;
  for (int k = m + 2; k <= n; ++k) {
    auto next = incidence_matrix(d, k).entries;
    std::vector<std::vector<Int>> prod(acc.size(), std::vector<Int>(next[0].size(), 0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::size_t j = 0; j < next.size(); ++j) {
        if (acc[i][j] == 0) continue;
        for (std::size_t l = 0; l < next[j].size(); ++l) prod[i][l] += acc[i][j] * next[j][l];
      }
    }
    acc = std::move(prod);
  }
  return acc;
}

std::vector<FinitePath> enumerate_paths(const BratteliDiagram& d, int m, int n) {
  if (m < 0 || n > d.depth() || m >= n) throw std::invalid_argument("path range invalid");
  std::vector<FinitePath> out;
  for (int v = 0; v < d.num_vertices(m); ++v) {
    auto from_v = enumerate_paths_from(d, m, n, v);
    out.insert(out.end(), from_v.begin(), from_v.end());
  }
  return out;
}

std::vector<FinitePath> enumerate_paths_from(const BratteliDiagram& d, int m, int n, int from) {
  if (m < 0 || n > d.depth() || m >= n) throw std::invalid_argument("path range invalid");
  std::vector<FinitePath> out;
  FinitePath cur{m, {}};
  // Canonical label order is the stored edge order.
  auto rec = [&](auto&& self, int level, int at) -> void {
    if (level == n) {
      out.push_back(cur);
      return;
    }
    for (int e : d.out_edges(level, at)) {
      cur.edges.push_back(e);
      self(self, level + 1, d.edge(level + 1, e).target);
      cur.edges.pop_back();
    }
  };
  rec(rec, m, from);
  return out;
}

std::vector<Cylinder> refine_cylinder(const BratteliDiagram& d, const Cylinder& c) {
  if (!path_is_valid(d, c.path) || c.path.start != 0 || c.path.edges.empty()) {
    throw std::invalid_argument("cylinder path must be a non-empty root path");
  }
  if (c.path.end_level() >= d.depth()) throw std::invalid_argument("cylinder at maximal depth");
  std::vector<Cylinder> out;
  int level = c.path.end_level();
  for (int e : d.out_edges(level, path_target(d, c.path))) {
    Cylinder child{c.path};
    child.path.edges.push_back(e);
    out.push_back(std::move(child));
  }
  return out;
}

BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<int>& cut_levels) {
  if (cut_levels.size() < 2 || cut_levels.front() != 0) {
    throw std::invalid_argument("cut levels must start at 0 and keep at least one edge level");
  }
  for (std::size_t i = 1; i < cut_levels.size(); ++i) {
    if (cut_levels[i] <= cut_levels[i - 1]) throw std::invalid_argument("cut levels must increase");
  }
  if (cut_levels.back() > d.depth()) throw std::invalid_argument("cut level past diagram depth");

  std::vector<std::vector<std::string>> vertex_levels;
  for (int cut : cut_levels) vertex_levels.push_back(d.vertex_labels(cut));

  std::vector<std::vector<BratteliEdge>> edge_levels;
  for (std::size_t k = 1; k < cut_levels.size(); ++k) {
    std::vector<BratteliEdge> level;
    for (const auto& p : enumerate_paths(d, cut_levels[k - 1], cut_levels[k])) {
      BratteliEdge e;
      e.label = join(path_labels(d, p), "~");
      e.source = path_source(d, p);
      e.target = path_target(d, p);
      level.push_back(std::move(e));
    }
    edge_levels.push_back(std::move(level));
  }
  return BratteliDiagram(std::move(vertex_levels), std::move(edge_levels));
}

BratteliDiagram symbol_split(const BratteliDiagram& d, int n, const std::string& vertex,
                             const std::vector<std::vector<std::string>>& parts) {
  if (n < 1 || n >= d.depth()) throw std::invalid_argument("split level must be internal");
  int v = d.vertex_index(n, vertex);
  if (v < 0) throw std::invalid_argument("unknown vertex '" + vertex + "'");
  if (parts.size() < 2) throw std::invalid_argument("split needs at least two parts");

  std::map<std::string, int> part_of;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].empty()) throw std::invalid_argument("empty split part");
    for (const auto& label : parts[k]) {
      int e = d.edge_index(n, label);
      if (e < 0 || d.edge(n, e).target != v) {
        throw std::invalid_argument("'" + label + "' is not an incoming edge of the split vertex");
      }
      if (!part_of.emplace(label, static_cast<int>(k)).second) {
        throw std::invalid_argument("edge '" + label + "' listed in two parts");
      }
    }
  }
  if (static_cast<int>(part_of.size()) != static_cast<int>(d.in_edges(n, v).size())) {
    throw std::invalid_argument("parts must partition all incoming edges");
  }

  std::vector<std::vector<std::string>> vertex_levels;
  for (int l = 0; l <= d.depth(); ++l) vertex_levels.push_back(d.vertex_labels(l));
  // Copies replace the split vertex; they are appended after the other labels.
  std::vector<std::string> new_level;
  std::vector<int> old_to_new(d.num_vertices(n), -1);
  for (int w = 0; w < d.num_vertices(n); ++w) {
    if (w == v) continue;
    old_to_new[w] = static_cast<int>(new_level.size());
    new_level.push_back(d.vertex_label(n, w));
  }
  int first_copy = static_cast<int>(new_level.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    new_level.push_back(vertex + "#" + std::to_string(k + 1));
  }
  vertex_levels[n] = new_level;

  std::vector<std::vector<BratteliEdge>> edge_levels;
  for (int l = 1; l <= d.depth(); ++l) edge_levels.push_back(d.edges(l));
  for (auto& e : edge_levels[n - 1]) {
    if (e.target == v) {
      e.target = first_copy + part_of.at(e.label);
    } else {
      e.target = old_to_new[e.target];
    }
  }
  std::vector<BratteliEdge> outgoing;
  for (const auto& e : edge_levels[n]) {
    if (e.source == v) {
      for (std::size_t k = 0; k < parts.size(); ++k) {
        BratteliEdge copy = e;
        copy.label = e.label + "#" + std::to_string(k + 1);
        copy.source = first_copy + static_cast<int>(k);
        outgoing.push_back(std::move(copy));
      }
    } else {
      BratteliEdge keep = e;
      keep.source = old_to_new[e.source];
      outgoing.push_back(std::move(keep));
    }
  }
  edge_levels[n] = std::move(outgoing);
  return BratteliDiagram(std::move(vertex_levels), std::move(edge_levels));
}

bool check_simplicity(const BratteliDiagram& d, int window) {
  // A window must fit past the root: root-sourced counts are positive even
  // on disconnected diagrams and certify nothing.
  if (window < 1 || window > d.depth() - 1) return false;
  for (int k = 0; k + window <= d.depth(); ++k) {
    auto counts = path_count_matrix(d, k, k + window);
    for (const auto& row : counts) {
      for (const auto& c : row) {
        if (c == 0) return false;
      }
    }
  }
  return true;
}

}  // namespace cgk
