#include "cgk/embedding.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cgk {

namespace {

std::string level_word(int n) { return "level " + std::to_string(n); }

/// Minimum over ordered vertex pairs of the edge count between them.
Int min_pair_edge_count(const BratteliDiagram& d, int n) {
  auto inc = incidence_matrix(d, n);
  Int best = -1;
  for (const auto& row : inc.entries) {
    for (const auto& c : row) {
      if (best < 0 || c < best) best = c;
    }
  }
  return best;
}

}  // namespace

EmbeddingReport verify_embedding(const BratteliDiagram& host, const BratteliDiagram& guest,
                                 const DiagramEmbedding& emb) {
  EmbeddingReport report;
  auto add = [&report](const std::string& cond, int level, bool pass, std::string detail = "") {
    report.checks.push_back({cond, level, pass, std::move(detail)});
  };

  bool shape_ok = guest.depth() <= host.depth() &&
                  static_cast<int>(emb.xi.size()) == guest.depth() + 1 &&
                  static_cast<int>(emb.xi0.size()) == guest.depth() &&
                  static_cast<int>(emb.xi1.size()) == guest.depth();
  add("shape", 0, shape_ok, shape_ok ? "" : "embedding arrays do not match guest depth");
  if (!shape_ok) return report;

  for (int level = 0; level <= guest.depth(); ++level) {
    const auto& xi = emb.xi[level];
    bool in_range = static_cast<int>(xi.size()) == guest.num_vertices(level);
    std::set<int> image;
    for (int v : xi) {
      in_range = in_range && v >= 0 && v < host.num_vertices(level);
      image.insert(v);
    }
    add("xi injective", level, in_range && image.size() == xi.size());
    if (level >= 1) {
      add("#V > #W", level, host.num_vertices(level) > guest.num_vertices(level),
          std::to_string(host.num_vertices(level)) + " vs " + std::to_string(guest.num_vertices(level)));
    }
  }
  for (int n = 1; n <= guest.depth(); ++n) {
    const auto& x0 = emb.xi0[n - 1];
    const auto& x1 = emb.xi1[n - 1];
    bool sized = static_cast<int>(x0.size()) == guest.num_edges(n) &&
                 static_cast<int>(x1.size()) == guest.num_edges(n);
    add("edge maps sized", n, sized);
    if (!sized) continue;

    std::set<int> image0(x0.begin(), x0.end()), image1(x1.begin(), x1.end());
    add("xi0 injective", n, image0.size() == x0.size());
    add("xi1 injective", n, image1.size() == x1.size());
    std::vector<int> both;
    std::set_intersection(image0.begin(), image0.end(), image1.begin(), image1.end(),
                          std::back_inserter(both));
    add("disjoint images", n, both.empty());

    bool compat = true;
    for (int f = 0; f < guest.num_edges(n); ++f) {
      for (int j = 0; j < 2; ++j) {
        int e = j == 0 ? x0[f] : x1[f];
        if (e < 0 || e >= host.num_edges(n)) {
          compat = false;
          continue;
        }
        const auto& he = host.edge(n, e);
        const auto& ge = guest.edge(n, f);
        if (he.source != emb.xi[n - 1][ge.source] || he.target != emb.xi[n][ge.target]) {
          compat = false;
        }
      }
    }
    add("compatibility i,t", n, compat);

    Int min_edges = min_pair_edge_count(host, n);
    add("edges > 2#F", n, min_edges > 2 * guest.num_edges(n),
        "min " + min_edges.str() + " vs 2#F = " + std::to_string(2 * guest.num_edges(n)));
  }
  return report;
}

DiagramEmbedding auto_embed(const BratteliDiagram& host, const BratteliDiagram& guest) {
  if (guest.depth() > host.depth()) throw std::invalid_argument("guest deeper than host");
  DiagramEmbedding emb;
  emb.xi.resize(guest.depth() + 1);
  emb.xi0.resize(guest.depth());
  emb.xi1.resize(guest.depth());

  emb.xi[0] = {0};
  for (int level = 1; level <= guest.depth(); ++level) {
    if (host.num_vertices(level) <= guest.num_vertices(level)) {
      throw std::invalid_argument("size condition #V > #W fails at " + level_word(level));
    }
    // Vertices are kept in label order, so first-fit is index order.
    emb.xi[level].resize(guest.num_vertices(level));
    for (int w = 0; w < guest.num_vertices(level); ++w) emb.xi[level][w] = w;
  }
  for (int n = 1; n <= guest.depth(); ++n) {
    emb.xi0[n - 1].assign(guest.num_edges(n), -1);
    emb.xi1[n - 1].assign(guest.num_edges(n), -1);
    std::map<std::pair<int, int>, std::vector<int>> host_pool;
    for (int e = 0; e < host.num_edges(n); ++e) {
      const auto& he = host.edge(n, e);
      host_pool[{he.source, he.target}].push_back(e);
    }
    std::map<std::pair<int, int>, std::size_t> used;
    auto take = [&](int f) {
      const auto& ge = guest.edge(n, f);
      std::pair<int, int> key{emb.xi[n - 1][ge.source], emb.xi[n][ge.target]};
      auto& pool = host_pool[key];
      auto& next = used[key];
      if (next >= pool.size()) {
        throw std::invalid_argument("not enough host edges between images at " + level_word(n));
      }
      return pool[next++];
    };
    for (int f = 0; f < guest.num_edges(n); ++f) emb.xi0[n - 1][f] = take(f);
    for (int f = 0; f < guest.num_edges(n); ++f) emb.xi1[n - 1][f] = take(f);
    if (min_pair_edge_count(host, n) <= 2 * guest.num_edges(n)) {
      throw std::invalid_argument("size condition edges > 2#F fails at " + level_word(n));
    }
  }
  return emb;
}

PreparedHost prepare_host(const BratteliDiagram& host, const BratteliDiagram& guest) {
  bool simple = false;
  for (int w = 1; w < host.depth() && !simple; ++w) simple = check_simplicity(host, w);
  if (!simple) throw std::invalid_argument("host diagram is not simple over any window");

  PreparedHost out;
  // Telescoping never adds vertices, so plan the needed splits first and
  // demand enough edge headroom for them: each split can halve the per-pair
  // incoming counts at its level.
  std::vector<int> splits_needed(guest.depth() + 1, 0);
  std::vector<int> cuts{0};
  for (int n = 1; n <= guest.depth(); ++n) {
    Int need = 2 * guest.num_edges(n);
    int from = cuts.back();
    int to = from + 1;
    for (; to <= host.depth(); ++to) {
      int deficit = guest.num_vertices(n) + 1 - host.num_vertices(to);
      int splits = std::max(0, deficit);
      Int target = (need + 2) * pow_int(2, static_cast<unsigned>(splits)) - 1;
      auto counts = path_count_matrix(host, from, to);
      Int min_count = -1;
      for (const auto& row : counts) {
        for (const auto& c : row) {
          if (min_count < 0 || c < min_count) min_count = c;
        }
      }
      if (min_count >= target && min_count >= 2) {
        splits_needed[n] = splits;
        break;
      }
    }
    if (to > host.depth()) {
      throw std::invalid_argument("host too shallow to reach the edge count needed at guest " +
                                  level_word(n));
    }
    cuts.push_back(to);
    out.trace.push_back("cut at host level " + std::to_string(to) + " for guest " + level_word(n));
  }
  // Keep one buffer level past the guest so the last guest level can still be
  // split (splitting duplicates outgoing edges).
  if (cuts.back() < host.depth()) {
    cuts.push_back(host.depth());
    out.trace.push_back("buffer cut at host level " + std::to_string(host.depth()));
  }
  BratteliDiagram prepared = telescope(host, cuts);
  out.trace.insert(out.trace.begin(), "telescope to cuts " + [&cuts] {
    std::string s;
    for (int c : cuts) s += (s.empty() ? "" : ",") + std::to_string(c);
    return s;
  }());

  for (int level = 1; level <= guest.depth(); ++level) {
    for (int s = 0; s < splits_needed[level]; ++s) {
      if (level >= prepared.depth()) {
        throw std::invalid_argument("cannot split the terminal level to gain vertices");
      }
      // Split the vertex with the most incoming edges, distributing each
      // predecessor's edges round-robin so per-pair counts stay balanced.
      int best_v = -1;
      std::size_t best_in = 0;
      for (int v = 0; v < prepared.num_vertices(level); ++v) {
        if (prepared.in_edges(level, v).size() > best_in) {
          best_in = prepared.in_edges(level, v).size();
          best_v = v;
        }
      }
      if (best_in < 2) throw std::invalid_argument("no vertex with enough incoming edges to split");
      std::vector<std::vector<std::string>> parts(2);
      for (int u = 0; u < prepared.num_vertices(level - 1); ++u) {
        int k = 0;
        for (int e : prepared.in_edges(level, best_v)) {
          if (prepared.edge(level, e).source != u) continue;
          parts[k++ % 2].push_back(prepared.edge(level, e).label);
        }
      }
      std::string name = prepared.vertex_label(level, best_v);
      prepared = symbol_split(prepared, level, name, parts);
      out.trace.push_back("split vertex '" + name + "' at " + level_word(level));
    }
  }
  // Confirm the conditions auto_embed relies on.
  for (int n = 1; n <= guest.depth(); ++n) {
    if (prepared.num_vertices(n) <= guest.num_vertices(n)) {
      throw std::invalid_argument("prepared host still short of vertices at " + level_word(n));
    }
    if (min_pair_edge_count(prepared, n) <= 2 * guest.num_edges(n)) {
      throw std::invalid_argument("prepared host still short of edges at " + level_word(n));
    }
  }
  out.host = std::move(prepared);
  return out;
}

EmbeddedSystem make_system(BratteliDiagram host, BratteliDiagram guest, DiagramEmbedding emb) {
  auto report = verify_embedding(host, guest, emb);
  if (!report.ok()) {
    std::string why;
    for (const auto& c : report.checks) {
      if (!c.pass) why += (why.empty() ? "" : "; ") + c.condition + " at level " + std::to_string(c.level);
    }
    throw std::invalid_argument("embedding verification failed: " + why);
  }
  EmbeddedSystem sys;
  sys.host = std::move(host);
  sys.guest = std::move(guest);
  sys.emb = std::move(emb);

  sys.edge_image.resize(sys.guest.depth());
  for (int n = 1; n <= sys.guest.depth(); ++n) {
    sys.edge_image[n - 1].assign(sys.host.num_edges(n), {});
    for (int f = 0; f < sys.guest.num_edges(n); ++f) {
      sys.edge_image[n - 1][sys.emb.xi0[n - 1][f]] = {0, f};
      sys.edge_image[n - 1][sys.emb.xi1[n - 1][f]] = {1, f};
    }
  }
  sys.vertex_guest.resize(sys.guest.depth() + 1);
  for (int level = 0; level <= sys.guest.depth(); ++level) {
    sys.vertex_guest[level].assign(sys.host.num_vertices(level), -1);
    for (int w = 0; w < sys.guest.num_vertices(level); ++w) {
      sys.vertex_guest[level][sys.emb.xi[level][w]] = w;
    }
  }
  return sys;
}

}  // namespace cgk
