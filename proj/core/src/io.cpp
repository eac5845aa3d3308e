#include "cgk/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cgk/util.hpp"

namespace cgk::io {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string diagram_to_json(const BratteliDiagram& d) {
  ordered_json j;
  j["levels"] = ordered_json::array();
  for (int level = 1; level <= d.depth(); ++level) {
    j["levels"].push_back({{"vertices", d.vertex_labels(level)}});
  }
  j["edges"] = ordered_json::array();
  for (int n = 1; n <= d.depth(); ++n) {
    ordered_json level = ordered_json::array();
    for (const auto& e : d.edges(n)) {
      level.push_back({{"label", e.label},
                       {"from", d.vertex_label(n - 1, e.source)},
                       {"to", d.vertex_label(n, e.target)}});
    }
    j["edges"].push_back(std::move(level));
  }
  return j.dump(2) + "\n";
}

ValidationResult diagram_from_json(const std::string& text) {
  ValidationResult bad;
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    bad.violations.push_back(std::string("JSON parse error: ") + e.what());
    return bad;
  }
  if (!j.contains("levels") || !j.contains("edges") || !j["levels"].is_array() ||
      !j["edges"].is_array()) {
    bad.violations.push_back("diagram file needs 'levels' and 'edges' arrays");
    return bad;
  }
  std::vector<std::vector<std::string>> vertex_levels{{"v0"}};
  for (const auto& level : j["levels"]) {
    if (!level.contains("vertices") || !level["vertices"].is_array()) {
      bad.violations.push_back("each level needs a 'vertices' array");
      return bad;
    }
    vertex_levels.push_back(level["vertices"].get<std::vector<std::string>>());
  }
  std::vector<std::vector<BratteliEdge>> edge_levels;
  for (std::size_t k = 0; k < j["edges"].size(); ++k) {
    std::vector<BratteliEdge> level;
    for (const auto& ej : j["edges"][k]) {
      if (!ej.contains("label") || !ej.contains("from") || !ej.contains("to")) {
        bad.violations.push_back("each edge needs label/from/to");
        return bad;
      }
      BratteliEdge e;
      e.label = ej["label"].get<std::string>();
      std::string from = ej["from"].get<std::string>();
      std::string to = ej["to"].get<std::string>();
      auto find = [&bad](const std::vector<std::string>& labels, const std::string& name,
                         std::size_t level_idx) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
          if (labels[i] == name) return static_cast<int>(i);
        }
        bad.violations.push_back("unknown vertex '" + name + "' referenced at level " +
                                 std::to_string(level_idx));
        return -1;
      };
      if (k + 1 >= vertex_levels.size()) {
        bad.violations.push_back("more edge levels than vertex levels");
        return bad;
      }
      e.source = find(vertex_levels[k], from, k);
      e.target = find(vertex_levels[k + 1], to, k + 1);
      if (e.source < 0 || e.target < 0) return bad;
      level.push_back(std::move(e));
    }
    edge_levels.push_back(std::move(level));
  }
  return validate_diagram(std::move(vertex_levels), std::move(edge_levels));
}

BratteliDiagram load_diagram(const std::string& path) {
  auto result = diagram_from_json(read_file(path));
  if (!result.ok()) {
    throw std::runtime_error("invalid diagram in " + path + ": " + join(result.violations, "; "));
  }
  return *result.diagram;
}

void save_diagram(const BratteliDiagram& d, const std::string& path) {
  write_file(path, diagram_to_json(d));
}

std::string embedding_to_json(const BratteliDiagram& host, const BratteliDiagram& guest,
                              const DiagramEmbedding& emb) {
  ordered_json j;
  j["levels"] = ordered_json::array();
  for (int level = 0; level <= guest.depth(); ++level) {
    ordered_json entry;
    entry["level"] = level;
    ordered_json xi = ordered_json::object();
    for (int w = 0; w < guest.num_vertices(level); ++w) {
      xi[guest.vertex_label(level, w)] = host.vertex_label(level, emb.xi[level][w]);
    }
    entry["xi"] = std::move(xi);
    ordered_json xi0 = ordered_json::object(), xi1 = ordered_json::object();
    if (level >= 1) {
      for (int f = 0; f < guest.num_edges(level); ++f) {
        xi0[guest.edge(level, f).label] = host.edge(level, emb.xi0[level - 1][f]).label;
        xi1[guest.edge(level, f).label] = host.edge(level, emb.xi1[level - 1][f]).label;
      }
    }
    entry["xi0"] = std::move(xi0);
    entry["xi1"] = std::move(xi1);
    j["levels"].push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

DiagramEmbedding embedding_from_json(const BratteliDiagram& host, const BratteliDiagram& guest,
                                     const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  DiagramEmbedding emb;
  emb.xi.assign(guest.depth() + 1, {});
  emb.xi0.assign(guest.depth(), {});
  emb.xi1.assign(guest.depth(), {});
  for (const auto& entry : j.at("levels")) {
    int level = entry.at("level").get<int>();
    if (level < 0 || level > guest.depth()) throw std::runtime_error("embedding level out of range");
    emb.xi[level].assign(guest.num_vertices(level), -1);
    for (const auto& [w, v] : entry.at("xi").items()) {
      int wi = guest.vertex_index(level, w);
      int vi = host.vertex_index(level, v.get<std::string>());
      if (wi < 0 || vi < 0) throw std::runtime_error("unknown vertex in embedding level " +
                                                     std::to_string(level));
      emb.xi[level][wi] = vi;
    }
    if (level >= 1) {
      emb.xi0[level - 1].assign(guest.num_edges(level), -1);
      emb.xi1[level - 1].assign(guest.num_edges(level), -1);
      for (int which = 0; which < 2; ++which) {
        const auto& map = entry.at(which == 0 ? "xi0" : "xi1");
        for (const auto& [f, e] : map.items()) {
          int fi = guest.edge_index(level, f);
          int ei = host.edge_index(level, e.get<std::string>());
          if (fi < 0 || ei < 0) throw std::runtime_error("unknown edge in embedding level " +
                                                         std::to_string(level));
          (which == 0 ? emb.xi0 : emb.xi1)[level - 1][fi] = ei;
        }
      }
    }
  }
  return emb;
}

DiagramEmbedding load_embedding(const BratteliDiagram& host, const BratteliDiagram& guest,
                                const std::string& path) {
  return embedding_from_json(host, guest, read_file(path));
}

void save_embedding(const BratteliDiagram& host, const BratteliDiagram& guest,
                    const DiagramEmbedding& emb, const std::string& path) {
  write_file(path, embedding_to_json(host, guest, emb));
}

std::string weights_to_json(const BratteliDiagram& d, const LevelWeights& w) {
  ordered_json j = ordered_json::object();
  for (int level = 0; level < w.levels(); ++level) {
    ordered_json entry = ordered_json::object();
    for (int v = 0; v < d.num_vertices(level); ++v) {
      entry[d.vertex_label(level, v)] = decimal_string(w.at(level, v));
    }
    j[std::to_string(level)] = std::move(entry);
  }
  return j.dump(2) + "\n";
}

std::string basis_element_to_json(const EmbeddedSystem& sys, const BasisElement& g) {
  ordered_json j;
  if (g.is_empty()) {
    j["kind"] = "empty";
    return j.dump() + "\n";
  }
  j["kind"] = g.kind == BasisElement::Kind::Beta ? "beta" : "delta";
  if (g.kind == BasisElement::Kind::Delta) j["i"] = g.i;
  j["p"] = path_labels(sys.host, g.p);
  j["q"] = path_labels(sys.host, g.q);
  return j.dump() + "\n";
}

BasisElement basis_element_from_json(const EmbeddedSystem& sys, const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "empty") return make_empty();
  auto p = path_from_labels(sys.host, 0, j.at("p").get<std::vector<std::string>>());
  auto q = path_from_labels(sys.host, 0, j.at("q").get<std::vector<std::string>>());
  if (kind == "beta") return make_beta(sys, std::move(p), std::move(q));
  if (kind == "delta") return make_delta(sys, j.at("i").get<int>(), std::move(p), std::move(q));
  throw std::runtime_error("unknown basis element kind '" + kind + "'");
}

}  // namespace cgk::io
