#pragma once

#include <string>
#include <vector>

#include "cgk/diagram.hpp"

namespace cgk {

/// Double embedding of a guest diagram (W, F) into a host (V, E): an
/// injective vertex map xi per level and two edge maps xi0, xi1 with
/// disjoint images, both compatible with sources and targets.
struct DiagramEmbedding {
  std::vector<std::vector<int>> xi;   // [level][guest vertex] -> host vertex, levels 0..depth
  std::vector<std::vector<int>> xi0;  // [n-1][guest edge] -> host edge
  std::vector<std::vector<int>> xi1;  // [n-1][guest edge] -> host edge
};

struct EmbeddingCheck {
  std::string condition;
  int level = 0;
  bool pass = false;
  std::string detail;
};

struct EmbeddingReport {
  std::vector<EmbeddingCheck> checks;
  bool ok() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

EmbeddingReport verify_embedding(const BratteliDiagram& host, const BratteliDiagram& guest,
                                 const DiagramEmbedding& emb);

/// Deterministic first-fit embedding in canonical label order. xi0 consumes
/// host edges first, then xi1. Throws if the size conditions fail.
DiagramEmbedding auto_embed(const BratteliDiagram& host, const BratteliDiagram& guest);

struct PreparedHost {
  BratteliDiagram host;
  std::vector<std::string> trace;
};

/// Telescopes (and if vertex counts are short, symbol-splits) the host until
/// #V_n > #W_n and every vertex pair at every level has more than 2 #F_n
/// edges, so auto_embed applies.
PreparedHost prepare_host(const BratteliDiagram& host, const BratteliDiagram& guest);

/// Host, guest and a verified embedding plus lookup caches; the context every
/// groupoid and algebra operation works in.
struct EmbeddedSystem {
  BratteliDiagram host;
  BratteliDiagram guest;
  DiagramEmbedding emb;

  // Per host level n (1-based): for each host edge, -1 if not a guest image,
  // else the guest edge index; and which of xi0/xi1 hit it.
  struct EdgeImage {
    signed char type = -1;  // -1 none, 0 via xi0, 1 via xi1
    int guest_edge = -1;
  };
  std::vector<std::vector<EdgeImage>> edge_image;     // [n-1][host edge]
  std::vector<std::vector<int>> vertex_guest;         // [level][host vertex] -> guest vertex or -1

  int depth() const { return host.depth(); }
  /// Levels past the guest depth carry no embedded structure.
  bool is_guest_vertex(int level, int v) const {
    return level < static_cast<int>(vertex_guest.size()) && vertex_guest[level][v] >= 0;
  }
  int guest_vertex_at(int level, int v) const {
    return level < static_cast<int>(vertex_guest.size()) ? vertex_guest[level][v] : -1;
  }
  EdgeImage image_of(int n, int e) const {
    return n <= static_cast<int>(edge_image.size()) ? edge_image[n - 1][e] : EdgeImage{};
  }
  /// Host edge xi^i(f) at level n.
  int xi_edge(int i, int n, int guest_edge) const {
    return i == 0 ? emb.xi0[n - 1][guest_edge] : emb.xi1[n - 1][guest_edge];
  }
};

/// Builds the lookup caches; throws if verify_embedding fails.
EmbeddedSystem make_system(BratteliDiagram host, BratteliDiagram guest, DiagramEmbedding emb);

}  // namespace cgk
