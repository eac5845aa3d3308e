#pragma once

#include "cgk/diagram.hpp"

namespace cgk {

struct DiagramEmbedding;
struct EmbeddedSystem;

namespace fixtures {

/// One vertex per level, k parallel loop edges.
BratteliDiagram single_loop(int depth, int k = 1);

/// Two vertices a, b per level; incidence [[1,1],[1,0]]; single root edge to
/// each of a_1, b_1.
BratteliDiagram fib(int depth);

/// Two vertices u, v per level with k parallel edges between every ordered
/// pair (and k root edges to each level-1 vertex).
BratteliDiagram host_uniform(int depth, int k);
inline BratteliDiagram host3(int depth) { return host_uniform(depth, 3); }
inline BratteliDiagram host5(int depth) { return host_uniform(depth, 5); }

/// One vertex per level with k loop edges.
inline BratteliDiagram guest_z(int depth) { return single_loop(depth, 1); }
inline BratteliDiagram guest_dyadic(int depth) { return single_loop(depth, 2); }

/// host3 + guest_z with the canonical first-fit embedding.
EmbeddedSystem host3_guest_z(int depth);
/// host5 + guest_dyadic with the canonical first-fit embedding.
EmbeddedSystem host5_guest_dyadic(int depth);

}  // namespace fixtures
}  // namespace cgk
