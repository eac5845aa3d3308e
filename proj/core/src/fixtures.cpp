#include "cgk/fixtures.hpp"

#include "cgk/embedding.hpp"

namespace cgk::fixtures {

namespace {

std::string pad(int v) {
  std::string s = std::to_string(v);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

BratteliDiagram single_loop(int depth, int k) {
  std::vector<std::vector<std::string>> vertices{{"v0"}};
  std::vector<std::vector<BratteliEdge>> edges;
  for (int n = 1; n <= depth; ++n) {
    vertices.push_back({"w" + std::to_string(n)});
    std::vector<BratteliEdge> level;
    for (int j = 0; j < k; ++j) {
      level.push_back({"f" + std::to_string(n) + "_" + pad(j), 0, 0});
    }
    edges.push_back(std::move(level));
  }
  return BratteliDiagram(std::move(vertices), std::move(edges));
}

BratteliDiagram fib(int depth) {
  std::vector<std::vector<std::string>> vertices{{"v0"}};
  std::vector<std::vector<BratteliEdge>> edges;
  for (int n = 1; n <= depth; ++n) {
    vertices.push_back({"a" + std::to_string(n), "b" + std::to_string(n)});
    std::vector<BratteliEdge> level;
    std::string tag = std::to_string(n);
    if (n == 1) {
      level.push_back({"e" + tag + "_ra", 0, 0});
      level.push_back({"e" + tag + "_rb", 0, 1});
    } else {
      level.push_back({"e" + tag + "_aa", 0, 0});
      level.push_back({"e" + tag + "_ab", 0, 1});
      level.push_back({"e" + tag + "_ba", 1, 0});
    }
    edges.push_back(std::move(level));
  }
  return BratteliDiagram(std::move(vertices), std::move(edges));
}

BratteliDiagram host_uniform(int depth, int k) {
  std::vector<std::vector<std::string>> vertices{{"v0"}};
  std::vector<std::vector<BratteliEdge>> edges;
  for (int n = 1; n <= depth; ++n) {
    vertices.push_back({"u" + std::to_string(n), "v" + std::to_string(n)});
    std::vector<BratteliEdge> level;
    std::string tag = std::to_string(n);
    int sources = n == 1 ? 1 : 2;
    const char* names[2] = {"u", "v"};
    for (int s = 0; s < sources; ++s) {
      for (int t = 0; t < 2; ++t) {
        for (int j = 0; j < k; ++j) {
          std::string from = n == 1 ? "r" : names[s];
          level.push_back({"e" + tag + "_" + from + names[t] + pad(j), s, t});
        }
      }
    }
    edges.push_back(std::move(level));
  }
  return BratteliDiagram(std::move(vertices), std::move(edges));
}

EmbeddedSystem host3_guest_z(int depth) {
  auto host = host3(depth);
  auto guest = guest_z(depth);
  auto emb = auto_embed(host, guest);
  return make_system(std::move(host), std::move(guest), std::move(emb));
}

EmbeddedSystem host5_guest_dyadic(int depth) {
  auto host = host5(depth);
  auto guest = guest_dyadic(depth);
  auto emb = auto_embed(host, guest);
  return make_system(std::move(host), std::move(guest), std::move(emb));
}

}  // namespace cgk::fixtures
