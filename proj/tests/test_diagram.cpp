#include <doctest.h>

#include <algorithm>
#include <set>

#include "cgk/diagram.hpp"
#include "cgk/fixtures.hpp"

using namespace cgk;

namespace {

BratteliDiagram two_disconnected_chains(int depth) {
  // Root feeds both chains; afterwards the chains never interact.
  std::vector<std::vector<std::string>> vertices{{"v0"}};
  std::vector<std::vector<BratteliEdge>> edges;
  for (int n = 1; n <= depth; ++n) {
    vertices.push_back({"x" + std::to_string(n), "y" + std::to_string(n)});
    std::vector<BratteliEdge> level;
    if (n == 1) {
      level.push_back({"e1x", 0, 0});
      level.push_back({"e1y", 0, 1});
    } else {
      level.push_back({"e" + std::to_string(n) + "x", 0, 0});
      level.push_back({"e" + std::to_string(n) + "y", 1, 1});
    }
    edges.push_back(std::move(level));
  }
  return BratteliDiagram(std::move(vertices), std::move(edges));
}

}  // namespace

TEST_CASE("validate: minimal loop diagram is valid") {
  auto d = fixtures::single_loop(4);
  CHECK(d.depth() == 4);
  for (int n = 1; n <= 4; ++n) CHECK(d.num_edges(n) == 1);
}

TEST_CASE("validate: dead vertex is rejected") {
  std::vector<std::vector<std::string>> vertices{{"v0"}, {"a1"}, {"a2", "dead"}};
  std::vector<std::vector<BratteliEdge>> edges{
      {{"e1", 0, 0}},
      {{"e2", 0, 0}},
  };
  auto result = validate_diagram(vertices, edges);
  CHECK(!result.ok());
  bool mentions_dead = false;
  for (const auto& v : result.violations) {
    if (v.find("dead") != std::string::npos) mentions_dead = true;
  }
  CHECK(mentions_dead);
}

TEST_CASE("validate: duplicate edge labels rejected") {
  std::vector<std::vector<std::string>> vertices{{"v0"}, {"a1"}};
  std::vector<std::vector<BratteliEdge>> edges{{{"e", 0, 0}, {"e", 0, 0}}};
  auto result = validate_diagram(vertices, edges);
  CHECK(!result.ok());
}

TEST_CASE("incidence: fib and host3 fixtures") {
  auto fib = fixtures::fib(6);
  auto m2 = incidence_matrix(fib, 2);
  CHECK(m2.entries == std::vector<std::vector<Int>>{{1, 1}, {1, 0}});
  auto loop = fixtures::single_loop(3);
  CHECK(incidence_matrix(loop, 2).entries == std::vector<std::vector<Int>>{{1}});
  auto host = fixtures::host3(4);
  CHECK(incidence_matrix(host, 2).entries == std::vector<std::vector<Int>>{{3, 3}, {3, 3}});
}

TEST_CASE("enumerate_paths counts match incidence products") {
  auto fib = fixtures::fib(6);
  auto host = fixtures::host3(4);
  for (const auto* d : {&fib, &host}) {
    for (int m = 0; m < 3; ++m) {
      for (int n = m + 1; n <= std::min(4, d->depth()); ++n) {
        auto paths = enumerate_paths(*d, m, n);
        auto counts = path_count_matrix(*d, m, n);
        Int total = 0;
        for (const auto& row : counts) {
          for (const auto& c : row) total += c;
        }
        CHECK(Int(paths.size()) == total);
        for (const auto& p : paths) CHECK(path_is_valid(*d, p));
        std::set<FinitePath> unique(paths.begin(), paths.end());
        CHECK(unique.size() == paths.size());
      }
    }
  }
}

TEST_CASE("fib path counts grow like Fibonacci") {
  auto fib = fixtures::fib(6);
  auto paths = enumerate_paths(fib, 0, 5);
  int to_a = 0;
  for (const auto& p : paths) {
    if (path_target(fib, p) == 0) ++to_a;
  }
  CHECK(to_a == 8);
}

TEST_CASE("host3 level-2 paths split evenly") {
  auto host = fixtures::host3(3);
  auto paths = enumerate_paths(host, 0, 2);
  CHECK(paths.size() == 36);
  int to_u = 0;
  for (const auto& p : paths) {
    if (path_target(host, p) == 0) ++to_u;
  }
  CHECK(to_u == 18);
}

TEST_CASE("refine_cylinder partitions the parent cylinder") {
  auto fib = fixtures::fib(4);
  // Path ending at b at level 1: only one edge leaves b.
  Cylinder ending_at_b{path_from_labels(fib, 0, {"e1_rb"})};
  auto children = refine_cylinder(fib, ending_at_b);
  CHECK(children.size() == 1);

  auto host = fixtures::host3(4);
  Cylinder c{FinitePath{0, {0}}};
  CHECK(refine_cylinder(host, c).size() == 6);

  auto loop = fixtures::single_loop(4);
  CHECK(refine_cylinder(loop, Cylinder{FinitePath{0, {0}}}).size() == 1);

  // Exhaustive partition check at depth 3: children of all depth-2 cylinders
  // exactly cover depth-3 paths.
  std::set<FinitePath> covered;
  for (const auto& p : enumerate_paths(host, 0, 2)) {
    for (const auto& child : refine_cylinder(host, Cylinder{p})) {
      CHECK(covered.insert(child.path).second);
    }
  }
  CHECK(covered.size() == enumerate_paths(host, 0, 3).size());
}

TEST_CASE("telescope: identity and composed cuts") {
  auto fib = fixtures::fib(6);
  std::vector<int> all_levels;
  for (int k = 0; k <= fib.depth(); ++k) all_levels.push_back(k);
  auto same = telescope(fib, all_levels);
  CHECK(same.depth() == fib.depth());
  for (int n = 1; n <= fib.depth(); ++n) {
    CHECK(incidence_matrix(same, n).entries == incidence_matrix(fib, n).entries);
  }

  auto t = telescope(fib, {0, 2, 4});
  // Level 1 runs from the root; interior levels carry the squared incidence.
  CHECK(incidence_matrix(t, 1).entries == std::vector<std::vector<Int>>{{2, 1}});
  CHECK(incidence_matrix(t, 2).entries == std::vector<std::vector<Int>>{{2, 1}, {1, 1}});

  auto loop2 = fixtures::single_loop(4, 2);
  auto t2 = telescope(loop2, {0, 2});
  CHECK(incidence_matrix(t2, 1).entries == std::vector<std::vector<Int>>{{4}});

  // telescope then telescope equals telescoping with composed cuts.
  auto once = telescope(fib, {0, 2, 4, 6});
  auto twice = telescope(once, {0, 2, 3});
  auto direct = telescope(fib, {0, 4, 6});
  CHECK(twice.depth() == direct.depth());
  for (int n = 1; n <= twice.depth(); ++n) {
    CHECK(incidence_matrix(twice, n).entries == incidence_matrix(direct, n).entries);
  }

  CHECK_THROWS(telescope(fib, {0, 3, 2}));
}

TEST_CASE("symbol_split preserves path counts and rejects trivial partitions") {
  auto loop2 = fixtures::single_loop(3, 2);
  CHECK_THROWS(symbol_split(loop2, 1, "w1", {{"f1_00", "f1_01"}}));

  auto before = enumerate_paths(loop2, 0, 2).size();
  auto split = symbol_split(loop2, 1, "w1", {{"f1_00"}, {"f1_01"}});
  CHECK(split.num_vertices(1) == 2);
  CHECK(enumerate_paths(split, 0, 2).size() == before);

  auto fib = fixtures::fib(5);
  auto before_fib = enumerate_paths(fib, 0, 3).size();
  auto split_fib = symbol_split(fib, 2, "a2", {{"e2_aa"}, {"e2_ba"}});
  CHECK(enumerate_paths(split_fib, 0, 3).size() == before_fib);
  // Deeper counts survive as well.
  CHECK(enumerate_paths(split_fib, 0, 5).size() == enumerate_paths(fib, 0, 5).size());
}

TEST_CASE("check_simplicity windows") {
  CHECK(check_simplicity(fixtures::host3(4), 1));
  auto fib = fixtures::fib(6);
  CHECK(!check_simplicity(fib, 1));
  CHECK(check_simplicity(fib, 2));
  auto chains = two_disconnected_chains(4);
  for (int w = 1; w <= 4; ++w) CHECK(!check_simplicity(chains, w));
}
