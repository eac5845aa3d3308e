#include "cgk/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgk {

namespace {

/// Weights on levels 0..top obtained from a uniform vector at `terminal`,
/// pushed up through the incidence and normalized so w(v0) = 1.
std::vector<std::vector<Rational>> backward_weights(const BratteliDiagram& d, int top,
                                                    int terminal) {
  std::vector<std::vector<Rational>> w(terminal + 1);
  w[terminal].assign(d.num_vertices(terminal), Rational(1));
  for (int n = terminal; n >= 1; --n) {
    w[n - 1].assign(d.num_vertices(n - 1), Rational(0));
    for (const auto& e : d.edges(n)) w[n - 1][e.source] += w[n][e.target];
  }
  Rational root = w[0][0];
  for (auto& level : w) {
    for (auto& x : level) x /= root;
  }
  w.resize(top + 1);
  return w;
}

}  // namespace

LevelWeights solve_invariant_measure(const BratteliDiagram& d, int depth, const Rational& tol) {
  if (depth < 0 || depth > d.depth()) throw std::invalid_argument("weight depth out of range");
  bool simple = false;
  for (int w = 1; w <= d.depth() && !simple; ++w) simple = check_simplicity(d, w);
  if (!simple) throw std::invalid_argument("diagram is not simple over any window");

  if (depth == d.depth()) {
    // No slack level to test stabilization against; only exact solutions of
    // the full-depth system qualify, which the uniform terminal gives.
    LevelWeights out;
    out.w = backward_weights(d, depth, d.depth());
    return out;
  }
  auto full = backward_weights(d, depth, d.depth());
  auto shifted = backward_weights(d, depth, d.depth() - 1);
  Rational defect(0);
  for (int level = 0; level <= depth; ++level) {
    for (int v = 0; v < d.num_vertices(level); ++v) {
      defect = std::max(defect, rational_abs(full[level][v] - shifted[level][v]));
    }
  }
  if (defect > tol) {
    throw std::runtime_error("invariant measure has not stabilized on the requested levels: "
                             "terminal-level sensitivity " + decimal_string(defect, 12) +
                             " exceeds tolerance; build the diagram deeper");
  }
  LevelWeights out;
  out.w = std::move(full);
  return out;
}

Rational clopen_measure(const BratteliDiagram& d, const LevelWeights& w,
                        const std::vector<Cylinder>& cylinders) {
  for (std::size_t i = 0; i < cylinders.size(); ++i) {
    const auto& p = cylinders[i].path;
    if (!path_is_valid(d, p) || p.start != 0 || p.edges.empty()) {
      throw std::invalid_argument("cylinder paths must be non-empty root paths");
    }
    if (p.end_level() >= w.levels()) throw std::invalid_argument("cylinder deeper than weights");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& q = cylinders[j].path;
      if (path_extends(p, q) || path_extends(q, p)) {
        throw std::invalid_argument("cylinders overlap");
      }
    }
  }
  Rational total(0);
  for (const auto& c : cylinders) total += w.at(c.path.end_level(), path_target(d, c.path));
  return total;
}

XiBound xi_cylinder_bound(const EmbeddedSystem& sys, const LevelWeights& w, int n,
                          const Rational& tol) {
  if (n < 0 || n > sys.guest.depth()) throw std::invalid_argument("xi bound level out of range");
  XiBound out;
  out.bound = pow2(-n);
  if (n == 0) {
    out.value = 1;
    out.pass = out.value <= out.bound + tol;
    return out;
  }
  if (n >= w.levels()) throw std::invalid_argument("weights too shallow for xi bound");
  // xi^0 and xi^1 share the vertex map, so both unions have the same measure.
  Rational value(0);
  for (const auto& g : enumerate_paths(sys.guest, 0, n)) {
    value += w.at(n, sys.emb.xi[n][path_target(sys.guest, g)]);
  }
  out.value = value;
  out.pass = out.value <= out.bound + tol;
  return out;
}

}  // namespace cgk
