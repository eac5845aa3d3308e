#pragma once

#include <vector>

#include "cgk/diagram.hpp"
#include "cgk/embedding.hpp"
#include "cgk/rational.hpp"

namespace cgk {

/// Harmonic vertex weights: w(v0) = 1 and w(v) = sum of w(t(e)) over edges
/// leaving v. mu(U(p)) = w(t(p)) for root paths p.
struct LevelWeights {
  std::vector<std::vector<Rational>> w;  // [level][vertex]

  const Rational& at(int level, int v) const { return w[level][v]; }
  int levels() const { return static_cast<int>(w.size()); }
};

/// Solves for the invariant weights on levels 0..depth by propagating a
/// uniform terminal vector up from the deepest level and normalizing at the
/// root. Throws if the values on the requested levels have not stabilized
/// within tol when the terminal level moves, or if the diagram is not simple
/// over any window.
LevelWeights solve_invariant_measure(const BratteliDiagram& d, int depth, const Rational& tol);

/// Measure of a disjoint union of cylinders. Throws on overlap.
Rational clopen_measure(const BratteliDiagram& d, const LevelWeights& w,
                        const std::vector<Cylinder>& cylinders);

struct XiBound {
  Rational value;
  Rational bound;
  bool pass = false;
};

/// mu(xi^i(F_{0,n})) against 2^{-n}; the value is the same for i = 0, 1.
XiBound xi_cylinder_bound(const EmbeddedSystem& sys, const LevelWeights& w, int n,
                          const Rational& tol = Rational(0));

}  // namespace cgk
