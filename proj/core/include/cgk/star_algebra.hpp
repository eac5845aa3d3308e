#pragma once

#include <map>
#include <string>
#include <vector>

#include "cgk/embedding.hpp"
#include "cgk/groupoid.hpp"
#include "cgk/measure.hpp"
#include "cgk/rational.hpp"

namespace cgk {

/// Generator symbols of the dense *-algebra: b over pairs with a common
/// terminal, d over guest-terminated pairs (the two-copy swaps), and a over
/// guest-terminated pairs for the four pure-tail matrix-unit families
/// (a^{i,j} has its left leg on copy i and right leg on copy j).
struct Symbol {
  enum class Kind { B, D, A };
  Kind kind = Kind::B;
  int i = 0;  // D: source copy; A: left copy
  int j = 0;  // A: right copy
  FinitePath p, q;

  int level() const { return p.end_level(); }
  auto key() const { return std::tie(kind, i, j, p, q); }
  bool operator==(const Symbol& o) const { return key() == o.key(); }
  bool operator<(const Symbol& o) const { return key() < o.key(); }
};

Symbol sym_b(const EmbeddedSystem& sys, FinitePath p, FinitePath q);
Symbol sym_d(const EmbeddedSystem& sys, int i, FinitePath p, FinitePath q);
Symbol sym_a(const EmbeddedSystem& sys, int i, int j, FinitePath p, FinitePath q);

/// Finite rational combination of symbols; zero coefficients are dropped.
class FormalElement {
 public:
  FormalElement() = default;
  explicit FormalElement(const Symbol& s, const Rational& c = Rational(1)) {
    if (c != 0) terms_[s] = c;
  }

  const std::map<Symbol, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Symbol& s, const Rational& c);

  FormalElement& operator+=(const FormalElement& o);
  FormalElement& operator-=(const FormalElement& o);
  FormalElement operator+(const FormalElement& o) const;
  FormalElement operator-(const FormalElement& o) const;
  FormalElement operator*(const Rational& c) const;
  bool operator==(const FormalElement& o) const { return terms_ == o.terms_; }

 private:
  std::map<Symbol, Rational> terms_;
};

/// Convolution product, computed symbol by symbol through the groupoid
/// composition tables and the pure-tail matrix-unit rules.
FormalElement multiply(const EmbeddedSystem& sys, const FormalElement& f, const FormalElement& g);

/// *-involution: b and d swap legs, d flips copies, a transposes copies.
FormalElement adjoint(const FormalElement& f);

/// Rewrites one a-symbol at level m > its own as the sum over guest chains.
FormalElement a_refine(const EmbeddedSystem& sys, const Symbol& a, int m);

/// Rewrites all symbols to one level per kind (d's to the maximal d level,
/// then b's and a's); at uniform levels the families are independent, so this
/// is a normal form.
FormalElement normal_form(const EmbeddedSystem& sys, const FormalElement& f);

/// Exact zero test / equality via the normal form.
bool is_zero(const EmbeddedSystem& sys, const FormalElement& f);
bool equal(const EmbeddedSystem& sys, const FormalElement& f, const FormalElement& g);

/// Sum of all diagonal b's at one level; the algebra unit there.
FormalElement unit(const EmbeddedSystem& sys, int level);

/// True iff f is a rational combination of b-symbols expressible at level n.
bool bn_membership(const EmbeddedSystem& sys, const FormalElement& f, int n);

/// The projection summing b_{q,q} over the paths whose segment past n0 stays
/// inside one embedded guest copy.
FormalElement build_ebar(const EmbeddedSystem& sys, int l, int n0);
/// The Q^i_l index sets behind build_ebar.
std::vector<FinitePath> q_set(const EmbeddedSystem& sys, int i, int l, int n0);

struct TafGeneratorResult {
  Symbol generator;
  bool commutes = false;
  bool compressed_in_bl = false;
};

struct TafReport {
  int n0 = 0, l = 0;
  std::vector<TafGeneratorResult> generators;
  std::vector<Int> compressed_block_dims;  // per vertex of V_l
  bool all_commute() const;
  bool all_compressed_in_bl() const;
};

/// Commutation and compression checks of the corner projection against every
/// b and d generator at levels 1..n0, plus the compressed block dimensions.
TafReport taf_check(const EmbeddedSystem& sys, int n0, int l);

/// tau(f) under the given weights: only diagonal b's contribute.
Rational trace(const EmbeddedSystem& sys, const FormalElement& f, const LevelWeights& w);

struct TraceBound {
  Rational value;
  Rational bound;
  bool pass = false;
};

/// tau(ebar_l) against 2^{1+n0-l}.
TraceBound trace_bound_check(const EmbeddedSystem& sys, int l, int n0, const LevelWeights& w);

struct HAlgebraReport {
  bool k15_table_ok = false;
  int k15_products_checked = 0;
  bool e_m_projection = false;
  bool k18_b_commutation = false;   // b_{p,q} e_m = e_m b_{p,q}
  bool k18_b_in_span = false;       // that product lies in the a-span
  bool k18_decomposition = false;   // d e_m and e_m d are each a^{1,0} plus an a-span term
  bool k18_orthogonality = false;   // both corrections: c* a = 0 = a c*
  bool k18_d_commutes = false;      // whether d e_m = e_m d held (it fails on the
                                    // level-(m+1) correction pieces; reported, not required)
  bool saw_nonzero_c = false;
  std::string detail;
  bool ok() const {
    return k15_table_ok && e_m_projection && k18_b_commutation && k18_b_in_span &&
           k18_decomposition && k18_orthogonality;
  }
};

/// Verifies the d/a and b/a product table, and the approximate-identity
/// decomposition identities at levels (n, m), n < m: the b products commute
/// into the a-span, and each of d e_m, e_m d splits as a^{1,0} plus a
/// correction with orthogonal range and source.
HAlgebraReport h_algebra_identities(const EmbeddedSystem& sys, int n, int m);

struct VpReport {
  FormalElement v;
  bool projections_match = false;  // v*v = v v*
  bool dominated = false;          // v*v <= b_{p,p} (sum of its diagonal b's)
  bool unitary = false;            // (v + 1 - v*v)(v + 1 - v*v)* = 1
  bool ok() const { return projections_match && dominated && unitary; }
};

/// The partial isometry pairing the two guest copies over prefix p and the
/// unitary it generates under the path-space unit.
VpReport build_vp(const EmbeddedSystem& sys, const FinitePath& p);

/// Annihilation check for the corner projections in the left regular
/// representation at an alternating guest point: the basis vector of y is
/// killed by ebar_l once l > i0 + 2 (y agrees with x past i0).
bool repr_vanishing(const EmbeddedSystem& sys, const FinitePath& x, const FinitePath& y, int i0,
                    int n0, int l);

std::string to_string(const EmbeddedSystem& sys, const Symbol& s);
std::string to_string(const EmbeddedSystem& sys, const FormalElement& f);

}  // namespace cgk
