#include "tagged_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgk::testing {

namespace {

void append_common_tails(const EmbeddedSystem& sys, const std::vector<int>& x,
                         const std::vector<int>& y, int level, int M, TaggedSet& out) {
  // Both sides end at the same vertex; extend by every common tail to M.
  int v = sys.host.edge(level, x.back()).target;
  for (const auto& w : enumerate_paths_from(sys.host, level, M, v)) {
    TaggedPair tp;
    tp.x = x;
    tp.y = y;
    tp.x.insert(tp.x.end(), w.edges.begin(), w.edges.end());
    tp.y.insert(tp.y.end(), w.edges.begin(), w.edges.end());
    tp.tag = TaggedPair::Tag::Id;
    out.push_back(std::move(tp));
  }
}

}  // namespace

TaggedSet truncate_basis(const EmbeddedSystem& sys, const BasisElement& g, int M) {
  TaggedSet out;
  if (g.is_empty()) return out;
  int n = g.level();
  if (g.kind == BasisElement::Kind::Beta) {
    if (M < n) throw std::invalid_argument("truncation depth below beta level");
    if (M == n) {
      out.push_back({g.p.edges, g.q.edges, TaggedPair::Tag::Id, 0, 0});
    } else {
      append_common_tails(sys, g.p.edges, g.q.edges, n, M, out);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  if (M < n + 1) throw std::invalid_argument("truncation depth below delta level + 1");
  int i = g.i;
  int w0 = sys.guest_vertex_at(n, path_target(sys.host, g.p));

  // Walk guest chains; at each block end emit the breaks, at depth M emit the
  // unbroken paired pair.
  struct Frame {
    std::vector<int> x, y;
    int level;
    int guest_vertex;
  };
  std::vector<Frame> stack{{g.p.edges, g.q.edges, n, w0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    for (int ge : sys.guest.out_edges(f.level, f.guest_vertex)) {
      Frame next = f;
      next.x.push_back(sys.xi_edge(i, f.level + 1, ge));
      next.y.push_back(sys.xi_edge(1 - i, f.level + 1, ge));
      next.level = f.level + 1;
      next.guest_vertex = sys.guest.edge(f.level + 1, ge).target;
      if (next.level == M) {
        out.push_back({next.x, next.y, TaggedPair::Tag::Paired, i, 0});
        continue;
      }
      int host_v = sys.emb.xi[next.level][next.guest_vertex];
      // Swap break: one opposite guest pair, then identical tails.
      for (int g2 : sys.guest.out_edges(next.level, next.guest_vertex)) {
        std::vector<int> bx = next.x, by = next.y;
        bx.push_back(sys.xi_edge(1 - i, next.level + 1, g2));
        by.push_back(sys.xi_edge(i, next.level + 1, g2));
        if (next.level + 1 == M) {
          out.push_back({bx, by, TaggedPair::Tag::Id, 0, 0});
        } else {
          append_common_tails(sys, bx, by, next.level + 1, M, out);
        }
      }
      // Neutral break: a shared non-image edge, then identical tails.
      for (int e : sys.host.out_edges(next.level, host_v)) {
        if (sys.image_of(next.level + 1, e).type >= 0) continue;
        std::vector<int> bx = next.x, by = next.y;
        bx.push_back(e);
        by.push_back(e);
        if (next.level + 1 == M) {
          out.push_back({bx, by, TaggedPair::Tag::Id, 0, 0});
        } else {
          append_common_tails(sys, bx, by, next.level + 1, M, out);
        }
      }
      stack.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TaggedSet truncate_symbol(const EmbeddedSystem& sys, const Symbol& s, int M) {
  if (s.kind == Symbol::Kind::B) {
    BasisElement g;
    g.kind = BasisElement::Kind::Beta;
    g.p = s.p;
    g.q = s.q;
    return truncate_basis(sys, g, M);
  }
  if (s.kind == Symbol::Kind::D) {
    BasisElement g;
    g.kind = BasisElement::Kind::Delta;
    g.i = s.i;
    g.p = s.p;
    g.q = s.q;
    return truncate_basis(sys, g, M);
  }
  int n = s.level();
  if (M < n) throw std::invalid_argument("truncation depth below symbol level");
  TaggedSet out;
  int w = sys.guest_vertex_at(n, path_target(sys.host, s.p));
  if (M == n) {
    out.push_back({s.p.edges, s.q.edges, TaggedPair::Tag::Pure, s.i, s.j});
    return out;
  }
  for (const auto& chain : enumerate_paths_from(sys.guest, n, M, w)) {
    TaggedPair tp;
    tp.x = s.p.edges;
    tp.y = s.q.edges;
    for (int k = 0; k < chain.length(); ++k) {
      tp.x.push_back(sys.xi_edge(s.i, n + 1 + k, chain.edges[k]));
      tp.y.push_back(sys.xi_edge(s.j, n + 1 + k, chain.edges[k]));
    }
    tp.tag = TaggedPair::Tag::Pure;
    tp.i = s.i;
    tp.j = s.j;
    out.push_back(std::move(tp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TaggedSet model_of_symbols(const EmbeddedSystem& sys, const std::vector<Symbol>& symbols, int M) {
  TaggedSet out;
  for (const auto& s : symbols) {
    auto part = truncate_symbol(sys, s, M);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (out[k - 1] == out[k]) throw std::runtime_error("model: duplicate tagged pair in union");
  }
  return out;
}

TaggedSet model_of_list(const EmbeddedSystem& sys, const std::vector<BasisElement>& list, int M) {
  TaggedSet out;
  for (const auto& g : list) {
    auto part = truncate_basis(sys, g, M);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (out[k - 1] == out[k]) throw std::runtime_error("model: duplicate tagged pair in union");
    if (out[k - 1].x == out[k].x && out[k - 1].y == out[k].y) {
      throw std::runtime_error("model: conflicting tags on one prefix pair");
    }
  }
  return out;
}

TaggedSet compose_tagged(const EmbeddedSystem& sys, const TaggedSet& a, const TaggedSet& b) {
  (void)sys;
  // Join on the middle prefix.
  TaggedSet sorted_b = b;
  std::sort(sorted_b.begin(), sorted_b.end(),
            [](const TaggedPair& l, const TaggedPair& r) { return l.x < r.x; });
  TaggedSet out;
  for (const auto& ta : a) {
    auto lo = std::lower_bound(sorted_b.begin(), sorted_b.end(), ta.y,
                               [](const TaggedPair& t, const std::vector<int>& v) { return t.x < v; });
    for (auto it = lo; it != sorted_b.end() && it->x == ta.y; ++it) {
      const auto& tb = *it;
      TaggedPair tp;
      tp.x = ta.x;
      tp.y = tb.y;
      using T = TaggedPair::Tag;
      if (ta.tag == T::Id && tb.tag == T::Id) {
        tp.tag = T::Id;
      } else if (ta.tag == T::Id && tb.tag == T::Paired) {
        tp.tag = T::Paired;
        tp.i = tb.i;
      } else if (ta.tag == T::Paired && tb.tag == T::Id) {
        tp.tag = T::Paired;
        tp.i = ta.i;
      } else if (ta.tag == T::Paired && tb.tag == T::Paired) {
        if (tb.i != 1 - ta.i) throw std::runtime_error("model: same-orientation paired join");
        tp.tag = T::Id;
      } else if (ta.tag == T::Id && tb.tag == T::Pure) {
        tp.tag = T::Pure;
        tp.i = tb.i;
        tp.j = tb.j;
      } else if (ta.tag == T::Pure && tb.tag == T::Id) {
        tp.tag = T::Pure;
        tp.i = ta.i;
        tp.j = ta.j;
      } else if (ta.tag == T::Paired && tb.tag == T::Pure) {
        if (tb.i != 1 - ta.i) throw std::runtime_error("model: paired/pure copy mismatch");
        tp.tag = T::Pure;
        tp.i = ta.i;
        tp.j = tb.j;
      } else if (ta.tag == T::Pure && tb.tag == T::Paired) {
        if (tb.i != ta.j) throw std::runtime_error("model: pure/paired copy mismatch");
        tp.tag = T::Pure;
        tp.i = ta.i;
        tp.j = 1 - ta.j;
      } else {  // Pure . Pure
        if (tb.i != ta.j) throw std::runtime_error("model: pure/pure copy mismatch");
        tp.tag = T::Pure;
        tp.i = ta.i;
        tp.j = tb.j;
      }
      out.push_back(std::move(tp));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TaggedSet intersect_tagged(const EmbeddedSystem& sys, const TaggedSet& a, const TaggedSet& b) {
  (void)sys;
  TaggedSet out;
  auto ib = b.begin();
  for (const auto& ta : a) {
    while (ib != b.end() && *ib < ta) ++ib;
    if (ib != b.end() && *ib == ta) {
      out.push_back(ta);
      continue;
    }
    // A same-prefix pair with a different tag would denote a partial overlap
    // that no tagged set can express; it cannot arise from disjoint basis
    // families, so flag it.
    for (const auto& tb : b) {
      if (tb.x == ta.x && tb.y == ta.y && !(tb == ta)) {
        throw std::runtime_error("model: non-representable intersection");
      }
    }
  }
  return out;
}

TaggedSet invert_tagged(const TaggedSet& a) {
  TaggedSet out;
  out.reserve(a.size());
  for (const auto& t : a) {
    TaggedPair tp;
    tp.x = t.y;
    tp.y = t.x;
    tp.tag = t.tag;
    switch (t.tag) {
      case TaggedPair::Tag::Id:
        break;
      case TaggedPair::Tag::Paired:
        tp.i = 1 - t.i;
        break;
      case TaggedPair::Tag::Pure:
        tp.i = t.j;
        tp.j = t.i;
        break;
    }
    out.push_back(std::move(tp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

/// Scans whether (x, y) after level n follows the full delta pattern in
/// orientation i. Returns 0 for no match, 1 for unbroken to depth, 2 for a
/// legal break with equal tails.
int delta_pattern(const EmbeddedSystem& sys, int i, const std::vector<int>& x,
                  const std::vector<int>& y, int n) {
  int M = static_cast<int>(x.size());
  int k = n + 1;
  int block = 0;
  for (; k <= M; ++k) {
    auto ix = sys.image_of(k, x[k - 1]);
    auto iy = sys.image_of(k, y[k - 1]);
    if (ix.type == i && iy.type == 1 - i && ix.guest_edge == iy.guest_edge) {
      ++block;
      continue;
    }
    if (block == 0) return 0;
    bool swap_pair = ix.type == 1 - i && iy.type == i && ix.guest_edge == iy.guest_edge;
    bool neutral = ix.type < 0 && x[k - 1] == y[k - 1];
    if (!swap_pair && !neutral) return 0;
    for (int t = k + 1; t <= M; ++t) {
      if (x[t - 1] != y[t - 1]) return 0;
    }
    return 2;
  }
  return 1;
}

}  // namespace

bool tagged_pair_contained(const EmbeddedSystem& sys, const TaggedPair& tp,
                           const BasisElement& g) {
  if (g.is_empty()) return false;
  int n = g.level();
  int M = static_cast<int>(tp.x.size());
  if (M < n) return false;
  auto extends = [n](const std::vector<int>& full, const FinitePath& prefix) {
    return std::equal(prefix.edges.begin(), prefix.edges.end(), full.begin());
  };
  if (!extends(tp.x, g.p) || !extends(tp.y, g.q)) return false;
  if (g.kind == BasisElement::Kind::Beta) {
    if (tp.tag != TaggedPair::Tag::Id) return false;
    return std::equal(tp.x.begin() + n, tp.x.end(), tp.y.begin() + n);
  }
  if (tp.tag == TaggedPair::Tag::Pure) return false;
  int pattern = delta_pattern(sys, g.i, tp.x, tp.y, n);
  if (tp.tag == TaggedPair::Tag::Paired) return pattern == 1 && tp.i == g.i;
  // Identity tail: containment needs the break to be visible.
  return pattern == 2;
}

TaggedPair from_truncated(const TruncatedPair& tp) {
  TaggedPair out;
  out.x = tp.x.edges;
  out.y = tp.y.edges;
  out.tag = tp.tail == TruncatedPair::Tail::Identity ? TaggedPair::Tag::Id
                                                     : TaggedPair::Tag::Paired;
  out.i = tp.orientation;
  return out;
}

}  // namespace cgk::testing
