#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "partite/error.hpp"
#include "partite/fincat.hpp"

namespace partite {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

void require_target(const Diagram& d, CatKind kind, const char* what) {
  if (d.target.kind != kind) {
    throw Error(ErrorCode::TypeMismatch, std::string(what) + " needs a diagram over " +
                                             to_string(Category{kind, 0}) + ", got " + to_string(d.target));
  }
}

void require_functor(const Diagram& d) {
  const auto v = functor_violations(d);
  if (!v.empty()) throw Error(ErrorCode::TypeMismatch, "not a functor: " + v.front());
}

std::vector<std::size_t> offsets_of(const Diagram& d) {
  std::vector<std::size_t> off(d.objects.size() + 1, 0);
  for (std::size_t o = 0; o < d.objects.size(); ++o) off[o + 1] = off[o] + d.objects[o];
  return off;
}

bool same_diagram(const Diagram& a, const Diagram& b) {
  if (&a == &b) return true;
  return a.index == b.index && a.target == b.target && a.objects == b.objects && a.arrows == b.arrows;
}

// Constraint z_src = table(z_dst) in a Fin^op diagram (table stored F(dst) -> F(src)).
struct Link {
  std::size_t src;
  std::size_t dst;
  const FinMap* table;
};

std::vector<Link> links_of(const Diagram& d) {
  std::vector<Link> out;
  const IndexCategory& J = *d.index;
  for (std::size_t a = 0; a < J.arrow_count(); ++a) {
    if (J.is_identity(a)) continue;
    out.push_back({J.arrow(a).src, J.arrow(a).dst, &d.arrows[a]});
  }
  return out;
}

}  // namespace

Colimit colimit_fin(std::shared_ptr<const Diagram> dp, const Config& cfg) {
  const Diagram& d = *dp;
  require_target(d, CatKind::Fin, "colimit_fin");
  require_functor(d);
  const IndexCategory& J = *d.index;
  const auto off = offsets_of(d);
  const std::size_t total = off.back();
  if (total > cfg.maxProduct) throw Error(ErrorCode::BoundExceeded, "disjoint sum exceeds maxProduct");

  UnionFind uf(total);
  for (std::size_t a = 0; a < J.arrow_count(); ++a) {
    if (J.is_identity(a)) continue;
    const auto& arr = J.arrow(a);
    for (std::size_t s = 0; s < d.objects[arr.src]; ++s) {
      uf.unite(off[arr.src] + s, off[arr.dst] + d.arrows[a].table[s]);
    }
  }

  // Scanning in (object, element) order labels each class by its smallest member.
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label_of_root(total, unset);
  Colimit out;
  std::vector<std::size_t> label(total);
  for (std::size_t o = 0; o < d.objects.size(); ++o) {
    for (std::size_t s = 0; s < d.objects[o]; ++s) {
      const std::size_t root = uf.find(off[o] + s);
      if (label_of_root[root] == unset) {
        label_of_root[root] = out.classes.size();
        out.classes.emplace_back();
      }
      label[off[o] + s] = label_of_root[root];
      out.classes[label_of_root[root]].push_back({o, static_cast<Elem>(s)});
    }
  }
  const std::size_t apex = out.classes.size();
  if (apex > cfg.maxApex) throw Error(ErrorCode::BoundExceeded, "colimit apex exceeds maxApex");

  out.cocone.diagram = dp;
  out.cocone.apex = apex;
  out.cocone.legs.reserve(d.objects.size());
  for (std::size_t o = 0; o < d.objects.size(); ++o) {
    FinMap leg(d.objects[o], apex, std::vector<Elem>(d.objects[o]));
    for (std::size_t s = 0; s < d.objects[o]; ++s) leg.table[s] = static_cast<Elem>(label[off[o] + s]);
    out.cocone.legs.push_back(std::move(leg));
  }
  return out;
}

Colimit colimit_finop(std::shared_ptr<const Diagram> dp, const Config& cfg) {
  const Diagram& d = *dp;
  require_target(d, CatKind::FinOp, "colimit_finop");
  require_functor(d);
  const std::size_t n = d.objects.size();
  const auto links = links_of(d);

  std::vector<std::vector<std::size_t>> touching(n);
  for (std::size_t i = 0; i < links.size(); ++i) {
    touching[links[i].src].push_back(i);
    if (links[i].dst != links[i].src) touching[links[i].dst].push_back(i);
  }
  // Sinks of the index category first: their values force everything upstream.
  std::vector<std::size_t> static_order(n);
  std::iota(static_order.begin(), static_order.end(), 0);
  std::vector<bool> has_out(n, false);
  for (const auto& l : links) has_out[l.src] = true;
  std::stable_partition(static_order.begin(), static_order.end(), [&](std::size_t o) { return !has_out[o]; });

  constexpr std::int64_t unset = -1;
  std::vector<std::int64_t> value(n, unset);
  std::vector<std::vector<Elem>> found;
  std::uint64_t nodes = 0;

  const auto consistent = [&](std::size_t o) {
    for (std::size_t li : touching[o]) {
      const Link& l = links[li];
      if (value[l.src] == unset || value[l.dst] == unset) continue;
      if (l.table->table[static_cast<std::size_t>(value[l.dst])] != static_cast<Elem>(value[l.src])) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> search = [&](std::size_t assigned) {
    if (assigned == n) {
      std::vector<Elem> t(n);
      for (std::size_t o = 0; o < n; ++o) t[o] = static_cast<Elem>(value[o]);
      found.push_back(std::move(t));
      if (found.size() > cfg.maxApex) throw Error(ErrorCode::BoundExceeded, "limit apex exceeds maxApex");
      return;
    }
    // prefer an object whose value is forced by an assigned downstream object
    std::size_t pick = n;
    std::optional<Elem> forced;
    for (std::size_t o = 0; o < n && pick == n; ++o) {
      if (value[o] != unset) continue;
      for (std::size_t li : touching[o]) {
        const Link& l = links[li];
        if (l.src == o && value[l.dst] != unset) {
          pick = o;
          forced = l.table->table[static_cast<std::size_t>(value[l.dst])];
          break;
        }
      }
    }
    if (pick == n) {
      for (std::size_t o : static_order) {
        if (value[o] == unset) {
          pick = o;
          break;
        }
      }
    }
    const std::size_t lo = forced ? *forced : 0;
    const std::size_t hi = forced ? *forced + 1 : d.objects[pick];
    for (std::size_t v = lo; v < hi; ++v) {
      if (++nodes > cfg.maxProduct) throw Error(ErrorCode::BoundExceeded, "limit search exceeds maxProduct");
      value[pick] = static_cast<std::int64_t>(v);
      if (consistent(pick)) search(assigned + 1);
    }
    value[pick] = unset;
  };
  search(0);
  std::sort(found.begin(), found.end());

  Colimit out;
  out.cocone.diagram = dp;
  out.cocone.apex = found.size();
  for (std::size_t o = 0; o < n; ++o) {
    FinMap proj(found.size(), d.objects[o], std::vector<Elem>(found.size()));
    for (std::size_t z = 0; z < found.size(); ++z) proj.table[z] = found[z][o];
    out.cocone.legs.push_back(std::move(proj));
  }
  out.tuples = std::move(found);
  return out;
}

Colimit colimit(std::shared_ptr<const Diagram> d, const Config& cfg) {
  switch (d->target.kind) {
    case CatKind::Fin: return colimit_fin(std::move(d), cfg);
    case CatKind::FinOp: return colimit_finop(std::move(d), cfg);
    default: break;
  }
  throw Error(ErrorCode::TypeMismatch, "colimits are computed in Fin and FinOp only");
}

FinMap universal_morphism(const Cocone& colim, const Cocone& other) {
  if (!same_diagram(*colim.diagram, *other.diagram)) {
    throw Error(ErrorCode::TypeMismatch, "cocones are over different diagrams");
  }
  if (const auto v = cocone_violation(other)) throw Error(ErrorCode::NotACocone, *v);
  const Diagram& d = *colim.diagram;
  const std::size_t n = d.objects.size();

  if (d.target.kind == CatKind::Fin) {
    constexpr Elem unset = static_cast<Elem>(-1);
    std::vector<Elem> m(colim.apex, unset);
    for (std::size_t o = 0; o < n; ++o) {
      for (std::size_t s = 0; s < d.objects[o]; ++s) {
        const Elem z = colim.legs[o].table[s];
        const Elem w = other.legs[o].table[s];
        if (m[z] == unset) {
          m[z] = w;
        } else if (m[z] != w) {
          throw Error(ErrorCode::NoMediator, "legs disagree on an apex element");
        }
      }
    }
    for (Elem& v : m) {
      if (v != unset) continue;
      if (other.apex != 1) throw Error(ErrorCode::NoMediator, "apex element not reached by any leg");
      v = 0;
    }
    return FinMap(colim.apex, other.apex, std::move(m));
  }
  if (d.target.kind == CatKind::FinOp) {
    std::map<std::vector<Elem>, Elem> by_projection;
    for (std::size_t z = 0; z < colim.apex; ++z) {
      std::vector<Elem> key(n);
      for (std::size_t o = 0; o < n; ++o) key[o] = colim.legs[o].table[z];
      if (!by_projection.emplace(std::move(key), static_cast<Elem>(z)).second) {
        throw Error(ErrorCode::NoMediator, "two apex elements share all projections");
      }
    }
    FinMap m(other.apex, colim.apex, std::vector<Elem>(other.apex));
    for (std::size_t w = 0; w < other.apex; ++w) {
      std::vector<Elem> key(n);
      for (std::size_t o = 0; o < n; ++o) key[o] = other.legs[o].table[w];
      const auto it = by_projection.find(key);
      if (it == by_projection.end()) throw Error(ErrorCode::NoMediator, "compatible tuple missing from apex");
      m.table[w] = it->second;
    }
    return m;
  }
  throw Error(ErrorCode::TypeMismatch, "universal_morphism supports Fin and FinOp");
}

namespace {

bool verify_fin_colimit(const Cocone& c, std::size_t apexBound, const Config& cfg) {
  const Diagram& d = *c.diagram;
  const IndexCategory& J = *d.index;
  const auto off = offsets_of(d);
  const std::size_t total = off.back();

  // Element e and e' must agree in every cocone whenever (e, e') is a pair.
  std::vector<std::vector<std::size_t>> earlier(total);  // neighbours with a smaller index
  std::vector<std::vector<std::size_t>> adj(total);
  for (std::size_t a = 0; a < J.arrow_count(); ++a) {
    if (J.is_identity(a)) continue;
    const auto& arr = J.arrow(a);
    for (std::size_t s = 0; s < d.objects[arr.src]; ++s) {
      const std::size_t x = off[arr.src] + s;
      const std::size_t y = off[arr.dst] + d.arrows[a].table[s];
      adj[x].push_back(y);
      adj[y].push_back(x);
      earlier[std::max(x, y)].push_back(std::min(x, y));
    }
  }
  std::vector<std::size_t> image(total);
  for (std::size_t o = 0; o < d.objects.size(); ++o) {
    for (std::size_t s = 0; s < d.objects[o]; ++s) image[off[o] + s] = c.legs[o].table[s];
  }

  const std::uint64_t budget = std::min<std::uint64_t>(cfg.maxColorings, std::uint64_t{1} << 16);
  for (std::size_t k = 0; k <= apexBound; ++k) {
    std::uint64_t candidates = 1;
    for (std::size_t i = 0; i < total && candidates <= budget; ++i) candidates *= k;
    if (candidates <= budget) {
      // Enumerate every cocone into a k-element apex and count its mediators.
      std::vector<std::size_t> val(total);
      bool ok = true;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (!ok) return;
        if (i == total) {
          std::vector<std::int64_t> m(c.apex, -1);
          bool conflict = false;
          for (std::size_t e = 0; e < total && !conflict; ++e) {
            auto& slot = m[image[e]];
            if (slot == -1) slot = static_cast<std::int64_t>(val[e]);
            else if (slot != static_cast<std::int64_t>(val[e])) conflict = true;
          }
          std::uint64_t mediators = conflict ? 0 : 1;
          for (std::int64_t v : m) {
            if (v == -1) mediators *= k;
          }
          if (mediators != 1) ok = false;
          return;
        }
        for (std::size_t v = 0; v < k; ++v) {
          val[i] = v;
          bool fits = true;
          for (std::size_t j : earlier[i]) {
            if (val[j] != v) {
              fits = false;
              break;
            }
          }
          if (fits) rec(i + 1);
        }
      };
      rec(0);
      if (!ok) return false;
      continue;
    }
    // Too many cocones to list. A k >= 2 apex separates exactly the elements in
    // different connected components of the pair graph, so the mediator is
    // unique for every cocone iff the legs are jointly surjective and each apex
    // element's preimage lies in one component.
    std::vector<bool> reached(c.apex, false);
    for (std::size_t e = 0; e < total; ++e) reached[image[e]] = true;
    if (std::find(reached.begin(), reached.end(), false) != reached.end()) return false;
    std::vector<std::size_t> comp(total, total);
    std::size_t ncomp = 0;
    for (std::size_t e = 0; e < total; ++e) {
      if (comp[e] != total) continue;
      std::vector<std::size_t> stack{e};
      comp[e] = ncomp;
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y : adj[x]) {
          if (comp[y] == total) {
            comp[y] = ncomp;
            stack.push_back(y);
          }
        }
      }
      ++ncomp;
    }
    std::vector<std::size_t> comp_of_apex(c.apex, total);
    for (std::size_t e = 0; e < total; ++e) {
      auto& slot = comp_of_apex[image[e]];
      if (slot == total) slot = comp[e];
      else if (slot != comp[e]) return false;
    }
  }
  return true;
}

bool verify_finop_colimit(const Cocone& c, std::size_t apexBound, const Config& cfg) {
  const Diagram& d = *c.diagram;
  const std::size_t n = d.objects.size();
  if (apexBound == 0) return true;  // the empty apex has exactly one cocone and one mediator

  std::uint64_t product = 1;
  for (std::size_t o = 0; o < n; ++o) {
    product *= d.objects[o];
    if (product > cfg.maxProduct) throw Error(ErrorCode::BoundExceeded, "product exceeds maxProduct");
  }
  const auto links = links_of(d);
  std::map<std::vector<Elem>, std::size_t> hits;
  for (std::size_t z = 0; z < c.apex; ++z) {
    std::vector<Elem> key(n);
    for (std::size_t o = 0; o < n; ++o) key[o] = c.legs[o].table[z];
    ++hits[key];
  }
  // A cocone into a k-element apex is a k-tuple of compatible product
  // elements, and its mediators factor pointwise: every cocone has exactly one
  // mediator iff each compatible tuple is hit by exactly one apex element.
  if (product == 0) return true;
  std::vector<Elem> t(n, 0);
  while (true) {
    bool compatible = true;
    for (const auto& l : links) {
      if (l.table->table[t[l.dst]] != t[l.src]) {
        compatible = false;
        break;
      }
    }
    if (compatible) {
      const auto it = hits.find(t);
      if (it == hits.end() || it->second != 1) return false;
    }
    std::size_t i = n;
    while (i > 0 && t[i - 1] + 1 == d.objects[i - 1]) --i;
    if (i == 0) break;
    ++t[i - 1];
    std::fill(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(), 0);
  }
  return true;
}

}  // namespace

bool verify_colimit(const Cocone& c, std::size_t apexBound, const Config& cfg) {
  if (cocone_violation(c)) return false;
  switch (c.diagram->target.kind) {
    case CatKind::Fin: return verify_fin_colimit(c, apexBound, cfg);
    case CatKind::FinOp: return verify_finop_colimit(c, apexBound, cfg);
    default: break;
  }
  throw Error(ErrorCode::TypeMismatch, "verify_colimit supports Fin and FinOp");
}

}  // namespace partite
