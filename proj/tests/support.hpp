#pragma once

// Shared fixtures and hand-rolled random generators for the test binaries.

#include <memory>
#include <random>
#include <vector>

#include "partite/colimit_block.hpp"
#include "partite/fincat.hpp"
#include "partite/structlang.hpp"

namespace partite::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline FinMap random_map(Rng& rng, std::size_t source, std::size_t target) {
  FinMap m(source, target, std::vector<Elem>(source, 0));
  for (auto& x : m.table) x = static_cast<Elem>(uniform(rng, 0, target - 1));
  return m;
}

/// Random diagram over an index category with up to three layers and no
/// composable triple: arrows go from a lower layer to a higher one and every
/// composable pair gets its own composite arrow. Carriers are in [1, maxCarrier].
inline std::shared_ptr<const Diagram> random_diagram(Rng& rng, Category target, std::size_t maxObjects,
                                                     std::size_t maxCarrier) {
  auto J = std::make_shared<IndexCategory>();
  const std::size_t n = uniform(rng, 1, maxObjects);
  std::vector<std::size_t> layer(n), sizes(n);
  for (std::size_t o = 0; o < n; ++o) {
    J->add_object("o" + std::to_string(o));
    layer[o] = uniform(rng, 0, 2);
    sizes[o] = uniform(rng, 1, maxCarrier);
  }
  Diagram d = Diagram::with_identities(J, target, sizes);
  // An arrow s -> t in the target is stored backwards when the category is reversed.
  const auto random_arrow = [&](std::size_t s, std::size_t t) {
    return target.reversed() ? random_map(rng, sizes[t], sizes[s]) : random_map(rng, sizes[s], sizes[t]);
  };
  struct Added {
    std::size_t id, src, dst;
  };
  std::vector<Added> firstHop;
  std::size_t counter = 0;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (layer[s] >= layer[t]) continue;
      const std::size_t parallel = uniform(rng, 0, 2);
      for (std::size_t k = 0; k < parallel; ++k) {
        const std::size_t a = J->add_arrow("a" + std::to_string(counter++), s, t);
        d.arrows.push_back(random_arrow(s, t));
        if (layer[s] == 0 && layer[t] == 1) firstHop.push_back({a, s, t});
      }
    }
  }
  const std::size_t base = J->arrow_count();
  for (std::size_t a = 0; a < base; ++a) {
    const auto& arr = J->arrow(a);
    if (J->is_identity(a)) continue;
    for (const auto& f : firstHop) {
      if (f.dst != arr.src || layer[arr.src] != 1) continue;
      const std::size_t c = J->add_arrow("c" + std::to_string(counter++), f.src, arr.dst);
      d.arrows.push_back(compose(target, d.arrows[a], d.arrows[f.id]));
      J->add_composite(f.id, a, c);
    }
  }
  return std::make_shared<const Diagram>(std::move(d));
}

inline std::shared_ptr<const Language> empty_language(Category base = Category::fin()) {
  auto l = std::make_shared<Language>();
  l->base = base;
  return l;
}

inline std::shared_ptr<const Language> unary_language() {
  auto l = std::make_shared<Language>();
  l->relations.push_back({"R", 1});
  return l;
}

inline Block block(std::shared_ptr<const Language> lang, std::size_t carrier, FinMap anchor) {
  Block b;
  b.structure = Structure::bare(std::move(lang), carrier);
  b.anchorTarget = anchor.target;
  b.anchor = std::move(anchor);
  return b;
}

/// Empty language over Fin, U = V = {*}, X a point, Y = {a, b}; |P| = 2.
inline LineInstance pair_instance(std::size_t N = 2) {
  const auto lang = empty_language();
  return {FinMap::identity(1), block(lang, 1, FinMap::identity(1)), block(lang, 2, FinMap::constant(2, 1, 0)), N};
}

/// As pair_instance, but Y = {a, b, c} with R^Y = {c} and R^X empty, so the
/// i0-monomorphisms are exactly the two maps onto a and b.
inline LineInstance unary_instance(std::size_t N = 2) {
  const auto lang = unary_language();
  LineInstance in{FinMap::identity(1), block(lang, 1, FinMap::identity(1)), block(lang, 3, FinMap::constant(3, 1, 0)),
                  N};
  in.Y.structure.relations[0].push_back(FinMap(1, 3, {2}));
  return in;
}

/// Relation-free structure in the given language.
inline Structure bare(std::shared_ptr<const Language> lang, std::size_t carrier) {
  return Structure::bare(std::move(lang), carrier);
}

}  // namespace partite::testing
