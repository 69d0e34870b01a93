#pragma once

// Independent oracles shared by the unit and acceptance binaries. None of
// them calls the library routine they are compared against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "partite/colimit_block.hpp"
#include "partite/fincat.hpp"

namespace partite::testing {

// Components of the element graph of a Fin diagram, by breadth-first search.
inline std::size_t component_count(const Diagram& d) {
  std::vector<std::size_t> offset(d.objects.size() + 1, 0);
  for (std::size_t o = 0; o < d.objects.size(); ++o) offset[o + 1] = offset[o] + d.objects[o];
  std::vector<std::vector<std::size_t>> adj(offset.back());
  for (std::size_t a = 0; a < d.index->arrow_count(); ++a) {
    const auto& arr = d.index->arrow(a);
    for (std::size_t x = 0; x < d.objects[arr.src]; ++x) {
      const std::size_t u = offset[arr.src] + x;
      const std::size_t v = offset[arr.dst] + d.arrows[a](static_cast<Elem>(x));
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  }
  std::vector<bool> seen(adj.size(), false);
  std::size_t count = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return count;
}

// Tuples of the product compatible with every arrow (stored tables run
// target -> source for Fin^op), by brute force.
inline std::size_t compatible_tuples(const Diagram& d) {
  const std::size_t n = d.objects.size();
  std::vector<Elem> t(n, 0);
  std::size_t count = 0;
  if (std::find(d.objects.begin(), d.objects.end(), 0) != d.objects.end()) return 0;
  while (true) {
    bool ok = true;
    for (std::size_t a = 0; a < d.index->arrow_count() && ok; ++a) {
      const auto& arr = d.index->arrow(a);
      ok = d.arrows[a](t[arr.dst]) == t[arr.src];
    }
    count += ok;
    std::size_t k = n;
    while (k > 0 && t[k - 1] + 1 == d.objects[k - 1]) t[--k] = 0;
    if (k == 0) return count;
    ++t[k - 1];
  }
}

// 2-colourings of the edges of K_n with no monochromatic triangle, by a plain
// scan over every colouring. Edges are ordered as hom_enumerate lists
// increasing maps 2 -> n.
inline std::optional<std::uint64_t> triangle_free_colouring(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  const auto edge = [&](std::size_t a, std::size_t b) {
    return static_cast<std::size_t>(std::find(edges.begin(), edges.end(), std::make_pair(a, b)) - edges.begin());
  };
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << edges.size()); ++c) {
    const auto colour = [&](std::size_t e) { return (c >> (edges.size() - 1 - e)) & 1; };
    bool mono = false;
    for (std::size_t a = 0; a < n && !mono; ++a)
      for (std::size_t b = a + 1; b < n && !mono; ++b)
        for (std::size_t d = b + 1; d < n && !mono; ++d)
          mono = colour(edge(a, b)) == colour(edge(a, d)) && colour(edge(a, b)) == colour(edge(b, d));
    if (!mono) return c;
  }
  return std::nullopt;
}

// Union-find over (line, y) pairs and (tuple, x) pairs merged along every
// incidence, independent of the library colimit.
struct Oracle {
  std::vector<std::size_t> parent;
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

inline std::set<std::set<std::string>> oracle_line_classes(const ColimitBlock& cb) {
  const std::size_t nx = cb.input.X.structure.carrier;
  const std::size_t ny = cb.input.Y.structure.carrier;
  const auto& tuples = cb.index.tuples;
  const auto& lines = cb.index.lines;
  const std::size_t lineBase = tuples.size() * nx;
  Oracle uf;
  uf.parent.resize(lineBase + lines.size() * ny);
  for (std::size_t i = 0; i < uf.parent.size(); ++i) uf.parent[i] = i;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const auto letter = membership(tuples[t], lines[l]);
      if (!letter) continue;
      for (std::size_t x = 0; x < nx; ++x) uf.unite(t * nx + x, lineBase + l * ny + cb.P[*letter](static_cast<Elem>(x)));
    }
  }
  std::map<std::size_t, std::set<std::string>> groups;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    for (std::size_t y = 0; y < ny; ++y) {
      groups[uf.find(lineBase + l * ny + y)].insert("L" + std::to_string(l + 1) + static_cast<char>('a' + y));
    }
  }
  std::set<std::set<std::string>> out;
  for (auto& [_, g] : groups) out.insert(g);
  return out;
}

inline std::set<std::set<std::string>> library_line_classes(const ColimitBlock& cb) {
  std::map<Elem, std::set<std::string>> groups;
  for (std::size_t l = 0; l < cb.index.lines.size(); ++l) {
    for (std::size_t y = 0; y < cb.input.Y.structure.carrier; ++y) {
      groups[cb.line_leg(l)(static_cast<Elem>(y))].insert("L" + std::to_string(l + 1) + static_cast<char>('a' + y));
    }
  }
  std::set<std::set<std::string>> out;
  for (auto& [_, g] : groups) out.insert(g);
  return out;
}

}  // namespace partite::testing
