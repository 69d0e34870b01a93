#include "partite/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <thread>

namespace partite {

void ColoringProblem::normalize() {
  for (auto& c : copies) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
}

std::uint64_t coloring_count(std::size_t points, std::size_t r) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < points; ++i) {
    if (r != 0 && out > std::numeric_limits<std::uint64_t>::max() / r) return std::numeric_limits<std::uint64_t>::max();
    out *= r;
  }
  return out;
}

std::optional<std::size_t> monochromatic_copy(const ColoringProblem& p, const std::vector<std::uint32_t>& colors) {
  for (std::size_t c = 0; c < p.copies.size(); ++c) {
    const auto& copy = p.copies[c];
    bool mono = true;
    for (std::uint32_t x : copy) {
      if (colors[x] != colors[copy.front()]) {
        mono = false;
        break;
      }
    }
    if (mono) return c;
  }
  return std::nullopt;
}

namespace {

// Depth-first search assigning points in order; a copy is checked once its
// last point is coloured.
class Searcher {
 public:
  Searcher(const ColoringProblem& p, std::size_t r) : p_(p), r_(r), closing_(p.points) {
    for (std::size_t c = 0; c < p.copies.size(); ++c) {
      if (!p.copies[c].empty()) closing_[p.copies[c].back()].push_back(c);
    }
  }

  bool closes_monochromatic(std::size_t point, const std::vector<std::uint32_t>& colors) const {
    for (std::size_t c : closing_[point]) {
      const auto& copy = p_.copies[c];
      bool mono = true;
      for (std::uint32_t x : copy) {
        if (colors[x] != colors[point]) {
          mono = false;
          break;
        }
      }
      if (mono) return true;
    }
    return false;
  }

  /// Completes colors[0..depth) in lexicographic order; true when a counterexample is found.
  bool extend(std::vector<std::uint32_t>& colors, std::size_t depth, const std::atomic<bool>* abandon) const {
    if (depth == p_.points) return true;
    if (abandon && abandon->load(std::memory_order_relaxed)) return false;
    for (std::uint32_t v = 0; v < r_; ++v) {
      colors[depth] = v;
      if (closes_monochromatic(depth, colors)) continue;
      if (extend(colors, depth + 1, abandon)) return true;
    }
    return false;
  }

 private:
  const ColoringProblem& p_;
  std::size_t r_;
  std::vector<std::vector<std::size_t>> closing_;
};

}  // namespace

std::optional<std::vector<std::uint32_t>> least_counterexample(const ColoringProblem& p, std::size_t r,
                                                               unsigned threads) {
  for (const auto& c : p.copies) {
    if (c.empty()) return std::nullopt;  // always monochromatic
  }
  if (r == 0) return std::nullopt;  // no colourings at all
  const Searcher s(p, r);
  threads = std::max(1u, threads);

  // Split on a colour prefix so that there are a few work items per thread.
  std::size_t depth = 0;
  std::uint64_t items = 1;
  while (depth < p.points && items < 8ull * threads && threads > 1) {
    items *= r;
    ++depth;
  }
  if (items == 1) {
    std::vector<std::uint32_t> colors(p.points);
    if (s.extend(colors, 0, nullptr)) return colors;
    return std::nullopt;
  }

  std::vector<std::optional<std::vector<std::uint32_t>>> found(items);
  std::vector<std::atomic<bool>> abandon(items);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{items};
  const auto worker = [&] {
    std::vector<std::uint32_t> colors(p.points);
    while (true) {
      const std::uint64_t item = next.fetch_add(1);
      if (item >= items) return;
      if (item > best.load()) continue;
      std::uint64_t code = item;
      for (std::size_t i = depth; i > 0; --i) {
        colors[i - 1] = static_cast<std::uint32_t>(code % r);
        code /= r;
      }
      bool viable = true;
      for (std::size_t i = 0; i < depth && viable; ++i) viable = !s.closes_monochromatic(i, colors);
      if (!viable || !s.extend(colors, depth, &abandon[item])) continue;
      found[item] = colors;
      std::uint64_t cur = best.load();
      while (item < cur && !best.compare_exchange_weak(cur, item)) {
      }
      for (std::uint64_t later = item + 1; later < items; ++later) abandon[later].store(true);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  const std::uint64_t b = best.load();
  if (b == items) return std::nullopt;
  return found[b];
}

std::vector<std::uint32_t> sampled_coloring(std::size_t points, std::size_t r, std::uint64_t seed,
                                            std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<std::uint32_t> colors(points);
  for (auto& c : colors) c = static_cast<std::uint32_t>(rng() % r);
  return colors;
}

SampleOutcome sampled_counterexample(const ColoringProblem& p, std::size_t r, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads) {
  threads = std::max(1u, threads);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{trials};
  const auto worker = [&] {
    while (true) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= trials || t > best.load()) return;
      if (!monochromatic_copy(p, sampled_coloring(p.points, r, seed, t))) {
        std::uint64_t cur = best.load();
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  SampleOutcome out;
  if (best.load() < trials) {
    out.trial = best.load();
    out.counterexample = sampled_coloring(p.points, r, seed, out.trial);
  }
  return out;
}

}  // namespace partite
