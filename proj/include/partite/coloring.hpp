#pragma once

// Colouring search over an explicit hypergraph: points 0..n-1 and a list of
// "copies" (point sets). A colouring is a counterexample when no copy is
// monochromatic. Both the Hales-Jewett search (points = tuples, copies =
// lines) and Ramsey-witness checks (points = Hom(A,C), copies = g.Hom(A,B))
// reduce to this.

#include <cstdint>
#include <optional>
#include <vector>

namespace partite {

struct ColoringProblem {
  std::size_t points = 0;
  std::vector<std::vector<std::uint32_t>> copies;  // each sorted, duplicate free

  /// Sorts and deduplicates every copy.
  void normalize();
};

/// r^points, saturating at UINT64_MAX.
std::uint64_t coloring_count(std::size_t points, std::size_t r);

/// Index of the first monochromatic copy under `colors`, if any. The empty
/// copy counts as monochromatic.
std::optional<std::size_t> monochromatic_copy(const ColoringProblem& p, const std::vector<std::uint32_t>& colors);

/// The lexicographically least colouring (point 0 most significant) with no
/// monochromatic copy, found by exhaustive depth-first search. The scan is
/// split over `threads` workers; the reduction keeps the least result, so the
/// answer does not depend on the thread count.
std::optional<std::vector<std::uint32_t>> least_counterexample(const ColoringProblem& p, std::size_t r,
                                                               unsigned threads);

/// Colouring number t of a seeded random stream; stable across platforms.
std::vector<std::uint32_t> sampled_coloring(std::size_t points, std::size_t r, std::uint64_t seed,
                                            std::uint64_t trial);

struct SampleOutcome {
  std::optional<std::vector<std::uint32_t>> counterexample;
  std::uint64_t trial = 0;  // index of the counterexample when one was found
};

/// Tries `trials` sampled colourings; reports the counterexample with the
/// smallest trial index.
SampleOutcome sampled_counterexample(const ColoringProblem& p, std::size_t r, std::uint64_t trials,
                                     std::uint64_t seed, unsigned threads);

}  // namespace partite
