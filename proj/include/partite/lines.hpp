#pragma once

// Combinatorial lines over a finite alphabet {0..k-1}, the category HJ(P),
// exhaustive Hales-Jewett witness search, and the index categories of line
// diagrams and transfer diagrams.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "partite/config.hpp"
#include "partite/fincat.hpp"

namespace partite {

using Letter = std::uint32_t;

struct Tuple {
  std::vector<Letter> letters;

  std::size_t n() const { return letters.size(); }
  friend bool operator==(const Tuple&, const Tuple&) = default;
  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

/// Active coordinates move together; every other coordinate holds a fixed
/// letter. Entries of `fixed` at active positions are kept at 0.
struct Line {
  std::vector<bool> active;
  std::vector<Letter> fixed;

  std::size_t n() const { return active.size(); }
  std::vector<std::size_t> active_positions() const;
  bool is_active(std::size_t i) const { return active[i]; }

  /// Checks nonempty active set, matching lengths and letters below alphabet.
  bool valid(std::size_t alphabet) const;

  friend bool operator==(const Line&, const Line&) = default;
};

/// The constant letter of e on the active set when e lies on l.
std::optional<Letter> membership(const Tuple& e, const Line& l);

/// l . p: letter p on the active coordinates, the fixed letters elsewhere.
Tuple hj_compose(const Line& l, Letter p);

/// The line with active set {0} through e.
Line canonical_line_through(const Tuple& e);

/// sum over k >= 1 of C(N, k) |P|^(N-k), saturating.
std::uint64_t line_count(std::size_t alphabet, std::size_t n);

/// All lines in canonical order: larger active sets first, then active sets in
/// lexicographic order of their position lists, then fixed letters
/// lexicographically.
std::vector<Line> enumerate_lines(std::size_t alphabet, std::size_t n, const Config& cfg = {});

/// P^N in lexicographic order (coordinate 0 most significant).
std::uint64_t tuple_count(std::size_t alphabet, std::size_t n);
std::uint64_t tuple_index(const Tuple& e, std::size_t alphabet);
Tuple tuple_at(std::size_t alphabet, std::size_t n, std::uint64_t index);

/// "0.1.1" for tuples; lines write '*' at active positions, e.g. "*.1".
std::string encode(const Tuple& e);
std::string encode(const Line& l);
Tuple decode_tuple(const std::string& s);
Line decode_line(const std::string& s);

// ---------------------------------------------------------------------------
// Hales-Jewett search.

enum class HJOutcome { Holds, Refuted, NoCounterexampleFound };
std::string to_string(HJOutcome o);

struct HJCheck {
  std::size_t n = 0;
  HJOutcome outcome = HJOutcome::Refuted;
  /// Colour per tuple (in tuple_index order) without a monochromatic line.
  std::optional<std::vector<std::uint32_t>> counterexample;
  /// Sampled mode only.
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Whether every r-colouring of P^N has a line whose |P| points share a colour.
/// Exhaustive when r^(|P|^N) <= cfg.maxColorings; otherwise sampled when
/// `sample` is set, else BoundExceeded. The counterexample reported by the
/// exhaustive scan is the least one in base-r order with tuple 0 most
/// significant.
HJCheck hj_check(std::size_t alphabet, std::size_t r, std::size_t n, const Config& cfg = {},
                 bool sample = false);

struct HJSearchResult {
  std::size_t n = 0;
  bool exhaustive = true;
  std::vector<HJCheck> checks;  // one per N = 1..n
};

/// The least N <= nMax passing hj_check. SearchExhausted when none does.
HJSearchResult hj_witness_search(std::size_t alphabet, std::size_t r, std::size_t nMax, const Config& cfg = {},
                                 bool sample = false);

// ---------------------------------------------------------------------------
// Index categories.

struct LineArrow {
  std::size_t tuple = 0;  // position in LineIndex::tuples
  std::size_t line = 0;   // position in LineIndex::lines
  Letter letter = 0;      // l(e)
  std::size_t arrow = 0;  // arrow id in the index category
};

/// Index category of the line diagram: objects are the tuples of P^N (first,
/// in tuple_index order) followed by the lines; one arrow e -> l per incidence.
/// Arrows are listed line by line, and within a line by letter.
struct LineIndex {
  std::size_t alphabet = 0;
  std::size_t n = 0;
  std::vector<Tuple> tuples;
  std::vector<Line> lines;
  std::shared_ptr<IndexCategory> category;
  std::vector<LineArrow> arrows;

  std::size_t tuple_object(std::size_t t) const { return t; }
  std::size_t line_object(std::size_t l) const { return tuples.size() + l; }
};

LineIndex build_line_index(std::size_t alphabet, std::size_t n, const Config& cfg = {});

/// Transfer diagram index for A, B, C in a category: objects Hom(A,C) then
/// Hom(B,C); an arrow (h, g, f) : h -> g for each f in Hom(A,B) with g.f = h.
struct TransferArrow {
  std::uint64_t h = 0;
  std::uint64_t g = 0;
  std::uint64_t f = 0;
  std::size_t arrow = 0;
};

struct TransferIndex {
  std::uint64_t homAC = 0;
  std::uint64_t homBC = 0;
  std::uint64_t homAB = 0;
  std::shared_ptr<IndexCategory> category;
  std::vector<TransferArrow> arrows;

  std::size_t h_object(std::uint64_t h) const { return h; }
  std::size_t g_object(std::uint64_t g) const { return homAC + g; }
};

/// Generic form; composeIndex(g, f) is the index of g.f in Hom(A, C).
TransferIndex build_transfer_index(std::uint64_t homAC, std::uint64_t homBC, std::uint64_t homAB,
                                   const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& composeIndex,
                                   const Config& cfg = {});

/// Over a Fin-backed category, hom-sets indexed by hom_enumerate order.
TransferIndex build_transfer_index(const Category& cat, std::size_t A, std::size_t B, std::size_t C,
                                   const Config& cfg = {});

/// In HJ(P) with A = 0, B = 1, C = N: Hom(0,N) = P^N, Hom(1,N) = lines, Hom(0,1) = P.
TransferIndex build_hj_transfer_index(std::size_t alphabet, std::size_t n, const Config& cfg = {});

/// Diagram of the transfer index into `target`, sending h-objects to D,
/// g-objects to E, and (h, g, f) to F[f].
Diagram transfer_diagram(const TransferIndex& index, const Category& target, std::size_t D, std::size_t E,
                         const std::vector<FinMap>& F);

}  // namespace partite
