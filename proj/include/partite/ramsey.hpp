#pragma once

// Ramsey-witness verdicts, the transfer resolver, the partite lemma and the
// partite construction, and the two ordered-structure instantiations.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "partite/colimit_block.hpp"
#include "partite/coloring.hpp"
#include "partite/config.hpp"
#include "partite/fincat.hpp"
#include "partite/lines.hpp"
#include "partite/structlang.hpp"

namespace partite {

using ColorFn = std::function<std::uint32_t(const FinMap&)>;

enum class VerdictKind { VerifiedExhaustively, NoCounterexampleFound, Refuted };
std::string to_string(VerdictKind k);

enum class SearchMode { Exhaustive, Sampled };
SearchMode search_mode_from_string(const std::string& s);

struct Verdict {
  VerdictKind kind = VerdictKind::Refuted;
  std::size_t r = 0;
  /// Position (in the copy list) of a copy monochromatic under the all-zero
  /// colouring; present exactly when the verdict is not a refutation.
  std::optional<std::size_t> witness;
  std::optional<std::vector<std::uint32_t>> counterexample;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  bool holds() const { return kind != VerdictKind::Refuted; }
};

/// Decides the colouring problem. Exhaustive mode needs r^points <= maxColorings
/// (BoundExceeded otherwise); sampled mode never reports more than
/// NoCounterexampleFound.
Verdict check_coloring_problem(const ColoringProblem& p, std::size_t r, SearchMode mode, const Config& cfg = {});

/// The colouring problem behind C -> (B)^A_r: points Hom(A,C), one copy
/// g.Hom(A,B) per g in Hom(B,C). For HJ(P) only A = 0, B = 1 is supported.
struct RamseyProblem {
  Category cat;
  std::size_t A = 0, B = 0, C = 0;
  std::vector<FinMap> homAB, homAC, homBC;  // empty for HJ(P)
  std::vector<std::string> pointLabels;
  std::vector<std::string> copyLabels;
  ColoringProblem problem;
};

RamseyProblem ramsey_problem(const Category& cat, std::size_t A, std::size_t B, std::size_t C, const Config& cfg = {});

Verdict is_ramsey_witness(const Category& cat, std::size_t A, std::size_t B, std::size_t C, std::size_t r,
                          SearchMode mode, const Config& cfg = {});

// ---------------------------------------------------------------------------
// Transfer.

/// A cocone in D over the transfer diagram of (A, B, C) in C with the map
/// F : Hom_C(A,B) -> Hom_D(D,E) given as indices into homDE.
struct TransferInput {
  Category dCat;
  std::size_t D = 0, E = 0, W = 0;
  std::vector<FinMap> homDE;
  std::vector<std::uint64_t> F;
  TransferIndex index;
  std::vector<FinMap> hLegs;  // phi_h : D -> W per h in Hom_C(A,C)
  std::vector<FinMap> gLegs;  // phi_g : E -> W per g in Hom_C(B,C)
};

struct TransferResult {
  std::uint64_t g = 0;
  FinMap leg;
  std::uint32_t color = 0;
  std::vector<std::uint32_t> chiPrime;  // per h in Hom_C(A,C)
};

/// Given g in Hom_C(B,C) with g.Hom_C(A,B) monochromatic for a colouring of Hom_C(A,C).
using CSolver = std::function<std::optional<std::uint64_t>(const std::vector<std::uint32_t>&)>;

/// Pulls chi back along the legs, asks solverC for g and returns phi_g, after
/// checking that phi_g . Hom_D(D,E) is chi-monochromatic. NotSurjective,
/// NotACocone, SolverFailed as appropriate.
TransferResult transfer_resolve(const TransferInput& in, const ColorFn& chi, const CSolver& solverC);

/// First line of P^N whose points share a colour under the tuple colouring.
CSolver hj_line_finder(std::size_t alphabet, std::size_t n);

// ---------------------------------------------------------------------------
// Partite lemma.

struct PartiteLemma {
  std::size_t r = 0;
  HJSearchResult hj;
  ColimitBlock block;
};

/// P := i0-monomorphisms X -> Y, N := least exhaustively verified
/// Hales-Jewett witness for (|P|, r) with N <= nMax, Z := the colimit block.
PartiteLemma partite_lemma(const FinMap& i0, const Block& X, const Block& Y, std::size_t r, const Config& cfg = {},
                           std::size_t nMax = 6);

struct LemmaResolution {
  std::size_t line = 0;
  FinMap leg;
  std::uint32_t color = 0;
};

/// For a colouring of Hom_{Bl^m_{i0}}(X, Z), a line leg f_l with f_l . P monochromatic.
LemmaResolution resolve_partite_lemma(const PartiteLemma& pl, const ColorFn& chi);

// ---------------------------------------------------------------------------
// Partite construction.

/// How the witness M -> (L)^K_r in D is obtained: an explicit candidate to
/// verify, or a search over sizes L, L+1, ..., maxSize.
struct DSolverSpec {
  std::optional<std::size_t> candidate;
  std::size_t maxSize = 8;
};

/// The least (or the supplied) M with M -> (L)^K_r in D, verified exhaustively.
std::size_t solve_d(const Category& D, std::size_t K, std::size_t L, std::size_t r, const DSolverSpec& spec,
                    const Config& cfg = {});

/// Hom in Bl_D: maps X -> Y that are G(i)-monomorphisms for some i in Hom_D(K, L),
/// sorted and duplicate free.
std::vector<FinMap> bl_d_homs(const DBlock& X, const DBlock& Y, const Functor& G, const Config& cfg = {});

struct PartiteConstruction {
  Functor G;
  DBlock X;
  DBlock Y;
  std::size_t r = 0;
  std::size_t M = 0;
  RamseyProblem dProblem;              // M -> (L)^K_r in D
  std::shared_ptr<const Diagram> y0Diagram;
  Colimit y0Colimit;                   // legs h_i, one per i in Hom_D(L, M)
  Block Y0;                            // anchored by rho_0 at G(M)
  std::vector<FinMap> j;               // Hom_D(K, M)
  std::vector<PartiteLemma> steps;     // steps[k] builds Y_{k+1} from Y_k over G(j_k)

  const Block& tower(std::size_t k) const { return k == 0 ? Y0 : steps[k - 1].block.Z; }
  std::size_t height() const { return steps.size(); }
  DBlock Z() const { return {tower(height()), M}; }
  const FinMap& h(std::size_t i) const { return y0Colimit.cocone.legs[i]; }
};

PartiteConstruction partite_construction(const Functor& G, const DBlock& X, const DBlock& Y, std::size_t r,
                                         const DSolverSpec& solver, const Config& cfg = {});

struct ConstructionResolution {
  std::vector<FinMap> g;  // g[k] : Y_k -> Y_{k+1}
  FinMap gTotal;          // Y_0 -> Y_n
  std::vector<std::uint32_t> chiPrime;  // per j_k
  std::size_t i0 = 0;     // position in Hom_D(L, M)
  FinMap witness;         // gTotal . h_{i0} : Y -> Z
  std::uint32_t color = 0;
};

/// The resolver of the construction. ChiPrimeIllDefined when two maps over
/// the same j_k receive different colours; the final postcondition (witness .
/// Hom_{Bl_D}(X, Y) monochromatic) is asserted.
ConstructionResolution resolve_partite_construction(const PartiteConstruction& pc, const ColorFn& chi,
                                                    const Config& cfg = {});

/// Descriptions of tower links g_k that are not Id_M-monomorphisms.
std::vector<std::string> tower_violations(const PartiteConstruction& pc, const ConstructionResolution& res,
                                          const Config& cfg = {});

// ---------------------------------------------------------------------------
// Ordered structures.

enum class SoleckiVariant { Direct, Dual };
std::string to_string(SoleckiVariant v);
SoleckiVariant solecki_variant_from_string(const std::string& s);

struct SoleckiResult {
  SoleckiVariant variant = SoleckiVariant::Direct;
  PartiteConstruction construction;
  FinMap relabel;         // new label of each element of Z (a bijection in Fin)
  FinMap iso;             // Z -> Z' in the base category
  Structure ordered;      // Z'
  FinMap orderedAnchor;   // Z' -> G(M)
  std::optional<Verdict> verdict;  // Z' -> (Mstruct)^(Kstruct)_r in (L, D), when feasible
};

/// K and M are structures whose carriers are the D-objects; both become
/// D-blocks anchored by identities.
SoleckiResult solecki(SoleckiVariant variant, const Structure& K, const Structure& M, std::size_t r,
                      const DSolverSpec& solver, const Config& cfg = {});

/// Hom in (L, D): G(i) for i in Hom_D(a.carrier, b.carrier) that are homomorphisms.
std::vector<FinMap> ld_homs(const Category& D, const Structure& a, const Structure& b, const Config& cfg = {});

}  // namespace partite
