#pragma once

// Finite-category kernel: concrete categories backed by finite maps, explicit
// finite index categories, diagrams, cocones, and colimits in Fin and Fin^op.
//
// Objects of every Fin-backed category are canonical carriers {0..n-1}, so an
// object is just its size. A morphism is always stored as a FinMap, a total
// table of a function between carriers. For the reversed categories (Fin^op
// and (Fin,<=*)^op) an arrow A -> B is the FinMap B -> A.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "partite/config.hpp"

namespace partite {

using Elem = std::uint32_t;

enum class CatKind { Fin, FinOp, FinLE, FinLEStarOp, HJ };

struct Category {
  CatKind kind = CatKind::Fin;
  std::size_t alphabet = 0;  // |P| for HJ(P)

  static constexpr Category fin() { return {CatKind::Fin, 0}; }
  static constexpr Category fin_op() { return {CatKind::FinOp, 0}; }
  static constexpr Category fin_le() { return {CatKind::FinLE, 0}; }
  static constexpr Category fin_le_star_op() { return {CatKind::FinLEStarOp, 0}; }
  static constexpr Category hj(std::size_t alphabet) { return {CatKind::HJ, alphabet}; }

  /// True when arrows are stored as tables in the reversed direction.
  bool reversed() const { return kind == CatKind::FinOp || kind == CatKind::FinLEStarOp; }
  bool fin_backed() const { return kind != CatKind::HJ; }

  friend bool operator==(const Category&, const Category&) = default;
};

std::string to_string(const Category& cat);
Category category_from_string(const std::string& s);

struct Carrier {
  std::string id;
  std::size_t size = 0;

  std::vector<Elem> elements() const;
};

/// A total function {0..source-1} -> {0..target-1}.
struct FinMap {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<Elem> table;

  FinMap() = default;
  FinMap(std::size_t source_, std::size_t target_, std::vector<Elem> table_);

  static FinMap identity(std::size_t n);
  static FinMap constant(std::size_t source, std::size_t target, Elem value);

  Elem operator()(Elem x) const { return table[x]; }
  bool well_formed() const;

  friend bool operator==(const FinMap&, const FinMap&) = default;
  friend auto operator<=>(const FinMap&, const FinMap&) = default;
};

/// g . f in Fin (apply f first). Throws TypeMismatch when f.target != g.source.
FinMap after(const FinMap& g, const FinMap& f);

bool is_injective(const FinMap& f);
bool is_surjective(const FinMap& f);
bool is_strictly_increasing(const FinMap& f);
/// Surjective, and the image of every initial segment of the source is an
/// initial segment of the target.
bool is_rigid_surjection(const FinMap& f);

// ---------------------------------------------------------------------------
// Category operations. Defined for the four Fin-backed tags; HJ(P) arrows are
// handled by the lines module.

std::size_t dom(const Category& cat, const FinMap& m);
std::size_t cod(const Category& cat, const FinMap& m);

FinMap identity(const Category& cat, std::size_t object);

/// Categorical composite f . g (g first). TypeMismatch unless cod(g) = dom(f).
FinMap compose(const Category& cat, const FinMap& f, const FinMap& g);

/// Whether m is an arrow a -> b of the category.
bool is_morphism(const Category& cat, const FinMap& m, std::size_t a, std::size_t b);

/// |Hom(a, b)|, saturating at UINT64_MAX.
std::uint64_t hom_count(const Category& cat, std::size_t a, std::size_t b);

/// Visits Hom(a, b) in lexicographic order of the stored tables. The visitor
/// returns false to stop early. BoundExceeded if |Hom(a,b)| > cfg.maxHomSet.
void for_each_hom(const Category& cat, std::size_t a, std::size_t b, const Config& cfg,
                  const std::function<bool(const FinMap&)>& visit);

std::vector<FinMap> hom_enumerate(const Category& cat, std::size_t a, std::size_t b,
                                  const Config& cfg = {});

/// Rank of m in the lexicographic enumeration of Hom(a, b). Closed form for
/// Fin and Fin^op (mixed radix), linear search for the other tags.
std::uint64_t hom_index(const Category& cat, std::size_t a, std::size_t b, const FinMap& m);
FinMap hom_at(const Category& cat, std::size_t a, std::size_t b, std::uint64_t index);

/// Least g (in enumeration order) with g . f = id, if one exists.
std::optional<FinMap> left_inverse_search(const Category& cat, const FinMap& f,
                                          const Config& cfg = {});

// ---------------------------------------------------------------------------
// Index categories.

struct IndexArrow {
  std::string name;
  std::size_t src = 0;
  std::size_t dst = 0;
};

/// An explicitly presented finite category. Each object gets an identity arrow
/// on creation; non-identity composites are recorded in a partial table.
class IndexCategory {
 public:
  std::size_t add_object(std::string name);
  std::size_t add_arrow(std::string name, std::size_t src, std::size_t dst);
  /// Records second . first = result.
  void add_composite(std::size_t first, std::size_t second, std::size_t result);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& object_name(std::size_t o) const { return objects_.at(o); }
  const IndexArrow& arrow(std::size_t a) const { return arrows_.at(a); }
  std::size_t identity(std::size_t o) const { return identity_.at(o); }
  bool is_identity(std::size_t a) const { return is_identity_.at(a); }

  std::optional<std::size_t> find_object(const std::string& name) const;
  std::optional<std::size_t> find_arrow(const std::string& name) const;

  /// second . first, or nullopt when not composable or not recorded.
  std::optional<std::size_t> compose(std::size_t second, std::size_t first) const;

  const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& composites() const {
    return composites_;
  }

  /// Empty iff the category laws hold: every composable pair has a recorded
  /// composite with the right endpoints and composition is associative.
  std::vector<std::string> law_violations() const;

 private:
  std::vector<std::string> objects_;
  std::vector<IndexArrow> arrows_;
  std::vector<std::size_t> identity_;
  std::vector<bool> is_identity_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> composites_;
};

/// A functor from an index category into a Fin-backed category.
struct Diagram {
  std::shared_ptr<const IndexCategory> index;
  Category target;
  std::vector<std::size_t> objects;  // per index object
  std::vector<FinMap> arrows;        // per index arrow, identities included

  /// Objects mapped as given, identities mapped to identities, every other
  /// arrow left empty for the caller to fill.
  static Diagram with_identities(std::shared_ptr<const IndexCategory> index, Category target,
                                 std::vector<std::size_t> objects);
};

std::vector<std::string> functor_violations(const Diagram& d);

struct Cocone {
  std::shared_ptr<const Diagram> diagram;
  std::size_t apex = 0;
  std::vector<FinMap> legs;  // per index object, leg(S): F(S) -> apex
};

/// nullopt when leg(T) . F(f) = leg(S) for every index arrow f: S -> T and the
/// legs have the right shape; otherwise a description of the first violation.
std::optional<std::string> cocone_violation(const Cocone& c);
inline bool is_cocone(const Cocone& c) { return !cocone_violation(c).has_value(); }

struct ColimitElement {
  std::size_t object = 0;
  Elem elem = 0;
  friend bool operator==(const ColimitElement&, const ColimitElement&) = default;
  friend auto operator<=>(const ColimitElement&, const ColimitElement&) = default;
};

struct Colimit {
  Cocone cocone;
  bool universal = true;
  /// Fin: the members of the disjoint sum in each apex class.
  std::vector<std::vector<ColimitElement>> classes;
  /// Fin^op: the compatible tuple (one element per index object) of each apex element.
  std::vector<std::vector<Elem>> tuples;
};

/// Quotient of the disjoint sum by the equivalence generated by
/// (S, s) ~ (T, F(f)(s)). Apex labels follow the smallest (object, element)
/// member of each class.
Colimit colimit_fin(std::shared_ptr<const Diagram> d, const Config& cfg = {});

/// Colimit in Fin^op, i.e. the limit in Fin of the reversed diagram: compatible
/// tuples of the product in lexicographic order, legs the projections.
Colimit colimit_finop(std::shared_ptr<const Diagram> d, const Config& cfg = {});

/// Dispatches on the diagram's target category.
Colimit colimit(std::shared_ptr<const Diagram> d, const Config& cfg = {});

/// The unique m: colim.apex -> other.apex with m . leg_colim(S) = leg_other(S).
/// NotACocone if other is not a cocone; NoMediator if colim does not force a
/// unique value (a bug for colimits built here).
FinMap universal_morphism(const Cocone& colim, const Cocone& other);

/// True iff every cocone over the same diagram with apex size <= apexBound
/// has exactly one mediator from c.
bool verify_colimit(const Cocone& c, std::size_t apexBound, const Config& cfg = {});

}  // namespace partite
