#pragma once

// Languages whose arities are objects of a base category, structures over
// them, blocks (a structure with an anchor morphism), and the local
// homomorphism notions used by the block categories Bl_{i0} and Bl_D.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "partite/config.hpp"
#include "partite/fincat.hpp"

namespace partite {

struct RelationSymbol {
  std::string name;
  std::size_t arity = 0;
};

struct FunctionSymbol {
  std::string name;
  std::size_t from = 0;  // r in the arity (r, s)
  std::size_t to = 0;    // s
};

struct Language {
  Category base = Category::fin();
  std::vector<RelationSymbol> relations;
  std::vector<FunctionSymbol> functions;

  /// SchemaError unless the base is Fin or Fin^op and symbol names are unique.
  void validate() const;
  bool empty() const { return relations.empty() && functions.empty(); }
};

/// F^X as a map from indices into Hom(X, r) to indices into Hom(X, s), both in
/// hom_enumerate order. Either an explicit table or a memoised evaluator; the
/// memo is guarded so concurrent callers see one consistent value per key.
class FuncInterp {
 public:
  using Evaluator = std::function<std::uint64_t(std::uint64_t)>;

  FuncInterp() = default;
  static FuncInterp table(std::vector<std::uint64_t> values);
  static FuncInterp lazy(std::uint64_t domain, Evaluator eval);

  std::uint64_t domain_size() const;
  std::uint64_t operator()(std::uint64_t index) const;
  bool eager() const;
  /// The full table (evaluating every entry of a lazy interpretation).
  std::vector<std::uint64_t> materialize() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

struct Structure {
  std::shared_ptr<const Language> language;
  std::size_t carrier = 0;
  /// Per relation symbol: sorted, duplicate-free members of Hom(arity, carrier).
  std::vector<std::vector<FinMap>> relations;
  std::vector<FuncInterp> functions;

  /// A structure with empty relations and every function symbol unset.
  static Structure bare(std::shared_ptr<const Language> language, std::size_t carrier);

  bool related(std::size_t rel, const FinMap& eta) const;
  /// F^X(gamma) for gamma in Hom(carrier, r), as a morphism carrier -> s.
  FinMap apply(std::size_t fn, const FinMap& gamma) const;

  /// Puts every relation list in canonical order.
  void normalize();
  /// Descriptions of broken invariants; empty when the structure is well formed.
  std::vector<std::string> violations() const;
};

/// True iff f is a morphism A -> B with eta in R^A <=> f.eta in R^B for all eta
/// and F^A(gamma.f) = F^B(gamma).f for all gamma in Hom(B, r).
bool is_homomorphism(const FinMap& f, const Structure& A, const Structure& B, const Config& cfg = {});

struct Block {
  Structure structure;
  std::size_t anchorTarget = 0;
  FinMap anchor;  // carrier -> anchorTarget in the base category

  const Category& base() const { return structure.language->base; }
  std::vector<std::string> violations() const;
};

/// A block together with an object of D; the anchor lands in G(dObject).
struct DBlock {
  Block block;
  std::size_t dObject = 0;
};

/// The forgetful functor D -> C. Objects and arrow tables pass through
/// unchanged; only (Fin,<=) -> Fin, (Fin,<=*)^op -> Fin^op and identity
/// functors are accepted.
struct Functor {
  Category source = Category::fin();
  Category target = Category::fin();

  Functor() = default;
  Functor(Category source_, Category target_);
  std::size_t object(std::size_t k) const { return k; }
  FinMap arrow(const FinMap& i) const { return i; }
};

/// is_homomorphism(f) and rho . f = i0 . pi.
bool is_i0_homomorphism(const FinMap& f, const Block& X, const Block& Y, const FinMap& i0,
                        const Config& cfg = {});

/// Every i0-homomorphism X -> Y that has a left inverse, in hom_enumerate order.
std::vector<FinMap> enumerate_i0_monos(const Block& X, const Block& Y, const FinMap& i0,
                                       const Config& cfg = {});

bool is_monic_block(const Block& X, const Config& cfg = {});

/// The least i in Hom_D(K, L) for which f is a G(i)-monomorphism, if any.
std::optional<FinMap> is_dblock_morphism(const FinMap& f, const DBlock& X, const DBlock& Y,
                                         const Functor& G, const Config& cfg = {});

/// Objects of Bl_{i0} split by the target of their anchor.
enum class BlSide { Domain, Codomain };

/// Morphisms of Bl_{i0}: domain -> codomain are i0-homomorphisms, domain ->
/// domain Id_U-homomorphisms, codomain -> codomain Id_V-homomorphisms, and
/// there are none from codomain to domain objects.
bool is_bl_morphism(const FinMap& f, const Block& X, BlSide xs, const Block& Y, BlSide ys,
                    const FinMap& i0, const Config& cfg = {});

/// Copy of the structure transported along an isomorphism f: A -> B of the
/// base category with inverse finv, so that f becomes a homomorphism.
Structure transport(const Structure& A, const FinMap& f, const FinMap& finv, std::size_t newCarrier);

}  // namespace partite
