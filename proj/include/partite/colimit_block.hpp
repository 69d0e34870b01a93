#pragma once

// The colimit block of a line diagram: the colimit Z of the underlying
// diagram in the base category, the anchor sigma : Z -> V, the split-mono
// data (h, u_{l,i}, v_i), and relation and function interpretations on Z.

#include <memory>
#include <string>
#include <vector>

#include "partite/config.hpp"
#include "partite/fincat.hpp"
#include "partite/lines.hpp"
#include "partite/structlang.hpp"

namespace partite {

/// Input of a line-diagram colimit: X is anchored at U = dom(i0), Y at V = cod(i0).
struct LineInstance {
  FinMap i0;
  Block X;
  Block Y;
  std::size_t N = 1;
};

struct ColimitBlock {
  LineInstance input;
  std::vector<FinMap> P;  // the i0-monomorphisms X -> Y
  LineIndex index;
  std::shared_ptr<const Diagram> diagram;
  Colimit colimit;
  Block Z;  // anchored by sigma at V
  FinMap h;  // V -> X with h . i0 . pi = Id_X
  std::vector<std::vector<FinMap>> u;  // u[line][i] : Y -> Y
  std::vector<FinMap> v;               // v[i] : Z -> Y

  const FinMap& tuple_leg(std::size_t t) const { return colimit.cocone.legs[index.tuple_object(t)]; }
  const FinMap& line_leg(std::size_t l) const { return colimit.cocone.legs[index.line_object(l)]; }
  const FinMap& sigma() const { return Z.anchor; }
};

/// Relations are the union over `relationSources` of leg . R^{S}; function
/// symbols are evaluated lazily as mediators of the cocone with legs
/// F^{S}(gamma . leg_S). perObject[o] is the structure sitting at index object o.
Structure lift_structure(std::shared_ptr<const Language> language, const Cocone& colimit,
                         const std::vector<std::shared_ptr<const Structure>>& perObject,
                         const std::vector<bool>& relationSources);

/// Builds the colimit block following the construction step by step and checks
/// every structural invariant before returning. PreconditionFailed when i0 has
/// no left inverse or X is not monic.
ColimitBlock construct_colimit_block(const LineInstance& in, const Config& cfg = {});

/// Violations of the cocone, anchor and split-mono equations (empty when all hold).
std::vector<std::string> colimit_block_violations(const ColimitBlock& cb);

/// Every f_l is a homomorphism Y -> Z and every f_e a homomorphism X -> Z.
bool verify_homomorphism_legs(const ColimitBlock& cb, const Config& cfg = {});

/// Pairs (line, eta) where R^Z(f_l . eta) and R^Y(eta) disagree.
std::vector<std::string> relation_reflection_violations(const ColimitBlock& cb, const Config& cfg = {});

/// A cocone over the line diagram in Bl_{i0}: apex block anchored at V, one
/// leg per index object.
struct BlockCocone {
  Block apex;
  std::vector<FinMap> legs;
};

/// The unique mediator Z -> W, checked to be an Id_V-homomorphism of blocks.
/// NotACocone when `other` is not a cocone in Bl_{i0}.
FinMap verify_colimit_in_Bl(const ColimitBlock& cb, const BlockCocone& other, const Config& cfg = {});

}  // namespace partite
