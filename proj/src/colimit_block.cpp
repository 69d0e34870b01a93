#include "partite/colimit_block.hpp"

#include <limits>

#include "partite/error.hpp"

namespace partite {

Structure lift_structure(std::shared_ptr<const Language> language, const Cocone& colimit,
                         const std::vector<std::shared_ptr<const Structure>>& perObject,
                         const std::vector<bool>& relationSources) {
  const Category base = language->base;
  const std::size_t apex = colimit.apex;
  Structure Z = Structure::bare(language, apex);
  for (std::size_t r = 0; r < language->relations.size(); ++r) {
    for (std::size_t o = 0; o < perObject.size(); ++o) {
      if (!relationSources[o]) continue;
      for (const auto& eta : perObject[o]->relations[r]) Z.relations[r].push_back(compose(base, colimit.legs[o], eta));
    }
  }
  Z.normalize();

  for (std::size_t fn = 0; fn < language->functions.size(); ++fn) {
    const auto sym = language->functions[fn];
    const std::uint64_t domain = hom_count(base, apex, sym.from);
    const std::uint64_t codomain = hom_count(base, apex, sym.to);
    constexpr std::uint64_t sat = std::numeric_limits<std::uint64_t>::max();
    if (domain == sat || codomain == sat) {
      throw Error(ErrorCode::BoundExceeded, "hom-sets of the colimit carrier are too large to index");
    }
    Cocone cocone = colimit;
    std::vector<std::shared_ptr<const Structure>> objs = perObject;
    Z.functions[fn] = FuncInterp::lazy(domain, [cocone, objs, fn, sym, base, apex](std::uint64_t idx) {
      const FinMap gamma = hom_at(base, apex, sym.from, idx);
      Cocone target{cocone.diagram, sym.to, {}};
      for (std::size_t o = 0; o < objs.size(); ++o) {
        target.legs.push_back(objs[o]->apply(fn, compose(base, gamma, cocone.legs[o])));
      }
      const FinMap value = universal_morphism(cocone, target);
      return hom_index(base, apex, sym.to, value);
    });
  }
  return Z;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InternalInconsistency, what);
}

}  // namespace

ColimitBlock construct_colimit_block(const LineInstance& in, const Config& cfg) {
  const Block& X = in.X;
  const Block& Y = in.Y;
  const Category base = X.base();
  if (X.structure.language != Y.structure.language) {
    throw Error(ErrorCode::TypeMismatch, "X and Y must share a language");
  }
  if (base.kind != CatKind::Fin && base.kind != CatKind::FinOp) {
    throw Error(ErrorCode::TypeMismatch, "line-diagram colimits need base Fin or FinOp");
  }
  if (in.N == 0) throw Error(ErrorCode::PreconditionFailed, "N must be positive");
  for (const auto* b : {&X, &Y}) {
    const auto v = b->violations();
    if (!v.empty()) throw Error(ErrorCode::SchemaError, v.front());
  }
  if (!is_morphism(base, in.i0, X.anchorTarget, Y.anchorTarget)) {
    throw Error(ErrorCode::TypeMismatch, "i0 must run from the anchor target of X to that of Y");
  }
  const auto i0_inv = left_inverse_search(base, in.i0, cfg);
  if (!i0_inv) throw Error(ErrorCode::PreconditionFailed, "i0 has no left inverse");
  const auto pi_inv = left_inverse_search(base, X.anchor, cfg);
  if (!pi_inv) throw Error(ErrorCode::PreconditionFailed, "X is not a monic block");

  ColimitBlock cb;
  cb.input = in;
  cb.P = enumerate_i0_monos(X, Y, in.i0, cfg);
  cb.index = build_line_index(cb.P.size(), in.N, cfg);

  std::vector<std::size_t> objects(cb.index.tuples.size(), X.structure.carrier);
  objects.insert(objects.end(), cb.index.lines.size(), Y.structure.carrier);
  Diagram d = Diagram::with_identities(cb.index.category, base, std::move(objects));
  for (const auto& a : cb.index.arrows) d.arrows[a.arrow] = cb.P[a.letter];
  cb.diagram = std::make_shared<const Diagram>(std::move(d));
  cb.colimit = colimit(cb.diagram, cfg);
  const Cocone& colim = cb.colimit.cocone;

  // h . i0 . pi = Id_X
  cb.h = compose(base, *pi_inv, *i0_inv);
  require(compose(base, cb.h, compose(base, in.i0, X.anchor)) == identity(base, X.structure.carrier),
          "h . i0 . pi is not the identity");

  const std::size_t T = cb.index.tuples.size();
  const std::size_t nl = cb.index.lines.size();
  const FinMap h_rho = compose(base, cb.h, Y.anchor);
  cb.u.assign(nl, {});
  for (std::size_t l = 0; l < nl; ++l) {
    const Line& line = cb.index.lines[l];
    for (std::size_t i = 0; i < in.N; ++i) {
      cb.u[l].push_back(line.active[i] ? identity(base, Y.structure.carrier)
                                        : compose(base, cb.P[line.fixed[i]], h_rho));
    }
  }
  for (std::size_t i = 0; i < in.N; ++i) {
    Cocone ci{cb.diagram, Y.structure.carrier, std::vector<FinMap>(T + nl)};
    for (std::size_t t = 0; t < T; ++t) ci.legs[cb.index.tuple_object(t)] = cb.P[cb.index.tuples[t].letters[i]];
    for (std::size_t l = 0; l < nl; ++l) ci.legs[cb.index.line_object(l)] = cb.u[l][i];
    cb.v.push_back(universal_morphism(colim, ci));
  }

  Cocone anchors{cb.diagram, Y.anchorTarget, std::vector<FinMap>(T + nl)};
  const FinMap i0_pi = compose(base, in.i0, X.anchor);
  for (std::size_t t = 0; t < T; ++t) anchors.legs[cb.index.tuple_object(t)] = i0_pi;
  for (std::size_t l = 0; l < nl; ++l) anchors.legs[cb.index.line_object(l)] = Y.anchor;

  const auto Xs = std::make_shared<const Structure>(X.structure);
  const auto Ys = std::make_shared<const Structure>(Y.structure);
  std::vector<std::shared_ptr<const Structure>> per(T + nl);
  std::vector<bool> sources(T + nl, false);
  for (std::size_t t = 0; t < T; ++t) per[cb.index.tuple_object(t)] = Xs;
  for (std::size_t l = 0; l < nl; ++l) {
    per[cb.index.line_object(l)] = Ys;
    sources[cb.index.line_object(l)] = true;
  }
  cb.Z.structure = lift_structure(X.structure.language, colim, per, sources);
  cb.Z.anchorTarget = Y.anchorTarget;
  cb.Z.anchor = universal_morphism(colim, anchors);

  const auto v = colimit_block_violations(cb);
  require(v.empty(), v.empty() ? std::string() : v.front());
  return cb;
}

std::vector<std::string> colimit_block_violations(const ColimitBlock& cb) {
  std::vector<std::string> out;
  const Category base = cb.input.X.base();
  const auto& X = cb.input.X;
  const auto& Y = cb.input.Y;
  if (const auto c = cocone_violation(cb.colimit.cocone)) out.push_back(*c);
  const FinMap i0_pi = compose(base, cb.input.i0, X.anchor);
  const FinMap idY = identity(base, Y.structure.carrier);
  for (std::size_t l = 0; l < cb.index.lines.size(); ++l) {
    const std::string name = encode(cb.index.lines[l]);
    if (compose(base, cb.sigma(), cb.line_leg(l)) != Y.anchor) out.push_back("sigma . f_l != rho at " + name);
    for (std::size_t i = 0; i < cb.input.N; ++i) {
      const FinMap vf = compose(base, cb.v[i], cb.line_leg(l));
      if (vf != cb.u[l][i]) out.push_back("v_i . f_l != u_{l,i} at " + name);
      if (cb.index.lines[l].active[i] && vf != idY) out.push_back("v_i . f_l != Id_Y at " + name);
    }
  }
  for (std::size_t t = 0; t < cb.index.tuples.size(); ++t) {
    const std::string name = encode(cb.index.tuples[t]);
    if (compose(base, cb.sigma(), cb.tuple_leg(t)) != i0_pi) out.push_back("sigma . f_e != i0 . pi at " + name);
    for (std::size_t i = 0; i < cb.input.N; ++i) {
      if (compose(base, cb.v[i], cb.tuple_leg(t)) != cb.P[cb.index.tuples[t].letters[i]]) {
        out.push_back("v_i . f_e != e_i at " + name);
      }
    }
  }
  for (const auto& a : cb.index.arrows) {
    if (compose(base, cb.line_leg(a.line), cb.P[a.letter]) != cb.tuple_leg(a.tuple)) {
      out.push_back("f_l . l(e) != f_e at " + encode(cb.index.tuples[a.tuple]));
    }
  }
  return out;
}

bool verify_homomorphism_legs(const ColimitBlock& cb, const Config& cfg) {
  for (std::size_t l = 0; l < cb.index.lines.size(); ++l) {
    if (!is_homomorphism(cb.line_leg(l), cb.input.Y.structure, cb.Z.structure, cfg)) return false;
  }
  for (std::size_t t = 0; t < cb.index.tuples.size(); ++t) {
    if (!is_homomorphism(cb.tuple_leg(t), cb.input.X.structure, cb.Z.structure, cfg)) return false;
  }
  return true;
}

std::vector<std::string> relation_reflection_violations(const ColimitBlock& cb, const Config& cfg) {
  std::vector<std::string> out;
  const Language& L = *cb.input.X.structure.language;
  const Category base = L.base;
  for (std::size_t r = 0; r < L.relations.size(); ++r) {
    const auto etas = hom_enumerate(base, L.relations[r].arity, cb.input.Y.structure.carrier, cfg);
    for (std::size_t l = 0; l < cb.index.lines.size(); ++l) {
      for (const auto& eta : etas) {
        if (cb.Z.structure.related(r, compose(base, cb.line_leg(l), eta)) != cb.input.Y.structure.related(r, eta)) {
          out.push_back(L.relations[r].name + " at line " + encode(cb.index.lines[l]));
        }
      }
    }
  }
  return out;
}

FinMap verify_colimit_in_Bl(const ColimitBlock& cb, const BlockCocone& other, const Config& cfg) {
  const Category base = cb.input.X.base();
  const std::size_t T = cb.index.tuples.size();
  const std::size_t nl = cb.index.lines.size();
  if (other.legs.size() != T + nl) throw Error(ErrorCode::NotACocone, "wrong number of legs");
  if (other.apex.anchorTarget != cb.input.Y.anchorTarget) {
    throw Error(ErrorCode::NotACocone, "apex is not a codomain object");
  }
  const FinMap idV = identity(base, cb.input.Y.anchorTarget);
  for (std::size_t t = 0; t < T; ++t) {
    if (!is_i0_homomorphism(other.legs[cb.index.tuple_object(t)], cb.input.X, other.apex, cb.input.i0, cfg)) {
      throw Error(ErrorCode::NotACocone, "tuple leg is not an i0-homomorphism");
    }
  }
  for (std::size_t l = 0; l < nl; ++l) {
    if (!is_i0_homomorphism(other.legs[cb.index.line_object(l)], cb.input.Y, other.apex, idV, cfg)) {
      throw Error(ErrorCode::NotACocone, "line leg is not an Id_V-homomorphism");
    }
  }
  const Cocone underlying{cb.diagram, other.apex.structure.carrier, other.legs};
  const FinMap m = universal_morphism(cb.colimit.cocone, underlying);
  if (compose(base, other.apex.anchor, m) != cb.sigma()) {
    throw Error(ErrorCode::HomomorphismViolation, "internal inconsistency: mediator does not respect anchors");
  }
  if (!is_homomorphism(m, cb.Z.structure, other.apex.structure, cfg)) {
    throw Error(ErrorCode::HomomorphismViolation, "internal inconsistency: mediator is not a homomorphism");
  }
  return m;
}

}  // namespace partite
