#include "partite/structlang.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_map>

#include "partite/error.hpp"

namespace partite {

void Language::validate() const {
  if (base.kind != CatKind::Fin && base.kind != CatKind::FinOp) {
    throw Error(ErrorCode::SchemaError, "language base must be Fin or FinOp, got " + to_string(base));
  }
  std::set<std::string> names;
  for (const auto& r : relations) {
    if (!names.insert(r.name).second) throw Error(ErrorCode::SchemaError, "duplicate symbol " + r.name);
  }
  for (const auto& f : functions) {
    if (!names.insert(f.name).second) throw Error(ErrorCode::SchemaError, "duplicate symbol " + f.name);
  }
}

struct FuncInterp::State {
  std::uint64_t domain = 0;
  std::vector<std::uint64_t> values;  // eager table
  Evaluator eval;
  mutable std::mutex mu;
  mutable std::unordered_map<std::uint64_t, std::uint64_t> memo;
};

FuncInterp FuncInterp::table(std::vector<std::uint64_t> values) {
  FuncInterp out;
  out.state_ = std::make_shared<State>();
  out.state_->domain = values.size();
  out.state_->values = std::move(values);
  return out;
}

FuncInterp FuncInterp::lazy(std::uint64_t domain, Evaluator eval) {
  FuncInterp out;
  out.state_ = std::make_shared<State>();
  out.state_->domain = domain;
  out.state_->eval = std::move(eval);
  return out;
}

std::uint64_t FuncInterp::domain_size() const { return state_ ? state_->domain : 0; }

bool FuncInterp::eager() const { return state_ && !state_->eval; }

std::uint64_t FuncInterp::operator()(std::uint64_t index) const {
  if (!state_) throw Error(ErrorCode::TypeMismatch, "function symbol has no interpretation");
  if (index >= state_->domain) throw Error(ErrorCode::TypeMismatch, "function argument out of range");
  if (!state_->eval) return state_->values[index];
  {
    std::lock_guard lock(state_->mu);
    const auto it = state_->memo.find(index);
    if (it != state_->memo.end()) return it->second;
  }
  // Evaluate outside the lock; a racing fill computes the same value.
  const std::uint64_t v = state_->eval(index);
  std::lock_guard lock(state_->mu);
  return state_->memo.emplace(index, v).first->second;
}

std::vector<std::uint64_t> FuncInterp::materialize() const {
  if (eager()) return state_->values;
  std::vector<std::uint64_t> out(domain_size());
  for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = (*this)(i);
  return out;
}

Structure Structure::bare(std::shared_ptr<const Language> language, std::size_t carrier) {
  Structure s;
  s.relations.resize(language->relations.size());
  s.functions.resize(language->functions.size());
  s.language = std::move(language);
  s.carrier = carrier;
  return s;
}

bool Structure::related(std::size_t rel, const FinMap& eta) const {
  const auto& members = relations.at(rel);
  return std::binary_search(members.begin(), members.end(), eta);
}

FinMap Structure::apply(std::size_t fn, const FinMap& gamma) const {
  const auto& sym = language->functions.at(fn);
  const Category& base = language->base;
  const std::uint64_t in = hom_index(base, carrier, sym.from, gamma);
  return hom_at(base, carrier, sym.to, functions.at(fn)(in));
}

void Structure::normalize() {
  for (auto& members : relations) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
}

std::vector<std::string> Structure::violations() const {
  std::vector<std::string> out;
  if (!language) return {"structure has no language"};
  const Category& base = language->base;
  if (relations.size() != language->relations.size()) out.push_back("wrong number of relation interpretations");
  if (functions.size() != language->functions.size()) out.push_back("wrong number of function interpretations");
  if (!out.empty()) return out;
  for (std::size_t r = 0; r < relations.size(); ++r) {
    const auto& sym = language->relations[r];
    for (const auto& eta : relations[r]) {
      if (!is_morphism(base, eta, sym.arity, carrier)) {
        out.push_back("member of " + sym.name + " is not a morphism from its arity into the carrier");
      }
    }
    if (!std::is_sorted(relations[r].begin(), relations[r].end()) ||
        std::adjacent_find(relations[r].begin(), relations[r].end()) != relations[r].end()) {
      out.push_back("interpretation of " + sym.name + " is not canonical");
    }
  }
  for (std::size_t f = 0; f < functions.size(); ++f) {
    const auto& sym = language->functions[f];
    const std::uint64_t dom_size = hom_count(base, carrier, sym.from);
    if (functions[f].domain_size() != dom_size) {
      out.push_back("interpretation of " + sym.name + " is not total on Hom(X, r)");
      continue;
    }
    if (functions[f].eager()) {
      const std::uint64_t cod_size = hom_count(base, carrier, sym.to);
      for (std::uint64_t v : functions[f].materialize()) {
        if (v >= cod_size) {
          out.push_back("interpretation of " + sym.name + " leaves Hom(X, s)");
          break;
        }
      }
    }
  }
  return out;
}

bool is_homomorphism(const FinMap& f, const Structure& A, const Structure& B, const Config& cfg) {
  if (A.language != B.language && !(A.language && B.language && A.language->base == B.language->base &&
                                     A.language->relations.size() == B.language->relations.size() &&
                                     A.language->functions.size() == B.language->functions.size())) {
    throw Error(ErrorCode::TypeMismatch, "structures are over different languages");
  }
  const Language& L = *A.language;
  const Category& base = L.base;
  if (!is_morphism(base, f, A.carrier, B.carrier)) return false;
  for (std::size_t r = 0; r < L.relations.size(); ++r) {
    bool ok = true;
    for_each_hom(base, L.relations[r].arity, A.carrier, cfg, [&](const FinMap& eta) {
      ok = A.related(r, eta) == B.related(r, compose(base, f, eta));
      return ok;
    });
    if (!ok) return false;
  }
  for (std::size_t fn = 0; fn < L.functions.size(); ++fn) {
    bool ok = true;
    for_each_hom(base, B.carrier, L.functions[fn].from, cfg, [&](const FinMap& gamma) {
      ok = A.apply(fn, compose(base, gamma, f)) == compose(base, B.apply(fn, gamma), f);
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

std::vector<std::string> Block::violations() const {
  auto out = structure.violations();
  if (!out.empty()) return out;
  if (!is_morphism(base(), anchor, structure.carrier, anchorTarget)) {
    out.push_back("anchor is not a morphism from the carrier to the anchor target");
  }
  return out;
}

Functor::Functor(Category source_, Category target_) : source(source_), target(target_) {
  const bool ok = source == target || (source.kind == CatKind::FinLE && target.kind == CatKind::Fin) ||
                  (source.kind == CatKind::FinLEStarOp && target.kind == CatKind::FinOp);
  if (!ok) {
    throw Error(ErrorCode::TypeMismatch, "no forgetful functor " + to_string(source) + " -> " + to_string(target));
  }
}

bool is_i0_homomorphism(const FinMap& f, const Block& X, const Block& Y, const FinMap& i0, const Config& cfg) {
  const Category& base = X.base();
  if (!is_morphism(base, i0, X.anchorTarget, Y.anchorTarget)) {
    throw Error(ErrorCode::TypeMismatch, "i0 does not run between the anchor targets");
  }
  if (!is_morphism(base, f, X.structure.carrier, Y.structure.carrier)) return false;
  if (compose(base, Y.anchor, f) != compose(base, i0, X.anchor)) return false;
  return is_homomorphism(f, X.structure, Y.structure, cfg);
}

std::vector<FinMap> enumerate_i0_monos(const Block& X, const Block& Y, const FinMap& i0, const Config& cfg) {
  const Category& base = X.base();
  if (!is_morphism(base, i0, X.anchorTarget, Y.anchorTarget)) {
    throw Error(ErrorCode::TypeMismatch, "i0 does not run between the anchor targets");
  }
  std::vector<FinMap> out;
  const auto keep = [&](const FinMap& f) {
    if (is_i0_homomorphism(f, X, Y, i0, cfg) && left_inverse_search(base, f, cfg)) out.push_back(f);
  };
  const std::size_t nx = X.structure.carrier;
  const std::size_t ny = Y.structure.carrier;

  if (base.kind == CatKind::Fin) {
    // The anchor square pins f(x) to the fiber of rho over i0(pi(x)); walk the
    // product of fibers in lexicographic order.
    std::vector<std::vector<Elem>> fiber(nx);
    std::uint64_t total = 1;
    for (std::size_t x = 0; x < nx; ++x) {
      const Elem want = i0(X.anchor(static_cast<Elem>(x)));
      for (std::size_t y = 0; y < ny; ++y) {
        if (Y.anchor(static_cast<Elem>(y)) == want) fiber[x].push_back(static_cast<Elem>(y));
      }
      total = fiber[x].empty() ? 0 : (total > cfg.maxHomSet ? total : total * fiber[x].size());
    }
    if (total > cfg.maxHomSet) throw Error(ErrorCode::BoundExceeded, "i0-homomorphism candidates exceed maxHomSet");
    if (total == 0) return out;
    std::vector<std::size_t> pos(nx, 0);
    FinMap f(nx, ny, std::vector<Elem>(nx));
    while (true) {
      for (std::size_t x = 0; x < nx; ++x) f.table[x] = fiber[x][pos[x]];
      keep(f);
      std::size_t i = nx;
      while (i > 0 && pos[i - 1] + 1 == fiber[i - 1].size()) --i;
      if (i == 0) break;
      ++pos[i - 1];
      std::fill(pos.begin() + static_cast<std::ptrdiff_t>(i), pos.end(), 0);
    }
    return out;
  }
  for_each_hom(base, nx, ny, cfg, [&](const FinMap& f) {
    keep(f);
    return true;
  });
  return out;
}

bool is_monic_block(const Block& X, const Config& cfg) {
  return left_inverse_search(X.base(), X.anchor, cfg).has_value();
}

std::optional<FinMap> is_dblock_morphism(const FinMap& f, const DBlock& X, const DBlock& Y, const Functor& G,
                                         const Config& cfg) {
  std::optional<FinMap> found;
  for_each_hom(G.source, X.dObject, Y.dObject, cfg, [&](const FinMap& i) {
    const FinMap gi = G.arrow(i);
    if (is_i0_homomorphism(f, X.block, Y.block, gi, cfg) && left_inverse_search(X.block.base(), f, cfg)) {
      found = i;
      return false;
    }
    return true;
  });
  return found;
}

bool is_bl_morphism(const FinMap& f, const Block& X, BlSide xs, const Block& Y, BlSide ys, const FinMap& i0,
                    const Config& cfg) {
  const Category& base = X.base();
  if (xs == BlSide::Codomain && ys == BlSide::Domain) return false;
  if (xs == BlSide::Domain && ys == BlSide::Codomain) return is_i0_homomorphism(f, X, Y, i0, cfg);
  const std::size_t side_object = xs == BlSide::Domain ? dom(base, i0) : cod(base, i0);
  if (X.anchorTarget != side_object || Y.anchorTarget != side_object) return false;
  return is_i0_homomorphism(f, X, Y, identity(base, side_object), cfg);
}

Structure transport(const Structure& A, const FinMap& f, const FinMap& finv, std::size_t newCarrier) {
  const Language& L = *A.language;
  const Category& base = L.base;
  if (!is_morphism(base, f, A.carrier, newCarrier) || !is_morphism(base, finv, newCarrier, A.carrier) ||
      compose(base, finv, f) != identity(base, A.carrier) || compose(base, f, finv) != identity(base, newCarrier)) {
    throw Error(ErrorCode::TypeMismatch, "transport needs an isomorphism and its inverse");
  }
  Structure B = Structure::bare(A.language, newCarrier);
  for (std::size_t r = 0; r < L.relations.size(); ++r) {
    for (const auto& eta : A.relations[r]) B.relations[r].push_back(compose(base, f, eta));
  }
  B.normalize();
  for (std::size_t fn = 0; fn < L.functions.size(); ++fn) {
    const auto& sym = L.functions[fn];
    const std::uint64_t domain = hom_count(base, newCarrier, sym.from);
    B.functions[fn] = FuncInterp::lazy(domain, [A, f, finv, fn, sym, base, newCarrier](std::uint64_t idx) {
      const FinMap gamma = hom_at(base, newCarrier, sym.from, idx);
      const FinMap value = compose(base, A.apply(fn, compose(base, gamma, f)), finv);
      return hom_index(base, newCarrier, sym.to, value);
    });
  }
  return B;
}

}  // namespace partite
