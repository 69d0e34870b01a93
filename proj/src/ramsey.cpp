#include "partite/ramsey.hpp"

#include <algorithm>
#include <map>

#include "partite/error.hpp"

namespace partite {

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::VerifiedExhaustively: return "verified-exhaustively";
    case VerdictKind::NoCounterexampleFound: return "no-counterexample-found";
    case VerdictKind::Refuted: return "refuted";
  }
  return "?";
}

SearchMode search_mode_from_string(const std::string& s) {
  if (s == "exhaustive") return SearchMode::Exhaustive;
  if (s == "sampled") return SearchMode::Sampled;
  throw Error(ErrorCode::SchemaError, "unknown search mode '" + s + "'");
}

namespace {

std::string table_label(const FinMap& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.table.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m.table[i]);
  }
  return out + "]";
}

}  // namespace

Verdict check_coloring_problem(const ColoringProblem& p, std::size_t r, SearchMode mode, const Config& cfg) {
  if (r == 0) throw Error(ErrorCode::PreconditionFailed, "colour count must be positive");
  Verdict v;
  v.r = r;
  if (mode == SearchMode::Exhaustive) {
    if (coloring_count(p.points, r) > cfg.maxColorings) {
      throw Error(ErrorCode::BoundExceeded, std::to_string(r) + "^" + std::to_string(p.points) +
                                                " colourings exceed maxColorings");
    }
    v.counterexample = least_counterexample(p, r, cfg.thread_count());
    v.kind = v.counterexample ? VerdictKind::Refuted : VerdictKind::VerifiedExhaustively;
  } else {
    const SampleOutcome s = sampled_counterexample(p, r, cfg.sampleTrials, cfg.rngSeed, cfg.thread_count());
    v.counterexample = s.counterexample;
    v.trials = cfg.sampleTrials;
    v.seed = cfg.rngSeed;
    v.kind = v.counterexample ? VerdictKind::Refuted : VerdictKind::NoCounterexampleFound;
  }
  if (v.counterexample) {
    if (monochromatic_copy(p, *v.counterexample)) {
      throw Error(ErrorCode::InternalInconsistency, "reported counterexample has a monochromatic copy");
    }
  } else {
    v.witness = monochromatic_copy(p, std::vector<std::uint32_t>(p.points, 0));
    if (!v.witness) throw Error(ErrorCode::InternalInconsistency, "holding verdict without a witness copy");
  }
  return v;
}

RamseyProblem ramsey_problem(const Category& cat, std::size_t A, std::size_t B, std::size_t C, const Config& cfg) {
  RamseyProblem rp;
  rp.cat = cat;
  rp.A = A;
  rp.B = B;
  rp.C = C;
  if (cat.kind == CatKind::HJ) {
    if (A != 0 || B != 1) throw Error(ErrorCode::TypeMismatch, "HJ(P) checks support A = 0, B = 1 only");
    const std::size_t k = cat.alphabet;
    const std::uint64_t points = tuple_count(k, C);
    if (points > cfg.maxHomSet) throw Error(ErrorCode::BoundExceeded, "P^N exceeds maxHomSet");
    rp.problem.points = points;
    for (std::uint64_t t = 0; t < points; ++t) rp.pointLabels.push_back(encode(tuple_at(k, C, t)));
    for (const Line& l : enumerate_lines(k, C, cfg)) {
      std::vector<std::uint32_t> copy;
      for (Letter a = 0; a < k; ++a) copy.push_back(static_cast<std::uint32_t>(tuple_index(hj_compose(l, a), k)));
      rp.problem.copies.push_back(std::move(copy));
      rp.copyLabels.push_back(encode(l));
    }
    rp.problem.normalize();
    return rp;
  }
  rp.homAB = hom_enumerate(cat, A, B, cfg);
  rp.homAC = hom_enumerate(cat, A, C, cfg);
  rp.homBC = hom_enumerate(cat, B, C, cfg);
  if (rp.homAB.size() * rp.homBC.size() > cfg.maxProduct) {
    throw Error(ErrorCode::BoundExceeded, "copy table exceeds maxProduct");
  }
  rp.problem.points = rp.homAC.size();
  for (const auto& m : rp.homAC) rp.pointLabels.push_back(table_label(m));
  for (const auto& g : rp.homBC) {
    std::vector<std::uint32_t> copy;
    for (const auto& f : rp.homAB) copy.push_back(static_cast<std::uint32_t>(hom_index(cat, A, C, compose(cat, g, f))));
    rp.problem.copies.push_back(std::move(copy));
    rp.copyLabels.push_back(table_label(g));
  }
  rp.problem.normalize();
  return rp;
}

Verdict is_ramsey_witness(const Category& cat, std::size_t A, std::size_t B, std::size_t C, std::size_t r,
                          SearchMode mode, const Config& cfg) {
  return check_coloring_problem(ramsey_problem(cat, A, B, C, cfg).problem, r, mode, cfg);
}

// ---------------------------------------------------------------------------

TransferResult transfer_resolve(const TransferInput& in, const ColorFn& chi, const CSolver& solverC) {
  const TransferIndex& idx = in.index;
  if (in.F.size() != idx.homAB) throw Error(ErrorCode::TypeMismatch, "F must be given on all of Hom_C(A,B)");
  std::vector<bool> hit(in.homDE.size(), false);
  for (std::uint64_t f : in.F) {
    if (f >= in.homDE.size()) throw Error(ErrorCode::TypeMismatch, "F leaves Hom_D(D,E)");
    hit[f] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    throw Error(ErrorCode::NotSurjective, "F does not reach every morphism of Hom_D(D,E)");
  }
  if (in.hLegs.size() != idx.homAC || in.gLegs.size() != idx.homBC) {
    throw Error(ErrorCode::NotACocone, "wrong number of legs");
  }
  for (const auto& leg : in.hLegs) {
    if (!is_morphism(in.dCat, leg, in.D, in.W)) throw Error(ErrorCode::NotACocone, "leg D -> W has the wrong type");
  }
  for (const auto& leg : in.gLegs) {
    if (!is_morphism(in.dCat, leg, in.E, in.W)) throw Error(ErrorCode::NotACocone, "leg E -> W has the wrong type");
  }
  for (const auto& a : idx.arrows) {
    if (compose(in.dCat, in.gLegs[a.g], in.homDE[in.F[a.f]]) != in.hLegs[a.h]) {
      throw Error(ErrorCode::NotACocone, "phi_g . F(f) != phi_h for a factorization g . f = h");
    }
  }

  TransferResult out;
  out.chiPrime.reserve(in.hLegs.size());
  for (const auto& leg : in.hLegs) out.chiPrime.push_back(chi(leg));
  const auto g = solverC(out.chiPrime);
  if (!g || *g >= idx.homBC) throw Error(ErrorCode::SolverFailed, "no monochromatic g in the source category");
  out.g = *g;
  out.leg = in.gLegs[*g];
  bool first = true;
  for (const auto& j : in.homDE) {
    const std::uint32_t c = chi(compose(in.dCat, out.leg, j));
    if (first) {
      out.color = c;
      first = false;
    } else if (c != out.color) {
      throw Error(ErrorCode::InternalInconsistency, "transferred leg is not monochromatic");
    }
  }
  return out;
}

CSolver hj_line_finder(std::size_t alphabet, std::size_t n) {
  auto lines = std::make_shared<std::vector<Line>>(enumerate_lines(alphabet, n, Config{.maxHomSet = ~0ull}));
  return [lines, alphabet](const std::vector<std::uint32_t>& colors) -> std::optional<std::uint64_t> {
    for (std::size_t l = 0; l < lines->size(); ++l) {
      bool mono = true;
      std::optional<std::uint32_t> c;
      for (Letter a = 0; a < alphabet && mono; ++a) {
        const std::uint32_t x = colors.at(tuple_index(hj_compose((*lines)[l], a), alphabet));
        if (c && *c != x) mono = false;
        c = x;
      }
      if (mono) return l;
    }
    return std::nullopt;
  };
}

// ---------------------------------------------------------------------------

PartiteLemma partite_lemma(const FinMap& i0, const Block& X, const Block& Y, std::size_t r, const Config& cfg,
                           std::size_t nMax) {
  if (r == 0) throw Error(ErrorCode::PreconditionFailed, "colour count must be positive");
  PartiteLemma pl;
  pl.r = r;
  const auto P = enumerate_i0_monos(X, Y, i0, cfg);
  pl.hj = hj_witness_search(P.size(), r, nMax, cfg);
  pl.block = construct_colimit_block({i0, X, Y, pl.hj.n}, cfg);
  return pl;
}

LemmaResolution resolve_partite_lemma(const PartiteLemma& pl, const ColorFn& chi) {
  const ColimitBlock& cb = pl.block;
  TransferInput in;
  in.dCat = cb.input.X.base();
  in.D = cb.input.X.structure.carrier;
  in.E = cb.input.Y.structure.carrier;
  in.W = cb.Z.structure.carrier;
  in.homDE = cb.P;
  for (std::uint64_t p = 0; p < cb.P.size(); ++p) in.F.push_back(p);
  in.index = build_hj_transfer_index(cb.P.size(), cb.input.N, Config{.maxHomSet = ~0ull, .maxProduct = ~0ull});
  for (std::size_t t = 0; t < cb.index.tuples.size(); ++t) in.hLegs.push_back(cb.tuple_leg(t));
  for (std::size_t l = 0; l < cb.index.lines.size(); ++l) in.gLegs.push_back(cb.line_leg(l));
  const TransferResult tr = transfer_resolve(in, chi, hj_line_finder(cb.P.size(), cb.input.N));
  return {static_cast<std::size_t>(tr.g), tr.leg, tr.color};
}

// ---------------------------------------------------------------------------

std::size_t solve_d(const Category& D, std::size_t K, std::size_t L, std::size_t r, const DSolverSpec& spec,
                    const Config& cfg) {
  const auto holds = [&](std::size_t M) {
    return is_ramsey_witness(D, K, L, M, r, SearchMode::Exhaustive, cfg).kind == VerdictKind::VerifiedExhaustively;
  };
  if (spec.candidate) {
    if (!holds(*spec.candidate)) {
      throw Error(ErrorCode::SolverFailed, "supplied size " + std::to_string(*spec.candidate) + " is not a witness");
    }
    return *spec.candidate;
  }
  for (std::size_t M = L; M <= spec.maxSize; ++M) {
    try {
      if (holds(M)) return M;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundExceeded) throw;
      throw Error(ErrorCode::SolverFailed, "witness search stopped at size " + std::to_string(M) + ": " + e.what());
    }
  }
  throw Error(ErrorCode::SolverFailed, "no witness of size <= " + std::to_string(spec.maxSize));
}

std::vector<FinMap> bl_d_homs(const DBlock& X, const DBlock& Y, const Functor& G, const Config& cfg) {
  std::vector<FinMap> out;
  for_each_hom(G.source, X.dObject, Y.dObject, cfg, [&](const FinMap& i) {
    const auto monos = enumerate_i0_monos(X.block, Y.block, G.arrow(i), cfg);
    out.insert(out.end(), monos.begin(), monos.end());
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InternalInconsistency, what);
}

}  // namespace

PartiteConstruction partite_construction(const Functor& G, const DBlock& X, const DBlock& Y, std::size_t r,
                                         const DSolverSpec& solver, const Config& cfg) {
  const Category base = X.block.base();
  if (base != G.target) throw Error(ErrorCode::TypeMismatch, "block base category differs from the functor target");
  if (X.block.structure.language != Y.block.structure.language) {
    throw Error(ErrorCode::TypeMismatch, "X and Y must share a language");
  }
  if (X.block.anchorTarget != G.object(X.dObject) || Y.block.anchorTarget != G.object(Y.dObject)) {
    throw Error(ErrorCode::PreconditionFailed, "D-block anchors must land in G of their D-object");
  }
  if (!is_monic_block(X.block, cfg)) throw Error(ErrorCode::PreconditionFailed, "X is not monic");
  if (r == 0) throw Error(ErrorCode::PreconditionFailed, "colour count must be positive");

  PartiteConstruction pc;
  pc.G = G;
  pc.X = X;
  pc.Y = Y;
  pc.r = r;
  const std::size_t K = X.dObject;
  const std::size_t L = Y.dObject;
  pc.M = solve_d(G.source, K, L, r, solver, cfg);
  pc.dProblem = ramsey_problem(G.source, K, L, pc.M, cfg);
  const std::size_t GM = G.object(pc.M);

  // Y_0: one copy of Y per i in Hom_D(L, M).
  const auto& homLM = pc.dProblem.homBC;
  auto index = std::make_shared<IndexCategory>();
  for (const auto& i : homLM) index->add_object(table_label(i));
  pc.y0Diagram = std::make_shared<const Diagram>(
      Diagram::with_identities(index, base, std::vector<std::size_t>(homLM.size(), Y.block.structure.carrier)));
  pc.y0Colimit = colimit(pc.y0Diagram, cfg);
  Cocone toGM{pc.y0Diagram, GM, {}};
  for (const auto& i : homLM) toGM.legs.push_back(compose(base, G.arrow(i), Y.block.anchor));
  const auto Ys = std::make_shared<const Structure>(Y.block.structure);
  pc.Y0.structure = lift_structure(Y.block.structure.language, pc.y0Colimit.cocone,
                                   std::vector<std::shared_ptr<const Structure>>(homLM.size(), Ys),
                                   std::vector<bool>(homLM.size(), true));
  pc.Y0.anchorTarget = GM;
  pc.Y0.anchor = universal_morphism(pc.y0Colimit.cocone, toGM);
  for (std::size_t k = 0; k < homLM.size(); ++k) {
    require(is_i0_homomorphism(pc.h(k), Y.block, pc.Y0, G.arrow(homLM[k]), cfg) &&
                left_inverse_search(base, pc.h(k), cfg).has_value(),
            "h_i is not a G(i)-monomorphism");
  }

  pc.j = pc.dProblem.homAC;  // Hom_D(K, M)
  for (const auto& jk : pc.j) {
    pc.steps.push_back(partite_lemma(G.arrow(jk), X.block, pc.tower(pc.steps.size()), r, cfg));
  }
  return pc;
}

ConstructionResolution resolve_partite_construction(const PartiteConstruction& pc, const ColorFn& chi,
                                                    const Config& cfg) {
  const Category base = pc.X.block.base();
  const std::size_t n = pc.height();
  const Block& Yn = pc.tower(n);
  ConstructionResolution res;
  res.g.resize(n);

  FinMap suffix = identity(base, Yn.structure.carrier);  // Y_{k+1} -> Y_n
  for (std::size_t k = n; k > 0; --k) {
    const PartiteLemma& step = pc.steps[k - 1];
    const ColorFn chik = [&](const FinMap& f) { return chi(compose(base, suffix, f)); };
    const LemmaResolution lr = resolve_partite_lemma(step, chik);
    res.g[k - 1] = lr.leg;
    suffix = compose(base, suffix, lr.leg);
  }
  res.gTotal = suffix;

  for (const auto& jk : pc.j) {
    std::optional<std::uint32_t> color;
    for (const auto& f : enumerate_i0_monos(pc.X.block, pc.Y0, pc.G.arrow(jk), cfg)) {
      const std::uint32_t c = chi(compose(base, res.gTotal, f));
      if (color && *color != c) {
        throw Error(ErrorCode::ChiPrimeIllDefined, "maps over j = " + table_label(jk) + " receive different colours");
      }
      color = c;
    }
    res.chiPrime.push_back(color.value_or(0));
  }

  const auto copy = monochromatic_copy(pc.dProblem.problem, res.chiPrime);
  if (!copy) throw Error(ErrorCode::SolverFailed, "no monochromatic copy of L in M under the induced colouring");
  res.i0 = *copy;
  res.witness = compose(base, res.gTotal, pc.h(res.i0));

  bool first = true;
  for (const auto& f : bl_d_homs(pc.X, pc.Y, pc.G, cfg)) {
    const std::uint32_t c = chi(compose(base, res.witness, f));
    if (first) {
      res.color = c;
      first = false;
    } else {
      require(c == res.color, "final embedding is not monochromatic");
    }
  }
  return res;
}

std::vector<std::string> tower_violations(const PartiteConstruction& pc, const ConstructionResolution& res,
                                          const Config& cfg) {
  std::vector<std::string> out;
  const Category base = pc.X.block.base();
  const FinMap idM = identity(base, pc.G.object(pc.M));
  for (std::size_t k = 0; k < res.g.size(); ++k) {
    if (!is_i0_homomorphism(res.g[k], pc.tower(k), pc.tower(k + 1), idM, cfg) ||
        !left_inverse_search(base, res.g[k], cfg)) {
      out.push_back("g_" + std::to_string(k) + " is not an Id_M-monomorphism");
    }
  }
  FinMap total = identity(base, pc.Y0.structure.carrier);
  for (const auto& gk : res.g) total = compose(base, gk, total);
  if (total != res.gTotal) out.push_back("recorded composite differs from the recomputed one");
  if (res.witness != compose(base, res.gTotal, pc.h(res.i0))) out.push_back("witness is not g . h_{i0}");
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(SoleckiVariant v) { return v == SoleckiVariant::Direct ? "direct" : "dual"; }

SoleckiVariant solecki_variant_from_string(const std::string& s) {
  if (s == "direct") return SoleckiVariant::Direct;
  if (s == "dual") return SoleckiVariant::Dual;
  throw Error(ErrorCode::SchemaError, "unknown variant '" + s + "'");
}

std::vector<FinMap> ld_homs(const Category& D, const Structure& a, const Structure& b, const Config& cfg) {
  std::vector<FinMap> out;
  for_each_hom(D, a.carrier, b.carrier, cfg, [&](const FinMap& i) {
    if (is_homomorphism(i, a, b, cfg)) out.push_back(i);
    return true;
  });
  return out;
}

SoleckiResult solecki(SoleckiVariant variant, const Structure& K, const Structure& M, std::size_t r,
                      const DSolverSpec& solver, const Config& cfg) {
  const Category base = K.language->base;
  const Category D = variant == SoleckiVariant::Direct ? Category::fin_le() : Category::fin_le_star_op();
  const Category expected = variant == SoleckiVariant::Direct ? Category::fin() : Category::fin_op();
  if (base != expected) {
    throw Error(ErrorCode::TypeMismatch, "the " + to_string(variant) + " variant needs a language over " +
                                             to_string(expected));
  }
  const Functor G(D, base);
  const DBlock X{{K, K.carrier, identity(base, K.carrier)}, K.carrier};
  const DBlock Y{{M, M.carrier, identity(base, M.carrier)}, M.carrier};

  SoleckiResult out;
  out.variant = variant;
  out.construction = partite_construction(G, X, Y, r, solver, cfg);
  const Block Z = out.construction.Z().block;
  const std::size_t nz = Z.structure.carrier;

  // Order of the elements of Z; newLabel[z] is the position of z.
  std::vector<Elem> order(nz);
  for (std::size_t z = 0; z < nz; ++z) order[z] = static_cast<Elem>(z);
  if (variant == SoleckiVariant::Direct) {
    std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) { return Z.anchor(a) < Z.anchor(b); });
  } else {
    // The anchor's stored table runs G(M) -> Z; image elements come first,
    // ordered by their least preimage.
    std::vector<std::size_t> minPre(nz, Z.anchorTarget);
    for (std::size_t m = 0; m < Z.anchorTarget; ++m) {
      const Elem z = Z.anchor(static_cast<Elem>(m));
      minPre[z] = std::min(minPre[z], m);
    }
    std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) { return minPre[a] < minPre[b]; });
  }
  out.relabel = FinMap(nz, nz, std::vector<Elem>(nz));
  for (std::size_t pos = 0; pos < nz; ++pos) out.relabel.table[order[pos]] = static_cast<Elem>(pos);
  FinMap inverse(nz, nz, order);
  out.iso = variant == SoleckiVariant::Direct ? out.relabel : inverse;
  const FinMap isoInv = variant == SoleckiVariant::Direct ? inverse : out.relabel;
  out.ordered = transport(Z.structure, out.iso, isoInv, nz);
  if (!is_homomorphism(out.iso, Z.structure, out.ordered, cfg)) {
    throw Error(ErrorCode::InternalInconsistency, "relabelling is not a homomorphism");
  }
  out.orderedAnchor = compose(base, Z.anchor, isoInv);

  try {
    ColoringProblem problem;
    const auto points = ld_homs(D, K, out.ordered, cfg);
    const auto outer = ld_homs(D, M, out.ordered, cfg);
    const auto inner = ld_homs(D, K, M, cfg);
    problem.points = points.size();
    std::map<FinMap, std::uint32_t> pos;
    for (std::size_t p = 0; p < points.size(); ++p) pos[points[p]] = static_cast<std::uint32_t>(p);
    for (const auto& g : outer) {
      std::vector<std::uint32_t> copy;
      for (const auto& f : inner) copy.push_back(pos.at(compose(D, g, f)));
      problem.copies.push_back(std::move(copy));
    }
    problem.normalize();
    out.verdict = check_coloring_problem(problem, r, SearchMode::Exhaustive, cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BoundExceeded) throw;
  }
  return out;
}

}  // namespace partite
