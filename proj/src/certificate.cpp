#include "partite/certificate.hpp"

#include <algorithm>
#include <map>

#include "partite/error.hpp"

namespace partite {

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error("/inputs", std::string("missing field '") + key + "'");
  return j[key];
}

std::size_t need_uint(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    schema_error(std::string("/inputs/") + key, "expected a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string need_string(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) schema_error(std::string("/inputs/") + key, "expected a string");
  return v.get<std::string>();
}

bool opt_bool(const json& j, const char* key) {
  if (!j.contains(key)) return false;
  if (!j[key].is_boolean()) schema_error(std::string("/inputs/") + key, "expected a boolean");
  return j[key].get<bool>();
}

Category need_category(const json& j, const char* key) {
  try {
    return category_from_string(need_string(j, key));
  } catch (const Error& e) {
    schema_error(std::string("/inputs/") + key, e.what());
  }
}

DSolverSpec solver_spec(const json& inputs) {
  DSolverSpec spec;
  const std::string s = inputs.contains("solver") ? need_string(inputs, "solver") : "auto";
  if (s.rfind("size=", 0) == 0) {
    try {
      spec.candidate = std::stoul(s.substr(5));
    } catch (const std::exception&) {
      schema_error("/inputs/solver", "expected auto or size=n");
    }
  } else if (s != "auto") {
    schema_error("/inputs/solver", "expected auto or size=n");
  }
  if (inputs.contains("maxSize")) spec.maxSize = need_uint(inputs, "maxSize");
  return spec;
}

/// Colouring of an explicit morphism list; maps outside the list are a bug in
/// the caller.
class ListColoring {
 public:
  explicit ListColoring(const std::vector<FinMap>& points) {
    for (std::size_t i = 0; i < points.size(); ++i) index_.emplace(points[i], i);
  }
  ColorFn with(const std::vector<std::uint32_t>& colors) const {
    return [this, &colors](const FinMap& f) -> std::uint32_t {
      const auto it = index_.find(f);
      if (it == index_.end()) throw Error(ErrorCode::InternalInconsistency, "colour requested off the point list");
      return colors[it->second];
    };
  }

 private:
  std::map<FinMap, std::size_t> index_;
};

/// Calls visit(colouring) for every colouring of `points` when r^points fits
/// the budget (point 0 most significant), otherwise for cfg.sampleTrials
/// seeded samples. Returns whether the run was exhaustive.
bool for_each_coloring(std::size_t points, std::size_t r, const Config& cfg,
                       const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  if (coloring_count(points, r) <= cfg.maxColorings) {
    std::vector<std::uint32_t> colors(points, 0);
    while (true) {
      visit(colors);
      std::size_t k = points;
      while (k > 0 && colors[k - 1] + 1 == r) colors[--k] = 0;
      if (k == 0) return true;
      ++colors[k - 1];
    }
  }
  for (std::uint64_t t = 0; t < cfg.sampleTrials; ++t) visit(sampled_coloring(points, r, cfg.rngSeed, t));
  return false;
}

struct ConstructionInstance {
  Functor G;
  DBlock X;
  DBlock Y;
};

ConstructionInstance construction_instance(const json& j) {
  const auto lang = language_from_json(need(j, "language"), "/inputs/instance/language");
  Category D;
  try {
    D = category_from_string(need_string(j, "D"));
  } catch (const Error& e) {
    schema_error("/inputs/instance/D", e.what());
  }
  ConstructionInstance in;
  try {
    in.G = Functor(D, lang->base);
  } catch (const Error& e) {
    schema_error("/inputs/instance/D", e.what());
  }
  const auto dblock = [&](const char* key) {
    const json& b = need(j, key);
    DBlock out;
    out.block = block_from_json(need(b, "block"), std::string("/inputs/instance/") + key + "/block", lang);
    out.dObject = need_uint(b, "object");
    return out;
  };
  in.X = dblock("X");
  in.Y = dblock("Y");
  return in;
}

json tables(const std::vector<FinMap>& maps) {
  json out = json::array();
  for (const auto& m : maps) out.push_back(m.table);
  return out;
}

// ---------------------------------------------------------------------------

json derive_hj(const json& in, const Config& cfg) {
  const auto res = hj_witness_search(need_uint(in, "alphabet"), need_uint(in, "colors"), need_uint(in, "nmax"), cfg,
                                     opt_bool(in, "sample"));
  return to_json(res);
}

json derive_hom_enum(const json& in, const Config& cfg) {
  const Category cat = need_category(in, "category");
  const auto homs = hom_enumerate(cat, need_uint(in, "A"), need_uint(in, "B"), cfg);
  return {{"count", homs.size()}, {"morphisms", tables(homs)}};
}

json derive_colimit(const json& in, const Config& cfg) {
  const auto d = diagram_from_json(need(in, "diagram"), "/inputs/diagram");
  const Colimit c = colimit(d, cfg);
  json out = to_json(c);
  const std::size_t bound = in.contains("apexBound") ? need_uint(in, "apexBound") : 0;
  out["apexBound"] = bound;
  out["universal"] = verify_colimit(c.cocone, bound, cfg);
  return out;
}

json derive_colimit_block(const json& in, const Config& cfg) {
  const ColimitBlock cb = construct_colimit_block(line_instance_from_json(need(in, "instance")), cfg);
  json out = to_json(cb);
  if (opt_bool(in, "verify")) {
    out["homomorphismLegs"] = verify_homomorphism_legs(cb, cfg);
    out["reflectionViolations"] = relation_reflection_violations(cb, cfg).size();
  }
  return out;
}

json derive_verify_ramsey(const json& in, const Config& cfg) {
  const Category cat = need_category(in, "category");
  const RamseyProblem rp = ramsey_problem(cat, need_uint(in, "A"), need_uint(in, "B"), need_uint(in, "C"), cfg);
  SearchMode mode;
  try {
    mode = search_mode_from_string(in.contains("mode") ? need_string(in, "mode") : "exhaustive");
  } catch (const Error& e) {
    schema_error("/inputs/mode", e.what());
  }
  const Verdict v = check_coloring_problem(rp.problem, need_uint(in, "r"), mode, cfg);
  json out = to_json(v);
  out["points"] = rp.pointLabels;
  if (v.witness) out["witnessCopy"] = rp.copyLabels.at(*v.witness);
  return out;
}

struct LemmaRun {
  PartiteLemma pl;
  std::vector<FinMap> points;
  bool exhaustive = false;
  std::vector<std::size_t> lines;
  std::vector<std::uint32_t> colors;
};

LemmaRun run_lemma(const json& in, const Config& cfg) {
  const LineInstance li = line_instance_from_json(need(in, "instance"), false);
  const std::size_t r = need_uint(in, "r");
  const std::size_t nMax = in.contains("nmax") ? need_uint(in, "nmax") : 6;
  LemmaRun run;
  run.pl = partite_lemma(li.i0, li.X, li.Y, r, cfg, nMax);
  run.points = enumerate_i0_monos(li.X, run.pl.block.Z, li.i0, cfg);
  const ListColoring lc(run.points);
  run.exhaustive = for_each_coloring(run.points.size(), r, cfg, [&](const std::vector<std::uint32_t>& colors) {
    const LemmaResolution res = resolve_partite_lemma(run.pl, lc.with(colors));
    run.lines.push_back(res.line);
    run.colors.push_back(res.color);
  });
  return run;
}

json derive_partite_lemma(const json& in, const Config& cfg) {
  const LemmaRun run = run_lemma(in, cfg);
  json resolver = {{"points", run.points.size()},
                   {"mode", run.exhaustive ? "exhaustive" : "sampled"},
                   {"colorings", run.lines.size()},
                   {"lines", run.lines},
                   {"colors", run.colors}};
  if (!run.exhaustive) resolver["seed"] = cfg.rngSeed;
  return {{"r", run.pl.r}, {"hj", to_json(run.pl.hj)}, {"block", to_json(run.pl.block)}, {"resolver", resolver}};
}

struct ConstructionRun {
  ConstructionInstance instance;
  PartiteConstruction pc;
  std::vector<FinMap> points;
  std::vector<ConstructionResolution> resolutions;
};

ConstructionRun run_construction(const json& in, const Config& cfg) {
  ConstructionRun run;
  run.instance = construction_instance(need(in, "instance"));
  const std::size_t r = need_uint(in, "r");
  run.pc = partite_construction(run.instance.G, run.instance.X, run.instance.Y, r, solver_spec(in), cfg);
  run.points = bl_d_homs(run.instance.X, run.pc.Z(), run.instance.G, cfg);
  const ListColoring lc(run.points);
  for (std::uint64_t t = 0; t < cfg.sampleTrials; ++t) {
    const auto colors = sampled_coloring(run.points.size(), r, cfg.rngSeed, t);
    run.resolutions.push_back(resolve_partite_construction(run.pc, lc.with(colors), cfg));
  }
  return run;
}

json construction_json(const PartiteConstruction& pc) {
  json tower = json::array();
  json steps = json::array();
  for (std::size_t k = 0; k <= pc.height(); ++k) tower.push_back(pc.tower(k).structure.carrier);
  for (const auto& s : pc.steps) steps.push_back({{"P", s.block.P.size()}, {"N", s.block.input.N}});
  return {{"M", pc.M},
          {"j", tables(pc.j)},
          {"h", tables(pc.y0Colimit.cocone.legs)},
          {"Y0", to_json(pc.Y0)},
          {"tower", tower},
          {"steps", steps},
          {"Z", to_json(pc.Z().block)}};
}

json derive_partite_construction(const json& in, const Config& cfg) {
  const ConstructionRun run = run_construction(in, cfg);
  json witness = json::array();
  json colors = json::array();
  for (const auto& res : run.resolutions) {
    witness.push_back(res.i0);
    colors.push_back(res.color);
  }
  json out = construction_json(run.pc);
  out["resolver"] = {{"points", run.points.size()},
                     {"trials", run.resolutions.size()},
                     {"seed", cfg.rngSeed},
                     {"i0", witness},
                     {"colors", colors}};
  return out;
}

json derive_solecki(const json& in, const Config& cfg) {
  SoleckiVariant variant;
  try {
    variant = solecki_variant_from_string(need_string(in, "variant"));
  } catch (const Error& e) {
    schema_error("/inputs/variant", e.what());
  }
  const Structure K = structure_from_json(need(in, "K"), "/inputs/K", nullptr);
  const Structure M = structure_from_json(need(in, "M"), "/inputs/M", K.language);
  const SoleckiResult res = solecki(variant, K, M, need_uint(in, "r"), solver_spec(in), cfg);
  json out = construction_json(res.construction);
  out["variant"] = to_string(variant);
  out["relabel"] = res.relabel.table;
  out["ordered"] = to_json(res.ordered);
  out["orderedAnchor"] = res.orderedAnchor.table;
  if (res.verdict) out["verdict"] = to_json(*res.verdict);
  return out;
}

// ---------------------------------------------------------------------------
// Independent checks.

void check_hj(const json& in, const json& result, std::vector<std::string>& fail) {
  const std::size_t k = need_uint(in, "alphabet");
  const std::size_t n = result.at("n").get<std::size_t>();
  const json& checks = result.at("checks");
  for (const auto& c : checks) {
    if (!c.contains("counterexample")) continue;
    const std::size_t m = c.at("n").get<std::size_t>();
    const auto colors = c.at("counterexample").get<std::vector<std::uint32_t>>();
    for (const Line& l : enumerate_lines(k, m, Config{.maxHomSet = ~0ull})) {
      std::vector<std::uint32_t> seen;
      for (Letter a = 0; a < k; ++a) seen.push_back(colors.at(tuple_index(hj_compose(l, a), k)));
      if (std::adjacent_find(seen.begin(), seen.end(), std::not_equal_to<>()) == seen.end()) {
        fail.push_back("counterexample at N=" + std::to_string(m) + " has a monochromatic line " + encode(l));
        break;
      }
    }
  }
  if (n > 1 && (checks.size() < n - 1 || !checks[n - 2].contains("counterexample"))) {
    fail.push_back("no counterexample recorded at N-1");
  }
}

void check_hom_enum(const json& in, const json& result, std::vector<std::string>& fail) {
  const Category cat = need_category(in, "category");
  const std::size_t a = need_uint(in, "A");
  const std::size_t b = need_uint(in, "B");
  std::vector<Elem> prev;
  bool first = true;
  for (const auto& t : result.at("morphisms")) {
    const auto table = t.get<std::vector<Elem>>();
    const FinMap m = cat.reversed() ? FinMap(b, a, table) : FinMap(a, b, table);
    if (!m.well_formed() || !is_morphism(cat, m, a, b)) fail.push_back("listed map is not a morphism");
    if (!first && !(prev < table)) fail.push_back("enumeration not strictly increasing");
    prev = table;
    first = false;
  }
  if (result.at("count").get<std::uint64_t>() != hom_count(cat, a, b)) fail.push_back("count disagrees with hom_count");
}

void check_colimit(const json& in, const json& result, const Config& cfg, std::vector<std::string>& fail) {
  const auto d = diagram_from_json(need(in, "diagram"), "/inputs/diagram");
  Cocone c{d, result.at("apex").get<std::size_t>(), {}};
  for (std::size_t o = 0; o < d->objects.size(); ++o) {
    const auto table = result.at("legs").at(o).get<std::vector<Elem>>();
    c.legs.push_back(d->target.reversed() ? FinMap(c.apex, d->objects[o], table) : FinMap(d->objects[o], c.apex, table));
  }
  if (const auto v = cocone_violation(c)) fail.push_back("recorded legs do not form a cocone: " + *v);
  if (!result.at("universal").get<bool>()) fail.push_back("universality check failed");
  (void)cfg;
}

void check_colimit_block(const json& in, const Config& cfg, std::vector<std::string>& fail) {
  const ColimitBlock cb = construct_colimit_block(line_instance_from_json(need(in, "instance")), cfg);
  for (const auto& v : colimit_block_violations(cb)) fail.push_back(v);
  if (!verify_homomorphism_legs(cb, cfg)) fail.push_back("a leg is not a homomorphism");
  for (const auto& v : relation_reflection_violations(cb, cfg)) fail.push_back(v);
}

void check_verify_ramsey(const json& in, const json& result, const Config& cfg, std::vector<std::string>& fail) {
  if (!result.contains("counterexample")) return;
  const Category cat = need_category(in, "category");
  if (!cat.fin_backed()) return;
  const std::size_t A = need_uint(in, "A"), B = need_uint(in, "B"), C = need_uint(in, "C");
  const auto colors = result.at("counterexample").get<std::vector<std::uint32_t>>();
  const auto homAC = hom_enumerate(cat, A, C, cfg);
  const auto homAB = hom_enumerate(cat, A, B, cfg);
  for (const auto& g : hom_enumerate(cat, B, C, cfg)) {
    std::optional<std::uint32_t> color;
    bool mono = true;
    for (const auto& f : homAB) {
      const auto at = std::lower_bound(homAC.begin(), homAC.end(), compose(cat, g, f));
      const std::uint32_t c = colors.at(static_cast<std::size_t>(at - homAC.begin()));
      if (color && *color != c) mono = false;
      color = c;
    }
    if (mono) {
      fail.push_back("counterexample leaves a monochromatic copy");
      return;
    }
  }
}

void check_partite_lemma(const json& in, const json& result, const Config& cfg, std::vector<std::string>& fail) {
  const LineInstance li = line_instance_from_json(need(in, "instance"), false);
  const std::size_t r = need_uint(in, "r");
  const PartiteLemma pl = partite_lemma(li.i0, li.X, li.Y, r, cfg, in.contains("nmax") ? need_uint(in, "nmax") : 6);
  const auto points = enumerate_i0_monos(li.X, pl.block.Z, li.i0, cfg);
  const auto lines = result.at("resolver").at("lines").get<std::vector<std::size_t>>();
  const Category base = li.X.base();
  std::size_t trial = 0;
  for_each_coloring(points.size(), r, cfg, [&](const std::vector<std::uint32_t>& colors) {
    const FinMap& leg = pl.block.line_leg(lines.at(trial++));
    std::optional<std::uint32_t> color;
    for (const auto& p : pl.block.P) {
      const FinMap f = compose(base, leg, p);
      const auto at = std::find(points.begin(), points.end(), f);
      if (at == points.end()) {
        fail.push_back("f_l . p is not an i0-monomorphism into Z");
        return;
      }
      const std::uint32_t c = colors[static_cast<std::size_t>(at - points.begin())];
      if (color && *color != c) {
        fail.push_back("resolver leg is not monochromatic at colouring " + std::to_string(trial - 1));
        return;
      }
      color = c;
    }
  });
}

void check_partite_construction(const json& in, const Config& cfg, std::vector<std::string>& fail) {
  const ConstructionRun run = run_construction(in, cfg);
  const Category base = run.instance.X.block.base();
  const auto copies = bl_d_homs(run.instance.X, run.instance.Y, run.instance.G, cfg);
  for (std::size_t t = 0; t < run.resolutions.size(); ++t) {
    const auto& res = run.resolutions[t];
    for (const auto& v : tower_violations(run.pc, res, cfg)) fail.push_back("trial " + std::to_string(t) + ": " + v);
    const auto colors = sampled_coloring(run.points.size(), run.pc.r, cfg.rngSeed, t);
    std::optional<std::uint32_t> color;
    for (const auto& f : copies) {
      const auto at = std::lower_bound(run.points.begin(), run.points.end(), compose(base, res.witness, f));
      if (at == run.points.end() || *at != compose(base, res.witness, f)) {
        fail.push_back("trial " + std::to_string(t) + ": witness . f leaves Hom(X, Z)");
        break;
      }
      const std::uint32_t c = colors[static_cast<std::size_t>(at - run.points.begin())];
      if (color && *color != c) {
        fail.push_back("trial " + std::to_string(t) + ": final embedding not monochromatic");
        break;
      }
      color = c;
    }
  }
}

void check_solecki(const json& in, const json& result, std::vector<std::string>& fail) {
  const auto relabel = result.at("relabel").get<std::vector<Elem>>();
  std::vector<Elem> sorted = relabel;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) {
      fail.push_back("relabelling is not a bijection");
      return;
    }
  }
  const auto anchor = result.at("orderedAnchor").get<std::vector<Elem>>();
  if (need_string(in, "variant") == "direct") {
    if (!std::is_sorted(anchor.begin(), anchor.end())) fail.push_back("ordered anchor is not weakly increasing");
  } else {
    // the anchor table runs G(M) -> Z': its image must be an initial segment
    // ordered by least preimage
    Elem next = 0;
    for (Elem z : anchor) {
      if (z > next) {
        fail.push_back("anchor image is not ordered by least preimage");
        return;
      }
      if (z == next) ++next;
    }
  }
}

}  // namespace

json derive(const std::string& kind, const json& inputs, const Config& cfg) {
  cfg.validate();
  if (kind == "hj-search") return derive_hj(inputs, cfg);
  if (kind == "hom-enum") return derive_hom_enum(inputs, cfg);
  if (kind == "colimit") return derive_colimit(inputs, cfg);
  if (kind == "colimit-block") return derive_colimit_block(inputs, cfg);
  if (kind == "verify-ramsey") return derive_verify_ramsey(inputs, cfg);
  if (kind == "partite-lemma") return derive_partite_lemma(inputs, cfg);
  if (kind == "partite-construction") return derive_partite_construction(inputs, cfg);
  if (kind == "solecki") return derive_solecki(inputs, cfg);
  schema_error("/kind", "unknown certificate kind '" + kind + "'");
}

json make_certificate(const std::string& kind, const json& inputs, const Config& cfg) {
  return {{"kind", kind},
          {"tool", kToolName},
          {"version", kToolVersion},
          {"config", to_json(cfg)},
          {"inputs", inputs},
          {"result", derive(kind, inputs, cfg)}};
}

bool certificate_holds(const json& cert) {
  const std::string kind = cert.at("kind").get<std::string>();
  const json& result = cert.at("result");
  if (kind == "verify-ramsey") return result.at("verdict").get<std::string>() != to_string(VerdictKind::Refuted);
  if (kind == "colimit") return result.at("universal").get<bool>();
  if (kind == "colimit-block" && result.contains("homomorphismLegs")) {
    return result["homomorphismLegs"].get<bool>() && result["reflectionViolations"].get<std::size_t>() == 0;
  }
  return true;
}

std::string serialize(const json& j) { return j.dump(2) + "\n"; }

RecheckReport recheck(const json& cert, unsigned threads) {
  for (const char* key : {"kind", "tool", "version", "config", "inputs", "result"}) {
    if (!cert.is_object() || !cert.contains(key)) schema_error("", std::string("missing field '") + key + "'");
  }
  if (!cert["kind"].is_string()) schema_error("/kind", "expected a string");
  if (cert["tool"] != kToolName) schema_error("/tool", "certificate was not produced by this tool");
  Config cfg = config_from_json(cert["config"], "/config");
  cfg.threads = threads;
  const std::string kind = cert["kind"].get<std::string>();
  const json& inputs = cert["inputs"];
  const json& result = cert["result"];

  RecheckReport report;
  report.matches = serialize(derive(kind, inputs, cfg)) == serialize(result);
  if (cert["version"] != kToolVersion) report.failures.push_back("version mismatch");
  try {
    if (kind == "hj-search") check_hj(inputs, result, report.failures);
    else if (kind == "hom-enum") check_hom_enum(inputs, result, report.failures);
    else if (kind == "colimit") check_colimit(inputs, result, cfg, report.failures);
    else if (kind == "colimit-block") check_colimit_block(inputs, cfg, report.failures);
    else if (kind == "verify-ramsey") check_verify_ramsey(inputs, result, cfg, report.failures);
    else if (kind == "partite-lemma") check_partite_lemma(inputs, result, cfg, report.failures);
    else if (kind == "partite-construction") check_partite_construction(inputs, cfg, report.failures);
    else if (kind == "solecki") check_solecki(inputs, result, report.failures);
  } catch (const json::exception& e) {
    report.failures.push_back(std::string("malformed result: ") + e.what());
  }
  return report;
}

}  // namespace partite
