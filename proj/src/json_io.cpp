#include "partite/json_io.hpp"

#include <algorithm>

#include "partite/error.hpp"

namespace partite {

void schema_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

namespace {

const json& field(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) schema_error(ptr, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(ptr, std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t as_uint(const json& j, const std::string& ptr) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema_error(ptr, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::size_t uint_field(const json& j, const std::string& ptr, const char* key) {
  return static_cast<std::size_t>(as_uint(field(j, ptr, key), ptr + "/" + key));
}

std::string string_field(const json& j, const std::string& ptr, const char* key) {
  const json& v = field(j, ptr, key);
  if (!v.is_string()) schema_error(ptr + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::vector<Elem> table_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array()) schema_error(ptr, "expected an array of integers");
  std::vector<Elem> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(static_cast<Elem>(as_uint(j[i], ptr + "/" + std::to_string(i))));
  return out;
}

Category category_at(const json& j, const std::string& ptr) {
  if (!j.is_string()) schema_error(ptr, "expected a category name");
  try {
    return category_from_string(j.get<std::string>());
  } catch (const Error& e) {
    schema_error(ptr, e.what());
  }
}

}  // namespace

json to_json(const FinMap& m) { return {{"source", m.source}, {"target", m.target}, {"table", m.table}}; }

FinMap finmap_from_json(const json& j, const std::string& ptr) {
  FinMap m(uint_field(j, ptr, "source"), uint_field(j, ptr, "target"),
           table_from_json(field(j, ptr, "table"), ptr + "/table"));
  if (!m.well_formed()) schema_error(ptr, "table is not a total map from source to target");
  return m;
}

json to_json(const IndexCategory& c) {
  json objects = json::array();
  for (std::size_t o = 0; o < c.object_count(); ++o) objects.push_back(c.object_name(o));
  json arrows = json::array();
  for (std::size_t a = 0; a < c.arrow_count(); ++a) {
    if (c.is_identity(a)) continue;
    arrows.push_back({{"name", c.arrow(a).name}, {"src", c.object_name(c.arrow(a).src)}, {"dst", c.object_name(c.arrow(a).dst)}});
  }
  json composites = json::array();
  for (const auto& [pair, result] : c.composites()) {
    composites.push_back({c.arrow(pair.first).name, c.arrow(pair.second).name, c.arrow(result).name});
  }
  return {{"objects", objects}, {"arrows", arrows}, {"composites", composites}};
}

std::shared_ptr<IndexCategory> index_category_from_json(const json& j, const std::string& ptr) {
  auto c = std::make_shared<IndexCategory>();
  const json& objects = field(j, ptr, "objects");
  if (!objects.is_array()) schema_error(ptr + "/objects", "expected an array");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!objects[i].is_string()) schema_error(ptr + "/objects/" + std::to_string(i), "expected a name");
    if (c->find_object(objects[i].get<std::string>())) {
      schema_error(ptr + "/objects/" + std::to_string(i), "duplicate object name");
    }
    c->add_object(objects[i].get<std::string>());
  }
  const auto object_at = [&](const json& v, const std::string& p) {
    if (!v.is_string()) schema_error(p, "expected an object name");
    const auto o = c->find_object(v.get<std::string>());
    if (!o) schema_error(p, "unknown object '" + v.get<std::string>() + "'");
    return *o;
  };
  if (j.contains("arrows")) {
    const json& arrows = j["arrows"];
    if (!arrows.is_array()) schema_error(ptr + "/arrows", "expected an array");
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const std::string p = ptr + "/arrows/" + std::to_string(i);
      const std::string name = string_field(arrows[i], p, "name");
      if (c->find_arrow(name)) schema_error(p + "/name", "duplicate arrow name");
      c->add_arrow(name, object_at(field(arrows[i], p, "src"), p + "/src"), object_at(field(arrows[i], p, "dst"), p + "/dst"));
    }
  }
  if (j.contains("composites")) {
    const json& comps = j["composites"];
    if (!comps.is_array()) schema_error(ptr + "/composites", "expected an array");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string p = ptr + "/composites/" + std::to_string(i);
      if (!comps[i].is_array() || comps[i].size() != 3) schema_error(p, "expected [first, second, result]");
      std::size_t ids[3];
      for (std::size_t k = 0; k < 3; ++k) {
        const std::string q = p + "/" + std::to_string(k);
        if (!comps[i][k].is_string()) schema_error(q, "expected an arrow name");
        const auto a = c->find_arrow(comps[i][k].get<std::string>());
        if (!a) schema_error(q, "unknown arrow '" + comps[i][k].get<std::string>() + "'");
        ids[k] = *a;
      }
      c->add_composite(ids[0], ids[1], ids[2]);
    }
  }
  const auto v = c->law_violations();
  if (!v.empty()) schema_error(ptr, "index category laws fail: " + v.front());
  return c;
}

json to_json(const Diagram& d) {
  const IndexCategory& J = *d.index;
  json arrows = json::object();
  for (std::size_t a = 0; a < J.arrow_count(); ++a) {
    if (!J.is_identity(a)) arrows[J.arrow(a).name] = d.arrows[a].table;
  }
  return {{"index", to_json(J)}, {"target", to_string(d.target)}, {"objects", d.objects}, {"arrows", arrows}};
}

std::shared_ptr<const Diagram> diagram_from_json(const json& j, const std::string& ptr) {
  const auto index = index_category_from_json(field(j, ptr, "index"), ptr + "/index");
  const Category target = category_at(field(j, ptr, "target"), ptr + "/target");
  if (!target.fin_backed()) schema_error(ptr + "/target", "diagram target must be Fin-backed");
  const json& objs = field(j, ptr, "objects");
  std::vector<std::size_t> objects;
  for (Elem x : table_from_json(objs, ptr + "/objects")) objects.push_back(x);
  if (objects.size() != index->object_count()) schema_error(ptr + "/objects", "one carrier size per index object");
  Diagram d = Diagram::with_identities(index, target, objects);
  const json& arrows = field(j, ptr, "arrows");
  for (std::size_t a = 0; a < index->arrow_count(); ++a) {
    if (index->is_identity(a)) continue;
    const auto& arr = index->arrow(a);
    const std::string p = ptr + "/arrows/" + arr.name;
    if (!arrows.contains(arr.name)) schema_error(ptr + "/arrows", "missing image of arrow '" + arr.name + "'");
    const std::size_t s = objects[arr.src];
    const std::size_t t = objects[arr.dst];
    // stored tables run backwards in the reversed categories
    const auto table = table_from_json(arrows[arr.name], p);
    d.arrows[a] = target.reversed() ? FinMap(t, s, table) : FinMap(s, t, table);
  }
  const auto v = functor_violations(d);
  if (!v.empty()) schema_error(ptr, "not a functor: " + v.front());
  return std::make_shared<const Diagram>(std::move(d));
}

json to_json(const Cocone& c) {
  json legs = json::array();
  for (const auto& leg : c.legs) legs.push_back(leg.table);
  return {{"apex", c.apex}, {"legs", legs}};
}

json to_json(const Colimit& c) {
  json out = to_json(c.cocone);
  if (!c.classes.empty()) {
    json classes = json::array();
    for (const auto& cls : c.classes) {
      json members = json::array();
      for (const auto& m : cls) members.push_back({m.object, m.elem});
      classes.push_back(members);
    }
    out["classes"] = classes;
  }
  if (!c.tuples.empty()) out["tuples"] = c.tuples;
  return out;
}

json to_json(const Language& l) {
  json rels = json::array();
  for (const auto& r : l.relations) rels.push_back({{"name", r.name}, {"arity", r.arity}});
  json fns = json::array();
  for (const auto& f : l.functions) fns.push_back({{"name", f.name}, {"arity", {f.from, f.to}}});
  return {{"base", to_string(l.base)}, {"relations", rels}, {"functions", fns}};
}

std::shared_ptr<const Language> language_from_json(const json& j, const std::string& ptr) {
  auto l = std::make_shared<Language>();
  l->base = category_at(field(j, ptr, "base"), ptr + "/base");
  if (j.contains("relations")) {
    const json& rels = j["relations"];
    if (!rels.is_array()) schema_error(ptr + "/relations", "expected an array");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const std::string p = ptr + "/relations/" + std::to_string(i);
      l->relations.push_back({string_field(rels[i], p, "name"), uint_field(rels[i], p, "arity")});
    }
  }
  if (j.contains("functions")) {
    const json& fns = j["functions"];
    if (!fns.is_array()) schema_error(ptr + "/functions", "expected an array");
    for (std::size_t i = 0; i < fns.size(); ++i) {
      const std::string p = ptr + "/functions/" + std::to_string(i);
      const json& ar = field(fns[i], p, "arity");
      if (!ar.is_array() || ar.size() != 2) schema_error(p + "/arity", "expected [r, s]");
      l->functions.push_back({string_field(fns[i], p, "name"), static_cast<std::size_t>(as_uint(ar[0], p + "/arity/0")),
                              static_cast<std::size_t>(as_uint(ar[1], p + "/arity/1"))});
    }
  }
  try {
    l->validate();
  } catch (const Error& e) {
    schema_error(ptr, e.what());
  }
  return l;
}

json to_json(const Structure& s, std::uint64_t maxTable) {
  const Language& L = *s.language;
  json rel = json::object();
  for (std::size_t r = 0; r < L.relations.size(); ++r) {
    json members = json::array();
    for (const auto& m : s.relations[r]) members.push_back(m.table);
    rel[L.relations[r].name] = members;
  }
  json func = json::object();
  for (std::size_t f = 0; f < L.functions.size(); ++f) {
    if (s.functions[f].domain_size() > maxTable) {
      func[L.functions[f].name] = {{"lazy", s.functions[f].domain_size()}};
      continue;
    }
    json table = json::object();
    const auto values = s.functions[f].materialize();
    for (std::size_t i = 0; i < values.size(); ++i) table[std::to_string(i)] = values[i];
    func[L.functions[f].name] = table;
  }
  return {{"carrier", s.carrier}, {"rel", rel}, {"func", func}};
}

Structure structure_from_json(const json& j, const std::string& ptr, std::shared_ptr<const Language> fallback) {
  std::shared_ptr<const Language> lang =
      j.is_object() && j.contains("language") ? language_from_json(j["language"], ptr + "/language") : fallback;
  if (!lang) schema_error(ptr, "structure has no language");
  const Category base = lang->base;
  Structure s = Structure::bare(lang, uint_field(j, ptr, "carrier"));
  const json empty = json::object();
  const json& rel = j.contains("rel") ? j["rel"] : empty;
  if (!rel.is_object()) schema_error(ptr + "/rel", "expected an object");
  for (const auto& [name, _] : rel.items()) {
    const bool known = std::any_of(lang->relations.begin(), lang->relations.end(),
                                   [&, n = name](const RelationSymbol& r) { return r.name == n; });
    if (!known) schema_error(ptr + "/rel/" + name, "unknown relation symbol");
  }
  for (std::size_t r = 0; r < lang->relations.size(); ++r) {
    const auto& sym = lang->relations[r];
    if (!rel.contains(sym.name)) continue;
    const std::string p = ptr + "/rel/" + sym.name;
    const json& members = rel[sym.name];
    if (!members.is_array()) schema_error(p, "expected an array of tables");
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto table = table_from_json(members[i], p + "/" + std::to_string(i));
      FinMap m = base.reversed() ? FinMap(s.carrier, sym.arity, table) : FinMap(sym.arity, s.carrier, table);
      if (!m.well_formed() || !is_morphism(base, m, sym.arity, s.carrier)) {
        schema_error(p + "/" + std::to_string(i), "not a morphism from the arity into the carrier");
      }
      s.relations[r].push_back(std::move(m));
    }
  }
  s.normalize();
  const json& func = j.contains("func") ? j["func"] : empty;
  if (!func.is_object()) schema_error(ptr + "/func", "expected an object");
  for (std::size_t f = 0; f < lang->functions.size(); ++f) {
    const auto& sym = lang->functions[f];
    const std::string p = ptr + "/func/" + sym.name;
    if (!func.contains(sym.name)) schema_error(ptr + "/func", "missing interpretation of '" + sym.name + "'");
    const json& table = func[sym.name];
    if (!table.is_object()) schema_error(p, "expected an object from domain index to codomain index");
    const std::uint64_t domain = hom_count(base, s.carrier, sym.from);
    const std::uint64_t codomain = hom_count(base, s.carrier, sym.to);
    if (domain > (std::uint64_t{1} << 24)) schema_error(p, "domain Hom(X, r) too large for an explicit table");
    std::vector<std::uint64_t> values(domain, 0);
    std::vector<bool> seen(domain, false);
    for (const auto& [key, value] : table.items()) {
      std::uint64_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoull(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        schema_error(p + "/" + key, "keys must be domain indices");
      }
      if (idx >= domain) schema_error(p + "/" + key, "domain index out of range");
      const std::uint64_t v = as_uint(value, p + "/" + key);
      if (v >= codomain) schema_error(p + "/" + key, "codomain index out of range");
      values[idx] = v;
      seen[idx] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) schema_error(p, "interpretation is not total");
    s.functions[f] = FuncInterp::table(std::move(values));
  }
  return s;
}

json to_json(const Block& b) { return {{"structure", to_json(b.structure)}, {"anchor", to_json(b.anchor)}}; }

Block block_from_json(const json& j, const std::string& ptr, std::shared_ptr<const Language> fallback) {
  Block b;
  b.structure = structure_from_json(field(j, ptr, "structure"), ptr + "/structure", std::move(fallback));
  const json& anchor = field(j, ptr, "anchor");
  const Category base = b.structure.language->base;
  if (anchor.is_array()) {
    b.anchorTarget = uint_field(j, ptr, "anchorTarget");
    const auto table = table_from_json(anchor, ptr + "/anchor");
    b.anchor = base.reversed() ? FinMap(b.anchorTarget, b.structure.carrier, table)
                               : FinMap(b.structure.carrier, b.anchorTarget, table);
    if (!b.anchor.well_formed()) schema_error(ptr + "/anchor", "table is not a total map");
  } else {
    b.anchor = finmap_from_json(anchor, ptr + "/anchor");
    b.anchorTarget = cod(base, b.anchor);
  }
  const auto v = b.violations();
  if (!v.empty()) schema_error(ptr, v.front());
  return b;
}

json to_json(const Line& l) {
  json active = json::array();
  json fixed = json::object();
  for (std::size_t i = 0; i < l.n(); ++i) {
    if (l.active[i]) active.push_back(i);
    else fixed[std::to_string(i)] = l.fixed[i];
  }
  return {{"n", l.n()}, {"active", active}, {"fixed", fixed}};
}

Line line_from_json(const json& j, const std::string& ptr) {
  const std::size_t n = uint_field(j, ptr, "n");
  Line l;
  l.active.assign(n, false);
  l.fixed.assign(n, 0);
  const json& active = field(j, ptr, "active");
  for (Elem i : table_from_json(active, ptr + "/active")) {
    if (i >= n) schema_error(ptr + "/active", "position out of range");
    l.active[i] = true;
  }
  std::vector<bool> covered = l.active;
  const json& fixed = field(j, ptr, "fixed");
  if (!fixed.is_object()) schema_error(ptr + "/fixed", "expected an object");
  for (const auto& [key, value] : fixed.items()) {
    std::size_t pos = 0;
    try {
      pos = std::stoul(key);
    } catch (const std::exception&) {
      schema_error(ptr + "/fixed/" + key, "keys must be positions");
    }
    if (pos >= n || l.active[pos]) schema_error(ptr + "/fixed/" + key, "fixed position must be inactive and in range");
    l.fixed[pos] = static_cast<Letter>(as_uint(value, ptr + "/fixed/" + key));
    covered[pos] = true;
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    schema_error(ptr, "every inactive position needs a fixed letter");
  }
  if (std::find(l.active.begin(), l.active.end(), true) == l.active.end()) schema_error(ptr + "/active", "empty");
  return l;
}

LineInstance line_instance_from_json(const json& j, bool needN) {
  const auto lang = language_from_json(field(j, "", "language"), "/language");
  LineInstance in;
  in.X = block_from_json(field(j, "", "X"), "/X", lang);
  in.Y = block_from_json(field(j, "", "Y"), "/Y", lang);
  if (in.X.structure.language != lang || in.Y.structure.language != lang) {
    schema_error("", "X and Y must use the top-level language");
  }
  const json& i0 = field(j, "", "i0");
  if (i0.is_array()) {
    const auto table = table_from_json(i0, "/i0");
    in.i0 = lang->base.reversed() ? FinMap(in.Y.anchorTarget, in.X.anchorTarget, table)
                                  : FinMap(in.X.anchorTarget, in.Y.anchorTarget, table);
  } else {
    in.i0 = finmap_from_json(i0, "/i0");
  }
  if (!in.i0.well_formed() || !is_morphism(lang->base, in.i0, in.X.anchorTarget, in.Y.anchorTarget)) {
    schema_error("/i0", "must be a morphism from the anchor target of X to that of Y");
  }
  if (needN || j.contains("N")) in.N = uint_field(j, "", "N");
  return in;
}

json to_json(const Config& c) {
  return {{"maxHomSet", c.maxHomSet},       {"maxApex", c.maxApex},         {"maxProduct", c.maxProduct},
          {"maxColorings", c.maxColorings}, {"sampleTrials", c.sampleTrials}, {"rngSeed", c.rngSeed}};
}

Config config_from_json(const json& j, const std::string& ptr) {
  Config c;
  c.maxHomSet = uint_field(j, ptr, "maxHomSet");
  c.maxApex = uint_field(j, ptr, "maxApex");
  c.maxProduct = uint_field(j, ptr, "maxProduct");
  c.maxColorings = uint_field(j, ptr, "maxColorings");
  c.sampleTrials = uint_field(j, ptr, "sampleTrials");
  c.rngSeed = as_uint(field(j, ptr, "rngSeed"), ptr + "/rngSeed");
  c.validate();
  return c;
}

json to_json(const Verdict& v) {
  json out = {{"verdict", to_string(v.kind)}, {"r", v.r}};
  if (v.witness) out["witness"] = *v.witness;
  if (v.counterexample) out["counterexample"] = *v.counterexample;
  if (v.trials) {
    out["trials"] = v.trials;
    out["seed"] = v.seed;
  }
  return out;
}

json to_json(const HJCheck& c) {
  json out = {{"n", c.n}, {"outcome", to_string(c.outcome)}};
  if (c.counterexample) out["counterexample"] = *c.counterexample;
  if (c.trials) {
    out["trials"] = c.trials;
    out["seed"] = c.seed;
  }
  return out;
}

json to_json(const HJSearchResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"n", r.n}, {"exhaustive", r.exhaustive}, {"checks", checks}};
}

json to_json(const ColimitBlock& cb) {
  json tuples = json::object();
  for (std::size_t t = 0; t < cb.index.tuples.size(); ++t) tuples[encode(cb.index.tuples[t])] = cb.tuple_leg(t).table;
  json lines = json::object();
  for (std::size_t l = 0; l < cb.index.lines.size(); ++l) lines[encode(cb.index.lines[l])] = cb.line_leg(l).table;
  json P = json::array();
  for (const auto& p : cb.P) P.push_back(p.table);
  json v = json::array();
  for (const auto& vi : cb.v) v.push_back(vi.table);
  json out = {{"N", cb.input.N},
              {"P", P},
              {"Z", to_json(cb.Z)},
              {"legs", {{"tuples", tuples}, {"lines", lines}}},
              {"h", cb.h.table},
              {"v", v}};
  if (!cb.colimit.classes.empty()) out["classes"] = to_json(cb.colimit)["classes"];
  if (!cb.colimit.tuples.empty()) out["limitTuples"] = cb.colimit.tuples;
  return out;
}

}  // namespace partite
