#include "partite/fincat.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "partite/error.hpp"

namespace partite {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == 0 || r == kSaturated) return r;
  }
  return r;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step
    r = sat_mul(r, n - k + i);
    if (r == kSaturated) return r;
    r /= i;
  }
  return r;
}

// Stirling numbers of the second kind S(n, k): rigid surjections n -> k.
std::uint64_t stirling2(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, k); j >= 1; --j) {
      std::uint64_t v = sat_mul(j, row[j]);
      v = (v > kSaturated - row[j - 1]) ? kSaturated : v + row[j - 1];
      row[j] = v;
    }
    row[0] = 0;
  }
  return row[k];
}

// Source/target sizes of the stored table of an arrow a -> b.
std::pair<std::size_t, std::size_t> stored_shape(const Category& cat, std::size_t a, std::size_t b) {
  return cat.reversed() ? std::pair{b, a} : std::pair{a, b};
}

void require_fin_backed(const Category& cat) {
  if (!cat.fin_backed()) {
    throw Error(ErrorCode::TypeMismatch, "operation needs a Fin-backed category, got " + to_string(cat));
  }
}

// Lexicographic odometer over all tables source -> target.
bool odometer(std::size_t source, std::size_t target, const std::function<bool(const FinMap&)>& visit) {
  if (source > 0 && target == 0) return true;
  FinMap m(source, target, std::vector<Elem>(source, 0));
  while (true) {
    if (!visit(m)) return false;
    std::size_t i = source;
    while (i > 0 && m.table[i - 1] + 1 == target) --i;
    if (i == 0) return true;
    ++m.table[i - 1];
    std::fill(m.table.begin() + static_cast<std::ptrdiff_t>(i), m.table.end(), 0);
  }
}

bool increasing_injections(std::size_t a, std::size_t b, const std::function<bool(const FinMap&)>& visit) {
  if (a > b) return true;
  FinMap m(a, b, std::vector<Elem>(a));
  for (std::size_t i = 0; i < a; ++i) m.table[i] = static_cast<Elem>(i);
  while (true) {
    if (!visit(m)) return false;
    // advance to the next combination in lex order
    std::size_t i = a;
    while (i > 0 && m.table[i - 1] == b - a + i - 1) --i;
    if (i == 0) return true;
    ++m.table[i - 1];
    for (std::size_t j = i; j < a; ++j) m.table[j] = m.table[j - 1] + 1;
  }
}

// Restricted growth strings of length n with maximum exactly k-1, lex order.
bool rigid_surjections(std::size_t n, std::size_t k, const std::function<bool(const FinMap&)>& visit) {
  if (k > n) return true;
  if (n == 0) return visit(FinMap(0, 0, {}));
  if (k == 0) return true;
  FinMap m(n, k, std::vector<Elem>(n, 0));
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t used) -> bool {
    if (pos == n) return used == k ? visit(m) : true;
    // remaining positions must be able to introduce the missing letters
    if (k - used > n - pos) return true;
    const std::size_t hi = std::min(used + 1, k);
    for (std::size_t v = 0; v < hi; ++v) {
      m.table[pos] = static_cast<Elem>(v);
      if (!rec(pos + 1, std::max(used, v + 1))) return false;
    }
    return true;
  };
  return rec(0, 0);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(const Category& cat) {
  switch (cat.kind) {
    case CatKind::Fin: return "Fin";
    case CatKind::FinOp: return "FinOp";
    case CatKind::FinLE: return "FinLE";
    case CatKind::FinLEStarOp: return "FinLEStarOp";
    case CatKind::HJ: return "HJ(" + std::to_string(cat.alphabet) + ")";
  }
  return "?";
}

Category category_from_string(const std::string& s) {
  if (s == "Fin") return Category::fin();
  if (s == "FinOp") return Category::fin_op();
  if (s == "FinLE") return Category::fin_le();
  if (s == "FinLEStarOp") return Category::fin_le_star_op();
  if (s.rfind("HJ(", 0) == 0 && s.size() > 4 && s.back() == ')') {
    try {
      return Category::hj(std::stoul(s.substr(3, s.size() - 4)));
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::SchemaError, "unknown category tag '" + s + "'");
}

std::vector<Elem> Carrier::elements() const {
  std::vector<Elem> out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = static_cast<Elem>(i);
  return out;
}

FinMap::FinMap(std::size_t source_, std::size_t target_, std::vector<Elem> table_)
    : source(source_), target(target_), table(std::move(table_)) {}

FinMap FinMap::identity(std::size_t n) {
  FinMap m(n, n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) m.table[i] = static_cast<Elem>(i);
  return m;
}

FinMap FinMap::constant(std::size_t source, std::size_t target, Elem value) {
  return FinMap(source, target, std::vector<Elem>(source, value));
}

bool FinMap::well_formed() const {
  if (table.size() != source) return false;
  return std::all_of(table.begin(), table.end(), [&](Elem e) { return e < target; });
}

FinMap after(const FinMap& g, const FinMap& f) {
  if (f.target != g.source) {
    throw Error(ErrorCode::TypeMismatch, "cannot compose: codomain " + std::to_string(f.target) +
                                             " vs domain " + std::to_string(g.source));
  }
  FinMap out(f.source, g.target, std::vector<Elem>(f.source));
  for (std::size_t i = 0; i < f.source; ++i) out.table[i] = g.table[f.table[i]];
  return out;
}

bool is_injective(const FinMap& f) {
  std::vector<bool> seen(f.target, false);
  for (Elem e : f.table) {
    if (seen[e]) return false;
    seen[e] = true;
  }
  return true;
}

bool is_surjective(const FinMap& f) {
  std::vector<bool> seen(f.target, false);
  std::size_t hit = 0;
  for (Elem e : f.table) {
    if (!seen[e]) {
      seen[e] = true;
      ++hit;
    }
  }
  return hit == f.target;
}

bool is_strictly_increasing(const FinMap& f) {
  for (std::size_t i = 1; i < f.table.size(); ++i) {
    if (f.table[i] <= f.table[i - 1]) return false;
  }
  return true;
}

bool is_rigid_surjection(const FinMap& f) {
  // The image of {0..i} is an initial segment iff each new value is exactly
  // one above the running maximum.
  std::size_t next = 0;
  for (Elem e : f.table) {
    if (e > next) return false;
    if (e == next) ++next;
  }
  return next == f.target;
}

std::size_t dom(const Category& cat, const FinMap& m) {
  require_fin_backed(cat);
  return cat.reversed() ? m.target : m.source;
}

std::size_t cod(const Category& cat, const FinMap& m) {
  require_fin_backed(cat);
  return cat.reversed() ? m.source : m.target;
}

FinMap identity(const Category& cat, std::size_t object) {
  require_fin_backed(cat);
  return FinMap::identity(object);
}

FinMap compose(const Category& cat, const FinMap& f, const FinMap& g) {
  require_fin_backed(cat);
  if (cod(cat, g) != dom(cat, f)) {
    throw Error(ErrorCode::TypeMismatch, "non-composable pair in " + to_string(cat));
  }
  return cat.reversed() ? after(g, f) : after(f, g);
}

bool is_morphism(const Category& cat, const FinMap& m, std::size_t a, std::size_t b) {
  require_fin_backed(cat);
  if (!m.well_formed() || dom(cat, m) != a || cod(cat, m) != b) return false;
  switch (cat.kind) {
    case CatKind::Fin:
    case CatKind::FinOp: return true;
    case CatKind::FinLE: return is_strictly_increasing(m);
    case CatKind::FinLEStarOp: return is_rigid_surjection(m);
    case CatKind::HJ: break;
  }
  return false;
}

std::uint64_t hom_count(const Category& cat, std::size_t a, std::size_t b) {
  require_fin_backed(cat);
  switch (cat.kind) {
    case CatKind::Fin: return sat_pow(b, a);
    case CatKind::FinOp: return sat_pow(a, b);
    case CatKind::FinLE: return binomial(b, a);
    case CatKind::FinLEStarOp: return stirling2(b, a);
    case CatKind::HJ: break;
  }
  return 0;
}

void for_each_hom(const Category& cat, std::size_t a, std::size_t b, const Config& cfg,
                  const std::function<bool(const FinMap&)>& visit) {
  const std::uint64_t count = hom_count(cat, a, b);
  if (count > cfg.maxHomSet) {
    throw Error(ErrorCode::BoundExceeded, "|Hom(" + std::to_string(a) + "," + std::to_string(b) + ")| in " +
                                              to_string(cat) + " exceeds maxHomSet");
  }
  const auto [s, t] = stored_shape(cat, a, b);
  switch (cat.kind) {
    case CatKind::Fin:
    case CatKind::FinOp: odometer(s, t, visit); break;
    case CatKind::FinLE: increasing_injections(s, t, visit); break;
    case CatKind::FinLEStarOp: rigid_surjections(s, t, visit); break;
    case CatKind::HJ: break;
  }
}

std::vector<FinMap> hom_enumerate(const Category& cat, std::size_t a, std::size_t b, const Config& cfg) {
  std::vector<FinMap> out;
  for_each_hom(cat, a, b, cfg, [&](const FinMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::uint64_t hom_index(const Category& cat, std::size_t a, std::size_t b, const FinMap& m) {
  require_fin_backed(cat);
  if (cat.kind == CatKind::Fin || cat.kind == CatKind::FinOp) {
    const auto [s, t] = stored_shape(cat, a, b);
    if (m.source != s || m.target != t || m.table.size() != s) {
      throw Error(ErrorCode::TypeMismatch, "hom_index: morphism does not belong to the hom-set");
    }
    std::uint64_t idx = 0;
    for (Elem e : m.table) idx = idx * t + e;
    return idx;
  }
  Config unbounded;
  unbounded.maxHomSet = kSaturated;
  std::uint64_t idx = 0;
  std::optional<std::uint64_t> found;
  for_each_hom(cat, a, b, unbounded, [&](const FinMap& x) {
    if (x == m) {
      found = idx;
      return false;
    }
    ++idx;
    return true;
  });
  if (!found) throw Error(ErrorCode::TypeMismatch, "hom_index: morphism not in hom-set");
  return *found;
}

FinMap hom_at(const Category& cat, std::size_t a, std::size_t b, std::uint64_t index) {
  require_fin_backed(cat);
  if (index >= hom_count(cat, a, b)) throw Error(ErrorCode::TypeMismatch, "hom_at: index out of range");
  if (cat.kind == CatKind::Fin || cat.kind == CatKind::FinOp) {
    const auto [s, t] = stored_shape(cat, a, b);
    FinMap m(s, t, std::vector<Elem>(s, 0));
    for (std::size_t i = s; i > 0; --i) {
      m.table[i - 1] = static_cast<Elem>(index % t);
      index /= t;
    }
    return m;
  }
  Config unbounded;
  unbounded.maxHomSet = kSaturated;
  FinMap out;
  std::uint64_t i = 0;
  for_each_hom(cat, a, b, unbounded, [&](const FinMap& x) {
    if (i++ == index) {
      out = x;
      return false;
    }
    return true;
  });
  return out;
}

std::optional<FinMap> left_inverse_search(const Category& cat, const FinMap& f, const Config& cfg) {
  require_fin_backed(cat);
  // Fin and Fin^op have closed forms that coincide with the least element of
  // the filtered enumeration; the remaining tags are searched.
  if (cat.kind == CatKind::Fin) {
    if (!is_injective(f)) return std::nullopt;
    if (f.source == 0 && f.target > 0) return std::nullopt;
    FinMap g(f.target, f.source, std::vector<Elem>(f.target, 0));
    for (std::size_t x = 0; x < f.source; ++x) g.table[f.table[x]] = static_cast<Elem>(x);
    return g;
  }
  if (cat.kind == CatKind::FinOp) {
    // stored table t: cod -> dom; a left inverse is stored as a section of t
    if (!is_surjective(f)) return std::nullopt;
    FinMap s(f.target, f.source, std::vector<Elem>(f.target, 0));
    std::vector<bool> set(f.target, false);
    for (std::size_t y = 0; y < f.source; ++y) {
      const Elem x = f.table[y];
      if (!set[x]) {
        set[x] = true;
        s.table[x] = static_cast<Elem>(y);
      }
    }
    return s;
  }
  const FinMap id = identity(cat, dom(cat, f));
  std::optional<FinMap> out;
  for_each_hom(cat, cod(cat, f), dom(cat, f), cfg, [&](const FinMap& g) {
    if (compose(cat, g, f) == id) {
      out = g;
      return false;
    }
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------

void Config::validate() const {
  if (maxHomSet == 0 || maxApex == 0 || maxProduct == 0 || maxColorings == 0 || sampleTrials == 0) {
    throw Error(ErrorCode::SchemaError, "configuration caps must be positive");
  }
}

unsigned Config::thread_count() const {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Dot: return "dot";
    case OutputFormat::Text: return "text";
  }
  return "json";
}

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "dot") return OutputFormat::Dot;
  if (s == "text") return OutputFormat::Text;
  throw Error(ErrorCode::SchemaError, "unknown output format '" + s + "'");
}

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NotACocone: return "NotACocone";
    case ErrorCode::NoMediator: return "NoMediator";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::SolverFailed: return "SolverFailed";
    case ErrorCode::ChiPrimeIllDefined: return "ChiPrimeIllDefined";
    case ErrorCode::HomomorphismViolation: return "HomomorphismViolation";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace partite
