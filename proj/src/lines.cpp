#include "partite/lines.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "partite/coloring.hpp"
#include "partite/error.hpp"

namespace partite {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSat / a) return kSat;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < e; ++i) out = sat_mul(out, base);
  return out;
}

std::vector<std::string> split_dots(const std::string& s) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, '.')) out.push_back(part);
  if (!s.empty() && s.back() == '.') out.emplace_back();
  return out;
}

Letter parse_letter(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorCode::SchemaError, "bad letter '" + s + "'");
  }
  return static_cast<Letter>(std::stoul(s));
}

}  // namespace

std::vector<std::size_t> Line::active_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (active[i]) out.push_back(i);
  }
  return out;
}

bool Line::valid(std::size_t alphabet) const {
  if (active.size() != fixed.size() || active.empty()) return false;
  bool any = false;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (active[i]) {
      any = true;
      if (fixed[i] != 0) return false;
    } else if (fixed[i] >= alphabet) {
      return false;
    }
  }
  return any;
}

std::optional<Letter> membership(const Tuple& e, const Line& l) {
  if (e.n() != l.n()) return std::nullopt;
  std::optional<Letter> value;
  for (std::size_t i = 0; i < e.n(); ++i) {
    if (l.active[i]) {
      if (value && *value != e.letters[i]) return std::nullopt;
      value = e.letters[i];
    } else if (e.letters[i] != l.fixed[i]) {
      return std::nullopt;
    }
  }
  return value;
}

Tuple hj_compose(const Line& l, Letter p) {
  Tuple e;
  e.letters.resize(l.n());
  for (std::size_t i = 0; i < l.n(); ++i) e.letters[i] = l.active[i] ? p : l.fixed[i];
  return e;
}

Line canonical_line_through(const Tuple& e) {
  Line l;
  l.active.assign(e.n(), false);
  l.fixed = e.letters;
  if (!e.letters.empty()) {
    l.active[0] = true;
    l.fixed[0] = 0;
  }
  return l;
}

std::uint64_t line_count(std::size_t alphabet, std::size_t n) {
  // sum_k C(n,k) a^(n-k) = (a+1)^n - a^n
  const std::uint64_t all = sat_pow(alphabet + 1, n);
  if (all == kSat) return kSat;
  return all - sat_pow(alphabet, n);
}

std::vector<Line> enumerate_lines(std::size_t alphabet, std::size_t n, const Config& cfg) {
  const std::uint64_t count = line_count(alphabet, n);
  if (count > cfg.maxHomSet) throw Error(ErrorCode::BoundExceeded, "line count exceeds maxHomSet");
  std::vector<Line> out;
  out.reserve(count);
  for (std::size_t k = n; k >= 1; --k) {
    // active sets of size k in lexicographic order of their position lists
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = i;
    while (true) {
      Line base;
      base.active.assign(n, false);
      base.fixed.assign(n, 0);
      for (std::size_t p : pos) base.active[p] = true;
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i) {
        if (!base.active[i]) free.push_back(i);
      }
      const std::uint64_t fillings = sat_pow(alphabet, free.size());
      for (std::uint64_t code = 0; code < fillings; ++code) {
        Line l = base;
        std::uint64_t c = code;
        for (std::size_t j = free.size(); j > 0; --j) {
          l.fixed[free[j - 1]] = static_cast<Letter>(c % alphabet);
          c /= alphabet;
        }
        out.push_back(std::move(l));
      }
      std::size_t i = k;
      while (i > 0 && pos[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return out;
}

std::uint64_t tuple_count(std::size_t alphabet, std::size_t n) { return sat_pow(alphabet, n); }

std::uint64_t tuple_index(const Tuple& e, std::size_t alphabet) {
  std::uint64_t idx = 0;
  for (Letter x : e.letters) idx = idx * alphabet + x;
  return idx;
}

Tuple tuple_at(std::size_t alphabet, std::size_t n, std::uint64_t index) {
  Tuple e;
  e.letters.resize(n);
  for (std::size_t i = n; i > 0; --i) {
    e.letters[i - 1] = static_cast<Letter>(index % alphabet);
    index /= alphabet;
  }
  return e;
}

std::string encode(const Tuple& e) {
  std::string out;
  for (std::size_t i = 0; i < e.n(); ++i) {
    if (i) out += '.';
    out += std::to_string(e.letters[i]);
  }
  return out;
}

std::string encode(const Line& l) {
  std::string out;
  for (std::size_t i = 0; i < l.n(); ++i) {
    if (i) out += '.';
    out += l.active[i] ? std::string("*") : std::to_string(l.fixed[i]);
  }
  return out;
}

Tuple decode_tuple(const std::string& s) {
  Tuple e;
  if (s.empty()) return e;
  for (const auto& part : split_dots(s)) e.letters.push_back(parse_letter(part));
  return e;
}

Line decode_line(const std::string& s) {
  Line l;
  for (const auto& part : split_dots(s)) {
    if (part == "*") {
      l.active.push_back(true);
      l.fixed.push_back(0);
    } else {
      l.active.push_back(false);
      l.fixed.push_back(parse_letter(part));
    }
  }
  if (std::find(l.active.begin(), l.active.end(), true) == l.active.end()) {
    throw Error(ErrorCode::SchemaError, "line '" + s + "' has no active coordinate");
  }
  return l;
}

std::string to_string(HJOutcome o) {
  switch (o) {
    case HJOutcome::Holds: return "verified-exhaustively";
    case HJOutcome::Refuted: return "refuted";
    case HJOutcome::NoCounterexampleFound: return "no-counterexample-found";
  }
  return "?";
}

namespace {

ColoringProblem hj_problem(std::size_t alphabet, std::size_t n, const Config& cfg) {
  ColoringProblem p;
  const std::uint64_t points = tuple_count(alphabet, n);
  if (points > cfg.maxProduct) throw Error(ErrorCode::BoundExceeded, "P^N exceeds maxProduct");
  p.points = points;
  for (const Line& l : enumerate_lines(alphabet, n, cfg)) {
    std::vector<std::uint32_t> copy;
    for (Letter a = 0; a < alphabet; ++a) copy.push_back(static_cast<std::uint32_t>(tuple_index(hj_compose(l, a), alphabet)));
    p.copies.push_back(std::move(copy));
  }
  p.normalize();
  return p;
}

}  // namespace

HJCheck hj_check(std::size_t alphabet, std::size_t r, std::size_t n, const Config& cfg, bool sample) {
  if (r == 0) throw Error(ErrorCode::PreconditionFailed, "colour count must be positive");
  HJCheck out;
  out.n = n;
  const std::uint64_t points = tuple_count(alphabet, n);
  if (coloring_count(points, r) <= cfg.maxColorings) {
    const ColoringProblem p = hj_problem(alphabet, n, cfg);
    out.counterexample = least_counterexample(p, r, cfg.thread_count());
    out.outcome = out.counterexample ? HJOutcome::Refuted : HJOutcome::Holds;
    return out;
  }
  if (!sample) {
    throw Error(ErrorCode::BoundExceeded, std::to_string(r) + "^" + std::to_string(points) +
                                              " colourings of P^N exceed maxColorings");
  }
  const ColoringProblem p = hj_problem(alphabet, n, cfg);
  const SampleOutcome s = sampled_counterexample(p, r, cfg.sampleTrials, cfg.rngSeed, cfg.thread_count());
  out.trials = cfg.sampleTrials;
  out.seed = cfg.rngSeed;
  out.counterexample = s.counterexample;
  out.outcome = s.counterexample ? HJOutcome::Refuted : HJOutcome::NoCounterexampleFound;
  return out;
}

HJSearchResult hj_witness_search(std::size_t alphabet, std::size_t r, std::size_t nMax, const Config& cfg,
                                 bool sample) {
  HJSearchResult out;
  for (std::size_t n = 1; n <= nMax; ++n) {
    HJCheck c = hj_check(alphabet, r, n, cfg, sample);
    const bool passed = c.outcome != HJOutcome::Refuted;
    if (c.outcome == HJOutcome::NoCounterexampleFound) out.exhaustive = false;
    out.checks.push_back(std::move(c));
    if (passed) {
      out.n = n;
      return out;
    }
  }
  throw Error(ErrorCode::SearchExhausted, "no N <= " + std::to_string(nMax) + " is a Hales-Jewett witness for |P|=" +
                                              std::to_string(alphabet) + ", r=" + std::to_string(r));
}

LineIndex build_line_index(std::size_t alphabet, std::size_t n, const Config& cfg) {
  LineIndex idx;
  idx.alphabet = alphabet;
  idx.n = n;
  const std::uint64_t tuples = tuple_count(alphabet, n);
  if (tuples > cfg.maxHomSet) throw Error(ErrorCode::BoundExceeded, "P^N exceeds maxHomSet");
  idx.lines = enumerate_lines(alphabet, n, cfg);
  idx.category = std::make_shared<IndexCategory>();
  for (std::uint64_t t = 0; t < tuples; ++t) {
    idx.tuples.push_back(tuple_at(alphabet, n, t));
    idx.category->add_object(encode(idx.tuples.back()));
  }
  for (const Line& l : idx.lines) idx.category->add_object(encode(l));
  for (std::size_t li = 0; li < idx.lines.size(); ++li) {
    for (Letter p = 0; p < alphabet; ++p) {
      const std::size_t t = tuple_index(hj_compose(idx.lines[li], p), alphabet);
      const std::size_t a = idx.category->add_arrow("(" + encode(idx.tuples[t]) + "," + encode(idx.lines[li]) + ")",
                                                    idx.tuple_object(t), idx.line_object(li));
      idx.arrows.push_back({t, li, p, a});
    }
  }
  return idx;
}

TransferIndex build_transfer_index(std::uint64_t homAC, std::uint64_t homBC, std::uint64_t homAB,
                                   const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& composeIndex,
                                   const Config& cfg) {
  if (homAC > cfg.maxHomSet || homBC > cfg.maxHomSet || homAB > cfg.maxHomSet ||
      sat_mul(homBC, homAB) > cfg.maxProduct) {
    throw Error(ErrorCode::BoundExceeded, "transfer index exceeds configured caps");
  }
  TransferIndex idx;
  idx.homAC = homAC;
  idx.homBC = homBC;
  idx.homAB = homAB;
  idx.category = std::make_shared<IndexCategory>();
  for (std::uint64_t h = 0; h < homAC; ++h) idx.category->add_object("h" + std::to_string(h));
  for (std::uint64_t g = 0; g < homBC; ++g) idx.category->add_object("g" + std::to_string(g));
  for (std::uint64_t g = 0; g < homBC; ++g) {
    for (std::uint64_t f = 0; f < homAB; ++f) {
      const std::uint64_t h = composeIndex(g, f);
      const std::size_t a = idx.category->add_arrow(
          "(h" + std::to_string(h) + ",g" + std::to_string(g) + ",f" + std::to_string(f) + ")", idx.h_object(h),
          idx.g_object(g));
      idx.arrows.push_back({h, g, f, a});
    }
  }
  return idx;
}

TransferIndex build_transfer_index(const Category& cat, std::size_t A, std::size_t B, std::size_t C,
                                   const Config& cfg) {
  const auto homAB = hom_enumerate(cat, A, B, cfg);
  const auto homBC = hom_enumerate(cat, B, C, cfg);
  const std::uint64_t homAC = hom_count(cat, A, C);
  return build_transfer_index(homAC, homBC.size(), homAB.size(),
                              [&](std::uint64_t g, std::uint64_t f) {
                                return hom_index(cat, A, C, compose(cat, homBC[g], homAB[f]));
                              },
                              cfg);
}

TransferIndex build_hj_transfer_index(std::size_t alphabet, std::size_t n, const Config& cfg) {
  const auto lines = enumerate_lines(alphabet, n, cfg);
  return build_transfer_index(tuple_count(alphabet, n), lines.size(), alphabet,
                              [&](std::uint64_t g, std::uint64_t f) {
                                return tuple_index(hj_compose(lines[g], static_cast<Letter>(f)), alphabet);
                              },
                              cfg);
}

Diagram transfer_diagram(const TransferIndex& index, const Category& target, std::size_t D, std::size_t E,
                         const std::vector<FinMap>& F) {
  std::vector<std::size_t> objects(index.homAC, D);
  objects.insert(objects.end(), index.homBC, E);
  Diagram d = Diagram::with_identities(index.category, target, std::move(objects));
  for (const auto& a : index.arrows) d.arrows[a.arrow] = F.at(a.f);
  return d;
}

}  // namespace partite
