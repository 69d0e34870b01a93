#include <set>

#include "doctest.h"
#include "partite/error.hpp"
#include "partite/lines.hpp"

using namespace partite;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::uint64_t power(std::uint64_t b, std::uint64_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

}  // namespace

TEST_CASE("line counts match the binomial sum") {
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::uint64_t sum = 0;
      for (std::size_t j = 1; j <= n; ++j) sum += binomial(n, j) * power(k, n - j);
      CHECK(line_count(k, n) == sum);
      const auto lines = enumerate_lines(k, n);
      CHECK(lines.size() == sum);
      std::set<std::string> distinct;
      for (const auto& l : lines) {
        CHECK(l.valid(k));
        distinct.insert(encode(l));
      }
      CHECK(distinct.size() == lines.size());
    }
  }
}

TEST_CASE("canonical order for two letters and N = 2") {
  const auto lines = enumerate_lines(2, 2);
  std::vector<std::string> names;
  for (const auto& l : lines) names.push_back(encode(l));
  CHECK(names == std::vector<std::string>{"*.*", "*.0", "*.1", "0.*", "1.*"});
}

TEST_CASE("every tuple lies on its canonical line and hj_compose is injective") {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::uint64_t t = 0; t < tuple_count(k, n); ++t) {
        const Tuple e = tuple_at(k, n, t);
        CHECK(tuple_index(e, k) == t);
        const Line l = canonical_line_through(e);
        CHECK(membership(e, l) == e.letters[0]);
      }
      for (const auto& l : enumerate_lines(k, n)) {
        std::set<std::uint64_t> images;
        for (Letter a = 0; a < k; ++a) {
          const Tuple e = hj_compose(l, a);
          CHECK(membership(e, l) == a);
          images.insert(tuple_index(e, k));
        }
        CHECK(images.size() == k);
      }
    }
  }
}

TEST_CASE("encodings round trip") {
  const Tuple e{{0, 2, 1}};
  CHECK(encode(e) == "0.2.1");
  CHECK(decode_tuple("0.2.1") == e);
  const Line l = decode_line("*.1.*");
  CHECK(encode(l) == "*.1.*");
  CHECK(l.active_positions() == std::vector<std::size_t>{0, 2});
  CHECK_THROWS_AS(decode_line("0.1"), Error);
}

TEST_CASE("Hales-Jewett witnesses at desk scale") {
  const auto r22 = hj_witness_search(2, 2, 4);
  CHECK(r22.n == 2);
  CHECK(r22.exhaustive);
  REQUIRE(r22.checks.size() == 2);
  CHECK(r22.checks[0].outcome == HJOutcome::Refuted);
  CHECK(r22.checks[0].counterexample == std::vector<std::uint32_t>{0, 1});
  CHECK(r22.checks[1].outcome == HJOutcome::Holds);
  for (std::size_t r = 1; r <= 4; ++r) CHECK(hj_witness_search(1, r, 3).n == 1);
  CHECK(hj_witness_search(2, 1, 3).n == 1);
  CHECK(hj_witness_search(3, 1, 3).n == 1);
}

TEST_CASE("search gives up past nmax") {
  try {
    hj_witness_search(2, 2, 1);
    FAIL("expected SearchExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SearchExhausted);
  }
}

TEST_CASE("sampled checks never claim to hold") {
  Config cfg;
  cfg.maxColorings = 8;
  cfg.sampleTrials = 50;
  // 2^9 colourings of 3^2 exceed the budget
  const HJCheck c = hj_check(3, 2, 2, cfg, true);
  CHECK(c.outcome != HJOutcome::Holds);
  CHECK_THROWS_AS(hj_check(3, 2, 2, cfg, false), Error);
}

TEST_CASE("line index of two letters and N = 2") {
  const LineIndex idx = build_line_index(2, 2);
  CHECK(idx.tuples.size() == 4);
  CHECK(idx.lines.size() == 5);
  CHECK(idx.category->object_count() == 9);
  std::size_t nonIdentity = 0;
  for (std::size_t a = 0; a < idx.category->arrow_count(); ++a) nonIdentity += !idx.category->is_identity(a);
  CHECK(nonIdentity == 10);
  CHECK(idx.arrows.size() == 10);
  CHECK(idx.category->law_violations().empty());
  const LineIndex one = build_line_index(1, 1);
  CHECK(one.category->object_count() == 2);
  CHECK(one.arrows.size() == 1);
}

TEST_CASE("the HJ transfer index is the line index") {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const LineIndex li = build_line_index(k, n);
      const TransferIndex ti = build_hj_transfer_index(k, n);
      REQUIRE(ti.arrows.size() == li.arrows.size());
      CHECK(ti.homAC == li.tuples.size());
      CHECK(ti.homBC == li.lines.size());
      for (std::size_t a = 0; a < li.arrows.size(); ++a) {
        CHECK(ti.arrows[a].h == li.arrows[a].tuple);
        CHECK(ti.arrows[a].g == li.arrows[a].line);
        CHECK(ti.arrows[a].f == li.arrows[a].letter);
      }
    }
  }
}

TEST_CASE("transfer index over Fin counts factorisations") {
  // Hom(1,2) has 2 maps, Hom(2,2) has 4, Hom(1,2) again as f: every g.f is a
  // point, and each (g, f) contributes one arrow
  const TransferIndex ti = build_transfer_index(Category::fin(), 1, 2, 2);
  CHECK(ti.homAC == 2);
  CHECK(ti.homBC == 4);
  CHECK(ti.arrows.size() == 8);
  CHECK(ti.category->law_violations().empty());
  const TransferIndex empty = build_transfer_index(Category::fin(), 1, 0, 2);
  CHECK(empty.arrows.empty());
}
