#include "doctest.h"
#include "partite/error.hpp"
#include "partite/fincat.hpp"
#include "support.hpp"

using namespace partite;
using namespace partite::testing;

namespace {

const Category kCats[] = {Category::fin(), Category::fin_op(), Category::fin_le(), Category::fin_le_star_op()};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Stirling numbers of the second kind; rigid surjections n -> k are in
// bijection with partitions of n into k blocks.
std::uint64_t stirling2(std::uint64_t n, std::uint64_t k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

std::uint64_t power(std::uint64_t b, std::uint64_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

}  // namespace

TEST_CASE("hom counts agree with closed forms") {
  for (std::size_t a = 0; a <= 4; ++a) {
    for (std::size_t b = 0; b <= 4; ++b) {
      CHECK(hom_count(Category::fin(), a, b) == power(b, a));
      CHECK(hom_count(Category::fin_op(), a, b) == power(a, b));
      CHECK(hom_count(Category::fin_le(), a, b) == binomial(b, a));
      CHECK(hom_count(Category::fin_le_star_op(), a, b) == stirling2(b, a));
      CHECK(hom_enumerate(kCats[0], a, b).size() == hom_count(kCats[0], a, b));
      for (const auto& cat : kCats) CHECK(hom_enumerate(cat, a, b).size() == hom_count(cat, a, b));
    }
  }
}

TEST_CASE("enumeration is lexicographic and hom_index inverts hom_at") {
  for (const auto& cat : kCats) {
    for (std::size_t a = 0; a <= 3; ++a) {
      for (std::size_t b = 0; b <= 3; ++b) {
        const auto homs = hom_enumerate(cat, a, b);
        CHECK(std::is_sorted(homs.begin(), homs.end()));
        CHECK(std::adjacent_find(homs.begin(), homs.end()) == homs.end());
        for (std::size_t i = 0; i < homs.size(); ++i) {
          CHECK(is_morphism(cat, homs[i], a, b));
          CHECK(hom_index(cat, a, b, homs[i]) == i);
          CHECK(hom_at(cat, a, b, i) == homs[i]);
        }
      }
    }
  }
}

TEST_CASE("rigid surjections from 3 onto 2") {
  // arrows 2 -> 3 of (Fin,<=*)^op are stored as rigid surjections 3 -> 2
  const auto homs = hom_enumerate(Category::fin_le_star_op(), 2, 3);
  REQUIRE(homs.size() == 3);
  for (const auto& s : homs) {
    CHECK(is_surjective(s));
    CHECK(is_rigid_surjection(s));
  }
  CHECK(homs[0].table == std::vector<Elem>{0, 0, 1});
  CHECK(homs[1].table == std::vector<Elem>{0, 1, 0});
  CHECK(homs[2].table == std::vector<Elem>{0, 1, 1});
}

TEST_CASE("composition order and type errors") {
  const FinMap f(2, 3, {0, 2});
  const FinMap g(3, 2, {1, 1, 0});
  CHECK(compose(Category::fin(), g, f).table == std::vector<Elem>{1, 0});
  // in Fin^op the same tables compose the other way round
  CHECK(compose(Category::fin_op(), f, g).table == std::vector<Elem>{1, 0});
  CHECK_THROWS_AS(compose(Category::fin(), f, f), Error);
  try {
    compose(Category::fin(), f, f);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TypeMismatch);
  }
}

TEST_CASE("category laws on small carriers") {
  for (const auto& cat : kCats) {
    std::size_t failures = 0;
    for (std::size_t a = 0; a <= 3; ++a)
      for (std::size_t b = 0; b <= 3; ++b)
        for (const auto& f : hom_enumerate(cat, a, b)) {
          if (compose(cat, identity(cat, b), f) != f || compose(cat, f, identity(cat, a)) != f) ++failures;
          for (std::size_t c = 0; c <= 3; ++c)
            for (const auto& g : hom_enumerate(cat, b, c)) {
              if (!is_morphism(cat, compose(cat, g, f), a, c)) ++failures;
            }
        }
    CHECK(failures == 0);
  }
}

TEST_CASE("left inverse closed forms match the filtered enumeration") {
  for (const auto& cat : {Category::fin(), Category::fin_op()}) {
    for (std::size_t a = 0; a <= 3; ++a) {
      for (std::size_t b = 0; b <= 3; ++b) {
        for (const auto& f : hom_enumerate(cat, a, b)) {
          std::optional<FinMap> least;
          for (const auto& g : hom_enumerate(cat, b, a)) {
            if (compose(cat, g, f) == identity(cat, a)) {
              least = g;
              break;
            }
          }
          CHECK(left_inverse_search(cat, f) == least);
        }
      }
    }
  }
}

TEST_CASE("left inverses in the ordered categories") {
  // order embeddings only retract onto themselves; the underlying Fin map
  // still has a left inverse
  const FinMap inc(2, 3, {0, 2});
  CHECK_FALSE(left_inverse_search(Category::fin_le(), inc).has_value());
  CHECK(left_inverse_search(Category::fin(), inc).has_value());
  CHECK(left_inverse_search(Category::fin_le(), FinMap::identity(3)) == FinMap::identity(3));
  // a rigid surjection 3 -> 2, read as an arrow 2 -> 3 of the reversed category
  CHECK_FALSE(left_inverse_search(Category::fin_le_star_op(), FinMap(3, 2, {0, 1, 1})).has_value());
}

TEST_CASE("bounds are enforced before enumeration") {
  Config cfg;
  cfg.maxHomSet = 10;
  CHECK_THROWS_AS(hom_enumerate(Category::fin(), 3, 3, cfg), Error);
  try {
    hom_enumerate(Category::fin(), 3, 3, cfg);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundExceeded);
  }
}

TEST_CASE("index category law checking") {
  IndexCategory J;
  const auto a = J.add_object("a");
  const auto b = J.add_object("b");
  const auto c = J.add_object("c");
  const auto f = J.add_arrow("f", a, b);
  const auto g = J.add_arrow("g", b, c);
  CHECK_FALSE(J.law_violations().empty());  // g.f unrecorded
  const auto gf = J.add_arrow("gf", a, c);
  J.add_composite(f, g, gf);
  CHECK(J.law_violations().empty());
  CHECK(J.compose(g, f) == gf);
  CHECK(J.compose(f, J.identity(a)) == f);
}

TEST_CASE("random diagrams are functors") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    for (const auto& cat : {Category::fin(), Category::fin_op()}) {
      const auto d = random_diagram(rng, cat, 4, 4);
      CHECK(d->index->law_violations().empty());
      CHECK(functor_violations(*d).empty());
    }
  }
}
