#include "doctest.h"
#include "partite/error.hpp"
#include "partite/structlang.hpp"
#include "support.hpp"

using namespace partite;
using namespace partite::testing;

namespace {

std::shared_ptr<const Language> graph_language() {
  auto l = std::make_shared<Language>();
  l->relations.push_back({"E", 2});
  return l;
}

Structure path(std::size_t n) {
  Structure s = Structure::bare(graph_language(), n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s.relations[0].push_back(FinMap(2, n, {static_cast<Elem>(i), static_cast<Elem>(i + 1)}));
  }
  s.normalize();
  return s;
}

}  // namespace

TEST_CASE("language validation") {
  Language l;
  l.relations.push_back({"R", 1});
  l.relations.push_back({"R", 2});
  CHECK_THROWS_AS(l.validate(), Error);
  Language bad;
  bad.base = Category::fin_le();
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("homomorphisms reflect relations both ways") {
  const Structure p2 = path(2);
  const Structure p3 = path(3);
  CHECK(is_homomorphism(FinMap(2, 3, {0, 1}), p2, p3));
  // the edge of the short path would land on the non-edge {0,2}
  CHECK(is_homomorphism(FinMap(2, 3, {0, 2}), p2, p3) == false);
  Structure two = Structure::bare(graph_language(), 2);
  // embedding the edgeless pair onto an edge adds a relation, which fails the
  // biconditional
  CHECK_FALSE(is_homomorphism(FinMap(2, 3, {0, 1}), two, p3));
  CHECK(is_homomorphism(FinMap(2, 3, {0, 2}), two, p3));
}

TEST_CASE("function symbols: F(gamma . f) = F(gamma) . f") {
  auto lang = std::make_shared<Language>();
  lang->functions.push_back({"F", 1, 1});
  // Hom(X, 1) has one element and Hom(X, 1) -> Hom(X, 1) is forced
  Structure a = Structure::bare(lang, 2);
  a.functions[0] = FuncInterp::table({0});
  Structure b = Structure::bare(lang, 3);
  b.functions[0] = FuncInterp::table({0});
  CHECK(a.violations().empty());
  CHECK(is_homomorphism(FinMap(2, 3, {0, 2}), a, b));

  auto lang2 = std::make_shared<Language>();
  lang2->functions.push_back({"swap", 2, 2});
  // on carrier 1, Hom(1, 2) = {[0], [1]}; swap exchanges them
  Structure s = Structure::bare(lang2, 1);
  s.functions[0] = FuncInterp::table({1, 0});
  Structure t = Structure::bare(lang2, 2);
  // on carrier 2, Hom(2, 2) has 4 maps; post-compose with the transposition
  t.functions[0] = FuncInterp::table({3, 2, 1, 0});
  CHECK(t.apply(0, FinMap(2, 2, {0, 1})) == FinMap(2, 2, {1, 0}));
  CHECK(is_homomorphism(FinMap(1, 2, {1}), s, t));
  Structure fixed = Structure::bare(lang2, 1);
  fixed.functions[0] = FuncInterp::table({0, 1});
  CHECK_FALSE(is_homomorphism(FinMap(1, 2, {1}), fixed, t));
}

TEST_CASE("lazy interpretations are memoised consistently") {
  int calls = 0;
  const FuncInterp f = FuncInterp::lazy(5, [&](std::uint64_t i) {
    ++calls;
    return (i + 1) % 5;
  });
  CHECK(f(3) == 4);
  CHECK(f(3) == 4);
  CHECK(calls == 1);
  CHECK(f.materialize() == std::vector<std::uint64_t>{1, 2, 3, 4, 0});
  CHECK_FALSE(f.eager());
}

TEST_CASE("monic blocks and i0-monomorphisms") {
  const LineInstance in = pair_instance();
  CHECK(is_monic_block(in.X));
  CHECK_FALSE(is_monic_block(in.Y));  // the constant anchor has no left inverse
  const auto P = enumerate_i0_monos(in.X, in.Y, in.i0);
  REQUIRE(P.size() == 2);
  CHECK(P[0].table == std::vector<Elem>{0});
  CHECK(P[1].table == std::vector<Elem>{1});
  const LineInstance u = unary_instance();
  CHECK(enumerate_i0_monos(u.X, u.Y, u.i0).size() == 2);
}

TEST_CASE("Bl morphism kinds") {
  const LineInstance in = pair_instance();
  const FinMap f(1, 2, {1});
  CHECK(is_bl_morphism(f, in.X, BlSide::Domain, in.Y, BlSide::Codomain, in.i0));
  CHECK_FALSE(is_bl_morphism(FinMap(2, 1, {0, 0}), in.Y, BlSide::Codomain, in.X, BlSide::Domain, in.i0));
  CHECK(is_bl_morphism(FinMap(2, 2, {1, 0}), in.Y, BlSide::Codomain, in.Y, BlSide::Codomain, in.i0));
}

TEST_CASE("D-block morphisms pick the least i") {
  const Functor G(Category::fin_le(), Category::fin());
  const auto lang = empty_language();
  const DBlock X{block(lang, 1, FinMap::identity(1)), 1};
  const DBlock Y{block(lang, 3, FinMap::identity(3)), 3};
  const auto i = is_dblock_morphism(FinMap(1, 3, {2}), X, Y, G);
  REQUIRE(i);
  CHECK(i->table == std::vector<Elem>{2});
  CHECK_THROWS_AS(Functor(Category::fin(), Category::fin_op()), Error);
}

TEST_CASE("transport along a bijection is a homomorphism") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = uniform(rng, 1, 4);
    Structure s = Structure::bare(graph_language(), n);
    for (int e = 0; e < 4; ++e) s.relations[0].push_back(random_map(rng, 2, n));
    s.normalize();
    std::vector<Elem> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Elem>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    const FinMap f(n, n, perm);
    FinMap inv(n, n, std::vector<Elem>(n));
    for (std::size_t i = 0; i < n; ++i) inv.table[perm[i]] = static_cast<Elem>(i);
    const Structure t = transport(s, f, inv, n);
    CHECK(is_homomorphism(f, s, t));
    CHECK(is_homomorphism(inv, t, s));
  }
}
