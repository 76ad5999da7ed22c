#include <catch2/catch.hpp>

#include <set>
#include <vector>

#include "fgm/catalog.hpp"
#include "fgm/group.hpp"

using namespace fgm;

namespace {

// Independent closure oracle: repeated multiplication over raw permutations,
// no FiniteGroup machinery.
std::set<std::vector<std::uint32_t>> closure_oracle(const std::vector<Permutation>& gens) {
  std::set<std::vector<std::uint32_t>> seen;
  const std::size_t degree = gens.empty() ? 1 : gens[0].degree();
  std::vector<Permutation> frontier{Permutation(degree)};
  seen.insert(Permutation(degree).images());
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        const auto q = p.compose(g);
        if (seen.insert(q.images()).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  return seen;
}

std::vector<std::uint32_t> class_sizes(const FiniteGroup& g) {
  std::vector<std::uint32_t> sizes;
  for (const auto& c : conjugacy_classes(g)) sizes.push_back(static_cast<std::uint32_t>(c.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

TEST_CASE("closure from standard generating sets", "[group]") {
  const auto s3 = FiniteGroup::from_permutations(
      {Permutation::parse_cycles("(1 2)", 3), Permutation::parse_cycles("(1 2 3)", 3)}, "s3");
  CHECK(s3->order() == 6);
  check_group_axioms(*s3);

  const auto trivial = FiniteGroup::from_permutations({}, "trivial");
  CHECK(trivial->order() == 1);
  CHECK(trivial->identity() == 0);

  const auto six_cycle = Permutation::parse_cycles("(1 2 3 4 5 6)", 6);
  const auto c6 = FiniteGroup::from_permutations({six_cycle}, "c6");
  CHECK(c6->order() == closure_oracle({six_cycle}).size());
  CHECK(c6->order() == 6);
  check_group_axioms(*c6);
}

TEST_CASE("closure cap enforced", "[group]") {
  CHECK_THROWS_AS(
      FiniteGroup::from_permutations({Permutation::parse_cycles("(1 2 3 4 5 6 7)", 7)}, "c7", 5),
      ClosureExceedsCap);
}

TEST_CASE("identity is element zero in closure order", "[group]") {
  for (const char* name : {"s3", "s4", "a4", "q8", "cyclic:6", "dihedral:4"}) {
    const auto g = catalog_group(name);
    CHECK(g->identity() == 0);
  }
}

TEST_CASE("multiply, inverse, commutator", "[group]") {
  const auto s3 = catalog_group("s3");
  const auto t12 = *s3->element_by_label("(1 2)");
  const auto t13 = *s3->element_by_label("(1 3)");
  const auto c = s3->commutator(t12, t13);
  CHECK(s3->label(c) == "(1 2 3)");
  for (elem_t g = 0; g < s3->order(); ++g) {
    CHECK(s3->commutator(g, s3->identity()) == s3->identity());
    CHECK(s3->commutator(s3->identity(), g) == s3->identity());
  }
  const auto c6 = catalog_group("cyclic:6");
  for (elem_t g = 0; g < c6->order(); ++g)
    for (elem_t h = 0; h < c6->order(); ++h) CHECK(c6->commutator(g, h) == c6->identity());
}

TEST_CASE("generated subgroups", "[group]") {
  const auto s3 = catalog_group("s3");
  const auto rot = *s3->element_by_label("(1 2 3)");
  const auto flip = *s3->element_by_label("(1 2)");

  const auto a3 = generated_subgroup(s3, std::vector<elem_t>{rot});
  CHECK(a3.order() == 3);
  CHECK(a3.is_normal);

  const auto none = generated_subgroup(s3, std::vector<elem_t>{});
  CHECK(none.order() == 1);
  CHECK(none.contains(s3->identity()));

  const auto two = generated_subgroup(s3, std::vector<elem_t>{flip});
  CHECK(two.order() == 2);
  CHECK_FALSE(two.is_normal);
}

TEST_CASE("re-closing a generated subgroup is a fixed point", "[group]") {
  for (const char* name : {"s4", "q8", "dihedral:6"}) {
    const auto g = catalog_group(name);
    for (elem_t seed = 0; seed < g->order(); ++seed) {
      const auto h = generated_subgroup(g, std::vector<elem_t>{seed, (seed * 7 + 1) % g->order()});
      const auto again = generated_subgroup(g, h.members);
      CHECK(again.members == h.members);
    }
  }
}

TEST_CASE("subgroup commutators", "[group]") {
  const auto s3 = catalog_group("s3");
  const auto whole = whole_group_subgroup(s3);
  const auto derived = subgroup_commutator(whole, whole);
  CHECK(derived.order() == 3);

  const auto q8 = catalog_group("q8");
  const auto q8_derived = subgroup_commutator(whole_group_subgroup(q8), whole_group_subgroup(q8));
  CHECK(q8_derived.order() == 2);
  CHECK(q8_derived.contains(*q8->element_by_label("-1")));

  const auto triv = trivial_subgroup(s3);
  CHECK(subgroup_commutator(triv, whole).order() == 1);
}

TEST_CASE("subgroup commutator with the whole group is normal", "[group]") {
  for (const char* name : {"s3", "s4", "a4", "q8", "dihedral:6"}) {
    const auto g = catalog_group(name);
    const auto whole = whole_group_subgroup(g);
    for (elem_t seed = 0; seed < g->order(); ++seed) {
      const auto h = generated_subgroup(g, std::vector<elem_t>{seed});
      CHECK(subgroup_commutator(h, whole).is_normal);
    }
  }
}

TEST_CASE("quotients", "[group]") {
  const auto s3 = catalog_group("s3");
  const auto a3 = generated_subgroup(s3, std::vector<elem_t>{*s3->element_by_label("(1 2 3)")});
  const auto q = quotient(a3);
  CHECK(q.quotient->order() == 2);
  check_group_axioms(*q.quotient);

  const auto by_trivial = quotient(trivial_subgroup(s3));
  CHECK(by_trivial.quotient->order() == s3->order());
  for (elem_t a = 0; a < s3->order(); ++a)
    for (elem_t b = 0; b < s3->order(); ++b)
      CHECK(by_trivial.projection[s3->mul(a, b)] ==
            by_trivial.quotient->mul(by_trivial.projection[a], by_trivial.projection[b]));

  const auto q8 = catalog_group("q8");
  const auto center = generated_subgroup(q8, std::vector<elem_t>{*q8->element_by_label("-1")});
  const auto klein = quotient(center);
  CHECK(klein.quotient->order() == 4);
  for (elem_t x = 0; x < 4; ++x)
    CHECK(klein.quotient->mul(x, x) == klein.quotient->identity());

  const auto flip2 = generated_subgroup(s3, std::vector<elem_t>{*s3->element_by_label("(1 2)")});
  CHECK_THROWS_AS(quotient(flip2), NotNormal);
}

TEST_CASE("quotient projection is a homomorphism", "[group]") {
  for (const char* name : {"s4", "q8", "dihedral:6", "cyclic:12"}) {
    const auto g = catalog_group(name);
    for (elem_t seed = 0; seed < g->order(); ++seed) {
      const auto h = generated_subgroup(g, std::vector<elem_t>{seed});
      if (!h.is_normal) continue;
      const auto q = quotient(h);
      CHECK(q.projection[g->identity()] == q.quotient->identity());
      for (elem_t a = 0; a < g->order(); ++a)
        for (elem_t b = 0; b < g->order(); ++b)
          REQUIRE(q.projection[g->mul(a, b)] ==
                  q.quotient->mul(q.projection[a], q.projection[b]));
    }
  }
}

TEST_CASE("conjugacy classes", "[group]") {
  CHECK(class_sizes(*catalog_group("s3")) == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(class_sizes(*catalog_group("q8")) == std::vector<std::uint32_t>{1, 1, 2, 2, 2});
  CHECK(class_sizes(*catalog_group("s4")) == std::vector<std::uint32_t>{1, 3, 6, 6, 8});
  CHECK(class_sizes(*catalog_group("a5")) == std::vector<std::uint32_t>{1, 12, 12, 15, 20});
  const auto c6 = catalog_group("cyclic:6");
  CHECK(conjugacy_classes(*c6).size() == 6);
  const auto classes = conjugacy_classes(*catalog_group("s4"));
  const auto id_class = classes[0];
  CHECK(id_class.size() == 1);
  CHECK(id_class[0] == catalog_group("s4")->identity());
}

TEST_CASE("group axioms hold exhaustively on small catalog entries", "[group]") {
  for (const char* name :
       {"trivial", "cyclic:2", "cyclic:24", "cyclic:64", "dihedral:3", "dihedral:16", "s3", "s4",
        "a4", "q8", "dihedral:32", "a5"}) {
    const auto g = catalog_group(name);
    REQUIRE(g->order() <= 64);
    check_group_axioms(*g);
  }
}

TEST_CASE("restriction to a subgroup is a standalone group", "[group]") {
  const auto q8 = catalog_group("q8");
  const auto sub = generated_subgroup(q8, std::vector<elem_t>{*q8->element_by_label("i")});
  CHECK(sub.order() == 4);
  const auto r = restrict_to_subgroup(sub);
  CHECK(r->order() == 4);
  check_group_axioms(*r);
  CHECK(r->has_matrices());
}

TEST_CASE("catalog entries", "[group][catalog]") {
  CHECK(catalog_group("trivial")->order() == 1);
  CHECK(catalog_group("cyclic:6")->order() == 6);
  CHECK(catalog_group("dihedral:4")->order() == 8);
  CHECK(catalog_group("dihedral:1")->order() == 2);
  CHECK(catalog_group("dihedral:2")->order() == 4);
  CHECK(catalog_group("s5")->order() == 120);
  CHECK(catalog_group("s6")->order() == 720);
  CHECK(catalog_group("a4")->order() == 12);
  CHECK(catalog_group("a5")->order() == 60);
  CHECK(catalog_group("q8")->order() == 8);
  CHECK_THROWS_AS(catalog_group("cyclic:65"), ParseError);
  CHECK_THROWS_AS(catalog_group("dihedral:33"), ParseError);
  CHECK_THROWS_AS(catalog_group("nope"), ParseError);
  CHECK_THROWS_AS(catalog_group("cyclic:x"), ParseError);
}

TEST_CASE("a5 is perfect", "[group][catalog]") {
  const auto a5 = catalog_group("a5");
  const auto whole = whole_group_subgroup(a5);
  CHECK(subgroup_commutator(whole, whole).order() == 60);
}

TEST_CASE("every named catalog entry constructs and checks out", "[group][catalog]") {
  for (const char* name : {"trivial", "cyclic:9", "dihedral:7", "s3", "s4", "s5", "s6", "a4",
                           "a5", "q8"}) {
    const auto e = catalog_entry(name);
    CHECK(e.group->order() >= 1);
    CHECK_FALSE(e.metrics.empty());
    CHECK(e.metrics[0] == "discrete");
    if (e.group->order() <= 64) check_group_axioms(*e.group);
  }
}
