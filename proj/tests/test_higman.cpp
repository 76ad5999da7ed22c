#include <catch2/catch.hpp>

#include <cmath>

#include "fgm/catalog.hpp"
#include "fgm/higman.hpp"

using namespace fgm;

namespace {

const double kSqrt2Half = std::sqrt(2.0) / 2.0;

LengthFunction contractive(LengthFunction l) {
  verify_length_axioms(l);
  verify_contractive(l);
  REQUIRE(l.contractive_state() == CheckState::Pass);
  return l;
}

LengthFunction q8_near_metric(const GroupPtr& q8) {
  return contractive(length_from_class_values(q8,
                                              {{"-1", Scalar::rational(Rational(1, 200))},
                                               {"i", Scalar::rational(Rational(1, 5))},
                                               {"j", Scalar::rational(Rational(1, 5))},
                                               {"k", Scalar::rational(Rational(1, 5))}},
                                              "q8-near"));
}

LengthFunction resolve_metric_for_test(const GroupPtr& g, const std::string& name) {
  if (name == "unitary") return unitary_length(g);
  return q8_exact_metric(g);
}

HigmanTuple tuple_of(const FiniteGroup& g, const char* a0, const char* a1, const char* a2,
                     const char* a3) {
  return HigmanTuple{{*g.element_by_label(a0), *g.element_by_label(a1), *g.element_by_label(a2),
                      *g.element_by_label(a3)}};
}

const Scalar kEps100 = Scalar::rational(Rational(1, 100));

}  // namespace

TEST_CASE("relation defect", "[higman]") {
  const auto q8 = catalog_group("q8");
  const auto l = contractive(unitary_length(q8));

  const HigmanTuple idt{{0, 0, 0, 0}};
  const auto zero = relation_defect(l, idt);
  for (int i = 0; i < 4; ++i) CHECK(zero.d[i].value == 0.0);

  const auto all_i = tuple_of(*q8, "i", "i", "i", "i");
  const auto dv = relation_defect(l, all_i);
  for (int i = 0; i < 4; ++i) CHECK(dv.d[i].value == Approx(kSqrt2Half).margin(1e-9));

  // Abelian shortcut: defects equal generator lengths.
  const auto c6 = catalog_group("cyclic:6");
  auto h = hamming_length(c6);
  verify_length_axioms(h);
  for (elem_t a = 0; a < 6; ++a)
    for (elem_t b = 0; b < 6; ++b) {
      const auto d = relation_defect(h, HigmanTuple{{a, b, a, b}});
      CHECK(scalar_eq(d.d[0], h.value(a), 0.0));
      CHECK(scalar_eq(d.d[1], h.value(b), 0.0));
    }
}

TEST_CASE("pure verdict classification", "[higman]") {
  const auto eps = kEps100;
  const auto mk = [](double v) { return Scalar::real(v); };
  const std::array<Scalar, 4> small_defects{mk(0.001), mk(0.002), mk(0.0), mk(0.01)};

  CHECK(verdict_from_vectors({mk(0.0), mk(0.01), mk(0.02), mk(0.0399)}, small_defects, eps, 0.0) ==
        Verdict::NearTrivial);
  CHECK(verdict_from_vectors({mk(0.3), mk(0.3), mk(0.3), mk(0.3)}, small_defects, eps, 0.0) ==
        Verdict::Large);
  CHECK(verdict_from_vectors({mk(0.21875), mk(0.3), mk(0.9), mk(1.0)}, small_defects, eps, 0.0) ==
        Verdict::Large);  // 7/32 boundary counts as large
  CHECK(verdict_from_vectors({mk(0.1), mk(0.3), mk(0.3), mk(0.3)}, small_defects, eps, 0.0) ==
        Verdict::GapViolation);
  CHECK(verdict_from_vectors({mk(0.0), mk(0.0), mk(0.0), mk(0.04)}, small_defects, eps, 0.0) ==
        Verdict::GapViolation);  // 4 eps boundary is not below
  CHECK(verdict_from_vectors({mk(0.3), mk(0.3), mk(0.3), mk(0.3)},
                             {mk(0.001), mk(0.02), mk(0.0), mk(0.0)}, eps, 0.0) ==
        Verdict::DefectTooBig);
}

TEST_CASE("classify", "[higman]") {
  const auto q8 = catalog_group("q8");
  const auto l = contractive(unitary_length(q8));

  CHECK(classify(l, HigmanTuple{{0, 0, 0, 0}}, kEps100) == Verdict::NearTrivial);
  CHECK(classify(l, tuple_of(*q8, "i", "i", "i", "i"), kEps100) == Verdict::DefectTooBig);

  CHECK_THROWS_AS(classify(l, HigmanTuple{{0, 0, 0, 0}}, Scalar::real(0.02)), EpsilonOutOfRange);
  CHECK_THROWS_AS(classify(l, HigmanTuple{{0, 0, 0, 0}}, Scalar::rational(Rational(1, 64))),
                  EpsilonOutOfRange);

  auto raw = hamming_length(catalog_group("s3"));
  verify_length_axioms(raw);
  CHECK_THROWS_AS(classify(raw, HigmanTuple{{0, 0, 0, 0}}, kEps100), NotContractive);
}

TEST_CASE("defect-too-big is monotone in epsilon", "[higman]") {
  const auto q8 = catalog_group("q8");
  const auto l = contractive(q8_exact_metric(q8));
  const Scalar eps_small = Scalar::rational(Rational(1, 200));
  for (elem_t a = 0; a < 8; ++a)
    for (elem_t b = 0; b < 8; ++b) {
      const HigmanTuple t{{a, b, (a + b) % 8, a}};
      if (classify(l, t, kEps100) == Verdict::DefectTooBig)
        REQUIRE(classify(l, t, eps_small) == Verdict::DefectTooBig);
    }
}

TEST_CASE("theorem scan on q8 with the unitary metric", "[higman]") {
  const auto q8 = catalog_group("q8");
  const auto l = contractive(unitary_length(q8));

  ScanConfig cfg;
  cfg.epsilon = kEps100;

  const auto all = theorem_scan(l, cfg);
  CHECK(all.scanned == 4096);
  CHECK(all.count(Verdict::Large) == 0);
  CHECK(all.count(Verdict::GapViolation) == 0);
  CHECK(all.count(Verdict::NearTrivial) == 1);  // only the identity tuple solves within eps
  CHECK(all.count(Verdict::DefectTooBig) == 4095);
  CHECK(all.gap_band_tuples == 0);
  CHECK(all.counts[0] + all.counts[1] + all.counts[2] + all.counts[3] == all.scanned);
  REQUIRE_FALSE(all.witnesses.empty());
  CHECK(all.witnesses[0].index == 0);
  CHECK(all.witnesses[0].verdict == Verdict::NearTrivial);

  cfg.generating_only = true;
  const auto gen = theorem_scan(l, cfg);
  // Non-generating tuples live inside <i>, <j> or <k>; by inclusion-exclusion
  // 3*4^4 - 3*2^4 + 2^4 = 736 of the 4096 tuples fail to generate.
  CHECK(gen.scanned == 4096 - 736);
  CHECK(gen.count(Verdict::Large) == 0);
  CHECK(gen.count(Verdict::GapViolation) == 0);
  CHECK(gen.count(Verdict::NearTrivial) == 0);  // the identity tuple does not generate q8
}

TEST_CASE("theorem scan on s4 with the discrete metric", "[higman]") {
  const auto s4 = catalog_group("s4");
  const auto l = contractive(discrete_length(s4));

  ScanConfig cfg;
  cfg.epsilon = kEps100;
  const auto all = theorem_scan(l, cfg);
  CHECK(all.scanned == 331776);
  CHECK(all.count(Verdict::NearTrivial) == 1);
  CHECK(all.count(Verdict::Large) == 0);
  CHECK(all.count(Verdict::GapViolation) == 0);

  cfg.generating_only = true;
  const auto gen = theorem_scan(l, cfg);
  CHECK(gen.count(Verdict::NearTrivial) == 0);
  CHECK(gen.count(Verdict::Large) == 0);
  CHECK(gen.count(Verdict::GapViolation) == 0);
  CHECK(gen.count(Verdict::DefectTooBig) == gen.scanned);
}

TEST_CASE("theorem scan on the trivial group", "[higman]") {
  const auto l = contractive(discrete_length(catalog_group("trivial")));
  ScanConfig cfg;
  cfg.epsilon = kEps100;
  cfg.generating_only = true;
  const auto r = theorem_scan(l, cfg);
  CHECK(r.scanned == 1);
  CHECK(r.count(Verdict::NearTrivial) == 1);
}

TEST_CASE("near-solutions below 4 eps on a small-delta metric", "[higman]") {
  const auto q8 = catalog_group("q8");
  const auto l = q8_near_metric(q8);
  ScanConfig cfg;
  cfg.epsilon = kEps100;
  const auto r = theorem_scan(l, cfg);
  // Tuples over {1, -1} have commutators e and defects 0 or 1/200 <= 1/100;
  // lengths 1/200 < 4/100. Nothing else comes close.
  CHECK(r.count(Verdict::NearTrivial) == 16);
  CHECK(r.count(Verdict::Large) == 0);
  CHECK(r.count(Verdict::GapViolation) == 0);
  CHECK(r.gap_band_tuples == 0);
}

TEST_CASE("scan counts agree with per-tuple classification", "[higman]") {
  const auto q8 = catalog_group("q8");
  for (const char* source : {"q8-exact", "unitary", "q8-near"}) {
    const LengthFunction l = std::string(source) == "q8-near"
                                 ? q8_near_metric(q8)
                                 : contractive(resolve_metric_for_test(q8, source));
    ScanConfig cfg;
    cfg.epsilon = kEps100;
    const auto r = theorem_scan(l, cfg);
    std::array<std::uint64_t, 4> counts{};
    for (elem_t a0 = 0; a0 < 8; ++a0)
      for (elem_t a1 = 0; a1 < 8; ++a1)
        for (elem_t a2 = 0; a2 < 8; ++a2)
          for (elem_t a3 = 0; a3 < 8; ++a3)
            ++counts[static_cast<int>(classify(l, HigmanTuple{{a0, a1, a2, a3}}, cfg.epsilon))];
    CHECK(counts == r.counts);
  }
}

TEST_CASE("scan is deterministic across worker counts", "[higman]") {
  const auto s4 = catalog_group("s4");
  const auto l = contractive(discrete_length(s4));
  ScanConfig cfg;
  cfg.epsilon = kEps100;
  cfg.generating_only = true;
  cfg.jobs = 1;
  const auto one = theorem_scan(l, cfg);
  cfg.jobs = 7;
  const auto seven = theorem_scan(l, cfg);
  CHECK(one.counts == seven.counts);
  CHECK(one.scanned == seven.scanned);
  REQUIRE(one.witnesses.size() == seven.witnesses.size());
  for (std::size_t i = 0; i < one.witnesses.size(); ++i) {
    CHECK(one.witnesses[i].index == seven.witnesses[i].index);
    CHECK(one.witnesses[i].verdict == seven.witnesses[i].verdict);
    CHECK(one.witnesses[i].tuple == seven.witnesses[i].tuple);
  }
}

TEST_CASE("witness lists are capped per verdict", "[higman]") {
  const auto q8 = catalog_group("q8");
  const auto l = contractive(unitary_length(q8));
  ScanConfig cfg;
  cfg.epsilon = kEps100;
  const auto r = theorem_scan(l, cfg);
  std::size_t defect_witnesses = 0;
  for (const auto& w : r.witnesses)
    if (w.verdict == Verdict::DefectTooBig) ++defect_witnesses;
  CHECK(defect_witnesses == 100);
}

TEST_CASE("scan budget", "[higman]") {
  const auto l = contractive(discrete_length(catalog_group("s4")));
  ScanConfig cfg;
  cfg.epsilon = kEps100;
  cfg.budget = 1000;
  CHECK_THROWS_AS(theorem_scan(l, cfg), ScanBudgetExceeded);
}

TEST_CASE("scan preconditions", "[higman]") {
  auto raw = hamming_length(catalog_group("s3"));
  verify_length_axioms(raw);
  ScanConfig cfg;
  cfg.epsilon = kEps100;
  CHECK_THROWS_AS(theorem_scan(raw, cfg), NotContractive);
  cfg.require_contractive = false;
  const auto r = theorem_scan(raw, cfg);
  CHECK(r.out_of_hypothesis);
  CHECK(r.scanned == 6u * 6 * 6 * 6);
}

TEST_CASE("exact solutions are trivial on catalog groups", "[higman]") {
  for (const char* name :
       {"trivial", "cyclic:12", "dihedral:6", "s3", "s4", "a4", "q8", "s5", "a5"}) {
    const auto g = catalog_group(name);
    CHECK_FALSE(no_finite_quotients_check(*g).has_value());
  }
}

TEST_CASE("approximation stages: identity tuple breaks delta targets", "[higman]") {
  const auto q8 = catalog_group("q8");
  std::vector<ApproximationStage> stages;
  stages.push_back({q8, contractive(unitary_length(q8)), HigmanTuple{{0, 0, 0, 0}},
                    {0.1, 0.1, 0.1, 0.1}});
  const auto r = approximation_sequence_check(stages);
  REQUIRE(r.stages.size() == 1);
  CHECK_FALSE(r.stages[0].delta_ok);
  CHECK(r.first_inconsistent == 1);
  CHECK(r.conclusion == "inconsistent with approximability at stage 1");
}

TEST_CASE("approximation stages: big defect yields no conclusion", "[higman]") {
  const auto q8 = catalog_group("q8");
  std::vector<ApproximationStage> stages;
  stages.push_back({q8, contractive(unitary_length(q8)),
                    tuple_of(*q8, "i", "i", "i", "i"), {0.1, 0.1, 0.1, 0.1}});
  const auto r = approximation_sequence_check(stages);
  REQUIRE(r.stages.size() == 1);
  CHECK(r.stages[0].max_defect == Approx(kSqrt2Half).margin(1e-9));
  CHECK(r.stages[0].delta_ok);
  CHECK_FALSE(r.stages[0].theorem_applies);
  CHECK(r.stages[0].status == "not yet refuted: defect too large");
  CHECK_FALSE(r.first_inconsistent.has_value());
  CHECK(r.conclusion == "no refutation at examined stages");
}

TEST_CASE("approximation stages: the theorem pins generating tuples", "[higman]") {
  // cyclic:2 with l(g) = 1/200: abelian, so defects equal lengths; the
  // non-identity tuple generates and has defect 1/200 < 1/64.
  const auto c2 = catalog_group("cyclic:2");
  LengthFunction l(c2, "c2-near", std::vector<Rational>{{0, 1}, {1, 200}});
  const auto lc = contractive(std::move(l));

  SECTION("targets below the 4 eps bound stay consistent") {
    std::vector<ApproximationStage> stages;
    stages.push_back({c2, lc, HigmanTuple{{1, 1, 1, 1}}, {1.0 / 300, 1.0 / 300, 1.0 / 300, 1.0 / 300}});
    const auto r = approximation_sequence_check(stages);
    CHECK(r.stages[0].theorem_applies);
    CHECK(r.stages[0].delta_ok);
    CHECK_FALSE(r.stages[0].forced_failure);
    CHECK_FALSE(r.stages[0].theorem_violated);
    CHECK(r.stages[0].status == "consistent so far: delta targets below theorem bound");
  }

  SECTION("targets at or above 4 eps are forced to fail") {
    std::vector<ApproximationStage> stages;
    stages.push_back({c2, lc, HigmanTuple{{1, 1, 1, 1}}, {0.1, 0.1, 0.1, 0.1}});
    const auto r = approximation_sequence_check(stages);
    CHECK(r.stages[0].theorem_applies);
    CHECK_FALSE(r.stages[0].delta_ok);
    CHECK(r.stages[0].forced_failure);
    CHECK(r.first_inconsistent == 1);
  }

  SECTION("non-generating small-defect tuples are reported as such") {
    const auto q8 = catalog_group("q8");
    std::vector<ApproximationStage> stages;
    stages.push_back({q8, q8_near_metric(q8), tuple_of(*q8, "-1", "-1", "-1", "-1"),
                      {1.0 / 300, 1.0 / 300, 1.0 / 300, 1.0 / 300}});
    const auto r = approximation_sequence_check(stages);
    CHECK_FALSE(r.stages[0].theorem_applies);
    CHECK(r.stages[0].status == "not yet refuted: tuple does not generate");
  }
}

TEST_CASE("approximation stages require contractive metrics", "[higman]") {
  const auto s6 = catalog_group("s6");
  std::vector<ApproximationStage> stages;
  stages.push_back({s6, hamming_length(s6), HigmanTuple{{0, 0, 0, 0}}, {0, 0, 0, 0}});
  CHECK_THROWS_AS(approximation_sequence_check(stages), NotContractive);
}
