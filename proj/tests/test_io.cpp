#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fgm/io.hpp"

using namespace fgm;
namespace fs = std::filesystem;

namespace {

const std::string kData = FGM_DATA_DIR;

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("fgm_io_test_" + name);
}

bool same_cayley_table(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order() || a.identity() != b.identity()) return false;
  for (elem_t x = 0; x < a.order(); ++x) {
    if (a.inv(x) != b.inv(x)) return false;
    for (elem_t y = 0; y < a.order(); ++y)
      if (a.mul(x, y) != b.mul(x, y)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("scalar parsing", "[io]") {
  CHECK(*parse_scalar_text("1/3").exact == Rational(1, 3));
  CHECK(*parse_scalar_text("7").exact == Rational(7, 1));
  CHECK_FALSE(parse_scalar_text("0.25").is_exact());
  CHECK(parse_scalar_text("0.25").value == 0.25);
  CHECK_FALSE(parse_scalar_text("1e-2").is_exact());
  CHECK_THROWS_AS(parse_scalar_text("banana"), ParseError);
  CHECK_THROWS_AS(parse_scalar_text("1/0"), Error);
}

TEST_CASE("real formatting is fixed at 12 significant digits", "[io]") {
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(std::sqrt(2.0) / 2.0) == "0.707106781187");
  CHECK(format_real(0.0) == "0");
}

TEST_CASE("every builtin round-trips through its group file", "[io]") {
  for (const char* name : {"trivial", "cyclic:6", "cyclic:24", "dihedral:4", "dihedral:12", "s3",
                           "s4", "s5", "s6", "a4", "a5", "q8"}) {
    const auto g = catalog_group(name);
    const auto path = temp_file(std::string("group_") + name + ".json");
    save_group_file(*g, path.string());
    const auto back = load_group_file(path.string());
    REQUIRE(same_cayley_table(*g, *back));
    for (elem_t x = 0; x < g->order(); ++x) REQUIRE(g->label(x) == back->label(x));
    fs::remove(path);
  }
}

TEST_CASE("cayley files load and round-trip", "[io]") {
  const auto z4 = load_group_file(kData + "/z4.json");
  CHECK(z4->order() == 4);
  CHECK(z4->source() == GroupSource::Cayley);
  CHECK(z4->label(1) == "1");
  check_group_axioms(*z4);

  const auto path = temp_file("z4_again.json");
  save_group_file(*z4, path.string());
  const auto back = load_group_file(path.string());
  CHECK(same_cayley_table(*z4, *back));
  fs::remove(path);
}

TEST_CASE("bad group files are rejected", "[io]") {
  const auto path = temp_file("bad.json");
  const auto write = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };
  write("{\"type\": \"permutation\", \"degree\": 3, \"generators\": [\"(1 5)\"]}");
  CHECK_THROWS_AS(load_group_file(path.string()), InvalidPermutation);
  write("{\"type\": \"nope\"}");
  CHECK_THROWS_AS(load_group_file(path.string()), ParseError);
  write("{\"degree\": 3}");
  CHECK_THROWS_AS(load_group_file(path.string()), ParseError);
  write("not json at all");
  CHECK_THROWS_AS(load_group_file(path.string()), ParseError);
  write("{\"type\": \"cayley\", \"table\": [[0, 1], [1, 1]]}");
  CHECK_THROWS_AS(load_group_file(path.string()), ParseError);
  // 3 points but non-associative latin square exists only >= 5; use a broken inverse row.
  write("{\"type\": \"cayley\", \"table\": [[0, 1, 2], [1, 2, 0], [2, 1, 0]]}");
  CHECK_THROWS_AS(load_group_file(path.string()), ParseError);
  fs::remove(path);
}

TEST_CASE("length files load with exact values", "[io]") {
  const auto z4 = load_group_file(kData + "/z4.json");
  auto l = load_length_file(z4, kData + "/z4_length.json");
  CHECK(l.name() == "z4-half");
  CHECK(l.is_exact());
  CHECK(l.tol() == 0.0);
  CHECK(*l.value(1).exact == Rational(1, 2));
  CHECK(*l.value(2).exact == Rational(1, 1));
  CHECK_FALSE(verify_length_axioms(l).has_value());

  const auto q8 = catalog_group("q8");
  auto lq = load_length_file(q8, kData + "/q8_exact_length.json");
  auto builtin = q8_exact_metric(q8);
  for (elem_t x = 0; x < 8; ++x) CHECK(*lq.value(x).exact == *builtin.value(x).exact);
}

TEST_CASE("length files with missing or unknown entries fail", "[io]") {
  const auto z4 = load_group_file(kData + "/z4.json");
  const auto path = temp_file("partial_length.json");
  const auto write = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };
  write("{\"values\": {\"0\": 0, \"1\": \"1/2\"}}");
  CHECK_THROWS_AS(load_length_file(z4, path.string()), ParseError);
  write("{\"values\": {\"0\": 0, \"1\": \"1/2\", \"2\": 1, \"3\": \"1/2\", \"9\": 1}}");
  CHECK_THROWS_AS(load_length_file(z4, path.string()), ParseError);
  fs::remove(path);
}

TEST_CASE("decimal length files come back inexact with float tolerance", "[io]") {
  const auto z4 = load_group_file(kData + "/z4.json");
  const auto path = temp_file("float_length.json");
  {
    std::ofstream out(path);
    out << "{\"values\": {\"0\": 0, \"1\": 0.5, \"2\": 1.0, \"3\": \"0.5\"}}";
  }
  auto l = load_length_file(z4, path.string());
  CHECK_FALSE(l.is_exact());
  CHECK(l.tol() == 1e-9);
  fs::remove(path);
}

TEST_CASE("source resolution", "[io]") {
  const auto q8 = resolve_group_source("builtin:q8");
  CHECK(q8->order() == 8);
  CHECK_THROWS_AS(resolve_group_source("builtin:nope"), ParseError);
  CHECK_THROWS_AS(resolve_group_source("/no/such/file.json"), ParseError);

  CHECK(resolve_metric_source(q8, "discrete").name() == "discrete");
  CHECK(resolve_metric_source(q8, "unitary").name() == "unitary");
  CHECK(resolve_metric_source(q8, "q8-exact").name() == "q8-exact");
  const auto s4 = resolve_group_source("builtin:s4");
  auto ch = resolve_metric_source(s4, "clamped-hamming");
  CHECK(ch.contractive_state() == CheckState::Pass);
  auto from_file = resolve_metric_source(q8, kData + "/q8_near_length.json");
  CHECK(from_file.name() == "q8-near-file");
}

TEST_CASE("scan reports serialize deterministically across worker counts", "[io]") {
  const auto q8 = catalog_group("q8");
  auto l = resolve_metric_source(q8, "unitary");
  verify_length_axioms(l);
  verify_contractive(l);
  ScanConfig cfg;
  cfg.epsilon = Scalar::rational(Rational(1, 100));
  ReportFlags flags;
  flags.epsilon_text = "1/100";

  cfg.jobs = 1;
  const auto one = scan_report_json(theorem_scan(l, cfg), flags, *q8).dump(2);
  cfg.jobs = 8;
  const auto eight = scan_report_json(theorem_scan(l, cfg), flags, *q8).dump(2);
  CHECK(one == eight);

  const auto parsed = json::parse(one);
  CHECK(parsed.at("schema_version") == 1);
  CHECK(parsed.at("group") == "q8");
  CHECK(parsed.at("epsilon") == "0.01");
  CHECK(parsed.at("epsilon_exact") == "1/100");
  CHECK(parsed.at("large") == 0);
  CHECK(parsed.at("gap_violation") == 0);
  CHECK_FALSE(parsed.contains("wall_ms"));  // timing only with the flag
  REQUIRE(parsed.at("witnesses").is_array());
  CHECK(parsed.at("witnesses")[0].at("tuple")[0] == "1");
}

TEST_CASE("scan report csv", "[io]") {
  const auto q8 = catalog_group("q8");
  auto l = resolve_metric_source(q8, "discrete");
  verify_length_axioms(l);
  verify_contractive(l);
  ScanConfig cfg;
  cfg.epsilon = Scalar::rational(Rational(1, 100));
  const auto csv = scan_report_csv(theorem_scan(l, cfg));
  CHECK(csv.find("near_trivial") != std::string::npos);
  CHECK(csv.find("higman-scan,q8,discrete,0.01,4096,1,0,0,4095,false,false") != std::string::npos);
}

TEST_CASE("stage files load and check", "[io]") {
  auto stages = load_stages_file(kData + "/stages_example.json");
  REQUIRE(stages.size() == 3);
  const auto r = approximation_sequence_check(stages);
  CHECK(r.stages[0].status == "not yet refuted: defect too large");
  CHECK(r.stages[1].status == "not yet refuted: defect too large");
  CHECK(r.first_inconsistent == 3);
  const auto j = approx_report_json(r);
  CHECK(j.at("first_inconsistent_stage") == 3);
  CHECK(j.at("corollary_constants").at("epsilon_upper") == "1/3000");
}

TEST_CASE("witness serialization carries labels and both sides", "[io]") {
  const auto s6 = catalog_group("s6");
  auto l = resolve_metric_source(s6, "hamming");
  verify_length_axioms(l);
  const auto w = verify_contractive(l);
  REQUIRE(w.has_value());
  const auto j = witness_json(*s6, *w);
  CHECK(j.at("rule") == "contractive");
  CHECK(j.at("lhs") == "0.5");
  CHECK(j.at("lhs_exact") == "1/2");
  CHECK(j.at("rhs_exact") == "4/9");
  CHECK(j.at("labels").size() == 3);
}
