#pragma once

// File formats and report serialization. Group and length files are JSON;
// reports are JSON (insertion-ordered, reals as 12-significant-digit strings,
// exact values additionally as "p/q") or flat CSV.

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fgm/catalog.hpp"
#include "fgm/errors.hpp"
#include "fgm/group.hpp"
#include "fgm/higman.hpp"
#include "fgm/length.hpp"
#include "fgm/unitary.hpp"

namespace fgm {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// "p/q" and bare integers parse exactly; anything else is a double.
inline Scalar parse_scalar_text(const std::string& text) {
  if (text.find('/') != std::string::npos) return Scalar::rational(Rational::parse(text));
  if (text.find_first_of(".eE") == std::string::npos && !text.empty())
    return Scalar::rational(Rational::parse(text));
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ParseError("not a number: '" + text + "'");
    return Scalar::real(v);
  } catch (const std::invalid_argument&) {
    throw ParseError("not a number: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range: '" + text + "'");
  }
}

inline Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar::rational(Rational(j.get<std::int64_t>(), 1));
  if (j.is_number_float()) return Scalar::real(j.get<double>());
  if (j.is_string()) return parse_scalar_text(j.get<std::string>());
  throw ParseError("expected a number or numeric string");
}

// Emits "key" (12 significant digits) and "key_exact" ("p/q") when exact.
inline void put_scalar(ordered_json& out, const std::string& key, const Scalar& s) {
  out[key] = format_real(s.value);
  if (s.exact) out[key + "_exact"] = s.exact->str();
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("bad JSON in '" + path + "': " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

// ---- group files ----------------------------------------------------------

inline GroupPtr load_group_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw ParseError("group file needs a 'type' field");
  const std::string type = j.at("type").get<std::string>();
  const std::string name = j.value("name", std::string{});
  const elem_t cap = j.value("cap", kDefaultClosureCap);
  GroupPtr g;
  if (type == "permutation") {
    if (!j.contains("degree")) throw ParseError("permutation group file needs 'degree'");
    const auto degree = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& s : j.value("generators", json::array()))
      gens.push_back(Permutation::parse_cycles(s.get<std::string>(), degree));
    g = FiniteGroup::from_permutations(gens, name, cap, degree == 0 ? 1 : degree);
  } else if (type == "unitary") {
    if (!j.contains("dimension")) throw ParseError("unitary group file needs 'dimension'");
    const int dim = j.at("dimension").get<int>();
    if (dim < 1) throw ParseError("unitary dimension must be >= 1");
    const double tol = j.value("tol", 1e-9);
    std::vector<CMatrix> gens;
    for (const auto& flat : j.value("generators", json::array())) {
      if (!flat.is_array() || flat.size() != static_cast<std::size_t>(dim) * dim)
        throw ParseError("unitary generator needs dimension^2 [re, im] pairs, row-major");
      CMatrix m(dim);
      for (std::size_t k = 0; k < flat.size(); ++k) {
        const auto& pair = flat[k];
        if (!pair.is_array() || pair.size() != 2) throw ParseError("matrix entry is not [re, im]");
        m.a[k] = {pair[0].get<double>(), pair[1].get<double>()};
      }
      gens.push_back(std::move(m));
    }
    g = build_from_unitary_matrices(gens, name, tol, cap);
  } else if (type == "cayley") {
    if (!j.contains("table")) throw ParseError("cayley group file needs 'table'");
    std::vector<std::vector<elem_t>> table;
    for (const auto& row : j.at("table")) table.push_back(row.get<std::vector<elem_t>>());
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    g = FiniteGroup::from_cayley(table, std::move(labels), name);
  } else {
    throw ParseError("unknown group type '" + type + "'");
  }
  if (type != "cayley" && j.contains("labels")) {
    auto labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != g->order())
      throw ParseError("labels array does not match closure order " + std::to_string(g->order()));
    g = with_labels(g, std::move(labels));
  }
  return g;
}

inline GroupPtr load_group_file(const std::string& path) { return load_group_json(load_json_file(path)); }

inline ordered_json group_to_json(const FiniteGroup& g) {
  ordered_json out;
  out["type"] = group_source_name(g.source());
  if (!g.name().empty()) out["name"] = g.name();
  switch (g.source()) {
    case GroupSource::Permutation: {
      out["degree"] = g.degree();
      out["generators"] = g.generator_strings();
      break;
    }
    case GroupSource::Unitary: {
      out["dimension"] = g.dimension();
      ordered_json mat_list = ordered_json::array();
      for (const auto& m : g.generator_matrices()) {
        ordered_json flat = ordered_json::array();
        for (const auto& z : m.a) flat.push_back(ordered_json::array({z.real(), z.imag()}));
        mat_list.push_back(std::move(flat));
      }
      out["generators"] = std::move(mat_list);
      break;
    }
    case GroupSource::Cayley: {
      ordered_json table = ordered_json::array();
      for (elem_t a = 0; a < g.order(); ++a) {
        ordered_json row = ordered_json::array();
        for (elem_t b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
        table.push_back(std::move(row));
      }
      out["table"] = std::move(table);
      break;
    }
  }
  ordered_json labels = ordered_json::array();
  for (elem_t i = 0; i < g.order(); ++i) labels.push_back(g.label(i));
  out["labels"] = std::move(labels);
  return out;
}

inline void save_group_file(const FiniteGroup& g, const std::string& path) {
  write_text_file(path, group_to_json(g).dump(2) + "\n");
}

// ---- length files ---------------------------------------------------------

inline LengthFunction load_length_json(const GroupPtr& g, const json& j,
                                       const std::string& fallback_name) {
  if (!j.is_object()) throw ParseError("length file must be a JSON object");
  const std::string name = j.value("name", fallback_name);
  const double tol = j.contains("tol") ? j.at("tol").get<double>() : -1.0;
  std::vector<std::pair<std::string, Scalar>> values;
  if (j.contains("values"))
    for (const auto& [label, v] : j.at("values").items()) values.emplace_back(label, scalar_from_json(v));
  if (j.contains("class_values")) {
    std::vector<std::pair<std::string, Scalar>> class_values;
    for (const auto& [label, v] : j.at("class_values").items())
      class_values.emplace_back(label, scalar_from_json(v));
    return length_from_class_values(g, class_values, name, tol, values);
  }
  return length_from_values(g, values, name, tol);
}

inline LengthFunction load_length_file(const GroupPtr& g, const std::string& path) {
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return load_length_json(g, load_json_file(path), stem);
}

// ---- source resolution ----------------------------------------------------

inline GroupPtr resolve_group_source(const std::string& src) {
  if (src.rfind("builtin:", 0) == 0) return catalog_group(src.substr(8));
  return load_group_file(src);
}

// Builtin metric names or a length-file path. Metrics whose construction
// depends on a verified base (clamping) come back verified; the rest are
// verified by the caller.
inline LengthFunction resolve_metric_source(const GroupPtr& g, const std::string& src) {
  if (src == "discrete") return discrete_length(g);
  if (src == "hamming") return hamming_length(g);
  if (src == "clamped-hamming") {
    LengthFunction h = hamming_length(g);
    verify_length_axioms(h);
    return clamp_contractive(h, Scalar::rational(Rational(1, 2)));
  }
  if (src == "unitary") return unitary_length(g);
  if (src == "q8-exact") return q8_exact_metric(g);
  return load_length_file(g, src);
}

// ---- witnesses and reports -------------------------------------------------

inline ordered_json witness_json(const FiniteGroup& g, const ViolationWitness& w) {
  ordered_json out;
  out["rule"] = w.rule;
  ordered_json ids = ordered_json::array(), labels = ordered_json::array();
  for (const elem_t e : w.elements) {
    ids.push_back(e);
    labels.push_back(g.label(e));
  }
  out["elements"] = std::move(ids);
  out["labels"] = std::move(labels);
  put_scalar(out, "lhs", w.lhs);
  put_scalar(out, "rhs", w.rhs);
  return out;
}

// Flags echoed into every report. jobs is deliberately absent: reports must
// be byte-identical across worker counts.
struct ReportFlags {
  std::string epsilon_text;
  double tol = 1e-9;
  bool generating_only = false;
  std::uint64_t budget = 20000000;
  std::string format = "json";
  bool allow_noncontractive = false;
  bool timing = false;
};

inline ordered_json flags_json(const ReportFlags& f) {
  ordered_json out;
  if (!f.epsilon_text.empty()) out["epsilon"] = f.epsilon_text;
  out["tol"] = format_real(f.tol);
  out["generating_only"] = f.generating_only;
  out["budget"] = f.budget;
  out["format"] = f.format;
  out["allow_noncontractive"] = f.allow_noncontractive;
  out["timing"] = f.timing;
  return out;
}

inline ordered_json scan_report_json(const ScanReport& r, const ReportFlags& flags,
                                     const FiniteGroup& g) {
  ordered_json out;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = "higman-scan";
  out["group"] = r.group_name;
  out["metric"] = r.metric_name;
  put_scalar(out, "epsilon", r.epsilon);
  out["scanned"] = r.scanned;
  out["near_trivial"] = r.count(Verdict::NearTrivial);
  out["large"] = r.count(Verdict::Large);
  out["gap_violation"] = r.count(Verdict::GapViolation);
  out["defect_too_big"] = r.count(Verdict::DefectTooBig);
  out["generating_only"] = r.generating_only;
  out["out_of_hypothesis"] = r.out_of_hypothesis;
  ordered_json ws = ordered_json::array();
  for (const auto& w : r.witnesses) {
    ordered_json jw;
    jw["verdict"] = verdict_name(w.verdict);
    jw["index"] = w.index;
    ordered_json tup = ordered_json::array();
    for (const elem_t e : w.tuple) tup.push_back(g.label(e));
    jw["tuple"] = std::move(tup);
    ordered_json lens = ordered_json::array();
    for (const double v : w.lengths) lens.push_back(format_real(v));
    jw["lengths"] = std::move(lens);
    jw["max_defect"] = format_real(w.max_defect);
    ws.push_back(std::move(jw));
  }
  out["witnesses"] = std::move(ws);
  out["flags"] = flags_json(flags);
  if (flags.timing) out["wall_ms"] = r.wall_ms;
  return out;
}

inline std::string scan_report_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "schema_version,command,group,metric,epsilon,scanned,near_trivial,large,"
         "gap_violation,defect_too_big,generating_only,out_of_hypothesis\n";
  out << kReportSchemaVersion << ",higman-scan," << r.group_name << "," << r.metric_name << ","
      << format_real(r.epsilon.value) << "," << r.scanned << "," << r.count(Verdict::NearTrivial)
      << "," << r.count(Verdict::Large) << "," << r.count(Verdict::GapViolation) << ","
      << r.count(Verdict::DefectTooBig) << "," << (r.generating_only ? "true" : "false") << ","
      << (r.out_of_hypothesis ? "true" : "false") << "\n";
  return out.str();
}

// ---- approximation stage files ---------------------------------------------

inline std::vector<ApproximationStage> load_stages_json(const json& j) {
  if (!j.is_object() || !j.contains("stages")) throw ParseError("stage file needs 'stages'");
  std::vector<ApproximationStage> stages;
  for (const auto& js : j.at("stages")) {
    GroupPtr g = resolve_group_source(js.at("group").get<std::string>());
    LengthFunction l = resolve_metric_source(g, js.at("metric").get<std::string>());
    const auto& tuple = js.at("tuple");
    if (!tuple.is_array() || tuple.size() != 4) throw ParseError("stage tuple needs 4 labels");
    HigmanTuple t;
    for (int i = 0; i < 4; ++i) {
      const std::string label = tuple[i].get<std::string>();
      const auto id = g->element_by_label(label);
      if (!id) throw ParseError("unknown element label '" + label + "' in stage tuple");
      t.a[i] = *id;
    }
    const auto& targets = js.at("delta_targets");
    if (!targets.is_array() || targets.size() != 4)
      throw ParseError("stage delta_targets needs 4 numbers");
    ApproximationStage stage{std::move(g), std::move(l), t, {}};
    for (int i = 0; i < 4; ++i) stage.delta_targets[i] = targets[i].get<double>();
    stages.push_back(std::move(stage));
  }
  return stages;
}

inline std::vector<ApproximationStage> load_stages_file(const std::string& path) {
  return load_stages_json(load_json_file(path));
}

inline ordered_json approx_report_json(const ApproxReport& r) {
  ordered_json out;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = "approx-check";
  ordered_json stages = ordered_json::array();
  for (const auto& s : r.stages) {
    ordered_json js;
    js["stage"] = s.index;
    ordered_json d = ordered_json::array(), l = ordered_json::array(), t = ordered_json::array();
    for (int i = 0; i < 4; ++i) {
      d.push_back(format_real(s.defects[i]));
      l.push_back(format_real(s.lengths[i]));
      t.push_back(format_real(s.delta_targets[i]));
    }
    js["defects"] = std::move(d);
    js["max_defect"] = format_real(s.max_defect);
    js["lengths"] = std::move(l);
    js["delta_targets"] = std::move(t);
    js["generates"] = s.generates;
    js["delta_ok"] = s.delta_ok;
    js["theorem_applies"] = s.theorem_applies;
    js["forced_failure"] = s.forced_failure;
    js["theorem_violated"] = s.theorem_violated;
    js["status"] = s.status;
    stages.push_back(std::move(js));
  }
  out["stages"] = std::move(stages);
  if (r.first_inconsistent)
    out["first_inconsistent_stage"] = *r.first_inconsistent;
  else
    out["first_inconsistent_stage"] = nullptr;
  out["conclusion"] = r.conclusion;
  // The non-approximability corollary's stated constants, recorded verbatim;
  // the stage checks themselves use the 4*eps bound.
  out["corollary_constants"] = ordered_json{{"epsilon_upper", "1/3000"}, {"delta_half_factor", "56"}};
  return out;
}

}  // namespace fgm
