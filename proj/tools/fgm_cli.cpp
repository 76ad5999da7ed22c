// fgm: finite groups with invariant length functions.
//
// Commands: catalog, analyze, higman-scan, verify-lemmas, approx-check.
// Exit status: 0 = everything checked out, 1 = a verified property failed,
// 2 = bad input or unusable configuration.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fgm/io.hpp"
#include "fgm/nilpotency.hpp"

using namespace fgm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailed = 1;
constexpr int kExitBadInput = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::string render(const ordered_json& j, const std::string& format,
                   const std::string& csv_fallback) {
  if (format == "csv") return csv_fallback;
  return j.dump(2) + "\n";
}

// key,value CSV for the non-tabular reports.
std::string flat_csv(const ordered_json& j, const std::string& prefix = "") {
  std::string out;
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      out += flat_csv(value, name);
    } else if (value.is_array()) {
      out += name + "," + value.dump() + "\n";
    } else if (value.is_string()) {
      out += name + "," + value.get<std::string>() + "\n";
    } else {
      out += name + "," + value.dump() + "\n";
    }
  }
  return out;
}

struct MetricSetup {
  GroupPtr group;
  LengthFunction metric;
};

MetricSetup resolve(const std::string& group_src, const std::string& metric_src,
                    std::optional<double> tol_override) {
  GroupPtr g = resolve_group_source(group_src);
  LengthFunction l = resolve_metric_source(g, metric_src);
  if (tol_override) l = l.with_tol(*tol_override);
  return {std::move(g), std::move(l)};
}

ordered_json check_state_json(const FiniteGroup& g, CheckState s,
                              const std::optional<ViolationWitness>& w) {
  ordered_json out;
  switch (s) {
    case CheckState::Pass: out["status"] = "pass"; break;
    case CheckState::Fail: out["status"] = "fail"; break;
    case CheckState::Unknown: out["status"] = "skipped"; break;
  }
  if (w) out["witness"] = witness_json(g, *w);
  return out;
}

ordered_json zassenhaus_json(const ZassenhausReport& r) {
  ordered_json out;
  put_scalar(out, "epsilon", r.epsilon);
  if (r.delta) put_scalar(out, "delta", *r.delta);
  out["g_eps_order"] = r.g_eps_order;
  if (r.nil_g_eps)
    out["nil"] = *r.nil_g_eps;
  else
    out["nil"] = "not_nilpotent";
  out["bound"] = format_real(r.bound);
  out["exact"] = r.exact_used;
  out["delta_large_case"] = r.delta_large_case;
  out["ok"] = r.ok;
  return out;
}

int cmd_catalog(const std::string& group_src, const std::string& out_path,
                const std::string& format) {
  if (group_src.empty()) {
    std::string listing;
    for (const auto& name : catalog_listing()) listing += name + "\n";
    emit(listing, out_path);
    return kExitOk;
  }
  const GroupPtr g = resolve_group_source(group_src);
  const ordered_json j = group_to_json(*g);
  emit(render(j, format, flat_csv(j)), out_path);
  std::cerr << g->name() << ": order " << g->order() << ", source "
            << group_source_name(g->source()) << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& group_src, const std::string& metric_src,
                std::optional<double> tol_override, const std::string& format,
                const std::string& out_path) {
  auto [g, l] = resolve(group_src, metric_src, tol_override);

  ordered_json report;
  report["schema_version"] = kReportSchemaVersion;
  report["command"] = "analyze";
  {
    ordered_json jg;
    jg["name"] = g->name();
    jg["order"] = g->order();
    jg["source"] = group_source_name(g->source());
    ordered_json sizes = ordered_json::array();
    for (const auto& cls : conjugacy_classes(*g)) sizes.push_back(cls.size());
    jg["conjugacy_class_sizes"] = std::move(sizes);
    report["group"] = std::move(jg);
  }
  {
    ordered_json jm;
    jm["name"] = l.name();
    jm["tol"] = format_real(l.tol());
    jm["exact"] = l.is_exact();
    report["metric"] = std::move(jm);
  }

  bool all_ok = true;
  verify_length_axioms(l);
  report["axioms"] = check_state_json(*g, l.axioms_state(), l.axioms_witness());
  if (l.axioms_state() == CheckState::Pass) {
    verify_contractive(l);
    report["contractive"] = check_state_json(*g, l.contractive_state(), l.contractive_witness());
    all_ok &= l.contractive_state() == CheckState::Pass;
  } else {
    report["contractive"] = check_state_json(*g, CheckState::Unknown, std::nullopt);
    all_ok = false;
  }

  if (l.axioms_state() == CheckState::Pass) {
    if (g->order() > 1)
      put_scalar(report, "delta", delta(l));
    else
      report["delta"] = nullptr;
    put_scalar(report, "eta", eta(l));
  } else {
    report["delta"] = nullptr;
    report["eta"] = nullptr;
  }

  const auto nil = nilpotency_class(g);
  if (nil)
    report["nilpotency_class"] = *nil;
  else
    report["nilpotency_class"] = "not_nilpotent";

  ordered_json zs = ordered_json::array();
  if (l.contractive_state() == CheckState::Pass) {
    for (const auto& v : attained_values(l)) {
      if (!scalar_less(v, Scalar::rational(Rational(1, 4)))) continue;
      const auto zr = zassenhaus_check(l, v);
      all_ok &= zr.ok;
      zs.push_back(zassenhaus_json(zr));
    }
  }
  report["zassenhaus"] = std::move(zs);
  report["all_ok"] = all_ok;

  emit(render(report, format, flat_csv(report)), out_path);
  std::cerr << g->name() << " + " << l.name() << ": order " << g->order() << ", axioms "
            << (l.axioms_state() == CheckState::Pass ? "pass" : "fail") << ", contractive "
            << (l.contractive_state() == CheckState::Pass
                    ? "pass"
                    : l.contractive_state() == CheckState::Fail ? "fail" : "skipped")
            << ", nil " << (nil ? std::to_string(*nil) : std::string("none")) << "\n";
  return all_ok ? kExitOk : kExitPropertyFailed;
}

int cmd_higman_scan(const std::string& group_src, const std::string& metric_src,
                    const std::string& epsilon_text, std::optional<double> tol_override,
                    bool generating_only, int jobs, std::uint64_t budget,
                    bool allow_noncontractive, bool timing, const std::string& format,
                    const std::string& out_path) {
  auto [g, l] = resolve(group_src, metric_src, tol_override);
  verify_length_axioms(l);
  if (l.axioms_state() != CheckState::Pass)
    throw AxiomsNotVerified("metric '" + l.name() + "' fails the length axioms");
  verify_contractive(l);
  if (l.contractive_state() != CheckState::Pass && !allow_noncontractive)
    throw NotContractive("metric '" + l.name() +
                         "' is not commutator-contractive (use --allow-noncontractive to scan anyway)");

  ScanConfig cfg;
  cfg.epsilon = parse_scalar_text(epsilon_text);
  cfg.generating_only = generating_only;
  cfg.jobs = jobs;
  cfg.budget = budget;
  cfg.require_contractive = !allow_noncontractive;
  const ScanReport r = theorem_scan(l, cfg);

  ReportFlags flags;
  flags.epsilon_text = epsilon_text;
  flags.tol = l.tol();
  flags.generating_only = generating_only;
  flags.budget = budget;
  flags.format = format;
  flags.allow_noncontractive = allow_noncontractive;
  flags.timing = timing;
  const ordered_json j = scan_report_json(r, flags, *g);
  emit(render(j, format, scan_report_csv(r)), out_path);

  std::cerr << r.group_name << " + " << r.metric_name << ": scanned " << r.scanned
            << " tuples in " << r.wall_ms << " ms: near_trivial "
            << r.count(Verdict::NearTrivial) << ", large " << r.count(Verdict::Large)
            << ", gap_violation " << r.count(Verdict::GapViolation) << ", defect_too_big "
            << r.count(Verdict::DefectTooBig) << "\n";

  const bool in_hypothesis = !r.out_of_hypothesis;
  if (in_hypothesis && (r.count(Verdict::Large) > 0 || r.count(Verdict::GapViolation) > 0))
    return kExitPropertyFailed;
  return kExitOk;
}

int cmd_verify_lemmas(const std::string& group_src, const std::string& metric_src,
                      const std::vector<std::string>& epsilon_texts,
                      std::optional<double> tol_override, const std::string& format,
                      const std::string& out_path) {
  auto [g, l] = resolve(group_src, metric_src, tol_override);
  verify_length_axioms(l);
  if (l.axioms_state() != CheckState::Pass)
    throw AxiomsNotVerified("metric '" + l.name() + "' fails the length axioms");
  verify_contractive(l);
  l.require_contractive();  // the lemma suite needs the contractive hypothesis

  ordered_json report;
  report["schema_version"] = kReportSchemaVersion;
  report["command"] = "verify-lemmas";
  report["group"] = g->name();
  report["metric"] = l.name();
  bool all_ok = true;

  ordered_json eps_list = ordered_json::array();
  for (const auto& t : epsilon_texts) eps_list.push_back(t);
  report["epsilons"] = std::move(eps_list);

  ordered_json section2 = ordered_json::array();
  ordered_json zassenhaus = ordered_json::array();
  for (const auto& text : epsilon_texts) {
    const Scalar eps = parse_scalar_text(text);
    const Section2Report r = check_section2_lemmas(l, eps);
    if (!r.g_eps_normal) throw Error("G_eps failed the normality check");
    ordered_json js;
    put_scalar(js, "epsilon", r.epsilon);
    js["g_eps_order"] = r.g_eps_order;
    js["g_eps_is_whole"] = r.g_eps_is_whole;
    js["g_eps_normal"] = r.g_eps_normal;
    if (r.delta_quotient) put_scalar(js, "delta_quotient", *r.delta_quotient);
    js["delta_quotient_ok"] = r.delta_quotient_ok;
    put_scalar(js, "eta", r.eta_full);
    js["eta_lemma_applicable"] = r.eta_lemma_applicable;
    if (r.eta_quotient) put_scalar(js, "eta_quotient", *r.eta_quotient);
    js["eta_quotient_ok"] = r.eta_quotient_ok;
    put_scalar(js, "eta_sub", r.eta_sub);
    js["eta_sub_ok"] = r.eta_sub_ok;
    js["delta_remark_applicable"] = r.delta_remark_applicable;
    if (r.delta_sub) put_scalar(js, "delta_sub", *r.delta_sub);
    js["delta_sub_ok"] = r.delta_sub_ok;
    js["ok"] = r.all_ok();
    all_ok &= r.all_ok();
    section2.push_back(std::move(js));

    if (scalar_less(eps, Scalar::rational(Rational(1, 4)))) {
      const auto zr = zassenhaus_check(l, eps);
      all_ok &= zr.ok;
      zassenhaus.push_back(zassenhaus_json(zr));
    } else {
      ordered_json skip;
      put_scalar(skip, "epsilon", eps);
      skip["skipped"] = "epsilon >= 1/4";
      zassenhaus.push_back(std::move(skip));
    }
  }
  std::size_t checks_run = section2.size() + zassenhaus.size();
  report["section2"] = std::move(section2);
  report["zassenhaus"] = std::move(zassenhaus);

  if (!epsilon_texts.empty()) {
    const auto dw = check_distance_lemma(l);
    report["distance_lemma"] =
        check_state_json(*g, dw ? CheckState::Fail : CheckState::Pass, dw);
    all_ok &= !dw.has_value();

    const auto cr = corollary_check(l);
    ordered_json jc;
    put_scalar(jc, "eta", cr.eta_value);
    jc["applicable"] = cr.applicable;
    if (cr.nil)
      jc["nil"] = *cr.nil;
    else
      jc["nil"] = "not_nilpotent";
    jc["bound"] = format_real(cr.bound);
    jc["exact"] = cr.exact_used;
    jc["ok"] = cr.ok;
    report["corollary"] = std::move(jc);
    all_ok &= cr.ok;
    checks_run += 2;
  }
  report["checks_run"] = checks_run;
  report["all_ok"] = all_ok;

  emit(render(report, format, flat_csv(report)), out_path);
  std::cerr << g->name() << " + " << l.name() << ": " << epsilon_texts.size()
            << " epsilon value(s), " << (all_ok ? "all checks pass" : "CHECK FAILED") << "\n";
  return all_ok ? kExitOk : kExitPropertyFailed;
}

int cmd_approx_check(const std::string& stages_path, const std::string& format,
                     const std::string& out_path) {
  auto stages = load_stages_file(stages_path);
  const ApproxReport r = approximation_sequence_check(stages);
  const ordered_json j = approx_report_json(r);
  emit(render(j, format, flat_csv(j)), out_path);
  std::cerr << r.stages.size() << " stage(s): " << r.conclusion << "\n";
  return r.theorem_violation ? kExitPropertyFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite groups with invariant length functions"};
  app.require_subcommand(1);

  std::string group_src, metric_src = "discrete", out_path, format = "json";
  std::string epsilon_text = "1/100";
  std::vector<std::string> epsilon_list;
  std::string stages_path;
  std::optional<double> tol_override;
  bool generating_only = false, allow_noncontractive = false, timing = false;
  int jobs = 1;
  std::uint64_t budget = 20000000;

  const auto add_common = [&](CLI::App* cmd, bool metric_required) {
    cmd->add_option("--group", group_src, "group source: builtin:NAME or a group file")
        ->required();
    auto* m = cmd->add_option("--metric", metric_src,
                              "metric source: discrete|hamming|clamped-hamming|unitary|q8-exact "
                              "or a length file");
    if (metric_required) m->required();
    cmd->add_option("--tol", tol_override, "override the metric comparison tolerance");
    cmd->add_option("--format", format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out_path, "write the report to this path instead of stdout");
  };

  auto* ccat = app.add_subcommand("catalog", "list builtin groups or dump one as a group file");
  ccat->add_option("--group", group_src, "builtin:NAME to dump instead of listing");
  ccat->add_option("--format", format, "report format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  ccat->add_option("--out", out_path, "write output to this path");

  auto* cana = app.add_subcommand("analyze",
                                  "verify the length axioms and contractivity, report "
                                  "delta/eta/nilpotency and the nilpotency bound");
  add_common(cana, false);

  auto* cscan = app.add_subcommand("higman-scan",
                                   "exhaustively classify all |G|^4 tuples against the "
                                   "Higman relations");
  add_common(cscan, true);
  cscan->add_option("--epsilon", epsilon_text, "defect threshold, 0 < eps < 1/64 (default 1/100)");
  cscan->add_flag("--generating-only", generating_only, "only scan tuples that generate G");
  cscan->add_option("--jobs", jobs, "worker count")->envname("FGM_JOBS");
  cscan->add_option("--budget", budget, "max |G|^4 before refusing to scan")
      ->envname("FGM_BUDGET");
  cscan->add_flag("--allow-noncontractive", allow_noncontractive,
                  "scan even if the metric is not contractive (report is labeled "
                  "out-of-hypothesis)");
  cscan->add_flag("--timing", timing, "include wall_ms in the report file");

  auto* cver = app.add_subcommand("verify-lemmas",
                                  "check the quotient/subgroup lemmas, the distance lemma and "
                                  "the nilpotency bound over an epsilon grid");
  add_common(cver, true);
  cver->add_option("--epsilon", epsilon_list, "epsilon grid entries (repeatable)");

  auto* capx = app.add_subcommand("approx-check",
                                  "check a staged approximation sequence against the theorem");
  capx->add_option("stages", stages_path, "stage list file")->required();
  capx->add_option("--format", format, "report format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  capx->add_option("--out", out_path, "write the report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (ccat->parsed()) return cmd_catalog(group_src, out_path, format);
    if (cana->parsed()) return cmd_analyze(group_src, metric_src, tol_override, format, out_path);
    if (cscan->parsed())
      return cmd_higman_scan(group_src, metric_src, epsilon_text, tol_override, generating_only,
                             jobs, budget, allow_noncontractive, timing, format, out_path);
    if (cver->parsed())
      return cmd_verify_lemmas(group_src, metric_src, epsilon_list, tol_override, format,
                               out_path);
    if (capx->parsed()) return cmd_approx_check(stages_path, format, out_path);
  } catch (const EpsilonOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ScanBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const NotContractive& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const AxiomsNotVerified& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
