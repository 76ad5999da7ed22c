#pragma once

// Higman-relation machinery: defect vectors for the presentation
// a_i = [a_{i+1}, a_i] (i mod 4), the dichotomy classifier, the exhaustive
// |G|^4 scanner, the exact-solution check, and finite-stage checks of
// approximation sequences.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fgm/errors.hpp"
#include "fgm/group.hpp"
#include "fgm/length.hpp"

namespace fgm {

struct HigmanTuple {
  std::array<elem_t, 4> a{};
};

struct DefectVector {
  std::array<Scalar, 4> d{};

  Scalar max() const {
    Scalar m = d[0];
    for (int i = 1; i < 4; ++i) m = scalar_max(m, d[i]);
    return m;
  }
};

enum class Verdict : int { NearTrivial = 0, Large = 1, GapViolation = 2, DefectTooBig = 3 };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NearTrivial: return "near_trivial";
    case Verdict::Large: return "large";
    case Verdict::GapViolation: return "gap_violation";
    case Verdict::DefectTooBig: return "defect_too_big";
  }
  return "?";
}

// d_i = d(a_i, [a_{i+1}, a_i]), indices mod 4.
inline DefectVector relation_defect(const LengthFunction& l, const HigmanTuple& t) {
  l.require_axioms();
  const auto& g = l.group();
  DefectVector v;
  for (int i = 0; i < 4; ++i)
    v.d[i] = dist(l, t.a[i], g.commutator(t.a[(i + 1) % 4], t.a[i]));
  return v;
}

inline void require_scan_epsilon(const Scalar& eps) {
  if (!scalar_less(Scalar::rational(Rational(0, 1)), eps) ||
      !scalar_less(eps, Scalar::rational(Rational(1, 64))))
    throw EpsilonOutOfRange("higman scans need 0 < eps < 1/64");
}

// Pure classification of a (length vector, defect vector) pair against the
// thresholds 4 eps and 7/32. Defects are measured with the metric tolerance;
// the length thresholds are strict comparisons.
inline Verdict verdict_from_vectors(const std::array<Scalar, 4>& lengths,
                                    const std::array<Scalar, 4>& defects, const Scalar& eps,
                                    double tol) {
  for (int i = 0; i < 4; ++i)
    if (scalar_violates(defects[i], eps, tol)) return Verdict::DefectTooBig;
  const Scalar four_eps = scalar_mul(Scalar::rational(Rational(4, 1)), eps);
  const Scalar seven32 = Scalar::rational(Rational(7, 32));
  bool all_below = true, all_large = true;
  for (int i = 0; i < 4; ++i) {
    if (!scalar_less(lengths[i], four_eps)) all_below = false;
    if (!scalar_geq(lengths[i], seven32)) all_large = false;
  }
  if (all_below) return Verdict::NearTrivial;
  if (all_large) return Verdict::Large;
  return Verdict::GapViolation;
}

inline Verdict classify(const LengthFunction& l, const HigmanTuple& t, const Scalar& eps) {
  l.require_contractive();
  require_scan_epsilon(eps);
  const DefectVector dv = relation_defect(l, t);
  std::array<Scalar, 4> lengths;
  for (int i = 0; i < 4; ++i) lengths[i] = l.value(t.a[i]);
  return verdict_from_vectors(lengths, dv.d, eps, l.tol());
}

struct TupleWitness {
  Verdict verdict = Verdict::NearTrivial;
  std::uint64_t index = 0;  // flat tuple index, a_0 most significant
  std::array<elem_t, 4> tuple{};
  std::array<double, 4> lengths{};
  double max_defect = 0.0;
};

struct ScanReport {
  std::string group_name;
  std::string metric_name;
  Scalar epsilon;
  bool generating_only = false;
  std::uint64_t scanned = 0;
  std::array<std::uint64_t, 4> counts{};  // indexed by Verdict
  // Tuples with defect <= eps carrying a generator length inside
  // [4 eps, 7/32); in-memory diagnostic, not serialized.
  std::uint64_t gap_band_tuples = 0;
  std::vector<TupleWitness> witnesses;  // index-ordered, capped per verdict
  bool out_of_hypothesis = false;
  std::int64_t wall_ms = 0;

  std::uint64_t count(Verdict v) const { return counts[static_cast<int>(v)]; }
};

struct ScanConfig {
  Scalar epsilon = Scalar::rational(Rational(1, 100));
  bool generating_only = false;
  int jobs = 1;
  std::uint64_t budget = 20000000;  // covers |G| <= 66
  std::size_t witness_cap = 100;    // per verdict
  bool require_contractive = true;  // false: scan anyway, label out-of-hypothesis
};

namespace detail {

struct ScanTables {
  elem_t n = 0;
  std::vector<elem_t> comm;      // [y*n + x] = [y, x]
  std::vector<char> defect_ok;   // [a*n + c] = dist(a, c) <= eps
  std::vector<char> bucket;      // 0 below 4eps, 1 gap band, 2 large
  const FiniteGroup* group = nullptr;
};

inline ScanTables make_scan_tables(const LengthFunction& l, const Scalar& eps) {
  const auto& g = l.group();
  const elem_t n = g.order();
  ScanTables t;
  t.n = n;
  t.group = &g;
  t.comm.resize(std::size_t(n) * n);
  for (elem_t y = 0; y < n; ++y)
    for (elem_t x = 0; x < n; ++x) t.comm[std::size_t(y) * n + x] = g.commutator(y, x);
  t.defect_ok.resize(std::size_t(n) * n);
  for (elem_t a = 0; a < n; ++a)
    for (elem_t c = 0; c < n; ++c)
      t.defect_ok[std::size_t(a) * n + c] = !scalar_violates(dist(l, a, c), eps, l.tol());
  const Scalar four_eps = scalar_mul(Scalar::rational(Rational(4, 1)), eps);
  const Scalar seven32 = Scalar::rational(Rational(7, 32));
  t.bucket.resize(n);
  for (elem_t x = 0; x < n; ++x) {
    if (scalar_less(l.value(x), four_eps))
      t.bucket[x] = 0;
    else if (scalar_geq(l.value(x), seven32))
      t.bucket[x] = 2;
    else
      t.bucket[x] = 1;
  }
  return t;
}

// Memoized "does {a_0..a_3} generate G" with an epoch-stamped visited array.
class GenerationCache {
 public:
  explicit GenerationCache(const FiniteGroup& g) : g_(g), stamp_(g.order(), 0) {}

  bool generates(const std::array<elem_t, 4>& tuple) {
    std::array<elem_t, 4> key = tuple;
    std::sort(key.begin(), key.end());
    std::uint64_t packed = 0;
    elem_t prev = ~elem_t{0};
    int shift = 0;
    for (const elem_t x : key) {
      if (x == prev) continue;  // dedup; empty slots stay 0xffff
      packed |= (std::uint64_t(x + 1) & 0xffff) << shift;
      shift += 16;
      prev = x;
    }
    const auto it = memo_.find(packed);
    if (it != memo_.end()) return it->second;
    const bool result = closure_is_whole(key);
    memo_.emplace(packed, result);
    return result;
  }

 private:
  bool closure_is_whole(const std::array<elem_t, 4>& gens) {
    const elem_t n = g_.order();
    ++epoch_;
    queue_.clear();
    const auto add = [&](elem_t x) {
      if (stamp_[x] != epoch_) {
        stamp_[x] = epoch_;
        queue_.push_back(x);
      }
    };
    add(g_.identity());
    for (const elem_t x : gens) add(x);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      if (queue_.size() == n) return true;
      for (const elem_t s : gens) add(g_.mul(queue_[head], s));
    }
    return queue_.size() == n;
  }

  const FiniteGroup& g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<elem_t> queue_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

struct ScanPartial {
  std::uint64_t scanned = 0;
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t gap_band = 0;
  std::array<std::vector<TupleWitness>, 4> witnesses;
};

inline void scan_range(const ScanTables& t, const LengthFunction& l, bool generating_only,
                       std::size_t witness_cap, std::uint64_t begin, std::uint64_t end,
                       ScanPartial& out) {
  const elem_t n = t.n;
  const std::uint64_t n2 = std::uint64_t(n) * n;
  const std::uint64_t n3 = n2 * n;
  GenerationCache gen_cache(*t.group);
  const auto witness = [&](Verdict v, std::uint64_t idx, const std::array<elem_t, 4>& a) {
    auto& list = out.witnesses[static_cast<int>(v)];
    if (list.size() >= witness_cap) return;
    TupleWitness w;
    w.verdict = v;
    w.index = idx;
    w.tuple = a;
    const DefectVector dv = relation_defect(l, HigmanTuple{a});
    double maxd = 0.0;
    for (int i = 0; i < 4; ++i) maxd = std::max(maxd, dv.d[i].value);
    w.max_defect = maxd;
    for (int i = 0; i < 4; ++i) w.lengths[i] = l.value(a[i]).value;
    list.push_back(w);
  };

  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const std::array<elem_t, 4> a{static_cast<elem_t>(idx / n3),
                                  static_cast<elem_t>((idx / n2) % n),
                                  static_cast<elem_t>((idx / n) % n),
                                  static_cast<elem_t>(idx % n)};
    if (generating_only && !gen_cache.generates(a)) continue;
    ++out.scanned;
    bool defect_ok = true;
    for (int i = 0; i < 4 && defect_ok; ++i)
      defect_ok = t.defect_ok[std::size_t(a[i]) * n + t.comm[std::size_t(a[(i + 1) % 4]) * n + a[i]]];
    Verdict v;
    if (!defect_ok) {
      v = Verdict::DefectTooBig;
    } else {
      bool all_below = true, all_large = true, any_gap = false;
      for (int i = 0; i < 4; ++i) {
        const char b = t.bucket[a[i]];
        all_below &= b == 0;
        all_large &= b == 2;
        any_gap |= b == 1;
      }
      if (any_gap) ++out.gap_band;
      v = all_below ? Verdict::NearTrivial : all_large ? Verdict::Large : Verdict::GapViolation;
    }
    ++out.counts[static_cast<int>(v)];
    witness(v, idx, a);
  }
}

}  // namespace detail

// Enumerates all |G|^4 tuples (optionally only those whose entries generate
// G) and classifies each. Partitioned into contiguous index ranges across
// workers; the merged report is canonical and independent of scheduling.
inline ScanReport theorem_scan(const LengthFunction& l, const ScanConfig& cfg) {
  l.require_axioms();
  if (cfg.require_contractive) l.require_contractive();
  require_scan_epsilon(cfg.epsilon);
  const auto& g = l.group();
  const elem_t n = g.order();
  const unsigned __int128 total_wide = [](elem_t m) {
    unsigned __int128 t = 1;
    for (int i = 0; i < 4; ++i) t *= m;
    return t;
  }(n);
  if (total_wide > cfg.budget)
    throw ScanBudgetExceeded("scan of " + std::to_string(n) + "^4 tuples exceeds budget " +
                             std::to_string(cfg.budget));
  const std::uint64_t total = static_cast<std::uint64_t>(total_wide);

  const auto t0 = std::chrono::steady_clock::now();
  const detail::ScanTables tables = detail::make_scan_tables(l, cfg.epsilon);
  const int jobs = std::clamp(cfg.jobs, 1, 64);
  std::vector<detail::ScanPartial> partials(jobs);
  if (jobs == 1) {
    detail::scan_range(tables, l, cfg.generating_only, cfg.witness_cap, 0, total, partials[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int k = 0; k < jobs; ++k) {
      const std::uint64_t begin = total * k / jobs;
      const std::uint64_t end = total * (k + 1) / jobs;
      threads.emplace_back([&, k, begin, end] {
        detail::scan_range(tables, l, cfg.generating_only, cfg.witness_cap, begin, end,
                           partials[k]);
      });
    }
    for (auto& th : threads) th.join();
  }

  ScanReport r;
  r.group_name = g.name();
  r.metric_name = l.name();
  r.epsilon = cfg.epsilon;
  r.generating_only = cfg.generating_only;
  r.out_of_hypothesis = l.contractive_state() != CheckState::Pass;
  for (const auto& p : partials) {
    r.scanned += p.scanned;
    r.gap_band_tuples += p.gap_band;
    for (int v = 0; v < 4; ++v) r.counts[v] += p.counts[v];
  }
  for (int v = 0; v < 4; ++v) {
    std::size_t kept = 0;
    for (const auto& p : partials)
      for (const auto& w : p.witnesses[v]) {
        if (kept >= cfg.witness_cap) break;
        r.witnesses.push_back(w);
        ++kept;
      }
  }
  std::sort(r.witnesses.begin(), r.witnesses.end(),
            [](const TupleWitness& a, const TupleWitness& b) { return a.index < b.index; });
  r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                  .count();
  return r;
}

// Exact-solution check: every tuple solving a_i = [a_{i+1}, a_i] on the nose
// must be the identity tuple, else the generated subgroup would be a
// non-trivial finite group on which Higman's relations hold exactly.
// Metric-free. Returns the first offending tuple, or nullopt.
inline std::optional<HigmanTuple> no_finite_quotients_check(const FiniteGroup& g) {
  const elem_t n = g.order();
  // edge x -> y iff x == [y, x]
  std::vector<std::vector<elem_t>> succ(n);
  for (elem_t x = 0; x < n; ++x)
    for (elem_t y = 0; y < n; ++y)
      if (g.commutator(y, x) == x) succ[x].push_back(y);
  const elem_t e = g.identity();
  for (elem_t a0 = 0; a0 < n; ++a0)
    for (const elem_t a1 : succ[a0])
      for (const elem_t a2 : succ[a1])
        for (const elem_t a3 : succ[a2])
          for (const elem_t back : succ[a3])
            if (back == a0) {
              if (a0 == e && a1 == e && a2 == e && a3 == e) continue;
              return HigmanTuple{{a0, a1, a2, a3}};
            }
  return std::nullopt;
}

struct ApproximationStage {
  GroupPtr group;
  LengthFunction metric;
  HigmanTuple tuple;
  std::array<double, 4> delta_targets{};
};

struct StageReport {
  int index = 0;  // 1-based
  std::array<double, 4> defects{};
  double max_defect = 0.0;
  std::array<double, 4> lengths{};
  std::array<double, 4> delta_targets{};
  bool generates = false;
  bool delta_ok = false;         // every generator length meets its target
  bool theorem_applies = false;  // generates and max defect < 1/64
  bool forced_failure = false;   // theorem bound 4*eps_n sits below some target
  bool theorem_violated = false; // never expected
  std::string status;
};

struct ApproxReport {
  std::vector<StageReport> stages;
  std::optional<int> first_inconsistent;  // 1-based
  bool theorem_violation = false;
  std::string conclusion;
};

// Checks each stage of a claimed approximation sequence: defects must shrink
// toward 0 while generator lengths stay above their delta targets. Once a
// stage has max defect below 1/64 and a generating tuple, lengths are pinned
// under 4*eps_n, so targets at or above that bound are unsatisfiable.
inline ApproxReport approximation_sequence_check(std::vector<ApproximationStage>& stages) {
  ApproxReport report;
  int index = 0;
  for (auto& stage : stages) {
    ++index;
    if (stage.metric.axioms_state() == CheckState::Unknown) verify_length_axioms(stage.metric);
    stage.metric.require_axioms();
    if (stage.metric.contractive_state() == CheckState::Unknown) verify_contractive(stage.metric);
    stage.metric.require_contractive();

    StageReport s;
    s.index = index;
    s.delta_targets = stage.delta_targets;
    const DefectVector dv = relation_defect(stage.metric, stage.tuple);
    const Scalar maxd = dv.max();
    for (int i = 0; i < 4; ++i) s.defects[i] = dv.d[i].value;
    s.max_defect = maxd.value;
    std::array<Scalar, 4> lengths;
    for (int i = 0; i < 4; ++i) {
      lengths[i] = stage.metric.value(stage.tuple.a[i]);
      s.lengths[i] = lengths[i].value;
    }
    s.generates = generated_subgroup(stage.group, stage.tuple.a).is_whole_group();
    const double tol = stage.metric.tol();
    s.delta_ok = true;
    for (int i = 0; i < 4; ++i)
      if (s.lengths[i] < s.delta_targets[i] - tol) s.delta_ok = false;
    s.theorem_applies = s.generates && scalar_less(maxd, Scalar::rational(Rational(1, 64)));
    const Scalar four_eps = scalar_mul(Scalar::rational(Rational(4, 1)), maxd);
    if (s.theorem_applies) {
      for (int i = 0; i < 4; ++i) {
        if (s.delta_targets[i] >= four_eps.value) s.forced_failure = true;
        if (scalar_violates(lengths[i], four_eps, tol)) s.theorem_violated = true;
      }
    }
    if (!s.delta_ok) {
      s.status = "inconsistent: generator length below delta target";
      if (!report.first_inconsistent) report.first_inconsistent = index;
    } else if (s.theorem_violated) {
      s.status = "theorem violated";
    } else if (!s.theorem_applies) {
      s.status = scalar_geq(maxd, Scalar::rational(Rational(1, 64)))
                     ? "not yet refuted: defect too large"
                     : "not yet refuted: tuple does not generate";
    } else {
      s.status = "consistent so far: delta targets below theorem bound";
    }
    report.theorem_violation |= s.theorem_violated;
    report.stages.push_back(std::move(s));
  }
  if (report.theorem_violation)
    report.conclusion = "theorem violation observed";
  else if (report.first_inconsistent)
    report.conclusion =
        "inconsistent with approximability at stage " + std::to_string(*report.first_inconsistent);
  else
    report.conclusion = "no refutation at examined stages";
  return report;
}

}  // namespace fgm
