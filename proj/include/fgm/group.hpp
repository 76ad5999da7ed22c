#pragma once

// Exact finite group arithmetic. A FiniteGroup is an immutable Cayley table
// over dense integer element ids, with optional permutation or unitary-matrix
// attachments carried alongside. All group structure lives in the integer
// tables; attachments only feed metric constructions.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fgm/cmatrix.hpp"
#include "fgm/errors.hpp"
#include "fgm/permutation.hpp"

namespace fgm {

using elem_t = std::uint32_t;
inline constexpr elem_t kDefaultClosureCap = 10000;

enum class GroupSource { Permutation, Unitary, Cayley };

inline const char* group_source_name(GroupSource s) {
  switch (s) {
    case GroupSource::Permutation: return "permutation";
    case GroupSource::Unitary: return "unitary";
    case GroupSource::Cayley: return "cayley";
  }
  return "?";
}

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  struct Data {
    elem_t order = 0;
    std::vector<elem_t> mul;  // row-major order x order
    std::vector<elem_t> inv;
    elem_t identity = 0;
    std::vector<std::string> labels;
    std::string name;
    GroupSource source = GroupSource::Cayley;
    std::vector<Permutation> perms;  // empty or one per element
    std::vector<CMatrix> matrices;   // empty or one per element
    std::vector<std::string> generator_strings;  // echo for serialization
    std::vector<CMatrix> generator_matrices;     // echo for serialization
  };

  elem_t order() const { return order_; }
  elem_t identity() const { return identity_; }
  elem_t mul(elem_t a, elem_t b) const { return mul_[std::size_t(a) * order_ + b]; }
  elem_t inv(elem_t a) const { return inv_[a]; }
  // h g h^{-1}
  elem_t conjugate(elem_t h, elem_t g) const { return mul(mul(h, g), inv(h)); }
  // g h g^{-1} h^{-1}
  elem_t commutator(elem_t g, elem_t h) const { return mul(mul(g, h), mul(inv(g), inv(h))); }

  const std::string& label(elem_t g) const { return labels_[g]; }
  const std::string& name() const { return name_; }
  GroupSource source() const { return source_; }

  std::optional<elem_t> element_by_label(const std::string& s) const {
    const auto it = label_to_id_.find(s);
    if (it == label_to_id_.end()) return std::nullopt;
    return it->second;
  }

  bool has_permutations() const { return !perms_.empty(); }
  std::size_t degree() const { return perms_.empty() ? 0 : perms_[0].degree(); }
  const Permutation& permutation(elem_t g) const {
    if (perms_.empty()) throw NoPermutationAttachment("group '" + name_ + "' has no permutation attachment");
    return perms_[g];
  }

  bool has_matrices() const { return !matrices_.empty(); }
  int dimension() const { return matrices_.empty() ? 0 : matrices_[0].dim; }
  const CMatrix& matrix(elem_t g) const {
    if (matrices_.empty()) throw NoMatrixAttachment("group '" + name_ + "' has no matrix attachment");
    return matrices_[g];
  }

  const std::vector<std::string>& generator_strings() const { return generator_strings_; }
  const std::vector<CMatrix>& generator_matrices() const { return generator_matrices_; }

  static GroupPtr make(Data d) {
    const std::size_t n = d.order;
    if (n == 0 || d.mul.size() != n * n || d.inv.size() != n || d.identity >= n)
      throw Error("malformed group data");
    if (d.labels.size() != n) {
      d.labels.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        if (d.labels[i].empty()) d.labels[i] = "g" + std::to_string(i);
    }
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->order_ = d.order;
    g->mul_ = std::move(d.mul);
    g->inv_ = std::move(d.inv);
    g->identity_ = d.identity;
    g->labels_ = std::move(d.labels);
    g->name_ = std::move(d.name);
    g->source_ = d.source;
    g->perms_ = std::move(d.perms);
    g->matrices_ = std::move(d.matrices);
    g->generator_strings_ = std::move(d.generator_strings);
    g->generator_matrices_ = std::move(d.generator_matrices);
    for (elem_t i = 0; i < g->order_; ++i)
      if (!g->label_to_id_.emplace(g->labels_[i], i).second)
        throw Error("duplicate element label '" + g->labels_[i] + "'");
    return g;
  }

  // Breadth-first closure from the identity; elements discovered through
  // right multiplication by the generators in list order. This fixes the id
  // assignment everywhere (reports, witnesses, goldens).
  static GroupPtr from_permutations(const std::vector<Permutation>& generators,
                                    std::string name = {}, elem_t cap = kDefaultClosureCap,
                                    std::size_t trivial_degree = 1) {
    const std::size_t degree = generators.empty() ? trivial_degree : generators[0].degree();
    for (const auto& g : generators)
      if (g.degree() != degree) throw InvalidPermutation("generators act on different point sets");

    std::vector<Permutation> elems;
    std::unordered_map<std::string, elem_t> index;
    const auto key = [](const Permutation& p) {
      std::string k;
      k.reserve(p.degree() * 2);
      for (const auto v : p.images()) {
        k.push_back(static_cast<char>(v & 0xff));
        k.push_back(static_cast<char>((v >> 8) & 0xff));
      }
      return k;
    };
    const auto push = [&](const Permutation& p) -> std::pair<elem_t, bool> {
      const auto [it, inserted] = index.emplace(key(p), static_cast<elem_t>(elems.size()));
      if (inserted) {
        if (elems.size() >= cap)
          throw ClosureExceedsCap("closure exceeds cap " + std::to_string(cap));
        elems.push_back(p);
      }
      return {it->second, inserted};
    };

    push(Permutation(degree));
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& g : generators) {
        const Permutation prod = elems[head].compose(g);
        push(prod);
      }
    }

    const elem_t n = static_cast<elem_t>(elems.size());
    Data d;
    d.order = n;
    d.identity = 0;
    d.mul.resize(std::size_t(n) * n);
    d.inv.resize(n);
    for (elem_t a = 0; a < n; ++a) {
      for (elem_t b = 0; b < n; ++b) {
        const auto it = index.find(key(elems[a].compose(elems[b])));
        if (it == index.end()) throw Error("closure not multiplication-closed");
        d.mul[std::size_t(a) * n + b] = it->second;
      }
      d.inv[a] = index.at(key(elems[a].inverse()));
    }
    d.labels.reserve(n);
    for (const auto& p : elems) d.labels.push_back(p.cycle_string());
    d.name = std::move(name);
    d.source = GroupSource::Permutation;
    d.perms = std::move(elems);
    d.generator_strings.reserve(generators.size());
    for (const auto& g : generators) d.generator_strings.push_back(g.cycle_string());
    return make(std::move(d));
  }

  static GroupPtr from_cayley(const std::vector<std::vector<elem_t>>& table,
                              std::vector<std::string> labels = {}, std::string name = {}) {
    const elem_t n = static_cast<elem_t>(table.size());
    if (n == 0) throw ParseError("empty cayley table");
    Data d;
    d.order = n;
    d.mul.resize(std::size_t(n) * n);
    for (elem_t i = 0; i < n; ++i) {
      if (table[i].size() != n) throw ParseError("cayley table is not square");
      for (elem_t j = 0; j < n; ++j) {
        if (table[i][j] >= n) throw ParseError("cayley entry out of range");
        d.mul[std::size_t(i) * n + j] = table[i][j];
      }
    }
    std::optional<elem_t> identity;
    for (elem_t e = 0; e < n; ++e) {
      bool ok = true;
      for (elem_t j = 0; j < n && ok; ++j)
        ok = d.mul[std::size_t(e) * n + j] == j && d.mul[std::size_t(j) * n + e] == j;
      if (ok) {
        identity = e;
        break;
      }
    }
    if (!identity) throw ParseError("cayley table has no two-sided identity");
    d.identity = *identity;
    d.inv.assign(n, 0);
    for (elem_t g = 0; g < n; ++g) {
      bool found = false;
      for (elem_t h = 0; h < n; ++h) {
        if (d.mul[std::size_t(g) * n + h] == d.identity &&
            d.mul[std::size_t(h) * n + g] == d.identity) {
          d.inv[g] = h;
          found = true;
          break;
        }
      }
      if (!found) throw ParseError("cayley table element without inverse");
    }
    // Exhaustive associativity up to order 1024, deterministic sampling above.
    if (n <= 1024) {
      for (elem_t a = 0; a < n; ++a)
        for (elem_t b = 0; b < n; ++b)
          for (elem_t c = 0; c < n; ++c) {
            const elem_t lhs = d.mul[std::size_t(d.mul[std::size_t(a) * n + b]) * n + c];
            const elem_t rhs = d.mul[std::size_t(a) * n + d.mul[std::size_t(b) * n + c]];
            if (lhs != rhs) throw ParseError("cayley table is not associative");
          }
    } else {
      std::uint64_t state = 0x9e3779b97f4a7c15ull;
      for (int t = 0; t < 1000000; ++t) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        const elem_t a = static_cast<elem_t>((state >> 16) % n);
        const elem_t b = static_cast<elem_t>((state >> 32) % n);
        const elem_t c = static_cast<elem_t>((state >> 48) % n);
        const elem_t lhs = d.mul[std::size_t(d.mul[std::size_t(a) * n + b]) * n + c];
        const elem_t rhs = d.mul[std::size_t(a) * n + d.mul[std::size_t(b) * n + c]];
        if (lhs != rhs) throw ParseError("cayley table is not associative");
      }
    }
    d.labels = std::move(labels);
    d.name = std::move(name);
    d.source = GroupSource::Cayley;
    return make(std::move(d));
  }

 private:
  FiniteGroup() = default;

  elem_t order_ = 0;
  std::vector<elem_t> mul_;
  std::vector<elem_t> inv_;
  elem_t identity_ = 0;
  std::vector<std::string> labels_;
  std::string name_;
  GroupSource source_ = GroupSource::Cayley;
  std::vector<Permutation> perms_;
  std::vector<CMatrix> matrices_;
  std::vector<std::string> generator_strings_;
  std::vector<CMatrix> generator_matrices_;
  std::unordered_map<std::string, elem_t> label_to_id_;
};

struct SubgroupHandle {
  GroupPtr group;
  std::vector<elem_t> members;  // sorted
  bool is_normal = false;

  elem_t order() const { return static_cast<elem_t>(members.size()); }
  bool contains(elem_t g) const { return std::binary_search(members.begin(), members.end(), g); }
  bool is_whole_group() const { return group && members.size() == group->order(); }
  bool is_trivial() const { return members.size() == 1; }
};

struct QuotientResult {
  GroupPtr quotient;
  std::vector<elem_t> projection;  // parent element id -> coset id
};

inline bool subgroup_is_normal(const FiniteGroup& g, const std::vector<elem_t>& members) {
  for (const elem_t m : members)
    for (elem_t h = 0; h < g.order(); ++h)
      if (!std::binary_search(members.begin(), members.end(), g.conjugate(h, m))) return false;
  return true;
}

// Smallest subgroup containing S: breadth-first closure of {e} u S under
// right multiplication by S.
inline SubgroupHandle generated_subgroup(const GroupPtr& g, std::span<const elem_t> seed) {
  const elem_t n = g->order();
  std::vector<bool> in(n, false);
  std::vector<elem_t> queue;
  const auto add = [&](elem_t x) {
    if (!in[x]) {
      in[x] = true;
      queue.push_back(x);
    }
  };
  add(g->identity());
  std::vector<elem_t> gens;
  for (const elem_t s : seed) {
    if (s >= n) throw Error("element id out of range");
    add(s);
    gens.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const elem_t s : gens) add(g->mul(queue[head], s));

  SubgroupHandle h;
  h.group = g;
  h.members = std::move(queue);
  std::sort(h.members.begin(), h.members.end());
  h.is_normal = subgroup_is_normal(*g, h.members);
  return h;
}

// Subgroup generated by all commutators [a, b], a in A, b in B.
inline SubgroupHandle subgroup_commutator(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.group != b.group) throw Error("subgroup commutator across different groups");
  const auto& g = *a.group;
  std::vector<bool> seen(g.order(), false);
  std::vector<elem_t> comms;
  for (const elem_t x : a.members)
    for (const elem_t y : b.members) {
      const elem_t c = g.commutator(x, y);
      if (!seen[c]) {
        seen[c] = true;
        comms.push_back(c);
      }
    }
  return generated_subgroup(a.group, comms);
}

// Coset enumeration; coset ids ordered by least member id.
inline QuotientResult quotient(const SubgroupHandle& h) {
  if (!h.is_normal) throw NotNormal("quotient by non-normal subgroup");
  const auto& g = *h.group;
  const elem_t n = g.order();
  constexpr elem_t unset = ~elem_t{0};
  std::vector<elem_t> proj(n, unset);
  std::vector<elem_t> reps;
  for (elem_t x = 0; x < n; ++x) {
    if (proj[x] != unset) continue;
    const elem_t c = static_cast<elem_t>(reps.size());
    reps.push_back(x);
    for (const elem_t m : h.members) proj[g.mul(x, m)] = c;
  }
  const elem_t q = static_cast<elem_t>(reps.size());
  FiniteGroup::Data d;
  d.order = q;
  d.mul.resize(std::size_t(q) * q);
  for (elem_t i = 0; i < q; ++i)
    for (elem_t j = 0; j < q; ++j) d.mul[std::size_t(i) * q + j] = proj[g.mul(reps[i], reps[j])];
  d.identity = proj[g.identity()];
  d.inv.resize(q);
  for (elem_t i = 0; i < q; ++i) d.inv[i] = proj[g.inv(reps[i])];
  d.labels.reserve(q);
  for (elem_t i = 0; i < q; ++i) d.labels.push_back("[" + g.label(reps[i]) + "]");
  d.name = g.name() + "/" + std::to_string(h.order());
  d.source = GroupSource::Cayley;
  return QuotientResult{FiniteGroup::make(std::move(d)), std::move(proj)};
}

// Partition into conjugacy classes, ordered by least member, members sorted.
inline std::vector<std::vector<elem_t>> conjugacy_classes(const FiniteGroup& g) {
  const elem_t n = g.order();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<elem_t>> classes;
  for (elem_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<elem_t> cls;
    for (elem_t h = 0; h < n; ++h) {
      const elem_t y = g.conjugate(h, x);
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

// The subgroup as a standalone group; element i of the result corresponds to
// h.members[i] in the parent. Attachments are sliced so restricted metrics
// stay available.
inline GroupPtr restrict_to_subgroup(const SubgroupHandle& h) {
  const auto& g = *h.group;
  const elem_t m = h.order();
  const auto pos = [&](elem_t parent) {
    const auto it = std::lower_bound(h.members.begin(), h.members.end(), parent);
    return static_cast<elem_t>(it - h.members.begin());
  };
  FiniteGroup::Data d;
  d.order = m;
  d.mul.resize(std::size_t(m) * m);
  d.inv.resize(m);
  for (elem_t i = 0; i < m; ++i) {
    for (elem_t j = 0; j < m; ++j)
      d.mul[std::size_t(i) * m + j] = pos(g.mul(h.members[i], h.members[j]));
    d.inv[i] = pos(g.inv(h.members[i]));
  }
  d.identity = pos(g.identity());
  d.labels.reserve(m);
  for (const elem_t x : h.members) d.labels.push_back(g.label(x));
  d.name = g.name() + "[" + std::to_string(m) + "]";
  d.source = g.source();
  if (g.has_permutations()) {
    d.perms.reserve(m);
    for (const elem_t x : h.members) d.perms.push_back(g.permutation(x));
  }
  if (g.has_matrices()) {
    d.matrices.reserve(m);
    for (const elem_t x : h.members) d.matrices.push_back(g.matrix(x));
  }
  return FiniteGroup::make(std::move(d));
}

inline SubgroupHandle whole_group_subgroup(const GroupPtr& g) {
  SubgroupHandle h;
  h.group = g;
  h.members.resize(g->order());
  for (elem_t i = 0; i < g->order(); ++i) h.members[i] = i;
  h.is_normal = true;
  return h;
}

inline SubgroupHandle trivial_subgroup(const GroupPtr& g) {
  SubgroupHandle h;
  h.group = g;
  h.members = {g->identity()};
  h.is_normal = true;
  return h;
}

// Exhaustive unit, inverse and associativity checks. Cubic in the order;
// meant for desk-scale groups.
inline void check_group_axioms(const FiniteGroup& g) {
  const elem_t n = g.order();
  const elem_t e = g.identity();
  for (elem_t x = 0; x < n; ++x) {
    if (g.mul(e, x) != x || g.mul(x, e) != x) throw Error("identity is not a two-sided unit");
    if (g.mul(x, g.inv(x)) != e || g.mul(g.inv(x), x) != e) throw Error("inverse table broken");
  }
  for (elem_t a = 0; a < n; ++a)
    for (elem_t b = 0; b < n; ++b) {
      const elem_t ab = g.mul(a, b);
      for (elem_t c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) throw Error("multiplication not associative");
    }
}

}  // namespace fgm
