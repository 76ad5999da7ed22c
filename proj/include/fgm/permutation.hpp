#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgm/errors.hpp"

namespace fgm {

// Permutation of {0, ..., degree-1}. Products use function composition:
// (p * q)(x) = p(q(x)), i.e. the right factor acts first. Cycle notation in
// files and labels is 1-based.
class Permutation {
 public:
  explicit Permutation(std::size_t degree) : img_(degree) {
    for (std::size_t i = 0; i < degree; ++i) img_[i] = static_cast<std::uint32_t>(i);
  }

  static Permutation from_images(std::vector<std::uint32_t> images) {
    Permutation p(images.size());
    std::vector<bool> seen(images.size(), false);
    for (const auto v : images) {
      if (v >= images.size() || seen[v]) throw InvalidPermutation("image list is not a bijection");
      seen[v] = true;
    }
    p.img_ = std::move(images);
    return p;
  }

  // Parses "(1 2)(3 4 5)"; also accepts commas as separators, and "e", "()"
  // or "" for the identity. Cycles are multiplied right-to-left.
  static Permutation parse_cycles(const std::string& text, std::size_t degree) {
    std::vector<std::vector<std::uint32_t>> cycles;
    std::size_t i = 0;
    const auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (i < text.size() && text.compare(i, 1, "e") == 0) {
      ++i;
      skip_ws();
    }
    while (i < text.size()) {
      if (text[i] != '(') throw InvalidPermutation("expected '(' in cycle string: " + text);
      ++i;
      std::vector<std::uint32_t> cycle;
      while (true) {
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i >= text.size()) throw InvalidPermutation("unterminated cycle: " + text);
        if (text[i] == ')') {
          ++i;
          break;
        }
        std::size_t used = 0;
        unsigned long point = 0;
        try {
          point = std::stoul(text.substr(i), &used);
        } catch (const std::exception&) {
          throw InvalidPermutation("bad point in cycle string: " + text);
        }
        i += used;
        if (point < 1 || point > degree)
          throw InvalidPermutation("point " + std::to_string(point) + " outside degree " +
                                   std::to_string(degree));
        const auto z = static_cast<std::uint32_t>(point - 1);
        for (const auto q : cycle)
          if (q == z) throw InvalidPermutation("repeated point in cycle: " + text);
        cycle.push_back(z);
      }
      if (cycle.size() > 1) cycles.push_back(std::move(cycle));
      skip_ws();
    }
    Permutation result(degree);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      Permutation c(degree);
      for (std::size_t k = 0; k < it->size(); ++k) c.img_[(*it)[k]] = (*it)[(k + 1) % it->size()];
      result = c.compose(result);
    }
    return result;
  }

  std::size_t degree() const { return img_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return img_[x]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  // this(q(x)): q acts first.
  Permutation compose(const Permutation& q) const {
    if (q.degree() != degree()) throw InvalidPermutation("degree mismatch in composition");
    Permutation r(degree());
    for (std::size_t x = 0; x < degree(); ++x) r.img_[x] = img_[q.img_[x]];
    return r;
  }

  Permutation inverse() const {
    Permutation r(degree());
    for (std::size_t x = 0; x < degree(); ++x) r.img_[img_[x]] = static_cast<std::uint32_t>(x);
    return r;
  }

  bool is_identity() const {
    for (std::size_t x = 0; x < degree(); ++x)
      if (img_[x] != x) return false;
    return true;
  }

  std::size_t moved_points() const {
    std::size_t n = 0;
    for (std::size_t x = 0; x < degree(); ++x)
      if (img_[x] != x) ++n;
    return n;
  }

  std::string cycle_string() const {
    std::string out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t x = 0; x < degree(); ++x) {
      if (seen[x] || img_[x] == x) continue;
      out += '(';
      std::uint32_t y = static_cast<std::uint32_t>(x);
      bool first = true;
      do {
        seen[y] = true;
        if (!first) out += ' ';
        out += std::to_string(y + 1);
        first = false;
        y = img_[y];
      } while (y != x);
      out += ')';
    }
    return out.empty() ? "e" : out;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }

 private:
  std::vector<std::uint32_t> img_;
};

}  // namespace fgm
