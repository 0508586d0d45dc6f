#pragma once

// Partitions of an integer d, coarsenings, splittings and the combinatorial
// description of the singular strata of a coincident root locus.

#include <algorithm>
#include <charconv>
#include <compare>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crl/errors.hpp"

namespace crl {

class Partition {
 public:
  Partition() = default;

  /// Accepts the parts in any order; stores them descending.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw DomainError("partition must have at least one part");
    for (int p : parts_) {
      if (p < 1) throw DomainError("partition parts must be positive, got " + std::to_string(p));
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    d_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    exponents_.assign(static_cast<std::size_t>(d_) + 1, 0);
    for (int p : parts_) ++exponents_[static_cast<std::size_t>(p)];
  }

  /// Builds the partition (1^{e_1} 2^{e_2} ...); `e[0]` is ignored.
  static Partition from_exponents(std::span<const int> e) {
    std::vector<int> parts;
    for (std::size_t r = 1; r < e.size(); ++r) {
      if (e[r] < 0) throw DomainError("negative exponent in partition");
      parts.insert(parts.end(), static_cast<std::size_t>(e[r]), static_cast<int>(r));
    }
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  int d() const noexcept { return d_; }
  int num_parts() const noexcept { return static_cast<int>(parts_.size()); }

  /// e_r, the number of parts equal to r. Zero outside 1..d.
  int multiplicity(int r) const noexcept {
    if (r < 1 || r > d_) return 0;
    return exponents_[static_cast<std::size_t>(r)];
  }
  /// Exponent vector indexed 0..d with entry 0 unused (always 0).
  const std::vector<int>& exponents() const noexcept { return exponents_; }

  /// The distinct part values in ascending order (the r with e_r > 0).
  std::vector<int> distinct_parts() const {
    std::vector<int> out;
    for (int r = 1; r <= d_; ++r)
      if (multiplicity(r) > 0) out.push_back(r);
    return out;
  }

  /// "3,2,2"
  std::string to_string(char sep = ',') const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += sep;
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend auto operator<=>(const Partition& a, const Partition& b) {
    // shorter part lists first, so that finer partitions sort last
    if (a.parts_.size() != b.parts_.size()) return a.parts_.size() <=> b.parts_.size();
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int d_ = 0;
  std::vector<int> exponents_;
};

inline Partition make_partition(std::vector<int> parts) { return Partition(std::move(parts)); }

/// Parses "1,1,2" (any order, optional surrounding whitespace).
inline Partition parse_partition(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view tok = text.substr(pos, next - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw DomainError("cannot parse partition '" + std::string(text) + "'");
    parts.push_back(value);
    pos = next + 1;
  }
  return Partition(std::move(parts));
}

inline bool is_even(const Partition& p) {
  const auto& v = p.parts();
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

/// All partitions of d, coarsest first under Partition's ordering.
inline std::vector<Partition> all_partitions(int d) {
  if (d < 1) throw DomainError("d must be positive");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, d, d);
  std::sort(out.begin(), out.end());
  return out;
}

/// Partitions obtained by grouping the parts of `lambda` into blocks and
/// summing each block. Includes `lambda` itself unless `proper`.
inline std::set<Partition> coarsenings(const Partition& lambda, bool proper) {
  // States are sorted vectors of block sums; identical states reached by
  // different assignments are merged after every step.
  std::set<std::vector<int>> states{{}};
  for (int part : lambda.parts()) {
    std::set<std::vector<int>> next;
    for (const auto& s : states) {
      auto with_new = s;
      with_new.push_back(part);
      std::sort(with_new.begin(), with_new.end());
      next.insert(std::move(with_new));
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && s[i] == s[i - 1]) continue;
        auto merged = s;
        merged[i] += part;
        std::sort(merged.begin(), merged.end());
        next.insert(std::move(merged));
      }
    }
    states = std::move(next);
  }
  std::set<Partition> out;
  for (const auto& s : states) {
    Partition mu(s);
    if (proper && mu == lambda) continue;
    out.insert(std::move(mu));
  }
  return out;
}

inline bool is_coarsening(const Partition& mu, const Partition& lambda) {
  if (mu.d() != lambda.d() || mu.num_parts() > lambda.num_parts()) return false;
  return coarsenings(lambda, false).contains(mu);
}

/// An ordered grouping of the parts of lambda into partitions of the parts
/// of `target`, slot k of `blocks` refining target.parts()[k].
struct Splitting {
  Partition target;
  std::vector<Partition> blocks;

  friend bool operator==(const Splitting&, const Splitting&) = default;
};

/// All splittings of mu into lambda, with mu's slots in stored (descending)
/// order. Empty when mu is not a coarsening of lambda.
inline std::vector<Splitting> splittings(const Partition& mu, const Partition& lambda) {
  std::vector<Splitting> out;
  if (mu.d() != lambda.d()) return out;

  const std::vector<int> values = lambda.distinct_parts();
  std::vector<int> available;
  for (int v : values) available.push_back(lambda.multiplicity(v));

  const auto& slots = mu.parts();
  std::vector<Partition> chosen;
  std::vector<int> block;  // parts drawn for the current slot, descending

  // Fill slot `k` by choosing counts for values[idx..] (largest first).
  auto fill = [&](auto&& self, std::size_t k, int idx, int remaining) -> void {
    if (remaining == 0) {
      chosen.emplace_back(block);
      if (k + 1 == slots.size()) {
        out.push_back(Splitting{mu, chosen});
      } else {
        std::vector<int> saved;
        saved.swap(block);
        self(self, k + 1, static_cast<int>(values.size()) - 1, slots[k + 1]);
        block.swap(saved);
      }
      chosen.pop_back();
      return;
    }
    if (idx < 0) return;
    const int v = values[static_cast<std::size_t>(idx)];
    const int max_take = std::min(available[static_cast<std::size_t>(idx)], remaining / v);
    for (int take = max_take; take >= 0; --take) {
      available[static_cast<std::size_t>(idx)] -= take;
      block.insert(block.end(), static_cast<std::size_t>(take), v);
      self(self, k, idx - 1, remaining - take * v);
      block.resize(block.size() - static_cast<std::size_t>(take));
      available[static_cast<std::size_t>(idx)] += take;
    }
  };
  fill(fill, 0, static_cast<int>(values.size()) - 1, slots[0]);
  return out;
}

/// Classification of the stratum of forms with multiplicity partition mu
/// inside the locus of lambda.
struct StratumLabel {
  int fiber_count = 0;
  bool tangent_degenerate = false;
  bool nonsingular = false;

  /// Edge label as drawn in stratification diagrams: "" for nonsingular
  /// strata, otherwise the fiber count (when > 1) followed by '*' when some
  /// tangent map degenerates.
  std::string label() const {
    if (nonsingular) return "";
    std::string s;
    if (fiber_count > 1) s += std::to_string(fiber_count);
    if (tangent_degenerate) s += '*';
    return s;
  }

  friend bool operator==(const StratumLabel&, const StratumLabel&) = default;
};

inline StratumLabel classify_stratum(const Partition& lambda, const Partition& mu) {
  const auto splits = splittings(mu, lambda);
  if (splits.empty())
    throw DomainError("(" + mu.to_string() + ") is not a coarsening of (" + lambda.to_string() + ")");
  StratumLabel label;
  label.fiber_count = static_cast<int>(splits.size());
  label.tangent_degenerate = std::any_of(splits.begin(), splits.end(), [](const Splitting& s) {
    return std::any_of(s.blocks.begin(), s.blocks.end(), [](const Partition& b) { return !is_even(b); });
  });
  label.nonsingular = label.fiber_count == 1 && !label.tangent_degenerate;
  return label;
}

}  // namespace crl
