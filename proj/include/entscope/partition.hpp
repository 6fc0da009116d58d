#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entscope {

/// A set partition of the parties {0..n-1} into disjoint non-empty blocks.
/// Canonical form: parties sorted inside each block, blocks sorted by their
/// smallest element. The text form ("1|2,3|4") is 1-based.
class Partition {
public:
  /// Empty placeholder (party_count 0); result structs default to this.
  Partition() = default;

  /// Canonicalizes and validates (non-empty disjoint blocks covering
  /// {0..n-1} where n is the total number of parties).
  explicit Partition(std::vector<std::vector<int>> blocks);

  /// From a restricted growth string: rgs[i] is the block of party i.
  static Partition from_rgs(std::span<const int> rgs);

  /// Parses the 1-based text form, e.g. "1|2,3".
  static Partition parse(std::string_view text);

  static Partition singletons(int n);
  static Partition whole(int n);

  int party_count() const { return party_count_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int b) const { return blocks_[b]; }

  /// Block index of a party.
  int block_of(int party) const;

  std::string to_string() const;

  bool operator==(const Partition& other) const = default;

private:
  std::vector<std::vector<int>> blocks_;
  int party_count_ = 0;
};

/// Per-block products of the constituent party dimensions.
std::vector<std::int64_t> merged_dims(const Partition& p,
                                      std::span<const std::int64_t> dims);

/// Lazy enumeration of all partitions of {0..n-1} into exactly m blocks,
/// in restricted-growth-string lexicographic order. Count = S(n, m).
class PartitionEnumerator {
public:
  PartitionEnumerator(int n, int m);  // throws ArgumentError unless 1<=m<=n
  std::optional<Partition> next();

private:
  int n_;
  int m_;
  bool done_ = false;
  bool fresh_ = true;
  std::vector<int> rgs_;
  void fill_first_from(int pos, int prefix_max);
  bool advance();
};

/// All 2^(n-1) - 1 two-block partitions; throws ArgumentError for n < 2.
PartitionEnumerator bipartitions(int n);

/// Stirling number of the second kind S(n, m); guarded against uint64
/// overflow (n <= 25).
std::uint64_t stirling2(int n, int m);

/// Bell number B(n) = sum_m S(n, m), same guard.
std::uint64_t bell_number(int n);

}  // namespace entscope
