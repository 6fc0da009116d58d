#include "entscope/partition.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "entscope/errors.hpp"

namespace entscope {

Partition::Partition(std::vector<std::vector<int>> blocks) {
  if (blocks.empty()) throw IndexError("partition must have at least one block");
  for (auto& b : blocks) {
    if (b.empty()) throw IndexError("partition block must be non-empty");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  int count = 0;
  for (const auto& b : blocks) count += static_cast<int>(b.size());
  std::vector<bool> seen(count, false);
  for (const auto& b : blocks) {
    for (int p : b) {
      if (p < 0 || p >= count || seen[p]) {
        throw IndexError("partition blocks must be disjoint and cover 0..n-1");
      }
      seen[p] = true;
    }
  }
  blocks_ = std::move(blocks);
  party_count_ = count;
}

Partition Partition::from_rgs(std::span<const int> rgs) {
  int m = 0;
  for (int v : rgs) m = std::max(m, v + 1);
  std::vector<std::vector<int>> blocks(m);
  for (int i = 0; i < static_cast<int>(rgs.size()); ++i) {
    if (rgs[i] < 0) throw IndexError("negative block label in growth string");
    blocks[rgs[i]].push_back(i);
  }
  return Partition(std::move(blocks));
}

Partition Partition::parse(std::string_view text) {
  std::vector<std::vector<int>> blocks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t bar = std::min(text.find('|', pos), text.size());
    std::string_view chunk = text.substr(pos, bar - pos);
    std::vector<int> block;
    std::size_t cpos = 0;
    while (cpos <= chunk.size()) {
      const std::size_t comma = std::min(chunk.find(',', cpos), chunk.size());
      std::string_view tok = chunk.substr(cpos, comma - cpos);
      int v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 1) {
        throw IndexError("bad party index in partition text: '" +
                         std::string(tok) + "'");
      }
      block.push_back(v - 1);
      if (comma == chunk.size()) break;
      cpos = comma + 1;
    }
    blocks.push_back(std::move(block));
    if (bar == text.size()) break;
    pos = bar + 1;
  }
  return Partition(std::move(blocks));
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) blocks[i] = {i};
  return Partition(std::move(blocks));
}

Partition Partition::whole(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return Partition({all});
}

int Partition::block_of(int party) const {
  for (int b = 0; b < block_count(); ++b) {
    for (int p : blocks_[b]) {
      if (p == party) return b;
    }
  }
  throw IndexError("party " + std::to_string(party) + " not in partition");
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b > 0) out += '|';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(blocks_[b][i] + 1);
    }
  }
  return out;
}

std::vector<std::int64_t> merged_dims(const Partition& p,
                                      std::span<const std::int64_t> dims) {
  if (static_cast<int>(dims.size()) < p.party_count()) {
    throw IndexError("dimension list shorter than partition party count");
  }
  std::vector<std::int64_t> out;
  out.reserve(p.blocks().size());
  for (const auto& block : p.blocks()) {
    std::int64_t d = 1;
    for (int party : block) d *= dims[party];
    out.push_back(d);
  }
  return out;
}

PartitionEnumerator::PartitionEnumerator(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1 || m > n) {
    throw ArgumentError("partition enumeration needs 1 <= m <= n, got n=" +
                        std::to_string(n) + " m=" + std::to_string(m));
  }
  rgs_.assign(n, 0);
  fill_first_from(0, -1);
}

void PartitionEnumerator::fill_first_from(int pos, int prefix_max) {
  // Lex-minimal completion: zeros as long as the tail can still open the
  // remaining m - 1 - prefix_max new blocks, then the forced ascending run.
  for (int i = pos; i < n_; ++i) {
    int v;
    if (i == 0) {
      v = 0;
    } else if (m_ - 1 - prefix_max <= n_ - 1 - i) {
      v = 0;
    } else {
      v = prefix_max + 1;
    }
    rgs_[i] = v;
    prefix_max = std::max(prefix_max, v);
  }
}

bool PartitionEnumerator::advance() {
  std::vector<int> pmax(n_, 0);  // pmax[i] = max of rgs_[0..i-1]
  for (int i = 1; i < n_; ++i) pmax[i] = std::max(pmax[i - 1], rgs_[i - 1]);
  for (int i = n_ - 1; i >= 1; --i) {
    const int pm = pmax[i];
    const int cap = std::min(pm + 1, m_ - 1);
    int v = rgs_[i] + 1;
    if (v > cap) continue;
    // Feasibility: the tail must still be able to open m-1-max(pm,v) blocks.
    if (m_ - 1 - std::max(pm, v) > n_ - 1 - i) {
      // All values up to pm are equally infeasible; only opening a new
      // block helps.
      v = pm + 1;
      if (v <= rgs_[i] || v > cap || m_ - 1 - v > n_ - 1 - i) continue;
    }
    rgs_[i] = v;
    fill_first_from(i + 1, std::max(pm, v));
    return true;
  }
  return false;
}

std::optional<Partition> PartitionEnumerator::next() {
  if (done_) return std::nullopt;
  if (fresh_) {
    fresh_ = false;
    return Partition::from_rgs(rgs_);
  }
  if (!advance()) {
    done_ = true;
    return std::nullopt;
  }
  return Partition::from_rgs(rgs_);
}

PartitionEnumerator bipartitions(int n) {
  if (n < 2) throw ArgumentError("bipartitions need n >= 2");
  return PartitionEnumerator(n, 2);
}

std::uint64_t stirling2(int n, int m) {
  if (n < 0 || m < 0 || m > n) {
    throw ArgumentError("stirling2 needs 0 <= m <= n");
  }
  if (n > 25) throw ArgumentError("stirling2 guarded to n <= 25");
  if (n == 0) return m == 0 ? 1 : 0;
  if (m == 0) return 0;
  // S(n, m) = m S(n-1, m) + S(n-1, m-1)
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, m); j >= 1; --j) {
      row[j] = static_cast<std::uint64_t>(j) * row[j] + row[j - 1];
    }
    row[0] = 0;
  }
  return row[m];
}

std::uint64_t bell_number(int n) {
  if (n < 0) throw ArgumentError("bell_number needs n >= 0");
  if (n > 25) throw ArgumentError("bell_number guarded to n <= 25");
  std::uint64_t total = 0;
  for (int m = (n == 0 ? 0 : 1); m <= n; ++m) total += stirling2(n, m);
  return n == 0 ? 1 : total;
}

}  // namespace entscope
