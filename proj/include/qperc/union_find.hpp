#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace qperc {

// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), clusters_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::int32_t find(std::int32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Merges the sets containing a and b; returns false if already merged.
  bool unite(std::int32_t a, std::int32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --clusters_;
    return true;
  }

  bool connected(std::int32_t a, std::int32_t b) noexcept {
    return find(a) == find(b);
  }

  std::size_t cluster_count() const noexcept { return clusters_; }
  std::size_t node_count() const noexcept { return parent_.size(); }

  // Back to all-singletons without reallocating.
  void reset() noexcept {
    std::iota(parent_.begin(), parent_.end(), 0);
    std::fill(size_.begin(), size_.end(), 1);
    clusters_ = parent_.size();
  }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
  std::size_t clusters_;
};

}  // namespace qperc
