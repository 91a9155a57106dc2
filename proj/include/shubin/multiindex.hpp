#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "shubin/error.hpp"

namespace shubin {

// All multi-indices over `dim` variables with total order <= max_order,
// listed by (total order, lex). Layout convention for phase space: the first
// n slots are x-orders, the last n are xi-orders.
class MultiIndexTable {
public:
  MultiIndexTable(int dim, int max_order);

  int dim() const { return dim_; }
  int max_order() const { return max_order_; }
  int size() const { return static_cast<int>(list_.size()); }
  int size_up_to(int order) const { return offsets_[order + 1]; }
  int order_of(int idx) const { return orders_[idx]; }
  const std::vector<int>& mi(int idx) const { return list_[idx]; }

  // -1 if outside the table.
  int index_of(const std::vector<int>& m) const;
  int add(int i, int j) const;  // index of mi_i + mi_j, -1 if beyond max order
  int sub(int i, int j) const;  // index of mi_i - mi_j, -1 if not componentwise >=

  double factorial_of(int idx) const { return fact_[idx]; }  // prod of slot factorials
  // prod over slots of C(gamma_s, delta_s); requires delta <= gamma
  double binom(int gamma, int delta) const;

  // All (delta_idx, rest_idx = gamma - delta) pairs with delta <= gamma,
  // including the trivial splits.
  const std::vector<std::pair<int, int>>& splits(int gamma) const { return splits_[gamma]; }

  static const MultiIndexTable& get(int dim, int max_order);

private:
  std::uint64_t key(const std::vector<int>& m) const;
  int dim_, max_order_;
  std::vector<std::vector<int>> list_;
  std::vector<int> orders_;
  std::vector<int> offsets_;  // offsets_[k] = first index of order k
  std::vector<double> fact_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<std::vector<std::pair<int, int>>> splits_;
};

inline double fact(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline double binom_coeff(int n, int k) {
  if (k < 0 || k > n) return 0;
  return fact(n) / (fact(k) * fact(n - k));
}

inline std::uint64_t MultiIndexTable::key(const std::vector<int>& m) const {
  std::uint64_t k = 0;
  for (int v : m) k = k * 64 + static_cast<std::uint64_t>(v);
  return k;
}

inline MultiIndexTable::MultiIndexTable(int dim, int max_order)
    : dim_(dim), max_order_(max_order) {
  require(dim >= 1 && max_order >= 0 && max_order < 63, "BadArgument", "multi-index table size");
  offsets_.assign(max_order + 2, 0);
  std::vector<int> cur(dim, 0);
  for (int ord = 0; ord <= max_order; ++ord) {
    offsets_[ord] = static_cast<int>(list_.size());
    // enumerate compositions of ord into dim parts, lexicographic
    std::function<void(int, int)> rec = [&](int slot, int left) {
      if (slot == dim - 1) {
        cur[slot] = left;
        list_.push_back(cur);
        return;
      }
      for (int v = left; v >= 0; --v) {
        cur[slot] = v;
        rec(slot + 1, left - v);
      }
    };
    rec(0, ord);
  }
  offsets_[max_order + 1] = static_cast<int>(list_.size());
  orders_.resize(list_.size());
  fact_.resize(list_.size());
  for (int i = 0; i < size(); ++i) {
    int o = 0;
    double f = 1;
    for (int v : list_[i]) {
      o += v;
      f *= fact(v);
    }
    orders_[i] = o;
    fact_[i] = f;
    lookup_[key(list_[i])] = i;
  }
  splits_.resize(list_.size());
  std::vector<int> tmp(dim);
  for (int g = 0; g < size(); ++g) {
    for (int d = 0; d < size(); ++d) {
      if (orders_[d] > orders_[g]) break;
      bool le = true;
      for (int s = 0; s < dim; ++s)
        if (list_[d][s] > list_[g][s]) { le = false; break; }
      if (!le) continue;
      for (int s = 0; s < dim; ++s) tmp[s] = list_[g][s] - list_[d][s];
      splits_[g].emplace_back(d, lookup_.at(key(tmp)));
    }
  }
}

inline int MultiIndexTable::index_of(const std::vector<int>& m) const {
  int total = 0;
  for (int v : m) {
    if (v < 0) return -1;
    total += v;
  }
  if (total > max_order_) return -1;
  auto it = lookup_.find(key(m));
  return it == lookup_.end() ? -1 : it->second;
}

inline int MultiIndexTable::add(int i, int j) const {
  std::vector<int> m(dim_);
  for (int s = 0; s < dim_; ++s) m[s] = list_[i][s] + list_[j][s];
  return index_of(m);
}

inline int MultiIndexTable::sub(int i, int j) const {
  std::vector<int> m(dim_);
  for (int s = 0; s < dim_; ++s) {
    m[s] = list_[i][s] - list_[j][s];
    if (m[s] < 0) return -1;
  }
  return index_of(m);
}

inline double MultiIndexTable::binom(int gamma, int delta) const {
  double b = 1;
  for (int s = 0; s < dim_; ++s) b *= binom_coeff(list_[gamma][s], list_[delta][s]);
  return b;
}

inline const MultiIndexTable& MultiIndexTable::get(int dim, int max_order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MultiIndexTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dim, max_order}];
  if (!slot) slot = std::make_unique<MultiIndexTable>(dim, max_order);
  return *slot;
}

}  // namespace shubin
