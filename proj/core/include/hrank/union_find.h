// Copyright 2026 The hrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HRANK_UNION_FIND_H_
#define HRANK_UNION_FIND_H_

#include <numeric>
#include <utility>
#include <vector>

namespace hrank {

// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(int size = 0) { reset(size); }

  void reset(int size) {
    parent_.resize(size);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(size, 1);
    num_sets_ = size;
  }

  int add() {
    parent_.push_back(static_cast<int>(parent_.size()));
    size_.push_back(1);
    ++num_sets_;
    return parent_.back();
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when a and b were already in the same set.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --num_sets_;
    return true;
  }

  int size() const { return static_cast<int>(parent_.size()); }
  int num_sets() const { return num_sets_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int num_sets_ = 0;
};

}  // namespace hrank

#endif  // HRANK_UNION_FIND_H_
