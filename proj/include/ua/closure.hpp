#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ua/algebra.hpp"
#include "ua/error.hpp"

namespace ua {

// Hash set of fixed-length int tuples, indexed by insertion order.
class TupleStore {
 public:
  explicit TupleStore(int len = 1) : len_(len) { rehash(64); }

  int len() const { return len_; }
  int size() const { return count_; }
  const int* at(int i) const { return data_.data() + static_cast<std::size_t>(i) * len_; }
  std::vector<int> get(int i) const { return std::vector<int>(at(i), at(i) + len_); }

  int find(const int* t) const {
    std::size_t h = hash(t) & mask_;
    while (true) {
      int s = slots_[h];
      if (s < 0) return -1;
      if (equal(at(s), t)) return s;
      h = (h + 1) & mask_;
    }
  }
  int find(const std::vector<int>& t) const { return find(t.data()); }

  // Returns (index, inserted).
  std::pair<int, bool> insert(const int* t) {
    if (static_cast<std::size_t>(count_ + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    std::size_t h = hash(t) & mask_;
    while (true) {
      int s = slots_[h];
      if (s < 0) break;
      if (equal(at(s), t)) return {s, false};
      h = (h + 1) & mask_;
    }
    slots_[h] = count_;
    data_.insert(data_.end(), t, t + len_);
    return {count_++, true};
  }
  std::pair<int, bool> insert(const std::vector<int>& t) { return insert(t.data()); }

 private:
  std::size_t hash(const int* t) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < len_; ++i) {
      h ^= static_cast<std::uint64_t>(t[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
  bool equal(const int* a, const int* b) const {
    for (int i = 0; i < len_; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
  void rehash(std::size_t cap) {
    slots_.assign(cap, -1);
    mask_ = cap - 1;
    for (int i = 0; i < count_; ++i) {
      std::size_t h = hash(at(i)) & mask_;
      while (slots_[h] >= 0) h = (h + 1) & mask_;
      slots_[h] = i;
    }
  }

  int len_;
  int count_ = 0;
  std::vector<int> data_;
  std::vector<int> slots_;
  std::size_t mask_ = 0;
};

struct ClosureOptions {
  std::size_t cap = 1000000;
  std::string cap_name = "closure";
  bool provenance = false;
};

// How an element of a closure was produced: op < 0 marks a seed.
struct Provenance {
  int op = -1;
  std::vector<int> args;
};

// Subuniverse of A^len generated by seed tuples, computed by semi-naive rounds:
// each round evaluates only argument tuples containing an element from the
// previous round.
class SubpowerClosure {
 public:
  SubpowerClosure(const Algebra& A, int len, ClosureOptions opt = {})
      : A_(A), store_(len), opt_(std::move(opt)) {}

  int add_seed(const std::vector<int>& t) {
    require_input(static_cast<int>(t.size()) == store_.len(), "seed length mismatch");
    for (int v : t) require_input(v >= 0 && v < A_.size(), "seed entry out of range");
    auto [i, fresh] = store_.insert(t);
    if (fresh && opt_.provenance) prov_.push_back({});
    check_cap();
    return i;
  }

  // on_new(index) is called once per element, seeds included; returning false
  // stops the closure early. Returns true iff the closure completed.
  bool run(const std::function<bool(int)>& on_new = {}) {
    while (true) {
      while (reported_ < store_.size()) {
        if (on_new && !on_new(reported_)) {
          ++reported_;
          return false;
        }
        ++reported_;
      }
      if (old_end_ == static_cast<std::size_t>(store_.size())) return true;
      const std::size_t end = store_.size();
      for (int i = 0; i < A_.num_ops(); ++i) {
        const int k = A_.op(i).arity;
        for (int first_new = 0; first_new < k; ++first_new) {
          if (!round(i, k, first_new, end, on_new)) return false;
        }
      }
      old_end_ = end;
    }
  }

  const TupleStore& tuples() const { return store_; }
  int size() const { return store_.size(); }
  const Provenance& provenance(int i) const { return prov_[i]; }
  bool has_provenance() const { return opt_.provenance; }

  // Recomputes element i from its provenance, applying the same steps to
  // arbitrary seed values (used to extend restricted polynomials).
  template <class SeedValue>
  std::vector<int> replay(int i, const SeedValue& seed_value, std::vector<std::vector<int>>& memo) const {
    if (!memo[i].empty()) return memo[i];
    const Provenance& p = prov_[i];
    if (p.op < 0) return memo[i] = seed_value(i);
    std::vector<std::vector<int>> vals;
    for (int a : p.args) vals.push_back(replay(a, seed_value, memo));
    const int len = static_cast<int>(vals[0].size());
    std::vector<int> out(len), args(p.args.size());
    for (int c = 0; c < len; ++c) {
      for (std::size_t j = 0; j < vals.size(); ++j) args[j] = vals[j][c];
      out[c] = A_.apply(p.op, args.data());
    }
    return memo[i] = out;
  }

 private:
  void check_cap() {
    if (static_cast<std::size_t>(store_.size()) > opt_.cap) throw CapExceeded(opt_.cap_name, opt_.cap);
  }

  bool round(int op, int k, int first_new, std::size_t end, const std::function<bool(int)>& on_new) {
    std::vector<std::size_t> lo(k), hi(k);
    for (int j = 0; j < k; ++j) {
      lo[j] = j == first_new ? old_end_ : 0;
      hi[j] = j < first_new ? old_end_ : end;
      if (lo[j] >= hi[j]) return true;
    }
    const int len = store_.len();
    const std::size_t n = A_.size();
    const std::vector<int>& table = A_.op(op).table;
    // partial[j] holds the row-major table offsets after fixing args 0..j-1.
    std::vector<std::vector<std::size_t>> partial(k + 1, std::vector<std::size_t>(len, 0));
    std::vector<std::size_t> cur(lo);
    std::vector<int> result(len);
    int from = 0;
    while (true) {
      for (int j = from; j < k; ++j) {
        const int* t = store_.at(static_cast<int>(cur[j]));
        for (int c = 0; c < len; ++c) partial[j + 1][c] = partial[j][c] * n + t[c];
      }
      for (int c = 0; c < len; ++c) result[c] = table[partial[k][c]];
      auto [idx, fresh] = store_.insert(result.data());
      if (fresh) {
        if (opt_.provenance) {
          Provenance p;
          p.op = op;
          p.args.assign(cur.begin(), cur.end());
          prov_.push_back(std::move(p));
        }
        check_cap();
        if (on_new) {
          // Report eagerly so searches can stop as soon as a candidate appears.
          ++reported_;
          if (!on_new(idx)) return false;
        }
      }
      int j = k - 1;
      while (j >= 0 && ++cur[j] == hi[j]) cur[j] = lo[j], --j;
      if (j < 0) break;
      from = j;
    }
    return true;
  }

  const Algebra& A_;
  TupleStore store_;
  ClosureOptions opt_;
  std::vector<Provenance> prov_;
  std::size_t old_end_ = 0;
  int reported_ = 0;
};

}  // namespace ua
