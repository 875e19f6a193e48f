#pragma once

// Exhaustive search for a multiset of N columns over GF(q)^dim such that every
// test vector t has at least `target` columns c with <t, c> != 0.
//
// Both wt(zL) for z in I(q,H) and the weight of a codeword uG count exactly the
// columns not orthogonal to the test vector, and the count is unchanged by column
// order and by nonzero column scalings. Columns are therefore drawn from the
// projective classes (first nonzero entry 1) in non-decreasing class order.
//
// Pruning, per test t after placing a prefix with R columns still to go:
//   count[t] + R < target                      -> dead
//   count[t] < target and no class >= current
//   index hits t                               -> dead
//
// Subtrees are keyed by the first column class. With several workers, subtrees
// are handed out in increasing order and a found witness cancels only subtrees
// with a larger key, so the reported witness (the lexicographically first one)
// and the node count (summed over subtrees up to the witness) do not depend on
// the number of workers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "ecic/field.hpp"
#include "ecic/linalg.hpp"

namespace ecic {

inline constexpr std::uint64_t kDefaultNodeBudget = std::uint64_t{1} << 36;

enum class SearchStatus { Feasible, Infeasible, Unknown };

struct ColumnSearchResult {
  SearchStatus status = SearchStatus::Unknown;
  Matrix columns;  // dim x N when feasible
  std::uint64_t nodes = 0;
};

/// Nonzero vectors of GF(q)^dim whose first nonzero entry is 1, in increasing
/// order of their base-q encoding (most significant coordinate first).
inline std::vector<Vector> projective_points(const Field& F, std::size_t dim) {
  std::vector<Vector> out;
  const unsigned q = F.order();
  Vector v(dim, 0);
  while (next_odometer(v, q)) {
    auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
    if (*it == 1) out.push_back(v);
  }
  return out;
}

/// Keeps the vectors whose first nonzero entry is 1 (drops zero vectors).
inline std::vector<Vector> projective_representatives(const std::vector<Vector>& vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) {
    auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
    if (it != v.end() && *it == 1) out.push_back(v);
  }
  return out;
}

class ColumnSearch {
 public:
  ColumnSearch(const Field& F, std::size_t dim, std::vector<Vector> tests, std::size_t target)
      : F_(F), dim_(dim), tests_(std::move(tests)), target_(target), classes_(projective_points(F, dim)) {
    hits_.resize(classes_.size());
    last_hit_.assign(tests_.size(), -1);
    for (std::size_t c = 0; c < classes_.size(); ++c)
      for (std::size_t t = 0; t < tests_.size(); ++t)
        if (dot(F_, tests_[t], classes_[c]) != 0) {
          hits_[c].push_back(static_cast<std::uint32_t>(t));
          last_hit_[t] = static_cast<long>(c);
        }
  }

  std::size_t class_count() const { return classes_.size(); }
  std::size_t test_count() const { return tests_.size(); }

  ColumnSearchResult run(std::size_t N, std::uint64_t node_budget = kDefaultNodeBudget,
                         unsigned jobs = 1) const {
    ColumnSearchResult result;
    if (tests_.empty()) {
      result.status = SearchStatus::Feasible;
      result.columns = N == 0 || classes_.empty() ? Matrix(dim_, 0) : repeat_first(N);
      return result;
    }
    if (N < target_ || classes_.empty()) {
      result.status = SearchStatus::Infeasible;
      return result;
    }

    const std::size_t roots = classes_.size();
    std::vector<std::uint64_t> nodes(roots, 0);
    std::vector<std::optional<std::vector<std::uint32_t>>> found(roots);
    std::vector<char> complete(roots, 0);
    std::atomic<std::size_t> next_root{0};
    std::atomic<std::size_t> winner{roots};
    std::atomic<std::uint64_t> spent{0};
    std::atomic<bool> exhausted{false};

    auto worker = [&] {
      Worker w(*this, N, winner, spent, exhausted, node_budget);
      for (std::size_t r = next_root++; r < roots; r = next_root++) {
        if (r > winner.load() || exhausted.load()) continue;
        w.start(r);
        const bool ok = w.dfs(1, r);
        nodes[r] = w.nodes;
        if (w.aborted) continue;
        complete[r] = 1;
        if (ok) {
          found[r] = w.chosen;
          std::size_t cur = winner.load();
          while (r < cur && !winner.compare_exchange_weak(cur, r)) {
          }
        }
      }
    };

    jobs = std::max(1u, jobs);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    const std::size_t win = winner.load();
    const std::size_t last = win < roots ? win : roots - 1;
    bool all_done = true;
    for (std::size_t r = 0; r <= last; ++r) {
      result.nodes += nodes[r];
      all_done = all_done && complete[r];
    }
    if (!all_done) {
      result.status = SearchStatus::Unknown;
    } else if (win < roots) {
      result.status = SearchStatus::Feasible;
      result.columns = Matrix(dim_, N);
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t r = 0; r < dim_; ++r) result.columns(r, j) = classes_[(*found[win])[j]][r];
    } else {
      result.status = SearchStatus::Infeasible;
    }
    return result;
  }

 private:
  struct Worker {
    const ColumnSearch& s;
    std::size_t N;
    std::atomic<std::size_t>& winner;
    std::atomic<std::uint64_t>& spent;
    std::atomic<bool>& exhausted;
    std::uint64_t budget;
    std::vector<std::size_t> counts;
    std::vector<std::uint32_t> chosen;
    std::uint64_t nodes = 0;
    std::size_t root = 0;
    bool aborted = false;

    Worker(const ColumnSearch& search, std::size_t n, std::atomic<std::size_t>& win,
           std::atomic<std::uint64_t>& sp, std::atomic<bool>& ex, std::uint64_t b)
        : s(search), N(n), winner(win), spent(sp), exhausted(ex), budget(b) {}

    void start(std::size_t r) {
      root = r;
      nodes = 0;
      aborted = false;
      counts.assign(s.tests_.size(), 0);
      chosen.assign(1, static_cast<std::uint32_t>(r));
      place(r);
    }

    void place(std::size_t c) {
      for (auto t : s.hits_[c]) ++counts[t];
    }
    void unplace(std::size_t c) {
      for (auto t : s.hits_[c]) --counts[t];
    }

    bool viable(std::size_t placed, std::size_t min_class) const {
      const std::size_t remaining = N - placed;
      for (std::size_t t = 0; t < counts.size(); ++t) {
        if (counts[t] >= s.target_) continue;
        if (counts[t] + remaining < s.target_) return false;
        if (s.last_hit_[t] < static_cast<long>(min_class)) return false;
      }
      return true;
    }

    bool tick() {
      ++nodes;
      if ((nodes & 0x3FF) == 0) {
        if (spent.fetch_add(0x400) + 0x400 > budget) exhausted = true;
        if (exhausted.load() || winner.load() < root) {
          aborted = true;
          return false;
        }
      }
      return true;
    }

    // `placed` columns are in `chosen`; the last one has class `last`.
    bool dfs(std::size_t placed, std::size_t last) {
      if (!tick()) return false;
      if (!viable(placed, last)) return false;
      if (placed == N) return true;
      for (std::size_t c = last; c < s.classes_.size(); ++c) {
        place(c);
        chosen.push_back(static_cast<std::uint32_t>(c));
        if (dfs(placed + 1, c)) return true;
        chosen.pop_back();
        unplace(c);
        if (aborted) return false;
      }
      return false;
    }
  };

  Matrix repeat_first(std::size_t N) const {
    Matrix m(dim_, N);
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t r = 0; r < dim_; ++r) m(r, j) = classes_.front()[r];
    return m;
  }

  Field F_;
  std::size_t dim_;
  std::vector<Vector> tests_;
  std::size_t target_;
  std::vector<Vector> classes_;
  std::vector<std::vector<std::uint32_t>> hits_;
  std::vector<long> last_hit_;
};

}  // namespace ecic
