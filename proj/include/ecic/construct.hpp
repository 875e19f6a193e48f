#pragma once

// Constructions of error-correcting index codes and the exact search for the
// optimal length N_q(H, δ).

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "ecic/bounds.hpp"
#include "ecic/column_search.hpp"
#include "ecic/index_codes.hpp"
#include "ecic/instance.hpp"
#include "ecic/linalg.hpp"

namespace ecic {

/// Generator of an [N, k, N-k+1]_q MDS code. Supported: N = k (identity), k = 1
/// (repetition), and k <= N <= q+1 (Reed-Solomon evaluated at 0, 1, a, a^2, ...
/// for a primitive element a, extended by the point at infinity when N = q+1).
inline Matrix mds_generator(const Field& F, std::size_t k, std::size_t N) {
  if (k == 0 || N < k)
    throw Error(ErrorKind::OutOfRegime, "need 1 <= k <= N");
  if (N == k) return Matrix::identity(k);
  if (k == 1) {
    Matrix g(1, N);
    for (std::size_t j = 0; j < N; ++j) g(0, j) = 1;
    return g;
  }
  const unsigned q = F.order();
  if (N > q + 1) throw Error(ErrorKind::OutOfRegime, "Reed-Solomon needs N <= q + 1");

  std::vector<Elem> points{0};
  const Elem a = F.primitive_element();
  Elem x = 1;
  for (unsigned j = 0; j + 1 < q; ++j) {
    points.push_back(x);
    x = F.mul(x, a);
  }
  const std::size_t finite = std::min<std::size_t>(N, q);
  Matrix g(k, N);
  for (std::size_t c = 0; c < finite; ++c) {
    Elem power = 1;
    for (std::size_t r = 0; r < k; ++r) {
      g(r, c) = power;
      power = F.mul(power, points[c]);
    }
  }
  if (N == q + 1) g(k - 1, q) = 1;
  return g;
}

/// Generator (k x N_q[k,d]) of a shortest linear code with distance >= d: an
/// MDS generator when one exists at that length, otherwise the search witness.
inline Matrix shortest_code_generator(const Field& F, std::size_t k, std::size_t d,
                                      std::uint64_t node_budget = kDefaultNodeBudget, unsigned jobs = 1) {
  const std::size_t N = shortest_code_length(F, k, d, node_budget, jobs).length;
  if (k == 0) return Matrix(0, 0);
  if (N == k || k == 1 || N <= F.order() + 1) return mds_generator(F, k, N);
  auto r = code_exists(F, k, d, N, node_budget, jobs);
  if (r.status != SearchStatus::Feasible)
    throw Error(ErrorKind::Unknown, "could not rebuild a generator of length " + std::to_string(N));
  return std::move(r.columns);
}

/// L = G * outer, where G (n x κ) is an index code and outer generates a code of
/// full row rank and distance >= 2δ+1. The result is checked before it is returned.
inline LinearIndexCode concatenate_construction(const Instance& inst, const Field& F, std::size_t delta,
                                                const Matrix& ic_matrix, const Matrix& outer,
                                                std::uint64_t budget = kDefaultEnumerationBudget) {
  if (!verify_ic(LinearIndexCode(inst, F, ic_matrix)))
    throw Error(ErrorKind::InvalidInnerIC, "inner matrix is not an index code for the instance");
  if (outer.rows() != ic_matrix.cols())
    throw Error(ErrorKind::LengthMismatch, "outer generator must have one row per inner column");
  if (outer.rows() > 0) {
    if (rank(F, outer) < outer.rows())
      throw Error(ErrorKind::OuterDistanceTooSmall, "outer generator is rank deficient");
    if (code_min_distance(F, outer, budget) < 2 * delta + 1)
      throw Error(ErrorKind::OuterDistanceTooSmall, "outer code distance below 2*delta+1");
  }
  LinearIndexCode code(inst, F, mat_mul(F, ic_matrix, outer));
  if (!verify_ecic(code, delta, budget).valid)
    throw Error(ErrorKind::InternalContradiction, "concatenated code failed verification");
  return code;
}

// ---------------------------------------------------------------------------
// Random construction

/// Counter-based generator: word k of stream `seed` is splitmix64(seed + (k+1) * golden).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

inline Matrix random_matrix(const Field& F, std::size_t rows, std::size_t cols, CounterRng& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<Elem>(rng.below(F.order()));
  return m;
}

struct RandomOutcome {
  std::optional<LinearIndexCode> code;
  std::size_t trials_used = 0;
};

/// Samples n x N matrices with independent uniform rows until one is a
/// (δ,H)-ECIC. `first_trial`, when given, replaces the first sample.
inline RandomOutcome random_construct(const Instance& inst, const Field& F, std::size_t delta, std::size_t N,
                                      std::size_t trials, std::uint64_t seed,
                                      const std::optional<Matrix>& first_trial = std::nullopt,
                                      std::uint64_t budget = kDefaultEnumerationBudget) {
  CounterRng rng(seed);
  RandomOutcome out;
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix L = random_matrix(F, inst.messages(), N, rng);
    if (t == 0 && first_trial) L = *first_trial;
    out.trials_used = t + 1;
    LinearIndexCode code(inst, F, std::move(L));
    if (verify_ecic(code, delta, budget).valid) {
      out.code = std::move(code);
      return out;
    }
  }
  return out;
}

/// Number of the `trials` seeded samples that are (δ,H)-ECICs.
inline std::size_t random_success_count(const Instance& inst, const Field& F, std::size_t delta, std::size_t N,
                                        std::size_t trials, std::uint64_t seed) {
  CounterRng rng(seed);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    LinearIndexCode code(inst, F, random_matrix(F, inst.messages(), N, rng));
    hits += verify_ecic(code, delta).valid;
  }
  return hits;
}

// ---------------------------------------------------------------------------
// Exact search

struct ExistenceResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<LinearIndexCode> witness;
  std::uint64_t nodes = 0;
};

/// Decides whether an n x N (δ,H)-ECIC exists over F. Unknown means the node
/// budget ran out; Infeasible is only reported after full exhaustion.
inline ExistenceResult exists_ecic(const Instance& inst, const Field& F, std::size_t delta, std::size_t N,
                                   std::uint64_t node_budget = kDefaultNodeBudget, unsigned jobs = 1,
                                   std::uint64_t enum_budget = kDefaultEnumerationBudget) {
  const auto tests = projective_representatives(error_vectors(inst, F, enum_budget));
  ColumnSearch search(F, inst.messages(), tests, 2 * delta + 1);
  auto r = search.run(N, node_budget, jobs);
  ExistenceResult out;
  out.status = r.status;
  out.nodes = r.nodes;
  if (r.status == SearchStatus::Feasible) {
    LinearIndexCode code(inst, F, std::move(r.columns));
    if (!verify_ecic(code, delta, enum_budget).valid)
      throw Error(ErrorKind::InternalContradiction, "search witness failed verification");
    out.witness = std::move(code);
  }
  return out;
}

struct SearchStep {
  std::size_t length = 0;
  SearchStatus status = SearchStatus::Unknown;
  std::uint64_t nodes = 0;
};

struct SearchOutcome {
  bool complete = false;
  std::optional<std::size_t> optimal_N;
  std::optional<LinearIndexCode> witness;
  std::size_t start = 0;                          // max(α-bound, Singleton)
  std::optional<std::size_t> upper;               // κ-bound, feasible by concatenation
  std::optional<std::size_t> infeasible_below;    // largest N known infeasible
  std::optional<std::size_t> smallest_feasible;   // smallest N known feasible
  std::vector<SearchStep> steps;
  std::uint64_t nodes = 0;
  double seconds = 0;
};

/// Tries N = max(α-bound, Singleton), max+1, ... up to the κ-bound.
/// On budget exhaustion the outcome is incomplete and carries the bracket.
inline SearchOutcome optimal_length_search(const Instance& inst, const Field& F, std::size_t delta,
                                           const Limits& lim = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchOutcome out;
  const auto report = bounds_report(inst, F, delta, lim);
  if (!report.lower)
    throw Error(ErrorKind::BudgetExceeded, "no lower bound available to start the search");
  out.start = *report.lower;
  out.upper = report.upper;
  out.smallest_feasible = report.upper;
  if (out.start > 0) out.infeasible_below = out.start - 1;

  std::uint64_t remaining = lim.nodes;
  for (std::size_t N = out.start; !out.upper || N <= *out.upper; ++N) {
    auto r = exists_ecic(inst, F, delta, N, remaining, lim.jobs, lim.enumeration);
    out.steps.push_back({N, r.status, r.nodes});
    out.nodes += r.nodes;
    remaining = r.nodes >= remaining ? 0 : remaining - r.nodes;
    if (r.status == SearchStatus::Feasible) {
      out.complete = true;
      out.optimal_N = N;
      out.smallest_feasible = N;
      out.witness = std::move(r.witness);
      break;
    }
    if (r.status == SearchStatus::Unknown) break;
    out.infeasible_below = N;
    if (remaining == 0) break;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace ecic
