#pragma once

// Linear index codes E(x) = xL: decodability and error-correction checks,
// the generalized independence number and the min-rank of an instance.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ecic/error.hpp"
#include "ecic/field.hpp"
#include "ecic/instance.hpp"
#include "ecic/linalg.hpp"

namespace ecic {

/// An n x N matrix L bound to an instance and a field.
class LinearIndexCode {
 public:
  LinearIndexCode(Instance inst, Field F, Matrix L)
      : inst_(std::move(inst)), F_(std::move(F)), L_(std::move(L)) {
    if (L_.rows() != inst_.messages())
      throw Error(ErrorKind::LengthMismatch, "L has " + std::to_string(L_.rows()) + " rows, instance has n = " +
                                                 std::to_string(inst_.messages()));
    for (std::size_t r = 0; r < L_.rows(); ++r)
      for (auto v : L_.row(r))
        if (!F_.contains(v)) throw Error(ErrorKind::MalformedDocument, "matrix entry outside the field");
  }

  const Instance& instance() const { return inst_; }
  const Field& field() const { return F_; }
  const Matrix& matrix() const { return L_; }
  std::size_t length() const { return L_.cols(); }

 private:
  Instance inst_;
  Field F_;
  Matrix L_;
};

inline Vector encode(const LinearIndexCode& code, std::span<const Elem> x) {
  if (x.size() != code.instance().messages())
    throw Error(ErrorKind::LengthMismatch, "message length != n");
  return vec_mat(code.field(), x, code.matrix());
}

// ---------------------------------------------------------------------------
// Receiver margins

struct MarginWitness {
  std::size_t margin = 0;
  Vector z;  // e_{f(i)} - sum_j a_j e_j attaining wt(zL) = margin
};

/// d(L_{f(i)}, span{L_j : j ∈ Y_i}) together with a z ∈ I(q,H) attaining it.
/// Enumerates the q^{|Y_i|} coefficient vectors over Y_i.
inline MarginWitness receiver_margin_witness(const LinearIndexCode& code, std::size_t i,
                                             std::uint64_t budget = kDefaultEnumerationBudget) {
  const auto& inst = code.instance();
  const auto& F = code.field();
  const auto& L = code.matrix();
  const auto frame = receiver_frame(inst, i);
  const auto ys = frame.complement.items();
  const unsigned q = F.order();
  if (saturating_pow(q, ys.size()) > budget)
    throw Error(ErrorKind::BudgetExceeded, "receiver " + std::to_string(i + 1) + " margin needs q^" +
                                               std::to_string(ys.size()) + " combinations");

  MarginWitness best;
  best.z = unit_vector(inst.messages(), frame.demand);
  if (q == 2 && L.cols() <= 64) {
    const gf2::Word target = gf2::pack(L.row(frame.demand));
    std::vector<gf2::Word> rows;
    for (auto j : ys) rows.push_back(gf2::pack(L.row(j)));
    gf2::Word cur = target;
    std::uint64_t cur_mask = 0, best_mask = 0;
    best.margin = static_cast<std::size_t>(std::popcount(cur));
    const std::uint64_t count = std::uint64_t{1} << rows.size();
    for (std::uint64_t g = 1; g < count && best.margin > 0; ++g) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(g));
      cur ^= rows[bit];
      cur_mask ^= std::uint64_t{1} << bit;
      const auto w = static_cast<std::size_t>(std::popcount(cur));
      if (w < best.margin) {
        best.margin = w;
        best_mask = cur_mask;
      }
    }
    for (std::size_t k = 0; k < ys.size(); ++k)
      if ((best_mask >> k) & 1) best.z[ys[k]] = 1;
    return best;
  }

  std::vector<Elem> coef(ys.size(), 0);
  Vector c = L.row_vector(frame.demand);  // L_f - sum a_j L_j
  best.margin = hamming_weight(c);
  while (best.margin > 0 && [&] {
    for (std::size_t k = coef.size(); k-- > 0;) {
      const Elem old = coef[k];
      const Elem next = static_cast<Elem>(old + 1u < q ? old + 1 : 0);
      coef[k] = next;
      add_scaled(F, c, F.sub(old, next), L.row(ys[k]));
      if (next != 0) return true;
    }
    return false;
  }()) {
    const std::size_t w = hamming_weight(c);
    if (w < best.margin) {
      best.margin = w;
      for (std::size_t k = 0; k < ys.size(); ++k) best.z[ys[k]] = F.neg(coef[k]);
    }
  }
  return best;
}

inline std::size_t receiver_margin(const LinearIndexCode& code, std::size_t i,
                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  return receiver_margin_witness(code, i, budget).margin;
}

/// Margins of every receiver; receivers sharing (f(i), Y_i) are computed once.
inline std::vector<MarginWitness> all_margins(const LinearIndexCode& code,
                                              std::uint64_t budget = kDefaultEnumerationBudget) {
  const auto& inst = code.instance();
  std::map<std::pair<std::size_t, std::uint64_t>, MarginWitness> memo;
  std::vector<MarginWitness> out;
  for (std::size_t i = 0; i < inst.receivers(); ++i) {
    const auto key = std::make_pair(inst.demand(i), inst.complement(i).bits());
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, receiver_margin_witness(code, i, budget)).first;
    out.push_back(it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

struct EcicVerdict {
  bool valid = true;
  std::size_t required = 1;            // 2δ+1
  std::vector<std::size_t> margins;    // per receiver
  std::optional<std::size_t> receiver; // first failing receiver
  std::optional<Vector> certificate;   // z ∈ I(q,H) with wt(zL) <= 2δ
};

/// L is a (δ,H)-ECIC iff every receiver margin is at least 2δ+1.
inline EcicVerdict verify_ecic(const LinearIndexCode& code, std::size_t delta,
                               std::uint64_t budget = kDefaultEnumerationBudget) {
  EcicVerdict v;
  v.required = 2 * delta + 1;
  const auto margins = all_margins(code, budget);
  for (std::size_t i = 0; i < margins.size(); ++i) {
    v.margins.push_back(margins[i].margin);
    if (v.valid && margins[i].margin < v.required) {
      v.valid = false;
      v.receiver = i;
      v.certificate = margins[i].z;
    }
  }
  return v;
}

/// Same predicate evaluated directly as wt(zL) >= 2δ+1 over all z ∈ I(q,H).
inline EcicVerdict verify_ecic_by_enumeration(const LinearIndexCode& code, std::size_t delta,
                                              std::uint64_t budget = kDefaultEnumerationBudget) {
  EcicVerdict v;
  v.required = 2 * delta + 1;
  for_each_error_vector(
      code.instance(), code.field(),
      [&](const Vector& z, std::size_t i) {
        if (hamming_weight(vec_mat(code.field(), z, code.matrix())) < v.required) {
          v.valid = false;
          v.receiver = i;
          v.certificate = z;
          return false;
        }
        return true;
      },
      budget);
  return v;
}

/// Largest δ with min margin >= 2δ+1; nullopt when some margin is 0 (not even an
/// index code). With no receivers every δ works and INT_MAX is returned.
inline std::optional<int> correction_radius(const LinearIndexCode& code,
                                            std::uint64_t budget = kDefaultEnumerationBudget) {
  const auto margins = all_margins(code, budget);
  if (margins.empty()) return std::numeric_limits<int>::max();
  std::size_t lo = margins.front().margin;
  for (const auto& m : margins) lo = std::min(lo, m.margin);
  if (lo == 0) return std::nullopt;
  return static_cast<int>((lo - 1) / 2);
}

/// Index-code criterion in column-space form: for every i some v ⊲ X_i has
/// v + e_{f(i)} ∈ colspan(L). Such a column combination w exists iff the
/// system L_{Y_i} w = 0, L_{f(i)} w = 1 is solvable, i.e. iff adding row
/// L_{f(i)} to L_{Y_i} raises the rank.
inline bool verify_ic(const LinearIndexCode& code) {
  const auto& inst = code.instance();
  const auto& F = code.field();
  for (std::size_t i = 0; i < inst.receivers(); ++i) {
    const auto ys = inst.complement(i).items();
    const Matrix LY = code.matrix().select_rows(ys);
    if (in_row_space(F, LY, code.matrix().row(inst.demand(i)))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Instance parameters

inline constexpr std::size_t kDefaultAlphaCap = 24;
inline constexpr unsigned kDefaultMinRankExponent = 30;

struct AlphaResult {
  std::size_t alpha = 0;
  std::vector<std::size_t> witness;  // lexicographically smallest maximum set
};

namespace detail {

// Every nonempty subset of `base ∪ {v}` containing v is in the support family.
inline bool extends_independent(const Instance& inst, IndexSet base, std::size_t v) {
  const auto items = base.items();
  const std::uint64_t count = std::uint64_t{1} << items.size();
  for (std::uint64_t s = 0; s < count; ++s) {
    IndexSet K;
    K.insert(v);
    for (std::size_t k = 0; k < items.size(); ++k)
      if ((s >> k) & 1) K.insert(items[k]);
    if (!in_support_family(inst, K)) return false;
  }
  return true;
}

inline void alpha_dfs(const Instance& inst, IndexSet current, std::vector<std::size_t>& chosen,
                      const std::vector<std::size_t>& candidates, AlphaResult& best) {
  if (chosen.size() > best.alpha) {
    best.alpha = chosen.size();
    best.witness = chosen;
  }
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (chosen.size() + (candidates.size() - k) <= best.alpha) return;
    const std::size_t v = candidates[k];
    if (!extends_independent(inst, current, v)) continue;
    std::vector<std::size_t> rest;
    for (std::size_t t = k + 1; t < candidates.size(); ++t) {
      // Pairs are checked up front so hopeless candidates never reach the subset test.
      IndexSet pair;
      pair.insert(v);
      pair.insert(candidates[t]);
      if (in_support_family(inst, pair)) rest.push_back(candidates[t]);
    }
    IndexSet next = current;
    next.insert(v);
    chosen.push_back(v);
    alpha_dfs(inst, next, chosen, rest, best);
    chosen.pop_back();
  }
}

}  // namespace detail

/// Generalized independence number α(H) with a witness. Downward closure of the
/// family lets the depth-first extension test only subsets containing the new vertex.
inline AlphaResult generalized_independence_number(const Instance& inst,
                                                   std::size_t cap = kDefaultAlphaCap) {
  if (inst.messages() > cap)
    throw Error(ErrorKind::CapExceeded, "alpha search limited to n <= " + std::to_string(cap));
  std::vector<std::size_t> candidates;
  for (std::size_t v = 0; v < inst.messages(); ++v)
    if (inst.receivers() > 0 && in_support_family(inst, IndexSet::of({v}))) candidates.push_back(v);
  AlphaResult best;
  std::vector<std::size_t> chosen;
  detail::alpha_dfs(inst, IndexSet{}, chosen, candidates, best);
  return best;
}

struct MinRankResult {
  std::size_t kappa = 0;
  Matrix witness;  // m x n, row i = v_i + e_{f(i)} with v_i ⊲ X_i
};

namespace detail {

struct MinRankSearch {
  const Instance& inst;
  const Field& F;
  std::vector<std::size_t> order;
  std::vector<std::vector<std::size_t>> sides;
  EchelonBasis basis;
  std::vector<Vector> rows;  // current assignment, indexed by receiver
  MinRankResult best;

  void run(std::size_t depth) {
    if (depth == order.size()) {
      best.kappa = basis.rank();
      best.witness = Matrix::from_rows(rows, inst.messages());
      return;
    }
    const std::size_t i = order[depth];
    const auto& side = sides[i];
    Vector& row = rows[i];
    std::vector<Elem> values(side.size(), 0);
    do {
      std::fill(row.begin(), row.end(), 0);
      row[inst.demand(i)] = 1;
      for (std::size_t k = 0; k < side.size(); ++k) row[side[k]] = values[k];
      const bool grew = basis.insert(row);
      // Rank never decreases as rows are added, so reaching the best rank prunes.
      if (basis.rank() < best.kappa) run(depth + 1);
      if (grew) basis.pop();
    } while (next_odometer(values, F.order()));
  }
};

}  // namespace detail

/// Min-rank κ_q(H): exhaustive over all assignments v_i ⊲ X_i with incremental
/// elimination and rank pruning. Receivers are processed by increasing |X_i|.
inline MinRankResult min_rank(const Instance& inst, const Field& F,
                              unsigned budget_exponent = kDefaultMinRankExponent) {
  double bits = 0;
  for (const auto& x : inst.side_infos()) bits += static_cast<double>(x.size()) * std::log2(F.order());
  if (bits > budget_exponent + 1e-9)
    throw Error(ErrorKind::BudgetExceeded, "min-rank search needs 2^" + std::to_string(bits) + " assignments");

  const std::size_t m = inst.receivers(), n = inst.messages();
  detail::MinRankSearch s{inst, F, {}, {}, EchelonBasis(F, n), std::vector<Vector>(m, Vector(n, 0)), {}};
  for (std::size_t i = 0; i < m; ++i) {
    s.order.push_back(i);
    s.sides.push_back(inst.side_info(i).items());
  }
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t a, std::size_t b) { return s.sides[a].size() < s.sides[b].size(); });

  // Start from v_i = 0: its rank is a valid upper bound and a valid witness.
  for (std::size_t i = 0; i < m; ++i) s.rows[i][inst.demand(i)] = 1;
  s.best.witness = Matrix::from_rows(s.rows, n);
  s.best.kappa = rank(F, s.best.witness);
  s.run(0);
  return s.best;
}

/// An n x κ matrix whose columns span the min-rank witness rows: by the
/// column-space criterion it is an optimal-length linear index code.
inline Matrix optimal_ic_matrix(const Field& F, const MinRankResult& mr) {
  return row_space_basis(F, mr.witness).transpose();
}

struct InstanceParams {
  AlphaResult alpha;
  MinRankResult kappa;
  unsigned q = 0;
};

inline InstanceParams instance_params(const Instance& inst, const Field& F,
                                      std::size_t alpha_cap = kDefaultAlphaCap,
                                      unsigned min_rank_exponent = kDefaultMinRankExponent) {
  return {generalized_independence_number(inst, alpha_cap), min_rank(inst, F, min_rank_exponent), F.order()};
}

}  // namespace ecic
