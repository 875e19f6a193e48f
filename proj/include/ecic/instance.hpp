#pragma once

// Index coding instances (m, n, X, f) and the combinatorial families derived
// from them. Indices are 0-based in this API and 1-based in every file format.

#include <bit>
#include <initializer_list>
#include <optional>
#include <span>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecic/error.hpp"
#include "ecic/field.hpp"
#include "ecic/linalg.hpp"

namespace ecic {

inline constexpr std::size_t kMaxMessages = 64;

/// Subset of the message indices {0..63}.
class IndexSet {
 public:
  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}
  static IndexSet of(std::initializer_list<std::size_t> items) {
    IndexSet s;
    for (auto i : items) s.insert(i);
    return s;
  }
  static IndexSet of(const std::vector<std::size_t>& items) {
    IndexSet s;
    for (auto i : items) s.insert(i);
    return s;
  }
  static constexpr IndexSet full(std::size_t n) {
    return IndexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t i) const { return i < 64 && ((bits_ >> i) & 1); }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }

  constexpr bool intersects(IndexSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
  constexpr IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
  constexpr IndexSet minus(IndexSet o) const { return IndexSet(bits_ & ~o.bits_); }

  /// Members in increasing order.
  std::vector<std::size_t> items() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend constexpr bool operator==(IndexSet, IndexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

struct ReceiverFrame {
  std::size_t receiver = 0;
  std::size_t demand = 0;
  IndexSet side_info;
  IndexSet complement;  // Y_i = [n] \ ({f(i)} ∪ X_i)
};

class Instance {
 public:
  Instance() = default;

  /// Validates f(i) ∉ X_i and index ranges. `side[i]` lists X_i (0-based, no duplicates).
  static Instance create(std::size_t n, std::vector<std::size_t> demand,
                         const std::vector<std::vector<std::size_t>>& side) {
    if (n > kMaxMessages)
      throw Error(ErrorKind::CapExceeded, "n = " + std::to_string(n) + " exceeds " +
                                              std::to_string(kMaxMessages) + " messages");
    if (demand.size() != side.size())
      throw Error(ErrorKind::MalformedDocument, "f and X have different lengths");
    Instance inst;
    inst.n_ = n;
    inst.demand_ = std::move(demand);
    for (std::size_t i = 0; i < side.size(); ++i) {
      const auto tag = "receiver " + std::to_string(i + 1);
      if (inst.demand_[i] >= n) throw Error(ErrorKind::IndexOutOfRange, tag + ": demand out of range");
      IndexSet x;
      for (auto j : side[i]) {
        if (j >= n) throw Error(ErrorKind::IndexOutOfRange, tag + ": side information out of range");
        if (x.contains(j)) throw Error(ErrorKind::MalformedDocument, tag + ": duplicate side index");
        x.insert(j);
      }
      if (x.contains(inst.demand_[i]))
        throw Error(ErrorKind::DemandInSideInfo, tag + ": f(i) belongs to X_i");
      inst.side_.push_back(x);
    }
    return inst;
  }

  std::size_t receivers() const { return demand_.size(); }
  std::size_t messages() const { return n_; }
  std::size_t demand(std::size_t i) const { return demand_.at(i); }
  IndexSet side_info(std::size_t i) const { return side_.at(i); }
  IndexSet complement(std::size_t i) const {
    IndexSet y = IndexSet::full(n_).minus(side_.at(i));
    y.erase(demand_.at(i));
    return y;
  }
  const std::vector<std::size_t>& demands() const { return demand_; }
  const std::vector<IndexSet>& side_infos() const { return side_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> demand_;
  std::vector<IndexSet> side_;
};

inline ReceiverFrame receiver_frame(const Instance& inst, std::size_t i) {
  if (i >= inst.receivers())
    throw Error(ErrorKind::IndexOutOfRange, "receiver " + std::to_string(i + 1));
  return {i, inst.demand(i), inst.side_info(i), inst.complement(i)};
}

// ---------------------------------------------------------------------------
// Named instances

/// m = n, f = id, X_i = ∅.
inline Instance no_side_info_instance(std::size_t n) {
  std::vector<std::size_t> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = i;
  return Instance::create(n, f, std::vector<std::vector<std::size_t>>(n));
}

/// The 5-cycle side-information graph: X_i = {i-1, i+1} (cyclic).
inline Instance pentagon_instance() {
  return Instance::create(5, {0, 1, 2, 3, 4}, {{1, 4}, {0, 2}, {1, 3}, {2, 4}, {0, 3}});
}

/// m = n = 3, f = id, each receiver knows the other two messages.
inline Instance example1_instance() {
  return Instance::create(3, {0, 1, 2}, {{1, 2}, {0, 2}, {0, 1}});
}

/// n = 2l+1, X_i = [n] \ {i-1, i, i+1} (cyclic): complement of the odd cycle C_n.
inline Instance odd_cycle_complement_instance(std::size_t l) {
  if (l < 1) throw Error(ErrorKind::MalformedDocument, "odd-cycle-complement needs l >= 1");
  const std::size_t n = 2 * l + 1;
  std::vector<std::size_t> f(n);
  std::vector<std::vector<std::size_t>> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = i;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && j != (i + 1) % n && j != (i + n - 1) % n) x[i].push_back(j);
  }
  return Instance::create(n, f, x);
}

// ---------------------------------------------------------------------------
// Instance documents

inline Instance instance_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorKind::MalformedDocument, "instance must be a JSON object");
    for (const char* key : {"m", "n", "f", "X"})
      if (!doc.contains(key)) throw Error(ErrorKind::MalformedDocument, std::string("missing \"") + key + "\"");
    const auto m = doc.at("m").get<long long>();
    const auto n = doc.at("n").get<long long>();
    if (m < 0 || n < 0) throw Error(ErrorKind::MalformedDocument, "m and n must be nonnegative");
    const auto& f = doc.at("f");
    const auto& X = doc.at("X");
    if (!f.is_array() || !X.is_array() || f.size() != static_cast<std::size_t>(m) ||
        X.size() != static_cast<std::size_t>(m))
      throw Error(ErrorKind::MalformedDocument, "f and X must be arrays of length m");
    auto index = [n](const nlohmann::json& v) -> std::size_t {
      const auto k = v.get<long long>();
      if (k < 1 || k > n) throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(k));
      return static_cast<std::size_t>(k - 1);
    };
    std::vector<std::size_t> demand;
    std::vector<std::vector<std::size_t>> side;
    for (std::size_t i = 0; i < f.size(); ++i) {
      demand.push_back(index(f[i]));
      if (!X[i].is_array()) throw Error(ErrorKind::MalformedDocument, "X entries must be arrays");
      std::vector<std::size_t> xi;
      for (const auto& v : X[i]) xi.push_back(index(v));
      side.push_back(std::move(xi));
    }
    return Instance::create(static_cast<std::size_t>(n), std::move(demand), side);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, e.what());
  }
}

inline Instance parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, e.what());
  }
  return instance_from_json(doc);
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json f = nlohmann::json::array();
  nlohmann::json X = nlohmann::json::array();
  for (std::size_t i = 0; i < inst.receivers(); ++i) {
    f.push_back(inst.demand(i) + 1);
    nlohmann::json xi = nlohmann::json::array();
    for (auto j : inst.side_info(i).items()) xi.push_back(j + 1);
    X.push_back(std::move(xi));
  }
  return {{"m", inst.receivers()}, {"n", inst.messages()}, {"f", f}, {"X", X}};
}

/// "pentagon", "example1", "odd-cycle-complement:<l>", "no-side-info:<n>".
inline std::optional<Instance> builtin_instance(std::string_view name) {
  auto suffix = [&](std::string_view prefix) -> std::optional<std::size_t> {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    const std::string rest(name.substr(prefix.size()));
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::MalformedDocument, "bad parameter in \"" + std::string(name) + "\"");
    return static_cast<std::size_t>(std::stoul(rest));
  };
  if (name == "pentagon") return pentagon_instance();
  if (name == "example1") return example1_instance();
  if (auto l = suffix("odd-cycle-complement:")) return odd_cycle_complement_instance(*l);
  if (auto n = suffix("no-side-info:")) return no_side_info_instance(*n);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Supports and confusable differences

/// K belongs to the support family iff some receiver i has f(i) ∈ K and K ∩ X_i = ∅.
inline bool in_support_family(const Instance& inst, IndexSet K) {
  if (K.empty()) throw Error(ErrorKind::EmptySet, "support family membership of the empty set");
  for (std::size_t i = 0; i < inst.receivers(); ++i)
    if (K.contains(inst.demand(i)) && !K.intersects(inst.side_info(i))) return true;
  return false;
}

/// z is a confusable difference for receiver i: z_{X_i} = 0 and z_{f(i)} ≠ 0.
inline bool confuses_receiver(const Instance& inst, std::size_t i, std::span<const Elem> z) {
  if (z[inst.demand(i)] == 0) return false;
  for (auto j : inst.side_info(i).items())
    if (z[j] != 0) return false;
  return true;
}

/// Calls `visit(z, i)` once for every z in I(q,H), where i is the first receiver
/// that z confuses. Each receiver contributes (q-1) q^{|Y_i|} candidates; a
/// candidate already confusing an earlier receiver is skipped, so no vector is
/// visited twice and no visited-set is needed. Returning false from `visit` stops.
inline void for_each_error_vector(const Instance& inst, const Field& F,
                                  const std::function<bool(const Vector&, std::size_t)>& visit,
                                  std::uint64_t budget = kDefaultEnumerationBudget) {
  const unsigned q = F.order();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < inst.receivers(); ++i) {
    const std::uint64_t c = saturating_pow(q, inst.complement(i).size());
    total = (c > UINT64_MAX / q || total > UINT64_MAX - c * (q - 1)) ? UINT64_MAX : total + c * (q - 1);
  }
  if (total > budget)
    throw Error(ErrorKind::BudgetExceeded, "I(q,H) enumeration needs " + std::to_string(total) + " vectors");

  const std::size_t n = inst.messages();
  for (std::size_t i = 0; i < inst.receivers(); ++i) {
    const auto free = inst.complement(i).items();
    const std::size_t f = inst.demand(i);
    Vector z(n, 0);
    std::vector<Elem> digits(free.size() + 1, 0);
    digits[0] = 1;  // value at f(i), nonzero
    do {
      z[f] = digits[0];
      for (std::size_t k = 0; k < free.size(); ++k) z[free[k]] = digits[k + 1];
      bool earlier = false;
      for (std::size_t j = 0; j < i && !earlier; ++j) earlier = confuses_receiver(inst, j, z);
      if (!earlier && !visit(z, i)) return;
    } while ([&] {
      // Odometer with digit 0 ranging over 1..q-1 and the rest over 0..q-1.
      for (std::size_t k = digits.size(); k-- > 0;) {
        const Elem lo = k == 0 ? 1 : 0;
        if (digits[k] + 1u < q) {
          ++digits[k];
          return true;
        }
        digits[k] = lo;
      }
      return false;
    }());
  }
}

inline std::vector<Vector> error_vectors(const Instance& inst, const Field& F,
                                         std::uint64_t budget = kDefaultEnumerationBudget) {
  std::vector<Vector> out;
  for_each_error_vector(
      inst, F,
      [&](const Vector& z, std::size_t) {
        out.push_back(z);
        return true;
      },
      budget);
  return out;
}

}  // namespace ecic
