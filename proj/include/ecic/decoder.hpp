#pragma once

// Syndrome decoding for linear error-correcting index codes.
//
// Receiver i knows x_{X_i} and sees y_i = xL + e. Removing the known part leaves
// r = y_i - x_{X_i} L_{X_i} = x_{f(i)} L_{f(i)} + sum_{j in Y_i} x_j L_j + e,
// so r - e lies in C_i = span({L_{f(i)}} ∪ {L_j : j ∈ Y_i}). With H a parity-check
// matrix of C_i, the syndrome H r^T equals H e^T; a minimum-weight solution ê
// (coset leader) gives r - ê ∈ C_i, and x_{f(i)} is the L_{f(i)} coordinate of it.

#include <cstdint>
#include <optional>
#include <vector>

#include "ecic/bounds.hpp"
#include "ecic/error.hpp"
#include "ecic/index_codes.hpp"
#include "ecic/instance.hpp"
#include "ecic/linalg.hpp"

namespace ecic {

class ReceiverDecoder {
 public:
  ReceiverDecoder(const LinearIndexCode& code, std::size_t i)
      : F_(code.field()), frame_(receiver_frame(code.instance(), i)) {
    const Matrix& L = code.matrix();
    const auto ys = frame_.complement.items();
    const auto xs = frame_.side_info.items();
    side_rows_ = L.select_rows(xs);
    interference_ = L.select_rows(ys);

    Matrix gen = interference_;
    gen.append_row(L.row(frame_.demand));
    code_space_ = row_space_basis(F_, gen);
    parity_ = parity_check_matrix(F_, code_space_);
    for (std::size_t r = 0; r < code_space_.rows(); ++r)
      for (auto s : mat_vec(F_, parity_, code_space_.row(r)))
        if (s != 0) throw Error(ErrorKind::InternalContradiction, "parity check does not annihilate C_i");

    // Functional w with L_{Y_i} w = 0 and L_{f(i)} w = 1: reads off the L_{f(i)}
    // coordinate of any vector in C_i. Exists iff L_{f(i)} ∉ span(L_{Y_i}).
    // Solve [L_Y; L_f] w = (0,...,0,1)^T on the augmented matrix.
    Matrix aug(interference_.rows() + 1, L.cols() + 1);
    for (std::size_t r = 0; r < interference_.rows(); ++r)
      for (std::size_t c = 0; c < L.cols(); ++c) aug(r, c) = interference_(r, c);
    for (std::size_t c = 0; c < L.cols(); ++c) aug(interference_.rows(), c) = L(frame_.demand, c);
    aug(interference_.rows(), L.cols()) = 1;
    const auto pivots = row_reduce(F_, aug);
    if (pivots.empty() || pivots.back() != L.cols()) {
      reader_ = Vector(L.cols(), 0);
      for (std::size_t r = 0; r < pivots.size(); ++r) reader_->at(pivots[r]) = aug(r, L.cols());
    }
  }

  const ReceiverFrame& frame() const { return frame_; }
  const Matrix& code_space() const { return code_space_; }
  const Matrix& parity_check() const { return parity_; }
  const Matrix& side_rows() const { return side_rows_; }
  const Matrix& interference_rows() const { return interference_; }
  const Field& field() const { return F_; }
  std::size_t length() const { return parity_.cols(); }
  bool determines_demand() const { return reader_.has_value(); }

  /// y - x_{X_i} L_{X_i}; `side` lists x_j for j ∈ X_i in increasing j.
  Vector strip_side_information(std::span<const Elem> y, std::span<const Elem> side) const {
    if (y.size() != length()) throw Error(ErrorKind::LengthMismatch, "received word length != N");
    if (side.size() != side_rows_.rows()) throw Error(ErrorKind::LengthMismatch, "side information length != |X_i|");
    return sub(F_, y, vec_mat(F_, side, side_rows_));
  }

  Vector syndrome(std::span<const Elem> stripped) const { return mat_vec(F_, parity_, stripped); }

  /// Coordinate of L_{f(i)} in a vector of C_i.
  Elem read_demand(std::span<const Elem> codeword) const {
    if (!reader_)
      throw Error(ErrorKind::InternalContradiction,
                  "receiver " + std::to_string(frame_.receiver + 1) + " cannot isolate its demand");
    return dot(F_, codeword, *reader_);
  }

 private:
  Field F_;
  ReceiverFrame frame_;
  Matrix side_rows_;
  Matrix interference_;
  Matrix code_space_;
  Matrix parity_;
  std::optional<Vector> reader_;
};

inline ReceiverDecoder build_receiver_decoder(const LinearIndexCode& code, std::size_t i) {
  return ReceiverDecoder(code, i);
}

struct DecodeOutcome {
  std::size_t receiver = 0;
  Elem recovered = 0;
  Vector error_estimate;
  std::size_t estimate_weight = 0;
  bool beyond_cap = false;       // coset leader heavier than weight_cap
  std::optional<bool> success;   // set when ground truth is known
};

/// Syndrome decoding: syndrome of the stripped word, exact coset leader, then the
/// demand coordinate of the stripped word minus the coset leader. When the coset
/// leader is heavier than `weight_cap` the output is still produced and flagged.
inline DecodeOutcome decode(const ReceiverDecoder& dec, std::span<const Elem> y, std::span<const Elem> side,
                            std::size_t weight_cap, std::uint64_t budget = kDefaultEnumerationBudget) {
  const Field& F = dec.field();
  const Vector r = dec.strip_side_information(y, side);
  const Vector beta = dec.syndrome(r);
  DecodeOutcome out;
  out.receiver = dec.frame().receiver;
  out.error_estimate = coset_leader(F, dec.parity_check(), beta, dec.length(), budget);
  out.estimate_weight = hamming_weight(out.error_estimate);
  out.beyond_cap = out.estimate_weight > weight_cap;
  out.recovered = dec.read_demand(sub(F, r, out.error_estimate));
  return out;
}

/// candidate - true_error ∈ span{L_j : j ∈ Y_i}.
inline bool in_relevant_error_set(const ReceiverDecoder& dec, std::span<const Elem> candidate,
                                  std::span<const Elem> true_error) {
  if (candidate.size() != dec.length() || true_error.size() != dec.length())
    throw Error(ErrorKind::LengthMismatch, "error pattern length != N");
  const Vector diff = sub(dec.field(), candidate, true_error);
  if (dec.interference_rows().rows() == 0) return hamming_weight(diff) == 0;
  return in_row_space(dec.field(), dec.interference_rows(), diff);
}

inline Vector side_values(const Instance& inst, std::size_t i, std::span<const Elem> x) {
  Vector v;
  for (auto j : inst.side_info(i).items()) v.push_back(x[j]);
  return v;
}

/// Broadcasts xL and lets receiver i decode xL + errors[i].
inline std::vector<DecodeOutcome> simulate_round(const LinearIndexCode& code, std::span<const Elem> x,
                                                 const std::vector<Vector>& errors, std::size_t delta) {
  const auto& inst = code.instance();
  if (errors.size() != inst.receivers())
    throw Error(ErrorKind::LengthMismatch, "one error vector per receiver required");
  const Vector y = encode(code, x);
  std::vector<DecodeOutcome> out;
  for (std::size_t i = 0; i < inst.receivers(); ++i) {
    const ReceiverDecoder dec(code, i);
    auto o = decode(dec, add(code.field(), y, errors[i]), side_values(inst, i, x), delta);
    o.success = o.recovered == x[inst.demand(i)];
    out.push_back(std::move(o));
  }
  return out;
}

/// Same error pattern for every receiver.
inline std::vector<DecodeOutcome> simulate_round(const LinearIndexCode& code, std::span<const Elem> x,
                                                 std::span<const Elem> error, std::size_t delta) {
  return simulate_round(code, x, std::vector<Vector>(code.instance().receivers(), Vector(error.begin(), error.end())),
                        delta);
}

struct Counterexample {
  Vector x;
  Vector error;
  std::size_t receiver = 0;
  Elem recovered = 0;
};

struct CorrectnessReport {
  bool correct = true;                  // every decode returned x_{f(i)}
  bool estimates_relevant = true;       // every ê was in the relevant error set
  std::uint64_t decodes = 0;
  std::optional<Counterexample> counterexample;
};

/// Runs the decoder on every x ∈ F^n, every error of weight <= δ and every
/// receiver. A receiver that cannot isolate its demand counts as a failure.
inline CorrectnessReport exhaustive_correctness_check(const LinearIndexCode& code, std::size_t delta,
                                                      std::uint64_t budget = kDefaultEnumerationBudget) {
  const auto& inst = code.instance();
  const Field& F = code.field();
  const unsigned q = F.order();
  const std::size_t n = inst.messages(), N = code.length();

  const BigInt work = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n)) *
                      sphere_volume(q, N, delta) * inst.receivers();
  if (work > budget) throw Error(ErrorKind::BudgetExceeded, "exhaustive decoder check too large");

  // All error patterns of weight <= δ.
  std::vector<Vector> patterns;
  for (std::size_t w = 0; w <= std::min(delta, N); ++w) {
    std::vector<std::size_t> supp(w);
    for (std::size_t j = 0; j < w; ++j) supp[j] = j;
    do {
      std::vector<Elem> values(w, 1);
      do {
        Vector e(N, 0);
        for (std::size_t j = 0; j < w; ++j) e[supp[j]] = values[j];
        patterns.push_back(std::move(e));
      } while (next_odometer(values, q, 1));
    } while (next_combination(supp, N));
  }

  std::vector<ReceiverDecoder> decoders;
  for (std::size_t i = 0; i < inst.receivers(); ++i) decoders.emplace_back(code, i);

  CorrectnessReport rep;
  Vector x(n, 0);
  do {
    const Vector y = encode(code, x);
    for (const auto& e : patterns) {
      const Vector received = add(F, y, e);
      for (std::size_t i = 0; i < decoders.size(); ++i) {
        ++rep.decodes;
        const auto& dec = decoders[i];
        bool ok = false;
        Elem got = 0;
        if (dec.determines_demand()) {
          const auto o = decode(dec, received, side_values(inst, i, x), delta, budget);
          got = o.recovered;
          ok = got == x[inst.demand(i)];
          if (!in_relevant_error_set(dec, o.error_estimate, e)) rep.estimates_relevant = false;
        } else {
          rep.estimates_relevant = false;
        }
        if (!ok && rep.correct) {
          rep.correct = false;
          rep.counterexample = Counterexample{x, e, i, got};
        }
      }
    }
  } while (next_odometer(x, q));
  return rep;
}

}  // namespace ecic
