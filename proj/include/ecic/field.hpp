#pragma once

// Finite fields GF(q), q = p^e, with table-driven arithmetic.
//
// Elements are the integers 0..q-1. For e > 1 an element encodes the polynomial
// c_0 + c_1 x + ... + c_{e-1} x^{e-1} as the base-p number sum c_j p^j, reduced
// modulo the lexicographically smallest monic irreducible polynomial of degree e
// (smallest when its low coefficients are read as a base-p number). GF(4) uses
// x^2 + x + 1, GF(8) uses x^3 + x + 1, GF(256) uses x^8 + x^4 + x^3 + x + 1.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ecic/error.hpp"

namespace ecic {

using Elem = std::uint16_t;

inline constexpr unsigned kDefaultFieldCap = 256;
inline constexpr unsigned kMaxFieldCap = 1024;

namespace detail {

struct FieldTables {
  unsigned q = 0;
  unsigned p = 0;
  unsigned e = 0;
  std::vector<unsigned> modulus;  // e+1 coefficients, low degree first, monic
  std::vector<Elem> add;          // q*q
  std::vector<Elem> mul;          // q*q
  std::vector<Elem> neg;          // q
  std::vector<Elem> inv;          // q, inv[0] unused
};

inline bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Polynomials over GF(p) as coefficient vectors, low degree first.
using Poly = std::vector<unsigned>;

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_from_code(unsigned code, unsigned p, unsigned len) {
  Poly a(len, 0);
  for (unsigned j = 0; j < len; ++j) {
    a[j] = code % p;
    code /= p;
  }
  return a;
}

inline unsigned inv_mod(unsigned a, unsigned p) {
  for (unsigned b = 1; b < p; ++b)
    if ((a * b) % p == 1) return b;
  return 0;
}

// Remainder of a modulo the monic-or-not nonzero polynomial b.
inline Poly poly_mod(Poly a, Poly b, unsigned p) {
  poly_trim(a);
  poly_trim(b);
  const unsigned lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const unsigned factor = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j)
      a[shift + j] = (a[shift + j] + p - (factor * b[j]) % p) % p;
    poly_trim(a);
  }
  return a;
}

inline bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned e = static_cast<unsigned>(f.size()) - 1;
  // Trial division by every monic polynomial of degree 1..e/2.
  for (unsigned deg = 1; deg <= e / 2; ++deg) {
    unsigned count = 1;
    for (unsigned j = 0; j < deg; ++j) count *= p;
    for (unsigned code = 0; code < count; ++code) {
      Poly g = poly_from_code(code, p, deg);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

inline Poly smallest_irreducible(unsigned p, unsigned e) {
  unsigned count = 1;
  for (unsigned j = 0; j < e; ++j) count *= p;
  for (unsigned code = 0; code < count; ++code) {
    Poly f = poly_from_code(code, p, e);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::InternalContradiction, "no irreducible polynomial found");
}

inline std::shared_ptr<const FieldTables> build_tables(unsigned q, unsigned p, unsigned e) {
  auto t = std::make_shared<FieldTables>();
  t->q = q;
  t->p = p;
  t->e = e;
  t->modulus = e == 1 ? Poly{0, 1} : smallest_irreducible(p, e);
  t->add.resize(std::size_t{q} * q);
  t->mul.resize(std::size_t{q} * q);
  t->neg.resize(q);
  t->inv.assign(q, 0);

  auto encode = [&](const Poly& a) {
    unsigned code = 0;
    for (std::size_t j = a.size(); j-- > 0;) code = code * p + a[j];
    return static_cast<Elem>(code);
  };

  for (unsigned a = 0; a < q; ++a) {
    const Poly pa = poly_from_code(a, p, e);
    for (unsigned b = 0; b < q; ++b) {
      const Poly pb = poly_from_code(b, p, e);
      Poly sum(e);
      for (unsigned j = 0; j < e; ++j) sum[j] = (pa[j] + pb[j]) % p;
      t->add[a * q + b] = encode(sum);

      Poly prod(2 * e, 0);
      for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
      t->mul[a * q + b] = encode(poly_mod(prod, t->modulus, p));
    }
  }
  for (unsigned a = 0; a < q; ++a) {
    for (unsigned b = 0; b < q; ++b) {
      if (t->add[a * q + b] == 0) t->neg[a] = static_cast<Elem>(b);
      if (a != 0 && t->mul[a * q + b] == 1) t->inv[a] = static_cast<Elem>(b);
    }
    if (a != 0 && t->inv[a] == 0)
      throw Error(ErrorKind::InternalContradiction,
                  "element " + std::to_string(a) + " has no inverse in GF(" + std::to_string(q) + ")");
  }
  return t;
}

}  // namespace detail

/// Immutable handle to a finite field. Copies share the same lookup tables.
class Field {
 public:
  Field() = default;

  unsigned order() const { return t_->q; }
  unsigned characteristic() const { return t_->p; }
  unsigned degree() const { return t_->e; }
  /// Monic modulus polynomial, low degree first (x for prime fields).
  const std::vector<unsigned>& modulus() const { return t_->modulus; }

  Elem add(Elem a, Elem b) const { return t_->add[std::size_t{a} * t_->q + b]; }
  Elem sub(Elem a, Elem b) const { return add(a, t_->neg[b]); }
  Elem neg(Elem a) const { return t_->neg[a]; }
  Elem mul(Elem a, Elem b) const { return t_->mul[std::size_t{a} * t_->q + b]; }
  Elem inv(Elem a) const {
    if (a == 0) throw Error(ErrorKind::NoSolution, "inverse of zero");
    return t_->inv[a];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool contains(unsigned v) const { return v < t_->q; }

  /// Smallest element whose powers exhaust the nonzero elements.
  Elem primitive_element() const {
    const unsigned q = t_->q;
    if (q == 2) return 1;
    for (unsigned g = 2; g < q; ++g) {
      unsigned order = 1;
      Elem x = static_cast<Elem>(g);
      while (x != 1) {
        x = mul(x, static_cast<Elem>(g));
        ++order;
      }
      if (order == q - 1) return static_cast<Elem>(g);
    }
    return 1;
  }

  friend bool operator==(const Field& a, const Field& b) { return a.t_->q == b.t_->q; }

 private:
  explicit Field(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}
  friend Field make_field(unsigned q, unsigned cap);

  std::shared_ptr<const detail::FieldTables> t_;
};

/// Builds GF(q). Throws NotPrimePower or CapExceeded.
inline Field make_field(unsigned q, unsigned cap = kDefaultFieldCap) {
  if (cap > kMaxFieldCap) cap = kMaxFieldCap;
  if (q > cap)
    throw Error(ErrorKind::CapExceeded,
                "q = " + std::to_string(q) + " exceeds field cap " + std::to_string(cap));
  if (q < 2) throw Error(ErrorKind::NotPrimePower, "q = " + std::to_string(q));
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1 || !detail::is_prime(p))
    throw Error(ErrorKind::NotPrimePower, "q = " + std::to_string(q) + " is not a prime power");
  return Field(detail::build_tables(q, p, e));
}

}  // namespace ecic
