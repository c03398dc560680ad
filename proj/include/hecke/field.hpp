#pragma once

// Exact arithmetic in finite fields F_{p^k}, represented as F_p[x]/(min_poly).
// Elements are coefficient vectors of length k with entries in [0, p).
// All operations are exact; there is no floating point anywhere in this
// library.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hecke {

class FqField;
using FieldPtr = std::shared_ptr<const FqField>;

// A field element: coefficients of 1, x, ..., x^{k-1}.  Elements carry no
// field pointer; every operation goes through an FqField, which keeps
// ownership questions trivial and containers cheap.
struct Fq {
  std::vector<uint32_t> c;
  bool operator==(const Fq&) const = default;
  auto operator<=>(const Fq&) const = default;
};

class FqField {
 public:
  // Constructs F_p[x]/(min_poly).  min_poly is monic of degree k, given by
  // its k+1 coefficients (constant term first).  Verifies primality of p and
  // irreducibility of min_poly.
  FqField(uint64_t p, const std::vector<uint32_t>& min_poly);

  uint64_t p() const { return p_; }
  uint32_t k() const { return k_; }
  const std::vector<uint32_t>& min_poly() const { return min_poly_; }
  // p^k as a 64-bit integer (construction rejects anything larger).
  uint64_t order() const { return order_; }

  Fq zero() const;
  Fq one() const;
  // The reduction of the integer n (n may be negative).
  Fq from_int(int64_t n) const;
  Fq add(const Fq& a, const Fq& b) const;
  Fq sub(const Fq& a, const Fq& b) const;
  Fq neg(const Fq& a) const;
  Fq mul(const Fq& a, const Fq& b) const;
  Fq inv(const Fq& a) const;  // ParameterError on zero
  Fq pow(const Fq& a, int64_t e) const;
  bool is_zero(const Fq& a) const;
  bool is_one(const Fq& a) const;

  // x^p-th power map; additive and multiplicative.
  Fq frobenius(const Fq& a) const;

  // A fixed generator of the multiplicative group, found by a deterministic
  // seeded search (see make_field for the seed).
  const Fq& generator() const { return generator_; }

  // An element of exact multiplicative order m; requires m | p^k - 1.
  Fq root_of_unity(uint64_t m) const;

  // Multiplicative order of a nonzero element.
  uint64_t element_order(const Fq& a) const;

  // Elements in a fixed enumeration order (coefficient vectors counted in
  // base p, least-significant first).  index < order().
  Fq element_by_index(uint64_t index) const;
  uint64_t index_of(const Fq& a) const;

  // Checks that a is a structurally valid element of this field.
  void check_element(const Fq& a) const;

  std::string to_string(const Fq& a) const;

 private:
  uint64_t p_;
  uint32_t k_;
  std::vector<uint32_t> min_poly_;
  uint64_t order_;
  std::vector<uint64_t> order_factors_;  // distinct prime factors of p^k - 1
  Fq generator_;

  friend FieldPtr make_field(uint64_t p, uint64_t m);
  void find_generator(uint64_t seed);
  std::vector<uint32_t> poly_mod(std::vector<uint64_t> a) const;
};

// Returns F_{p^k} for the smallest k >= 1 with m | p^k - 1, i.e. the smallest
// extension of F_p containing the m-th roots of unity.  The modulus is found
// by a deterministic seeded search; the seed is read from the HECKE_SEED
// environment variable (default 20240613), so identical inputs always give
// identical field descriptors.
FieldPtr make_field(uint64_t p, uint64_t m);

// Reconstructs a field from its descriptor (used by serialization).
FieldPtr make_field_from_descriptor(uint64_t p, const std::vector<uint32_t>& min_poly);

// Field embedding small -> big, defined by sending the power-basis generator
// of `small` to the first root of its minimal polynomial in `big` (in
// element_by_index order).  Requires small.k() | big.k() and equal p.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr small, FieldPtr big);
  const FieldPtr& small() const { return small_; }
  const FieldPtr& big() const { return big_; }
  Fq operator()(const Fq& a) const;

 private:
  FieldPtr small_, big_;
  Fq image_of_x_;
};

// True if n is prime (trial division; n < 2^62).
bool is_prime_u64(uint64_t n);

// Distinct prime factors by trial division; ParameterError if a cofactor
// above 10^12 resists trial division up to 10^6.
std::vector<uint64_t> distinct_prime_factors(uint64_t n);

uint64_t hecke_seed();

}  // namespace hecke
