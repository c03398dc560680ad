#include "hecke/field.hpp"

#include <algorithm>
#include <cstdlib>

#include "hecke/error.hpp"

namespace hecke {

namespace {

constexpr uint64_t kDefaultSeed = 20240613;
constexpr uint64_t kMaxFieldOrder = uint64_t(1) << 40;

// Deterministic 64-bit mixer (splitmix64); used for seeded searches only,
// never for anything that affects correctness.
uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// Polynomial helpers over F_p; polynomials are coefficient vectors, constant
// term first, possibly with trailing zeros.
using Poly = std::vector<uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod_u64(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

// a mod f, f monic.
Poly poly_rem(Poly a, const Poly& f, uint64_t p) {
  trim(a);
  const size_t d = f.size() - 1;
  while (a.size() > d) {
    uint64_t lead = a.back();
    size_t shift = a.size() - 1 - d;
    if (lead != 0) {
      for (size_t i = 0; i < d; ++i) {
        uint64_t t = mulmod_u64(lead, f[i], p);
        a[shift + i] = (a[shift + i] + p - t) % p;
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_powmod_xq(const Poly& base, uint64_t e, const Poly& f, uint64_t p) {
  Poly result{1};
  Poly b = poly_rem(base, f, p);
  uint64_t n = e;
  while (n > 0) {
    if (n & 1) result = poly_rem(poly_mul(result, b, p), f, p);
    b = poly_rem(poly_mul(b, b, p), f, p);
    n >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // Make b monic before reducing.
    Poly bm = b;
    uint64_t lead = bm.back();
    if (lead != 1) {
      // Modular inverse of lead via Fermat.
      uint64_t inv = 1, base = lead, n = p - 2;
      while (n > 0) {
        if (n & 1) inv = mulmod_u64(inv, base, p);
        base = mulmod_u64(base, base, p);
        n >>= 1;
      }
      for (auto& c : bm) c = mulmod_u64(c, inv, p);
    }
    Poly r = poly_rem(a, bm, p);
    a = b;
    b = r;
  }
  return a;
}

// x^{p^j} mod f via repeated exponentiation by p.
Poly frobenius_power_of_x(uint32_t j, const Poly& f, uint64_t p) {
  Poly x{0, 1};
  Poly cur = poly_rem(x, f, p);
  for (uint32_t i = 0; i < j; ++i) cur = poly_powmod_xq(cur, p, f, p);
  return cur;
}

// Irreducibility of monic f of degree k over F_p:
//   x^{p^k} == x (mod f), and gcd(x^{p^{k/l}} - x, f) = 1 for primes l | k.
bool poly_irreducible(const Poly& f, uint64_t p) {
  const uint32_t k = static_cast<uint32_t>(f.size() - 1);
  if (k == 0) return false;
  if (k == 1) return true;
  Poly xpk = frobenius_power_of_x(k, f, p);
  Poly x{0, 1};
  Poly diff = xpk;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  trim(diff);
  if (!diff.empty()) return false;
  for (uint64_t l : distinct_prime_factors(k)) {
    Poly xpd = frobenius_power_of_x(static_cast<uint32_t>(k / l), f, p);
    Poly d = xpd;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    Poly g = poly_gcd(f, d, p);
    if (g.size() != 1) return false;  // nonconstant gcd
  }
  return true;
}

}  // namespace

uint64_t hecke_seed() {
  if (const char* env = std::getenv("HECKE_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<uint64_t>(v);
    throw ParameterError("HECKE_SEED must be a decimal unsigned integer");
  }
  return kDefaultSeed;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (n % d == 0) return n == d;
  }
  for (uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  uint64_t m = n;
  for (uint64_t d = 2; d <= 1000000 && d * d <= m; d == 2 ? d = 3 : d += 2) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) {
    if (m > 1000000ULL * 1000000ULL || !is_prime_u64(m))
      throw ParameterError("cannot factor " + std::to_string(n) +
                           " by trial division; field too large for this tool");
    out.push_back(m);
  }
  return out;
}

FqField::FqField(uint64_t p, const std::vector<uint32_t>& min_poly) : p_(p) {
  require(p >= 2 && p < (uint64_t(1) << 31), "field characteristic out of range");
  require(is_prime_u64(p), "field characteristic must be prime");
  require(min_poly.size() >= 2, "min_poly must have degree >= 1");
  k_ = static_cast<uint32_t>(min_poly.size() - 1);
  min_poly_ = min_poly;
  for (uint32_t c : min_poly_) require(c < p, "min_poly coefficient out of range");
  require(min_poly_.back() == 1, "min_poly must be monic");
  Poly f(min_poly_.begin(), min_poly_.end());
  require(poly_irreducible(f, p), "min_poly is not irreducible over F_p");
  order_ = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    require(order_ <= kMaxFieldOrder / p, "field order exceeds supported bound");
    order_ *= p;
  }
  order_factors_ = distinct_prime_factors(order_ - 1);
  find_generator(hecke_seed());
}

void FqField::find_generator(uint64_t seed) {
  if (order_ == 2) {
    generator_ = one();
    return;
  }
  // Deterministic seeded walk over nonzero elements.
  const uint64_t n = order_ - 1;
  for (uint64_t attempt = 0;; ++attempt) {
    uint64_t idx = 1 + mix64(seed ^ (p_ * 0x10001ULL) ^ (k_ * 0x9e37ULL) ^ attempt) % n;
    Fq g = element_by_index(idx);
    if (is_zero(g)) continue;
    bool ok = true;
    for (uint64_t l : order_factors_) {
      if (is_one(pow(g, static_cast<int64_t>(n / l)))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      generator_ = g;
      return;
    }
  }
}

Fq FqField::zero() const { return Fq{std::vector<uint32_t>(k_, 0)}; }

Fq FqField::one() const {
  Fq r = zero();
  r.c[0] = 1;
  return r;
}

Fq FqField::from_int(int64_t n) const {
  int64_t m = n % static_cast<int64_t>(p_);
  if (m < 0) m += static_cast<int64_t>(p_);
  Fq r = zero();
  r.c[0] = static_cast<uint32_t>(m);
  return r;
}

void FqField::check_element(const Fq& a) const {
  require(a.c.size() == k_, "field element has wrong coefficient count");
  for (uint32_t c : a.c) require(c < p_, "field element coefficient out of range");
}

Fq FqField::add(const Fq& a, const Fq& b) const {
  Fq r = a;
  for (uint32_t i = 0; i < k_; ++i) r.c[i] = static_cast<uint32_t>((uint64_t(r.c[i]) + b.c[i]) % p_);
  return r;
}

Fq FqField::sub(const Fq& a, const Fq& b) const {
  Fq r = a;
  for (uint32_t i = 0; i < k_; ++i)
    r.c[i] = static_cast<uint32_t>((uint64_t(r.c[i]) + p_ - b.c[i]) % p_);
  return r;
}

Fq FqField::neg(const Fq& a) const { return sub(zero(), a); }

std::vector<uint32_t> FqField::poly_mod(std::vector<uint64_t> a) const {
  Poly f(min_poly_.begin(), min_poly_.end());
  Poly r = poly_rem(std::move(a), f, p_);
  std::vector<uint32_t> out(k_, 0);
  for (size_t i = 0; i < r.size(); ++i) out[i] = static_cast<uint32_t>(r[i]);
  return out;
}

Fq FqField::mul(const Fq& a, const Fq& b) const {
  std::vector<uint64_t> prod(2 * k_ - 1, 0);
  for (uint32_t i = 0; i < k_; ++i) {
    if (a.c[i] == 0) continue;
    for (uint32_t j = 0; j < k_; ++j)
      prod[i + j] = (prod[i + j] + uint64_t(a.c[i]) * b.c[j]) % p_;
  }
  return Fq{poly_mod(std::move(prod))};
}

bool FqField::is_zero(const Fq& a) const {
  for (uint32_t c : a.c)
    if (c != 0) return false;
  return true;
}

bool FqField::is_one(const Fq& a) const {
  if (a.c[0] != 1) return false;
  for (uint32_t i = 1; i < k_; ++i)
    if (a.c[i] != 0) return false;
  return true;
}

Fq FqField::pow(const Fq& a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  Fq result = one();
  Fq base = a;
  uint64_t n = static_cast<uint64_t>(e);
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

Fq FqField::inv(const Fq& a) const {
  require(!is_zero(a), "division by zero in finite field");
  // a^{p^k - 2}.
  Fq result = one();
  Fq base = a;
  uint64_t n = order_ - 2;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

Fq FqField::frobenius(const Fq& a) const { return pow(a, static_cast<int64_t>(p_)); }

uint64_t FqField::element_order(const Fq& a) const {
  require(!is_zero(a), "zero has no multiplicative order");
  uint64_t ord = order_ - 1;
  for (uint64_t l : order_factors_) {
    while (ord % l == 0 && is_one(pow(a, static_cast<int64_t>(ord / l)))) ord /= l;
  }
  return ord;
}

Fq FqField::root_of_unity(uint64_t m) const {
  require(m >= 1, "root order must be positive");
  require((order_ - 1) % m == 0, "field has no elements of order " + std::to_string(m));
  return pow(generator_, static_cast<int64_t>((order_ - 1) / m));
}

Fq FqField::element_by_index(uint64_t index) const {
  require(index < order_, "element index out of range");
  Fq r = zero();
  for (uint32_t i = 0; i < k_; ++i) {
    r.c[i] = static_cast<uint32_t>(index % p_);
    index /= p_;
  }
  return r;
}

uint64_t FqField::index_of(const Fq& a) const {
  uint64_t idx = 0;
  for (uint32_t i = k_; i-- > 0;) idx = idx * p_ + a.c[i];
  return idx;
}

std::string FqField::to_string(const Fq& a) const {
  std::string s = "[";
  for (uint32_t i = 0; i < k_; ++i) {
    if (i) s += ",";
    s += std::to_string(a.c[i]);
  }
  return s + "]";
}

FieldPtr make_field(uint64_t p, uint64_t m) {
  require(p >= 2 && is_prime_u64(p), "p must be prime");
  require(m >= 1, "m must be positive");
  require(m % p != 0, "m must be prime to p");
  // Smallest k with p^k == 1 mod m, i.e. the order of p in (Z/m)^*.
  uint32_t k = 1;
  uint64_t pk_mod_m = p % m;
  while (pk_mod_m != 1 % m) {
    ++k;
    require(k <= 40, "required field degree too large");
    pk_mod_m = mulmod_u64(pk_mod_m, p % m, m);
  }
  if (k == 1) {
    // Modulus x; unused by degree-1 arithmetic but keeps descriptors uniform.
    return std::make_shared<FqField>(p, std::vector<uint32_t>{0, 1});
  }
  // Deterministic seeded search for a monic irreducible polynomial of
  // degree k: walk candidate coefficient vectors pseudorandomly.
  const uint64_t seed = hecke_seed();
  uint64_t space = 1;
  for (uint32_t i = 0; i < k; ++i) {
    require(space <= (uint64_t(1) << 50) / p, "field modulus search space too large");
    space *= p;
  }
  for (uint64_t attempt = 0;; ++attempt) {
    uint64_t code = mix64(seed ^ (p * 0x51ULL) ^ (uint64_t(k) << 32) ^ attempt) % space;
    Poly f(k + 1, 0);
    for (uint32_t i = 0; i < k; ++i) {
      f[i] = code % p;
      code /= p;
    }
    f[k] = 1;
    if (f[0] == 0) continue;  // reducible: x divides
    if (poly_irreducible(f, p)) {
      std::vector<uint32_t> coeffs(f.begin(), f.end());
      return std::make_shared<FqField>(p, coeffs);
    }
  }
}

FieldPtr make_field_from_descriptor(uint64_t p, const std::vector<uint32_t>& min_poly) {
  return std::make_shared<FqField>(p, min_poly);
}

FieldEmbedding::FieldEmbedding(FieldPtr small, FieldPtr big)
    : small_(std::move(small)), big_(std::move(big)) {
  require(small_->p() == big_->p(), "embedding requires equal characteristic");
  require(big_->k() % small_->k() == 0, "no embedding: small degree must divide big degree");
  // Find the first root of small's minimal polynomial in big.
  const FqField& B = *big_;
  for (uint64_t idx = 0; idx < B.order(); ++idx) {
    Fq cand = B.element_by_index(idx);
    Fq acc = B.zero();
    Fq power = B.one();
    for (uint32_t i = 0; i <= small_->k(); ++i) {
      Fq coeff = B.from_int(static_cast<int64_t>(small_->min_poly()[i]));
      acc = B.add(acc, B.mul(coeff, power));
      power = B.mul(power, cand);
    }
    if (B.is_zero(acc)) {
      image_of_x_ = cand;
      return;
    }
  }
  throw InternalError("min_poly has no root in the extension field");
}

Fq FieldEmbedding::operator()(const Fq& a) const {
  small_->check_element(a);
  const FqField& B = *big_;
  Fq acc = B.zero();
  Fq power = B.one();
  for (uint32_t i = 0; i < small_->k(); ++i) {
    acc = B.add(acc, B.mul(B.from_int(static_cast<int64_t>(a.c[i])), power));
    power = B.mul(power, image_of_x_);
  }
  return acc;
}

}  // namespace hecke
