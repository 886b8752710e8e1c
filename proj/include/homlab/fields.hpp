#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace homlab {

using Rat = mpq_class;

/// Sorted sparse vector (index, value), no explicit zeros, indices strictly
/// increasing.
template <class E>
using SparseVec = std::vector<std::pair<std::uint32_t, E>>;

/// The rationals, as the field object consumed by the elimination kernel.
struct FieldQ {
  using Elem = Rat;

  static Elem zero() { return Rat(0); }
  static Elem one() { return Rat(1); }
  static Elem from_long(long v) { return Rat(v); }
  static bool is_zero(const Elem& a) { return sgn(a) == 0; }
  static Elem neg(const Elem& a) { return -a; }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem inv(const Elem& a) { return Rat(1) / a; }

  // scratch[c] -= coef * v for each (c, v); touched collects newly hit columns.
  static void row_axpy(std::vector<Elem>& scratch, std::vector<char>& hit,
                       std::vector<std::uint32_t>& touched,
                       const SparseVec<Elem>& entries, const Elem& coef) {
    Rat t;
    for (const auto& [c, v] : entries) {
      t = coef * v;
      scratch[c] -= t;
      if (!hit[c]) {
        hit[c] = 1;
        touched.push_back(c);
      }
    }
  }
};

/// Prime field F_p for p < 2^63, element values in [0, p).
struct FieldFp {
  using Elem = std::uint64_t;
  std::uint64_t p = 0;

  explicit FieldFp(std::uint64_t prime = 0) : p(prime) {}

  static Elem zero() { return 0; }
  static Elem one() { return 1; }
  Elem from_long(long v) const {
    long r = v % long(p);
    if (r < 0) r += long(p);
    return Elem(r);
  }
  static bool is_zero(const Elem& a) { return a == 0; }
  Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(const Elem& a, const Elem& b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(const Elem& a, const Elem& b) const {
    return Elem((unsigned __int128)(a)*b % p);
  }
  Elem pow(Elem b, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  Elem inv(const Elem& a) const { return pow(a, p - 2); }

  // Shoup's precomputed-quotient trick: with w = floor(coef * 2^64 / p), the
  // product coef * x mod p costs two plain multiplies.
  Elem shoup_quotient(Elem coef) const {
    return Elem(((unsigned __int128)(coef) << 64) / p);
  }
  Elem mul_shoup(Elem coef, Elem w, Elem x) const {
    Elem q = Elem(((unsigned __int128)(w)*x) >> 64);
    Elem r = coef * x - q * p;  // wraparound arithmetic, r in [0, 2p)
    return r >= p ? r - p : r;
  }

  void row_axpy(std::vector<Elem>& scratch, std::vector<char>& hit,
                std::vector<std::uint32_t>& touched, const SparseVec<Elem>& entries,
                const Elem& coef) const {
    const Elem mc = neg(coef);
    const Elem w = shoup_quotient(mc);
    for (const auto& [c, v] : entries) {
      scratch[c] = add(scratch[c], mul_shoup(mc, w, v));
      if (!hit[c]) {
        hit[c] = 1;
        touched.push_back(c);
      }
    }
  }
};

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Smallest prime > start with p = residue (mod m).  m = 1 means no congruence.
std::uint64_t next_prime_congruent(std::uint64_t start, std::uint64_t m,
                                   std::uint64_t residue);

/// The k-th verification prime: primes > 2^30 congruent to 1 mod order,
/// enumerated in increasing sequence.  Deterministic across runs.
std::uint64_t verification_prime(int k, std::uint64_t order);

/// An element of exact multiplicative order `order` in F_p (requires
/// order | p - 1).
std::uint64_t root_of_unity(const FieldFp& f, std::uint64_t order);

}  // namespace homlab
