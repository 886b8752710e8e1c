#include "homlab/fields.hpp"

#include "homlab/errors.hpp"

namespace homlab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return std::uint64_t((unsigned __int128)(a)*b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                          29ull, 31ull, 37ull}) {
    if (n % s == 0) return n == s;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // deterministic witness set for 64-bit inputs
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                          29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_congruent(std::uint64_t start, std::uint64_t m,
                                   std::uint64_t residue) {
  if (m == 0) m = 1;
  std::uint64_t p = start + 1;
  if (m > 1) {
    std::uint64_t r = p % m;
    p += (residue + m - r) % m;
  }
  while (!(p % m == residue % m && is_prime_u64(p))) p += (m > 1 ? m : 1);
  return p;
}

std::uint64_t verification_prime(int k, std::uint64_t order) {
  std::uint64_t p = (std::uint64_t(1) << 30);
  for (int i = 0; i <= k; ++i) p = next_prime_congruent(p, order, order > 1 ? 1 : 0);
  return p;
}

std::uint64_t root_of_unity(const FieldFp& f, std::uint64_t order) {
  if (order == 1) return 1;
  if ((f.p - 1) % order != 0)
    throw InputError("field has no root of unity of the requested order");
  // prime factors of order, by trial division (order is tiny here)
  std::vector<std::uint64_t> factors;
  std::uint64_t n = order;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      factors.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) factors.push_back(n);
  for (std::uint64_t c = 2; c < f.p; ++c) {
    std::uint64_t z = f.pow(c, (f.p - 1) / order);
    bool exact_order = z != 1;
    for (std::uint64_t q : factors)
      if (f.pow(z, order / q) == 1) {
        exact_order = false;
        break;
      }
    if (exact_order) return z;
  }
  throw std::logic_error("no root of unity found");  // unreachable for prime p
}

}  // namespace homlab
