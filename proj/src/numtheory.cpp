#include "skq/numtheory.hpp"

#include <stdexcept>
#include <string>

#include "skq/errors.hpp"

namespace skq {

__extension__ using wide_int = __int128;
namespace {

std::int64_t reduce(std::int64_t value, std::int64_t m) {
  const std::int64_t r = value % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<wide_int>(a) * b % m);
}

void require_modulus(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("modulus must be >= 1");
}

void require_coprime(std::int64_t a, std::int64_t m) {
  const std::int64_t g = gcd(reduce(a, m), m);
  if (g != 1) throw NotCoprime(a, m, g);
}

}  // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be >= 1");
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
  require_modulus(m);
  if (exp < 0) throw std::invalid_argument("mod_pow: negative exponent");
  std::int64_t result = 1 % m;
  base = reduce(base, m);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::int64_t mod_inverse_euler(std::int64_t a, std::int64_t m) {
  require_modulus(m);
  require_coprime(a, m);
  return mod_pow(a, euler_phi(m) - 1, m);
}

std::int64_t mod_inverse_eea(std::int64_t a, std::int64_t m) {
  require_modulus(m);
  require_coprime(a, m);
  // Invariant: old_r ≡ old_s·a (mod m).
  std::int64_t old_r = reduce(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return reduce(old_s, m);
}

CoprimePair::CoprimePair(std::int64_t n1, std::int64_t n2) : n1_(n1), n2_(n2) {
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("CoprimePair: factors must be positive");
  }
  const std::int64_t g = gcd(n1, n2);
  if (g != 1) throw NotCoprime(n1, n2, g);
}

ResiduePair residues(const CoprimePair& p) {
  return {mod_inverse_euler(p.n2(), p.n1()), mod_inverse_euler(p.n1(), p.n2())};
}

std::vector<ResiduePair> residue_solutions(const CoprimePair& p) {
  const std::int64_t n = p.product();
  std::vector<ResiduePair> found;
  for (std::int64_t r1 = 0; r1 < p.n1(); ++r1) {
    for (std::int64_t r2 = 0; r2 < p.n2(); ++r2) {
      if (reduce(r1 * p.n2() + r2 * p.n1(), n) == 1 % n) {
        found.push_back({r1, r2});
      }
    }
  }
  return found;
}

std::string_view to_string(Orientation o) {
  return o == Orientation::PaperTables ? "paper-tables" : "plane-wave";
}

Orientation parse_orientation(std::string_view text) {
  if (text == "paper-tables") return Orientation::PaperTables;
  if (text == "plane-wave") return Orientation::PlaneWave;
  throw std::invalid_argument("unknown orientation '" + std::string(text) +
                              "' (expected paper-tables or plane-wave)");
}

std::pair<std::int64_t, std::int64_t> crt_split(std::int64_t j,
                                                const CoprimePair& p,
                                                Orientation orientation) {
  const std::int64_t n = p.product();
  if (j < 0 || j >= n) {
    throw IndexOutOfRange("crt_split: index " + std::to_string(j) +
                          " outside Z_" + std::to_string(n));
  }
  const std::int64_t s = orientation == Orientation::PaperTables ? -j : j;
  return {reduce(s, p.n1()), reduce(s, p.n2())};
}

std::int64_t crt_join(std::int64_t j1, std::int64_t j2, const CoprimePair& p,
                      Orientation orientation) {
  if (j1 < 0 || j1 >= p.n1() || j2 < 0 || j2 >= p.n2()) {
    throw IndexOutOfRange("crt_join: (" + std::to_string(j1) + "," +
                          std::to_string(j2) + ") outside Z_" +
                          std::to_string(p.n1()) + " x Z_" +
                          std::to_string(p.n2()));
  }
  const std::int64_t n = p.product();
  const ResiduePair r = residues(p);
  const std::int64_t j =
      reduce(mul_mod(j1, r.r1 * p.n2(), n) + mul_mod(j2, r.r2 * p.n1(), n), n);
  return orientation == Orientation::PaperTables ? reduce(-j, n) : j;
}

}  // namespace skq
