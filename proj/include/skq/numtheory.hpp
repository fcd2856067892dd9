#pragma once

// Integer machinery behind the coprime factorization W(N1·N2) = W(N1) ⊗ W(N2).

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace skq {

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Count of 1 <= k <= n coprime to n, by trial factorization.
std::int64_t euler_phi(std::int64_t n);

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m);

/// a^{φ(m)−1} mod m. Throws NotCoprime when gcd(a, m) != 1.
std::int64_t mod_inverse_euler(std::int64_t a, std::int64_t m);
/// Extended Euclid; same contract as mod_inverse_euler.
std::int64_t mod_inverse_eea(std::int64_t a, std::int64_t m);

class CoprimePair {
 public:
  /// Throws NotCoprime unless gcd(n1, n2) == 1, std::invalid_argument
  /// unless both are positive.
  CoprimePair(std::int64_t n1, std::int64_t n2);

  std::int64_t n1() const noexcept { return n1_; }
  std::int64_t n2() const noexcept { return n2_; }
  std::int64_t product() const noexcept { return n1_ * n2_; }

 private:
  std::int64_t n1_;
  std::int64_t n2_;
};

/// r1 = n2^{-1} mod n1, r2 = n1^{-1} mod n2, so r1·n2 + r2·n1 ≡ 1 (mod n1·n2).
struct ResiduePair {
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;

  friend bool operator==(const ResiduePair&, const ResiduePair&) = default;
};

ResiduePair residues(const CoprimePair& p);

/// Every (r1, r2) in Z_n1 × Z_n2 with r1·n2 + r2·n1 ≡ 1 (mod n1·n2), by
/// exhaustive search.
std::vector<ResiduePair> residue_solutions(const CoprimePair& p);

/// Sign convention of the composite position index map.
///   PaperTables: jα = (−j) mod Nα, the states V̂^j|u0⟩ with V̂ = V̂⊗V̂.
///   PlaneWave:   jα = (+j) mod Nα, the states (V̂ᵗ)^j|u0⟩; the composite
///                plane-wave overlap then carries e^{+2πi·jk/N}.
enum class Orientation { PaperTables, PlaneWave };

std::string_view to_string(Orientation o);
/// Accepts "paper-tables" and "plane-wave".
Orientation parse_orientation(std::string_view text);

std::pair<std::int64_t, std::int64_t> crt_split(std::int64_t j,
                                                const CoprimePair& p,
                                                Orientation orientation);
std::int64_t crt_join(std::int64_t j1, std::int64_t j2, const CoprimePair& p,
                      Orientation orientation);

}  // namespace skq
