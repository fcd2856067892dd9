#include <doctest.h>

#include "skq/errors.hpp"
#include "skq/numtheory.hpp"

using namespace skq;

TEST_SUITE("numtheory") {

TEST_CASE("gcd") {
  CHECK(gcd(6, 0) == 6);
  CHECK(gcd(2, 3) == 1);
  CHECK(gcd(15, 6) == 3);
  CHECK(gcd(0, 0) == 0);
}

TEST_CASE("euler phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(3) == 2);
  CHECK(euler_phi(5) == 4);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(97) == 96);
  // brute-force count
  for (std::int64_t n = 1; n <= 300; ++n) {
    std::int64_t count = 0;
    for (std::int64_t k = 1; k <= n; ++k) count += gcd(k, n) == 1;
    CHECK(euler_phi(n) == count);
  }
}

TEST_CASE("modular inverses of the worked examples") {
  CHECK(mod_inverse_euler(3, 2) == 1);
  CHECK(mod_inverse_euler(2, 3) == 2);
  CHECK(mod_inverse_euler(5, 3) == 2);
  CHECK(mod_inverse_euler(3, 5) == 2);
  CHECK_THROWS_AS(mod_inverse_euler(4, 6), NotCoprime);
  CHECK_THROWS_AS(mod_inverse_eea(4, 6), NotCoprime);
  try {
    mod_inverse_eea(4, 6);
  } catch (const NotCoprime& e) {
    CHECK(e.gcd() == 2);
    CHECK(std::string(e.what()).find("gcd=2") != std::string::npos);
  }
}

TEST_CASE("euler and euclid inverses agree for m up to 3000") {
  std::size_t compared = 0;
  std::size_t bad = 0;
  for (std::int64_t m = 1; m <= 3000; ++m) {
    for (std::int64_t a = 0; a < m; ++a) {
      if (gcd(a, m) != 1) continue;
      const std::int64_t x = mod_inverse_euler(a, m);
      bad += x != mod_inverse_eea(a, m) || (a * x) % m != 1 % m;
      ++compared;
    }
  }
  CHECK(bad == 0);
  CHECK(compared > 10000);
}

TEST_CASE("mod_pow") {
  CHECK(mod_pow(2, 10, 1000) == 24);
  CHECK(mod_pow(7, 0, 5) == 1);
  CHECK(mod_pow(3, 4, 1) == 0);
}

TEST_CASE("coprime pairs") {
  CHECK(CoprimePair(2, 3).product() == 6);
  CHECK_THROWS_AS(CoprimePair(4, 6), NotCoprime);
  CHECK_THROWS_AS(CoprimePair(0, 3), std::invalid_argument);
  CHECK_NOTHROW(CoprimePair(1, 7));
}

TEST_CASE("residues of the worked examples") {
  CHECK(residues(CoprimePair(2, 3)) == ResiduePair{1, 2});
  CHECK(residues(CoprimePair(3, 5)) == ResiduePair{2, 2});
  CHECK(residues(CoprimePair(1, 7)) == ResiduePair{0, 1});
  CHECK(residues(CoprimePair(7, 1)) == ResiduePair{1, 0});
}

TEST_CASE("residue pair is the unique solution for n1*n2 <= 10000") {
  std::size_t pairs = 0;
  std::size_t bad = 0;
  for (std::int64_t n1 = 1; n1 <= 10000; ++n1) {
    for (std::int64_t n2 = 1; n1 * n2 <= 10000; ++n2) {
      if (gcd(n1, n2) != 1) continue;
      const CoprimePair p(n1, n2);
      const ResiduePair r = residues(p);
      const auto all = residue_solutions(p);
      bad += (r.r1 * n2) % n1 != 1 % n1 || (r.r2 * n1) % n2 != 1 % n2 ||
             all.size() != 1 || !(all.front() == r);
      ++pairs;
    }
  }
  CHECK(bad == 0);
  CHECK(pairs > 10000);
}

TEST_CASE("crt split of the worked examples") {
  CHECK(crt_split(1, CoprimePair(2, 3), Orientation::PaperTables) == std::pair<std::int64_t, std::int64_t>{1, 2});
  CHECK(crt_split(2, CoprimePair(3, 5), Orientation::PaperTables) == std::pair<std::int64_t, std::int64_t>{1, 3});
  CHECK(crt_split(1, CoprimePair(2, 3), Orientation::PlaneWave) == std::pair<std::int64_t, std::int64_t>{1, 1});
  CHECK_THROWS_AS(crt_split(6, CoprimePair(2, 3), Orientation::PlaneWave), IndexOutOfRange);
}

TEST_CASE("crt split and join are inverse bijections") {
  for (Orientation o : {Orientation::PaperTables, Orientation::PlaneWave}) {
    const CoprimePair p(14, 15);
    for (std::int64_t j = 0; j < 210; ++j) {
      const auto [a, b] = crt_split(j, p, o);
      CHECK(crt_join(a, b, p, o) == j);
    }
  }
  std::size_t bad = 0;
  for (std::int64_t n1 = 1; n1 <= 2000; ++n1) {
    for (std::int64_t n2 = 1; n1 * n2 <= 2000; ++n2) {
      if (gcd(n1, n2) != 1) continue;
      const CoprimePair p(n1, n2);
      for (Orientation o : {Orientation::PaperTables, Orientation::PlaneWave}) {
        std::vector<bool> seen(static_cast<std::size_t>(n1 * n2), false);
        for (std::int64_t j = 0; j < n1 * n2; ++j) {
          const auto [a, b] = crt_split(j, p, o);
          const auto cell = static_cast<std::size_t>(a * n2 + b);
          bad += seen[cell] || crt_join(a, b, p, o) != j;
          seen[cell] = true;
        }
      }
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("orientation names") {
  CHECK(to_string(Orientation::PaperTables) == "paper-tables");
  CHECK(parse_orientation("plane-wave") == Orientation::PlaneWave);
  CHECK_THROWS_AS(parse_orientation("sideways"), std::invalid_argument);
}

}  // TEST_SUITE
