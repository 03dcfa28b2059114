#include <doctest.h>

#include "mft/kloosterman.hpp"

using namespace mft;

TEST_CASE("Kloosterman table against the defining sum at q=3") {
  Extension e = quadratic_extension(Field::build(3, 1));
  AddChar chi(e.base, 1);
  MultChar nu(e.ext, 1);
  auto t = kloosterman_table(e, chi, nu);
  for (int x = 1; x < 3; ++x) {
    CHECK(t.fiber_size[x] == 4);
    // Walk all 8 nonzero elements as (a,b) pairs, independently of the table code.
    cd s = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (!a && !b) continue;
        int n = ((a * a - 2 * b * b) % 3 + 3) % 3;  // eta = 2 in F_3
        if (n != x) continue;
        s += unit_root(2 * a, 3) * nu(a + 3 * b);
      }
    CHECK(std::abs(t(x) - s / 3.0) < 1e-12);
  }
}

TEST_CASE("Kloosterman identities") {
  for (auto [p, d] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    Extension e = quadratic_extension(Field::build(p, d));
    for (int a = 1; a < e.base->q(); ++a)
      for (int k = 0; k < e.ext->q() - 1; ++k) {
        if (!is_indecomposable(e, k)) continue;
        auto t = kloosterman_table(e, AddChar(e.base, a), MultChar(e.ext, k));
        auto r = verify_kloosterman_identities(t);
        CAPTURE(p);
        CAPTURE(d);
        CAPTURE(k);
        CHECK(r.max() < 1e-8);
      }
  }
}

TEST_CASE("Kloosterman rejects bad characters") {
  Extension e = quadratic_extension(Field::build(3, 1));
  CHECK_THROWS_AS(kloosterman_table(e, AddChar(e.base, 0), MultChar(e.ext, 1)), UsageError);
  CHECK_THROWS_AS(kloosterman_table(e, AddChar(e.base, 1), MultChar(e.ext, 0)), UsageError);
  CHECK_THROWS_AS(kloosterman_table(e, AddChar(e.base, 1), MultChar(e.ext, 4)), UsageError);
}

TEST_CASE("trace identity on the embedded base") {
  // The right side collapses to 2 nu(z) when z = zbar, but the sum itself is nu(z).
  for (int p : {3, 5, 7}) {
    Extension e = quadratic_extension(Field::build(p, 1));
    auto t = kloosterman_table(e, AddChar(e.base, 1), MultChar(e.ext, 1));
    const Field& B = *e.base;
    for (int z = 1; z < p; ++z) {
      cd s = 0;
      for (int a = 1; a < p; ++a) {
        int ai = B.inv(a);
        s += t.nu(B.neg(a)) * t.chi(B.mul(ai, B.add(z, z))) * t(B.mul(B.mul(ai, ai), B.mul(z, z)));
      }
      cd rhs = t.nu(z) + t.nu(e.conj(z));
      CHECK(std::abs(rhs - 2.0 * t.nu(z)) < 1e-12);
      CHECK(std::abs(s - t.nu(z)) < 1e-10);
    }
    auto r = verify_kloosterman_identities(t);
    CHECK(std::abs(r.literal_base_gap - 1.0) < 1e-10);
  }
}
