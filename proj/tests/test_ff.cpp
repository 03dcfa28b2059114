#include <doctest.h>

#include "mft/ff.hpp"

using namespace mft;

namespace {

int brute_order(const Field& F, int x) {
  int k = 1, y = x;
  while (y != 1) {
    y = F.mul(y, x);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("prime field F_3") {
  auto F = Field::build(3, 1);
  CHECK(F->q() == 3);
  CHECK(F->gen() == 2);
  CHECK(brute_order(*F, 1) == 1);
  CHECK(brute_order(*F, 2) == 2);
  CHECK(F->mul(2, 2) == 1);
  CHECK(F->add(2, 2) == 1);
}

TEST_CASE("rejects bad parameters") {
  CHECK_THROWS_AS(Field::build(2, 1), UsageError);
  CHECK_THROWS_AS(Field::build(9, 1), UsageError);
  CHECK_THROWS_AS(Field::build(3, 3), UsageError);
  CHECK_THROWS_AS(Field::build(101, 4), UsageError);
}

TEST_CASE("generator is the smallest element of full order") {
  for (auto [p, d] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 4}}) {
    auto F = Field::build(p, d);
    CHECK(brute_order(*F, F->gen()) == F->q() - 1);
    for (int c = 1; c < F->gen(); ++c) CHECK(brute_order(*F, c) < F->q() - 1);
  }
  CHECK(brute_order(*Field::build(3, 2), Field::build(3, 2)->gen()) == 8);
}

TEST_CASE("field axioms exhaustively for q <= 81") {
  for (auto [p, d] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 4}}) {
    auto F = Field::build(p, d);
    const int q = F->q();
    CAPTURE(q);
    bool ok = true;
    for (int x = 0; x < q && ok; ++x) {
      ok = ok && F->add(x, 0) == x && F->mul(x, 1) == x && F->add(x, F->neg(x)) == 0;
      if (x) ok = ok && F->mul(x, F->inv(x)) == 1 && F->exp(F->log(x)) == x;
      for (int y = 0; y < q && ok; ++y) {
        ok = ok && F->add(x, y) == F->add(y, x) && F->mul(x, y) == F->mul(y, x);
        for (int z = 0; z < q && ok; ++z) {
          ok = ok && F->add(F->add(x, y), z) == F->add(x, F->add(y, z));
          ok = ok && F->mul(F->mul(x, y), z) == F->mul(x, F->mul(y, z));
          ok = ok && F->mul(x, F->add(y, z)) == F->add(F->mul(x, y), F->mul(x, z));
        }
      }
    }
    CHECK(ok);
    for (int k = 0; k < q - 1; ++k) CHECK(F->log(F->exp(k)) == k);
  }
}

TEST_CASE("field axioms sampled for q = 625") {
  auto F = Field::build(5, 4);
  unsigned s = 12345;
  auto next = [&] { return int((s = s * 1103515245u + 12345u) >> 8) % 625; };
  for (int t = 0; t < 20000; ++t) {
    int x = next(), y = next(), z = next();
    REQUIRE(F->mul(x, F->add(y, z)) == F->add(F->mul(x, y), F->mul(x, z)));
    REQUIRE(F->mul(F->mul(x, y), z) == F->mul(x, F->mul(y, z)));
  }
}

TEST_CASE("quadratic extension") {
  for (auto [p, d] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    auto B = Field::build(p, d);
    Extension e = quadratic_extension(B);
    const Field& X = *e.ext;
    CHECK(X.mul(e.i_elem, e.i_elem) == e.embed(B->gen()));
    CHECK(e.conj(e.i_elem) == X.neg(e.i_elem));
    int fixed = 0;
    for (int z = 0; z < X.q(); ++z) {
      CHECK(e.conj(e.conj(z)) == z);
      CHECK(e.conj(z) == X.pow(z, B->q()));
      if (e.conj(z) == z) {
        ++fixed;
        CHECK(e.in_base(z));
      }
      CHECK(e.in_base(e.norm(z)));
      CHECK(e.in_base(e.trace(z)));
      int a = e.re(z), b = e.im(z);
      CHECK(e.norm(z) == B->minus(B->mul(a, a), B->mul(B->gen(), B->mul(b, b))));
      CHECK(e.trace(z) == B->add(a, a));
      for (int w = 0; w < X.q(); w += 3) {
        CHECK(e.conj(X.mul(z, w)) == X.mul(e.conj(z), e.conj(w)));
        CHECK(e.conj(X.add(z, w)) == X.add(e.conj(z), e.conj(w)));
      }
    }
    CHECK(fixed == B->q());
  }
}

TEST_CASE("norm map is onto with fibers of size q+1") {
  for (auto [p, d] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    Extension e = quadratic_extension(Field::build(p, d));
    std::vector<int> cnt(e.base->q(), 0);
    for (int z = 1; z < e.ext->q(); ++z) cnt[e.norm(z)]++;
    CHECK(cnt[0] == 0);
    for (int x = 1; x < e.base->q(); ++x) CHECK(cnt[x] == e.base->q() + 1);
  }
}

TEST_CASE("multiplicative characters") {
  auto F = Field::build(3, 2);
  MultChar nu(F, 1);
  CHECK(std::abs(nu(F->exp(4)) - cd(-1, 0)) < 1e-12);
  CHECK_THROWS(nu(0));
  MultChar triv(F, 0);
  for (int x = 1; x < 9; ++x) {
    CHECK(std::abs(triv(x) - 1.0) < 1e-15);
    CHECK(std::abs(nu(x) * nu(F->inv(x)) - 1.0) < 1e-12);
    for (int y = 1; y < 9; ++y) CHECK(std::abs(nu(F->mul(x, y)) - nu(x) * nu(y)) < 1e-12);
  }
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l) {
      MultChar a(F, k), b(F, l);
      cd s = 0;
      for (int x = 1; x < 9; ++x) s += a(x) * std::conj(b(x));
      CHECK(std::abs(s / 8.0 - (k == l ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("additive characters") {
  for (auto [p, d] : {std::pair{3, 1}, {5, 1}, {3, 2}}) {
    auto F = Field::build(p, d);
    for (int a = 0; a < F->q(); ++a) {
      AddChar chi(F, a);
      CHECK(std::abs(chi(0) - 1.0) < 1e-15);
      cd s = 0;
      for (int x = 0; x < F->q(); ++x) {
        s += chi(x);
        for (int y = 0; y < F->q(); ++y) CHECK(std::abs(chi(F->add(x, y)) - chi(x) * chi(y)) < 1e-12);
      }
      CHECK(std::abs(s) < (a ? 1e-10 : 1e9));
      if (a == 0) CHECK(std::abs(s - double(F->q())) < 1e-10);
    }
  }
}

TEST_CASE("lifted additive character") {
  for (int p : {3, 5, 7}) {
    auto B = Field::build(p, 1);
    Extension e = quadratic_extension(B);
    AddChar chi(B, 1);
    AddChar lift = chi.lift(e);
    AddChar direct(e.ext, lift.a());
    for (int z = 0; z < e.ext->q(); ++z) {
      CHECK(std::abs(lift(z) - chi(e.re(z))) < 1e-15);
      CHECK(std::abs(lift(z) - direct(z)) < 1e-12);
    }
    for (int y = 0; y < p; ++y) CHECK(std::abs(lift(e.make(0, y)) - 1.0) < 1e-15);
  }
}

TEST_CASE("character predicates") {
  Extension e = quadratic_extension(Field::build(3, 1));
  int count = 0;
  for (int k = 0; k < 8; ++k) {
    MultChar nu(e.ext, k);
    auto cp = char_predicates(e, nu);
    for (int w = 1; w < 9; ++w) CHECK(std::abs(cp.bar(w) - nu(e.conj(w))) < 1e-12);
    for (int x = 1; x < 3; ++x) CHECK(std::abs(cp.sharp(x) - nu(e.embed(x))) < 1e-12);
    bool differs = false;
    for (int w = 1; w < 9; ++w) differs = differs || std::abs(nu(w) - nu(e.conj(w))) > 1e-9;
    CHECK(cp.indecomposable == differs);
    if (std::abs(nu(e.i_elem) - nu(e.ext->neg(e.i_elem))) > 1e-9) CHECK(cp.indecomposable);
    count += cp.indecomposable;
  }
  CHECK(count == 6);
  CHECK_FALSE(char_predicates(e, MultChar(e.ext, 0)).indecomposable);
  // sharp on the F_9 / F_81 level as well
  Extension e2 = quadratic_extension(Field::build(3, 2));
  for (int k = 0; k < 80; k += 7) {
    MultChar mu(e2.ext, k);
    auto cp = char_predicates(e2, mu);
    for (int x = 1; x < 9; ++x) CHECK(std::abs(cp.sharp(x) - mu(e2.embed(x))) < 1e-12);
  }
}
