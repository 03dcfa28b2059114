#include <doctest.h>

#include "mft/reps.hpp"

using namespace mft;

namespace {

struct Setup {
  FieldPtr F;
  GL2 G;
  Extension e;
  explicit Setup(int q) : F(Field::build(q, 1)), G(F), e(quadratic_extension(F)) {}
};

}  // namespace

TEST_CASE("dimensions and unitarity of the GL(2) families") {
  for (int q : {3, 5}) {
    Setup s(q);
    MultChar p1(s.F, 1), p0(s.F, 0);
    auto one = onedim(s.G, p1);
    auto pf = parabolic_full(s.G, p0, p1);
    auto pq = parabolic_q(s.G, p1);
    auto cu = cuspidal(s.G, MultChar(s.e.ext, 1));
    CHECK(one.dim == 1);
    CHECK(pf.dim == q + 1);
    CHECK(pq.dim == q);
    CHECK(cu.dim == q - 1);
    for (auto* r : {&one, &pf, &pq, &cu}) {
      auto c = check_rep(*r);
      CAPTURE(r->label);
      CHECK(c.unitarity < 1e-8);
      CHECK(c.homomorphism < 1e-8);
    }
  }
}

TEST_CASE("irreducibility and character values at q=3") {
  Setup s(3);
  auto cc = conjugacy_classes(s.G);
  for (int k = 0; k < 8; ++k) {
    if (!is_indecomposable(s.e, k)) continue;
    auto r = cuspidal(s.G, MultChar(s.e.ext, k));
    auto chi = character(r);
    CHECK(multiplicity(chi, chi) == 1);
    CHECK(class_constancy(s.G, chi, cc) < 1e-9);
    CHECK(std::abs(chi[s.G.identity()] - 2.0) < 1e-12);
    // -nu(z) - nu(zbar) on the nonsplit torus with beta != 0.
    MultChar nu(s.e.ext, k);
    for (int a = 0; a < 3; ++a)
      for (int b = 1; b < 3; ++b) {
        int z = s.e.make(a, b);
        cd expect = -nu(z) - nu(s.e.conj(z));
        CHECK(std::abs(chi[s.G.cartan(a, b)] - expect) < 1e-10);
      }
  }
  MultChar p0(s.F, 0), p1(s.F, 1);
  auto pf = character(parabolic_full(s.G, p0, p1));
  CHECK(multiplicity(pf, pf) == 1);
  auto pq = character(parabolic_q(s.G, p1));
  CHECK(multiplicity(pq, pq) == 1);
  auto red = character(parabolic_full(s.G, p1, p1));
  CHECK(multiplicity(red, red) == 2);
  CHECK(multiplicity(red, pq) == 1);
  CHECK(multiplicity(red, character(onedim(s.G, p1))) == 1);
}

TEST_CASE("cuspidal equivalences") {
  Setup s(3);
  std::vector<CVec> chars(8);
  for (int k = 0; k < 8; ++k)
    if (is_indecomposable(s.e, k)) chars[k] = character(cuspidal(s.G, MultChar(s.e.ext, k)));
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l) {
      if (chars[k].empty() || chars[l].empty()) continue;
      int expect = (l == k || l == bar_index(s.e, k)) ? 1 : 0;
      CHECK(multiplicity(chars[k], chars[l]) == expect);
    }
}

TEST_CASE("cuspidal homomorphism on random pairs at q=5") {
  Setup s(5);
  auto r = cuspidal(s.G, MultChar(s.e.ext, 1));
  unsigned st = 7;
  for (int t = 0; t < 500; ++t) {
    st = st * 1664525u + 1013904223u;
    int a = int(st % unsigned(s.G.order()));
    st = st * 1664525u + 1013904223u;
    int b = int(st % unsigned(s.G.order()));
    REQUIRE((r(a) * r(b) - r(s.G.mul(a, b))).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("restriction multiplicities on C") {
  Setup s(3);
  auto C = share(standard_subgroups(s.G).C);
  for (int k0 = 0; k0 < 8; ++k0) {
    if (!is_indecomposable(s.e, k0)) continue;
    MultChar nu0(s.e.ext, k0);
    auto theta = character_rep(s.G, C, [&](int c) { return nu0(s.e.make(s.G.mat(c)[3], s.G.mat(c)[2])); }, "nu0");
    auto th = character(theta);
    for (int k = 0; k < 2; ++k) {
      auto one = restrict(onedim(s.G, MultChar(s.F, k)), C);
      CHECK(multiplicity(character(one), th) == 0);
    }
    for (int k = 0; k < 8; ++k) {
      if (!is_indecomposable(s.e, k)) continue;
      auto res = restrict(cuspidal(s.G, MultChar(s.e.ext, k)), C);
      bool expect = sharp_index(s.e, k) == sharp_index(s.e, k0) && k != k0 && k != bar_index(s.e, k0);
      CHECK(multiplicity(character(res), th) == int(expect));
    }
  }
}

TEST_CASE("induced representations") {
  Setup s(3);
  auto S = standard_subgroups(s.G);
  auto C = share(S.C);
  auto triv = character_rep(s.G, C, [](int) { return cd(1); }, "1");
  auto ind = induce(s.G, C, triv);
  CHECK(ind.dim == 6);
  // Permutation representation: entries are 0/1 and the character counts fixed cosets.
  for (auto& M : ind.mats)
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) CHECK((std::abs(M(i, j)) < 1e-12 || std::abs(M(i, j) - 1.0) < 1e-12));
  auto chi = character(ind);
  std::vector<char> conj_union(s.G.order(), 0);
  for (int g = 0; g < s.G.order(); ++g)
    for (int c : S.C.elems) conj_union[s.G.conj(g, c)] = 1;
  for (int g = 0; g < s.G.order(); ++g)
    if (!conj_union[g]) CHECK(std::abs(chi[g]) < 1e-12);
  auto c = check_rep(ind);
  CHECK(c.unitarity < 1e-10);
  CHECK(c.homomorphism < 1e-10);
}

TEST_CASE("hom spaces") {
  Setup s(3);
  auto r = cuspidal(s.G, MultChar(s.e.ext, 1));
  auto h = hom_space(r, r);
  REQUIRE(h.size() == 1);
  CHECK(std::abs(hs_inner(h[0], h[0]) - 1.0) < 1e-10);
  auto other = cuspidal(s.G, MultChar(s.e.ext, 2));
  CHECK(hom_space(r, other).empty());
  auto rb = cuspidal(s.G, MultChar(s.e.ext, bar_index(s.e, 1)));
  auto hb = hom_space(r, rb);
  REQUIRE(hb.size() == 1);
  for (int g = 0; g < s.G.order(); ++g) CHECK((rb(g) * hb[0] - hb[0] * r(g)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("matrix-coefficient orthogonality at q=3") {
  Setup s(3);
  std::vector<Rep> irr;
  irr.push_back(cuspidal(s.G, MultChar(s.e.ext, 1)));
  irr.push_back(parabolic_full(s.G, MultChar(s.F, 0), MultChar(s.F, 1)));
  irr.push_back(parabolic_q(s.G, MultChar(s.F, 1)));
  irr.push_back(onedim(s.G, MultChar(s.F, 1)));
  const double n = s.G.order();
  for (std::size_t a = 0; a < irr.size(); ++a)
    for (std::size_t b = 0; b < irr.size(); ++b) {
      double worst = 0;
      for (int i = 0; i < irr[a].dim; ++i)
        for (int j = 0; j < irr[a].dim; ++j)
          for (int k = 0; k < irr[b].dim; ++k)
            for (int l = 0; l < irr[b].dim; ++l) {
              cd sum = 0;
              for (int g = 0; g < s.G.order(); ++g) sum += irr[a](g)(i, j) * std::conj(irr[b](g)(k, l));
              double expect = (a == b && i == k && j == l) ? n / irr[a].dim : 0.0;
              worst = std::max(worst, std::abs(sum - expect));
            }
      CHECK(worst < 1e-7);
    }
}
