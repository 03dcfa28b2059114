#include <doctest.h>

#include "mft/triples.hpp"

using namespace mft;

namespace {

double dist(const CVec& a, const CVec& b) { return max_abs_diff(a, b); }

std::vector<int> admissible_nu0(int q) {
  Extension e = quadratic_extension(Field::build(q, 1));
  std::vector<int> out;
  for (int k = 0; k < q * q - 1; ++k)
    if (is_indecomposable(e, k)) out.push_back(k);
  return out;
}

CVec values(const GL2& G, const std::function<cd(int)>& f) {
  CVec v(G.order());
  for (int g = 0; g < G.order(); ++g) v[g] = f(g);
  return v;
}

// Best match among the engine's spherical functions.
double nearest(const std::vector<Spherical>& S, const CVec& phi) {
  double best = 1e300;
  for (auto& s : S) best = std::min(best, dist(s.values, phi));
  return best;
}

}  // namespace

TEST_CASE("irreducible labels") {
  auto l = parse_label("parabolic:0,2");
  CHECK(l.kind == IrrepLabel::Parabolic);
  CHECK(l.str() == "parabolic:0,2");
  CHECK(l.dim(5) == 6);
  CHECK(parse_label("cuspidal:3").dim(5) == 4);
  CHECK(parse_label("parabolic1:1").dim(5) == 5);
  CHECK_THROWS_AS(parse_label("bogus:1"), UsageError);
  for (int q : {3, 5}) {
    auto all = gl2_irreps(quadratic_extension(Field::build(q, 1)));
    int n = int(all.size()), sq = 0;
    for (auto& x : all) sq += x.dim(q) * x.dim(q);
    CHECK(n == q * q - 1);
    CHECK(sq == q * (q - 1) * (q - 1) * (q + 1));
  }
}

TEST_CASE("irreducible characters are orthonormal and match realizations") {
  Triple1 T = make_triple1(3, 1);
  auto all = gl2_irreps(T.e);
  auto W = whole(*T.G);
  std::vector<CVec> ch;
  for (auto& l : all) ch.push_back(irrep_character(*T.G, T.e, l, W));
  for (std::size_t i = 0; i < ch.size(); ++i) {
    for (std::size_t j = 0; j < ch.size(); ++j) CHECK(multiplicity(ch[i], ch[j]) == (i == j ? 1 : 0));
    CHECK(dist(character(irrep_rep(*T.G, T.e, all[i])), ch[i]) < 1e-9);
  }
}

TEST_CASE("triple 1: decomposition") {
  CHECK_THROWS_AS(make_triple1(3, 0), UsageError);
  CHECK_THROWS_AS(make_triple1(3, 4), UsageError);
  for (int q : {3, 5}) {
    for (int k : admissible_nu0(q)) {
      auto T = make_triple1(q, k);
      auto r = triple1_analyze(T);
      CAPTURE(q);
      CAPTURE(k);
      CHECK(r.ok());
      CHECK(r.dim_ind == q * (q - 1));
      for (auto& c : r.constituents) {
        CHECK(c.mult == 1);
        // nu0 itself never occurs among the listed cuspidals.
        auto l = parse_label(c.label);
        if (l.kind == IrrepLabel::Cuspidal) CHECK(l.k1 != k);
      }
    }
  }
}

TEST_CASE("triple 1: parabolic closed forms") {
  for (int q : {3, 5}) {
    for (int k : admissible_nu0(q)) {
      auto T = make_triple1(q, k);
      auto S = spherical_set(hecke_basis(T.t));
      auto psi = psi_of(T.t);
      for (auto& c : triple1_analyze(T).constituents) {
        auto l = parse_label(c.label);
        if (l.kind == IrrepLabel::Cuspidal) continue;
        auto phi = triple1_spherical_parabolic(T, l);
        auto ref = spherical_from_irrep(T.t, irrep_rep(*T.G, T.e, l)).values;
        CAPTURE(c.label);
        CHECK(dist(phi, ref) < 1e-9);
        CHECK(nearest(S, phi) < 1e-8);
        CHECK(std::abs(phi[T.G->identity()] - 1.0) < 1e-12);
        CHECK(functional_equation(T.t, psi, phi).max_dev < 1e-8);
        if (l.kind == IrrepLabel::Parabolic) {
          IrrepLabel sw = l;
          std::swap(sw.k1, sw.k2);
          CHECK(dist(triple1_spherical_parabolic(T, sw), phi) < 1e-9);
        }
        // On C the value is conj nu0.
        for (int g : T.C->elems) {
          const auto& m = T.G->mat(g);
          CHECK(std::abs(phi[g] - std::conj(T.nu0.at(T.e.make(m[0], m[2])))) < 1e-10);
        }
      }
      CHECK_THROWS_AS(triple1_spherical_parabolic(T, parse_label("cuspidal:1")), UsageError);
    }
  }
}

TEST_CASE("triple 1: the vector F_nu") {
  auto T = make_triple1(3, 1);
  const GL2& G = *T.G;
  auto B = standard_subgroups(G).B;
  MultChar p1(T.e.base, 0), p2(T.e.base, 1);
  auto F = triple1_F_nu(T, p1, p2);
  CHECK(std::abs(F[G.identity()] - 1.0) < 1e-12);
  double n2 = 0;
  for (auto& x : F) n2 += std::norm(x);
  CHECK(std::abs(n2 / B.size() - (T.q + 1)) < 1e-9);
  double dev = 0;
  for (int c : T.C->elems) {
    const auto& m = G.mat(c);
    cd nc = std::conj(T.nu0.at(T.e.make(m[0], m[2])));
    for (int g = 0; g < G.order(); ++g)
      for (int b : B.elems) dev = std::max(dev, std::abs(F[G.mul(G.mul(c, g), b)] - nc * F[g] * F[b]));
  }
  CHECK(dev < 1e-10);
}

TEST_CASE("triple 1: F0 and the cuspidal machinery") {
  for (int q : {3, 5}) {
    for (int k : admissible_nu0(q)) {
      auto T = make_triple1(q, k);
      auto S = spherical_set(hecke_basis(T.t));
      std::vector<Mat> F0s;
      for (auto& c : triple1_analyze(T).constituents) {
        auto l = parse_label(c.label);
        if (l.kind != IrrepLabel::Cuspidal) continue;
        auto M = triple1_cuspidal(T, l.k1);
        CAPTURE(c.label);
        CHECK(M.trace_dev < 1e-10);
        CHECK(M.idempotence_dev < 1e-10);
        CHECK(M.hermitian_dev < 1e-10);
        CHECK(M.projection_dev < 1e-10);
        CHECK(M.rank2 < 1e-8);
        CHECK(std::abs(M.phi[T.G->identity()] - 1.0) < 1e-10);
        Rep rho = cuspidal(*T.G, M.nu);
        auto ref = spherical_from_irrep(T.t, rho).values;
        CHECK(dist(M.phi, ref) < 1e-9);
        CHECK(nearest(S, M.phi) < 1e-8);
        // The choice of unit vector in the range does not matter.
        auto a = matrix_coefficient(rho, range_vector(M.E, 0.0));
        auto b = matrix_coefficient(rho, range_vector(M.E, 1.3));
        CHECK(dist(a, b) < 1e-10);
        CHECK(dist(a, M.phi) < 1e-9);
        F0s.push_back(M.F0);
      }
      // Distinct cuspidals give orthogonal projections.
      for (std::size_t i = 0; i < F0s.size(); ++i)
        for (std::size_t j = i + 1; j < F0s.size(); ++j) CHECK((F0s[i] * F0s[j]).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("triple 1: E vanishes when nu0 is nu or bar nu") {
  auto T = make_triple1(5, 1);
  for (int k : {1, bar_index(T.e, 1)}) {
    MultChar nu(T.e.ext, k);
    Mat E = projection_E(*T.G, T.e, T.nu0, cuspidal(*T.G, nu));
    CHECK(E.cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(triple1_cuspidal(T, k), UsageError);
  }
}

TEST_CASE("triple 2: setup and decomposition") {
  CHECK_THROWS_AS(make_triple2(5, 1), UsageError);
  CHECK_THROWS_AS(make_triple2(3, 0), UsageError);
  CHECK_THROWS_AS(make_triple2(3, 2), UsageError);  // nu# a square
  auto T = make_triple2(3, 1);
  CHECK(T.G->order() == 5760);
  CHECK(T.G1->size() == 48);
  CHECK(T.rho_nu.dim == 2);
  auto r = triple2_analyze(T);
  CHECK(r.ok());
  CHECK(r.dim_ind == 240);
  CHECK(r.dim_sum == 240);
  int npar = 0, ncusp = 0;
  for (auto& c : r.constituents) (parse_label(c.label).kind == IrrepLabel::Parabolic ? npar : ncusp)++;
  CHECK(npar == 8);
  CHECK(ncusp == 20);
  auto H = hecke_basis(T.t);
  CHECK(H.commutative);
  CHECK(H.dim() == int(r.constituents.size()));
}

TEST_CASE("triple 2: closed forms") {
  auto T = make_triple2(3, 1);
  const GL2& G = *T.G;
  auto r = triple2_analyze(T);
  auto S = spherical_set(hecke_basis(T.t));
  Mat Q = triple2_Q1(T);
  CHECK((Q * Q - Q).cwiseAbs().maxCoeff() < 1e-12);
  int nonzero = 0;
  for (auto& c : r.constituents) {
    auto l = parse_label(c.label);
    CAPTURE(c.label);
    auto ref = spherical_from_irrep(T.t, triple2_rep(T, c.label)).values;
    if (l.kind == IrrepLabel::Parabolic) {
      auto P = triple2_parabolic(T, l.k1, l.k2);
      auto phi = values(G, [&](int g) { return P.at(g); });
      CHECK(dist(phi, ref) < 1e-9);
      CHECK(nearest(S, phi) < 1e-8);
      auto P2 = triple2_parabolic(T, l.k2, l.k1);
      CHECK(dist(values(G, [&](int g) { return P2.at(g); }), phi) < 1e-9);
      continue;
    }
    auto C = triple2_cuspidal(T, l.k1);
    auto phi = values(G, [&](int g) { return C.at(g); });
    CHECK(dist(phi, ref) < 1e-9);
    CHECK(nearest(S, phi) < 1e-8);
    CHECK((C.F1 - C.F1.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::JacobiSVD<Mat> svd(C.F1);
    CHECK(svd.singularValues()(1) < 1e-6);
    Rep rm = cuspidal(G, T.G1, T.e2, T.chi2, C.mu);
    Mat P = triple2_P(T, rm);
    CHECK((P * P - P).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((P * Q - Q * P).cwiseAbs().maxCoeff() < 1e-10);
    Mat P1 = P * Q;
    double dev = 0;
    std::vector<bool> slot(P.rows(), false);
    for (int th = 0; th < T.q; ++th) slot[t2_slot(T, th)] = true;
    for (int s = 0; s < T.q; ++s)
      for (int t = 0; t < T.q; ++t) dev = std::max(dev, std::abs(P1(t2_slot(T, s), t2_slot(T, t)) - C.F1(t, s)));
    for (int i = 0; i < P.rows(); ++i)
      for (int j = 0; j < P.cols(); ++j)
        if (!slot[i] || !slot[j]) dev = std::max(dev, std::abs(P1(i, j)));
    CHECK(dev < 1e-10);
    Mat La = triple2_Ltilde_average(T, rm), Lc = triple2_Ltilde_closed(T, C);
    CHECK((La - Lc).cwiseAbs().maxCoeff() < 1e-10);
    // phi(g) = <rho_mu(g) L delta_1, L delta_1> / |L delta_1|^2 whenever the average is nonzero.
    Vec w = La.col(0);
    double n2 = w.squaredNorm();
    if (n2 < 1e-12) {
      CHECK(La.cwiseAbs().maxCoeff() < 1e-10);
      continue;
    }
    ++nonzero;
    Rep full = triple2_rep(T, c.label);
    for (int g = 0; g < G.order(); g += 7) CHECK(std::abs((full(g) * w).dot(w) / n2 - phi[g]) < 1e-9);
  }
  CHECK(nonzero > 0);
}

TEST_CASE("Gelfand-Graev") {
  for (int q : {3, 5}) {
    auto r = gelfand_graev_verify(q);
    CAPTURE(q);
    CHECK(r.mf);
    CHECK(r.dim == r.expected_dim);
    CHECK(r.symmetric);
    CHECK(r.S0_is_Z_wD);
    CHECK(r.off_support < 1e-12);
  }
  CHECK_THROWS_AS(gelfand_graev_verify(3, 0), UsageError);
}

TEST_CASE("special cases") {
  auto s = special_cases(3);
  CHECK(s.ricci_pattern);
  CHECK(s.ricci_engine_noncommutative);
  REQUIRE(s.gow_checked);
  CHECK(s.gow_commutative);
  CHECK(s.gow_dim == 16);
  CHECK(s.gow_trivial_mf);
  CHECK(s.ind_onedim_cuspidal_mf);
  CHECK(s.max_mult_parabolic1 == 2);
  CHECK(s.max_mult_parabolic == 2);
  // Ind chi^1_1 has multiplicity two exactly on chi_{xi1,xi2} with xi1# = xi2# = 1.
  Extension e1 = g2_data(GL2(Field::build(3, 2))).e;
  for (auto& c : s.ind_parabolic1) {
    auto l = parse_label(c.label);
    bool both = l.kind == IrrepLabel::Parabolic && sharp_index(e1, l.k1) == 0 && sharp_index(e1, l.k2) == 0;
    CAPTURE(c.label);
    CHECK(c.mult == (both ? 2 : 1));
  }
  auto s5 = special_cases(5, false);
  CHECK(s5.ricci_pattern);
  CHECK_FALSE(s5.gow_checked);
}
