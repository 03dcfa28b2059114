#include <doctest.h>

#include <random>

#include "mft/normal.hpp"

using namespace mft;

namespace {

NormalTriple char_triple(std::shared_ptr<TableGroup> G, std::vector<int> N, std::function<cd(int)> chi,
                         std::string name) {
  auto Np = share(make_subgroup(*G, std::move(N), "N"));
  auto th = character_rep(*G, Np, chi, "theta");
  return make_normal_triple(G, Np, th, {}, std::move(name));
}

NormalTriple d8_faithful() {
  return char_triple(dihedral_group(4), {0, 1, 2, 3}, [](int g) { return unit_root(g % 4, 4); }, "d8");
}

NormalTriple q8_center() {
  return char_triple(quaternion_group(), {0, 4}, [](int g) { return g == 0 ? cd(1) : cd(-1); }, "q8");
}

// S3 x C2 with N = S3 and theta the two-dimensional irreducible of S3.
NormalTriple s3c2_two_dim() {
  auto D3 = dihedral_group(3);
  auto C2 = cyclic_group(2);
  std::shared_ptr<TableGroup> G = direct_product(*D3, *C2);
  auto N = share(make_subgroup(*G, {0, 1, 2, 3, 4, 5}, "S3"));
  Rep th{G.get(), N, 2, "std", {}};
  for (int x = 0; x < 6; ++x) {
    int a = x % 3, b = x / 3;
    double ang = 2 * kPi * a / 3;
    Mat R(2, 2);
    R << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
    Mat S(2, 2);
    S << 1, 0, 0, -1;
    th.mats.push_back(b ? Mat(R * S) : R);
  }
  return make_normal_triple(G, N, th, {}, "s3xc2");
}

CVec random_fn(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  CVec f(n);
  for (auto& x : f) x = cd(N(rng), N(rng));
  return f;
}

std::vector<Mat> op_star(const Group& G, const std::vector<Mat>& F) {
  std::vector<Mat> out(F.size());
  for (int g = 0; g < G.order(); ++g) out[g] = F[G.inv(g)].adjoint();
  return out;
}

double op_dist(const std::vector<Mat>& A, const std::vector<Mat>& B) {
  double m = 0;
  for (std::size_t i = 0; i < A.size(); ++i) m = std::max(m, (A[i] - B[i]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

TEST_CASE("fixture groups") {
  CHECK(dihedral_group(4)->order() == 8);
  CHECK(quaternion_group()->order() == 8);
  auto Q = quaternion_group();
  // i^2 = j^2 = k^2 = ijk = -1
  CHECK(Q->mul(1, 1) == 4);
  CHECK(Q->mul(2, 2) == 4);
  CHECK(Q->mul(Q->mul(1, 2), 3) == 4);
  auto D = dihedral_group(4);
  // s r s = r^-1
  CHECK(D->mul(D->mul(4, 1), 4) == 3);
  CHECK(direct_product(*dihedral_group(3), *cyclic_group(2))->order() == 12);
}

TEST_CASE("normal triple validation") {
  auto D = dihedral_group(4);
  CHECK_THROWS_AS(char_triple(D, {0, 4}, [](int g) { return g == 0 ? cd(1) : cd(-1); }, "bad"), UsageError);
  auto Np = share(make_subgroup(*D, {0, 1, 2, 3}, "N"));
  // reducible theta
  Rep r{D.get(), Np, 2, "red", {}};
  for (int i = 0; i < 4; ++i) r.mats.push_back(Mat::Identity(2, 2));
  CHECK_THROWS_AS(make_normal_triple(D, Np, r), UsageError);
}

TEST_CASE("N = G gives I = G and trivial cocycle") {
  auto D = dihedral_group(4);
  auto t = char_triple(D, {0, 1, 2, 3, 4, 5, 6, 7}, [](int) { return cd(1); }, "whole");
  auto c = inertia_and_cocycle(t);
  CHECK(c.inertia.size() == 8);
  CHECK(c.index() == 1);
  CHECK(std::abs(c.tau(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("dihedral fixture: inertia is N and the triple is multiplicity free") {
  auto t = d8_faithful();
  auto c = inertia_and_cocycle(t);
  // brute force: every reflection conjugates theta to its conjugate
  for (int s = 4; s < 8; ++s)
    for (int a = 0; a < 4; ++a) {
      int conj = t.G->mul(t.G->mul(t.G->inv(s), a), s);
      CHECK(std::abs(t.theta(conj)(0, 0) - std::conj(t.theta(a)(0, 0))) < 1e-12);
    }
  CHECK(c.inertia.elems == std::vector<int>{0, 1, 2, 3});
  auto a = normal_mf_and_spherical(t, c);
  CHECK(a.mf);
  CHECK(a.engine_mf);
  CHECK(a.hecke_dim == 1);
  REQUIRE(a.sphericals.size() == 1);
  CHECK(a.sphericals[0].functional_dev < 1e-9);
}

TEST_CASE("dihedral with a real character on rotations") {
  auto t = char_triple(dihedral_group(4), {0, 1, 2, 3}, [](int g) { return g % 2 ? cd(-1) : cd(1); }, "d8sign");
  auto c = inertia_and_cocycle(t);
  CHECK(c.inertia.size() == 8);
  auto a = normal_mf_and_spherical(t, c);
  CHECK(a.mf);
  CHECK(a.theta_extends);
  CHECK(a.hecke_dim == 2);
  CHECK(a.sphericals.size() == 2);
  for (auto& s : a.sphericals) CHECK(s.functional_dev < 1e-9);
}

TEST_CASE("quaternion fixture: I = G, no extension, not multiplicity free") {
  auto t = q8_center();
  auto c = inertia_and_cocycle(t);
  CHECK(c.inertia.size() == 8);
  CHECK(c.index() == 4);
  CHECK(c.intertwining_residual < 1e-12);
  CHECK(c.cocycle_residual < 1e-12);
  CHECK(c.bi_invariance_residual < 1e-12);
  for (int x = 0; x < 4; ++x) CHECK(std::abs(c.eta(x, c.qinv[x]) - 1.0) < 1e-12);
  // the class of eta is nontrivial: eta is not symmetric
  bool asym = false;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) asym = asym || std::abs(c.eta(x, y) - c.eta(y, x)) > 1e-6;
  CHECK(asym);
  auto a = normal_mf_and_spherical(t, c);
  CHECK(a.quotient_abelian);
  CHECK_FALSE(a.theta_extends);
  CHECK_FALSE(a.restriction_criterion);
  CHECK_FALSE(a.mf);
  CHECK_FALSE(a.engine_mf);
  CHECK(a.hecke_dim == 4);
  CHECK(a.psi_identity_dev < 1e-12);
  CHECK(a.tau_identity_dev < 1e-12);
  CHECK(a.support_dev < 1e-12);
}

TEST_CASE("cocycle convolution algebra on the quaternion fixture") {
  auto t = q8_center();
  auto c = inertia_and_cocycle(t);
  const int m = c.index();
  std::mt19937_64 rng(3);
  CVec delta(m, 0.0);
  delta[0] = 1.0;
  // Direct three-way sums for associativity.
  auto triple_left = [&](const CVec& f1, const CVec& f2, const CVec& f3) {
    CVec out(m, 0.0);
    for (int k = 0; k < m; ++k)
      for (int s = 0; s < m; ++s)
        for (int h = 0; h < m; ++h) {
          int ki = c.qinv[k];
          int x = c.qmul[c.qmul[c.qinv[h]][c.qinv[s]]][k];
          out[k] += f1[x] * f2[h] * f3[s] * c.eta(c.qmul[ki][s], h) * c.eta(ki, s);
        }
    return out;
  };
  for (int rep = 0; rep < 50; ++rep) {
    auto f1 = random_fn(m, rng), f2 = random_fn(m, rng), f3 = random_fn(m, rng);
    auto l = cocycle_convolve(c, cocycle_convolve(c, f1, f2), f3);
    auto r = cocycle_convolve(c, f1, cocycle_convolve(c, f2, f3));
    CHECK(max_abs_diff(l, r) < 1e-9);
    CHECK(max_abs_diff(l, triple_left(f1, f2, f3)) < 1e-9);
    CHECK(max_abs_diff(cocycle_convolve(c, delta, f1), f1) < 1e-12);
    CHECK(max_abs_diff(cocycle_convolve(c, f1, delta), f1) < 1e-12);
    auto a = cocycle_convolve(c, cocycle_involution(c, f1), cocycle_involution(c, f2));
    auto b = cocycle_involution(c, cocycle_convolve(c, f2, f1));
    CHECK(max_abs_diff(a, b) < 1e-9);
  }
  // eta = 1 is the ordinary group algebra
  CocycleData plain = c;
  plain.eta = Mat::Ones(m, m);
  auto f1 = random_fn(m, rng), f2 = random_fn(m, rng);
  auto conv = cocycle_convolve(plain, f1, f2);
  for (int k = 0; k < m; ++k) {
    cd s = 0;
    for (int h = 0; h < m; ++h) s += f1[h] * f2[c.qmul[c.qinv[h]][k]];
    CHECK(std::abs(conv[k] - s) < 1e-10);
  }
  CocycleData bad = c;
  bad.eta(1, c.qinv[1]) = -1.0;
  CHECK_THROWS_AS(cocycle_convolve(bad, f1, f2), UsageError);
}

TEST_CASE("Phi is a *-homomorphism and sqrt|N| Phi an isometry") {
  for (auto t : {q8_center(), s3c2_two_dim(), d8_faithful()}) {
    CAPTURE(t.name);
    auto c = inertia_and_cocycle(t);
    const int m = c.index();
    const Group& G = *t.G;
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
      auto f1 = random_fn(m, rng), f2 = random_fn(m, rng);
      auto F1 = phi_map(t, c, f1), F2 = phi_map(t, c, f2);
      CHECK(op_dist(op_convolve(G, F1, F2), phi_map(t, c, cocycle_convolve(c, f1, f2))) < 1e-9);
      CHECK(std::abs(double(t.N->size()) * op_inner(F1, F2) - inner(f1, f2)) < 1e-9);
      CHECK(op_dist(op_star(G, F1), phi_map(t, c, cocycle_involution(c, f1))) < 1e-9);
    }
  }
}

TEST_CASE("two-dimensional theta extends") {
  auto t = s3c2_two_dim();
  auto c = inertia_and_cocycle(t);
  CHECK(c.inertia.size() == 12);
  CHECK(c.intertwining_residual < 1e-9);
  auto a = normal_mf_and_spherical(t, c);
  CHECK(a.theta_extends);
  CHECK(a.mf);
  CHECK(a.hecke_dim == 2);
  CHECK(a.psi_identity_dev < 1e-9);
  CHECK(a.tau_identity_dev < 1e-9);
  // xi is a homomorphism extending theta
  const Group& G = *t.G;
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h) CHECK((a.xi[G.mul(g, h)] - a.xi[g] * a.xi[h]).cwiseAbs().maxCoeff() < 1e-9);
  for (auto& s : a.sphericals) CHECK(s.functional_dev < 1e-9);
}

TEST_CASE("abelian groups are always multiplicity free") {
  auto C = cyclic_group(6);
  for (int k = 0; k < 3; ++k) {
    auto t = char_triple(C, {0, 2, 4}, [k](int g) { return unit_root((g / 2) * k, 3); }, "c6");
    auto c = inertia_and_cocycle(t);
    auto a = normal_mf_and_spherical(t, c);
    CHECK(a.mf);
    CHECK(a.sphericals.size() == 2);
    for (auto& s : a.sphericals) {
      CHECK(std::abs(s.values[0] - 1.0) < 1e-12);
      for (auto x : s.values) CHECK(std::abs(x) <= 1 + 1e-12);
      CHECK(s.functional_dev < 1e-9);
    }
  }
}

TEST_CASE("characters of abelian groups") {
  auto V = direct_product(*cyclic_group(2), *cyclic_group(4));
  auto chars = abelian_characters(V->table(), V->identity());
  CHECK(chars.size() == 8);
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = 0; j < chars.size(); ++j)
      CHECK(std::abs(inner(chars[i], chars[j]) - (i == j ? 8.0 : 0.0)) < 1e-9);
  for (auto x : chars[0]) CHECK(std::abs(x - 1.0) < 1e-12);
  CHECK_THROWS_AS(abelian_characters(quaternion_group()->table(), 0), UsageError);
}

TEST_CASE("JSON loaders") {
  auto D = dihedral_group(4);
  std::string tab = "{\"table\": [";
  for (int x = 0; x < 8; ++x) {
    tab += "[";
    for (int y = 0; y < 8; ++y) tab += std::to_string(D->mul(x, y)) + (y < 7 ? "," : "");
    tab += x < 7 ? "]," : "]";
  }
  tab += "]}";
  auto G = group_from_json(tab);
  CHECK(G->order() == 8);
  auto N = indices_from_json("[0,1,2,3]");
  auto Np = share(make_subgroup(*G, N, "N"));
  auto th = rep_from_json(*G, Np, "{\"values\": [[1,0],[0,1],[-1,0],[0,-1]]}");
  auto t = make_normal_triple(G, Np, th);
  auto c = inertia_and_cocycle(t);
  CHECK(c.inertia.size() == 4);
  CHECK_THROWS_AS(group_from_json("{\"table\": [[0,1],[1,1]]}"), UsageError);
  CHECK_THROWS_AS(rep_from_json(*G, Np, "{\"values\": [1]}"), UsageError);
  CHECK_THROWS_AS(group_from_json("not json"), UsageError);
}
