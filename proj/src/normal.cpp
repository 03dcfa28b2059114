#include "mft/normal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>

#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace mft {

NormalTriple make_normal_triple(std::shared_ptr<const Group> G, SubgroupPtr N, Rep theta, std::optional<Vec> v,
                                std::string name) {
  if (!G || !N) throw UsageError("normal triple needs a group and a subgroup");
  if (!is_normal(*G, *N)) throw UsageError("N is not normal in G");
  if (theta.dom->elems != N->elems) throw UsageError("theta must be defined on N");
  auto chk = check_rep(theta);
  if (chk.homomorphism > 1e-8 || chk.unitarity > 1e-8) throw UsageError("theta is not a unitary representation");
  auto chi = character(theta);
  if (multiplicity(chi, chi) != 1) throw UsageError("theta is not irreducible");
  NormalTriple t{std::move(G), std::move(N), std::move(theta), Vec(), std::move(name)};
  if (v) {
    if (v->size() != t.theta.dim) throw UsageError("vector dimension does not match theta");
    if (std::abs(v->norm() - 1.0) > 1e-12) throw UsageError("distinguished vector must be a unit vector");
    t.v = *v;
  } else {
    t.v = Vec::Zero(t.theta.dim);
    t.v(0) = 1.0;
  }
  return t;
}

namespace {

// Scales a nonzero multiple of a unitary to a unitary with first nonzero entry real positive.
Mat fix_phase(const Mat& X) {
  const int d = int(X.rows());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (std::abs(X(i, j)) > 1e-9) {
        cd ph = std::conj(X(i, j)) / std::abs(X(i, j));
        return X * ph;
      }
  throw NumericError("zero intertwiner");
}

cd scalar_part(const Mat& M) { return M.trace() / double(M.rows()); }

double scalar_dev(const Mat& M, cd s) { return (M - s * Mat::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff(); }

}  // namespace

CocycleData inertia_and_cocycle(const NormalTriple& t) {
  const Group& G = *t.G;
  const Subgroup& N = *t.N;
  const int nN = N.size(), d = t.theta.dim;
  CocycleData c;

  // Inertia via characters: <^g chi, chi>_N = 1.
  auto chi = character(t.theta);
  std::vector<int> I;
  for (int g = 0; g < G.order(); ++g) {
    int gi = G.inv(g);
    cd s = 0;
    for (int i = 0; i < nN; ++i) s += chi[N.local[G.mul(G.mul(gi, N.elems[i]), g)]] * std::conj(chi[i]);
    s /= double(nN);
    double r = std::round(s.real());
    if (std::abs(s - r) > 1e-6) throw NumericError("conjugate character inner product is not an integer");
    if (r == 1) I.push_back(g);
  }
  c.inertia = make_subgroup(G, I, "I", G.order() <= 1000);

  c.coset_of.assign(G.order(), -1);
  c.Q.push_back(G.identity());
  for (int n : N.elems) c.coset_of[n] = 0;
  for (int g : I) {
    if (c.coset_of[g] >= 0) continue;
    int idx = int(c.Q.size());
    c.Q.push_back(g);
    for (int n : N.elems) c.coset_of[G.mul(n, g)] = idx;
  }
  const int m = c.index();
  c.qmul.assign(m, std::vector<int>(m));
  c.qinv.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) c.qmul[i][j] = c.coset_of[G.mul(c.Q[i], c.Q[j])];
    c.qinv[i] = c.coset_of[G.inv(c.Q[i])];
  }

  // Theta on Q, then Theta(nq) = theta(n) Theta(q).
  std::vector<Mat> ThQ(m);
  ThQ[0] = Mat::Identity(d, d);
  for (int i = 1; i < m; ++i) {
    Rep conj = conjugate_rep(t.theta, c.Q[i], t.N);
    auto hom = hom_space(conj, t.theta, false);
    if (hom.size() != 1) throw NumericError("intertwiner space is not one-dimensional");
    ThQ[i] = fix_phase(hom[0]);
  }
  c.Theta_raw.assign(G.order(), Mat());
  for (int g : I) {
    int i = c.coset_of[g];
    int n = G.mul(g, G.inv(c.Q[i]));
    c.Theta_raw[g] = t.theta(n) * ThQ[i];
  }

  auto cocycle_from = [&](const std::vector<Mat>& Th) {
    Mat tau(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        int qi = c.Q[i], qj = c.Q[j];
        Mat M = Th[qj].adjoint() * Th[qi].adjoint() * Th[G.mul(qi, qj)];
        tau(i, j) = scalar_part(M);
        c.cocycle_residual = std::max(c.cocycle_residual, scalar_dev(M, tau(i, j)));
      }
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        for (int z = 0; z < m; ++z) {
          cd l = tau(x, y) * tau(c.qmul[x][y], z), r = tau(x, c.qmul[y][z]) * tau(y, z);
          c.cocycle_residual = std::max(c.cocycle_residual, std::abs(l - r));
        }
    return tau;
  };
  c.tau = cocycle_from(c.Theta_raw);

  // Equalize: Theta'(k) = rho(kN) Theta(k), rho^2 = tau(k, k^-1), rho(x) = rho(x^-1).
  std::vector<cd> rho(m, 1.0);
  for (int x = 0; x < m; ++x) {
    int y = c.qinv[x];
    if (y < x) {
      rho[x] = rho[y];
      continue;
    }
    rho[x] = std::sqrt(c.tau(x, y));
  }
  c.Theta.assign(G.order(), Mat());
  for (int g : I) c.Theta[g] = rho[c.coset_of[g]] * c.Theta_raw[g];
  c.eta = cocycle_from(c.Theta);
  for (int x = 0; x < m; ++x)
    if (std::abs(c.eta(x, c.qinv[x]) - 1.0) > 1e-9) throw NumericError("equalization failed");

  // Theta(h)^-1 theta(m) Theta(h) = theta(h^-1 m h); sampled above 1e5 pairs.
  std::mt19937_64 rng(1);
  auto check_pair = [&](int h, int n) {
    Mat lhs = c.Theta[h].adjoint() * t.theta(n) * c.Theta[h];
    Mat rhs = t.theta(G.mul(G.mul(G.inv(h), n), h));
    c.intertwining_residual = std::max(c.intertwining_residual, (lhs - rhs).cwiseAbs().maxCoeff());
  };
  auto check_tau = [&](int k, int h) {
    Mat M = c.Theta[h].adjoint() * c.Theta[k].adjoint() * c.Theta[G.mul(k, h)];
    cd e = c.eta(c.coset_of[k], c.coset_of[h]);
    c.bi_invariance_residual = std::max(c.bi_invariance_residual, scalar_dev(M, e));
  };
  if (double(I.size()) * nN <= 1e5) {
    for (int h : I)
      for (int n : N.elems) check_pair(h, n);
  } else {
    std::uniform_int_distribution<std::size_t> pi(0, I.size() - 1), pn(0, N.elems.size() - 1);
    for (int s = 0; s < 2000; ++s) check_pair(I[pi(rng)], N.elems[pn(rng)]);
  }
  if (double(I.size()) * I.size() <= 1e5) {
    for (int k : I)
      for (int h : I) check_tau(k, h);
  } else {
    std::uniform_int_distribution<std::size_t> pi(0, I.size() - 1);
    for (int s = 0; s < 2000; ++s) check_tau(I[pi(rng)], I[pi(rng)]);
  }

  c.Psi.assign(G.order(), 0.0);
  for (int g : I) c.Psi[g] = (c.Theta[g] * t.v).dot(t.v);
  return c;
}

CVec cocycle_convolve(const CocycleData& c, const CVec& f1, const CVec& f2) {
  const int m = c.index();
  if (int(f1.size()) != m || int(f2.size()) != m) throw UsageError("functions must live on I/N");
  for (int x = 0; x < m; ++x)
    if (std::abs(c.eta(x, c.qinv[x]) - 1.0) > 1e-9) throw UsageError("cocycle is not equalized");
  CVec out(m, 0.0);
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) out[k] += f1[c.qmul[c.qinv[h]][k]] * f2[h] * c.eta(c.qinv[k], h);
  return out;
}

CVec cocycle_involution(const CocycleData& c, const CVec& f) {
  CVec out(f.size());
  for (int x = 0; x < c.index(); ++x) out[x] = std::conj(f[c.qinv[x]]);
  return out;
}

std::vector<Mat> phi_map(const NormalTriple& t, const CocycleData& c, const CVec& f) {
  const Group& G = *t.G;
  const int d = t.theta.dim;
  std::vector<Mat> F(G.order(), Mat::Zero(d, d));
  const double s = 1.0 / t.N->size();
  for (int g : c.inertia.elems) F[g] = s * f[c.coset_of[g]] * c.Theta[g].adjoint();
  return F;
}

std::vector<CVec> abelian_characters(const std::vector<std::vector<int>>& table, int identity) {
  const int n = int(table.size());
  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (table[x][y] == identity) inv[x] = y;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (table[x][y] != table[y][x]) throw UsageError("group is not abelian");
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> Nd;
  Mat R = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    cd r(Nd(rng), Nd(rng));
    for (int y = 0; y < n; ++y) R(table[x][y], y) += r;
  }
  Eigen::ComplexEigenSolver<Mat> es(R);
  std::vector<CVec> out;
  for (int k = 0; k < n; ++k) {
    Vec e = es.eigenvectors().col(k);
    if (std::abs(e(identity)) < 1e-8) throw NumericError("character eigenvector vanishes at the identity");
    CVec chi(n);
    for (int x = 0; x < n; ++x) chi[x] = e(inv[x]) / e(identity);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (std::abs(chi[table[x][y]] - chi[x] * chi[y]) > 1e-8) throw NumericError("eigenvector is not a character");
    for (auto& v : chi) {
      // snap to the nearest root of unity of order n
      double a = std::arg(v) * n / (2 * kPi);
      v = unit_root(((long long)std::llround(a) % n + n) % n, n);
    }
    out.push_back(std::move(chi));
  }
  auto key = [&](const CVec& chi) {
    std::vector<long long> k;
    for (auto& v : chi) k.push_back(((std::llround(std::arg(v) * n / (2 * kPi)) % n) + n) % n);
    return k;
  };
  std::sort(out.begin(), out.end(), [&](const CVec& a, const CVec& b) { return key(a) < key(b); });
  return out;
}

namespace {

// Searches an extension xi of theta to I: xi(q_i) = c_i Theta(q_i) on generators of I/N.
std::vector<Mat> find_extension(const NormalTriple& t, const CocycleData& c) {
  const Group& G = *t.G;
  const int d = t.theta.dim;
  TableGroup quot(c.qmul);
  auto qg = generators(quot, whole_group(quot));
  std::vector<int> gq;
  std::vector<std::vector<cd>> cand;
  for (int x : qg) {
    int q = c.Q[x];
    int ord = quot.element_order(x);
    Mat M = Mat::Identity(d, d);
    for (int e = 0; e < ord; ++e) M = M * c.Theta[q];
    int qm = G.pow(q, ord);
    cd lam = scalar_part(t.theta(qm).adjoint() * M);  // Theta(q)^ord = lam theta(q^ord)
    std::vector<cd> cs;
    cd base = std::pow(lam, -1.0 / ord);
    for (int j = 0; j < ord; ++j) cs.push_back(base * unit_root(j, ord));
    gq.push_back(q);
    cand.push_back(cs);
  }
  auto Ngens = generators(G, *t.N);
  double combos = 1;
  for (auto& cs : cand) combos *= double(cs.size());
  if (combos > 1e6) throw NumericError("extension search space too large");
  std::vector<int> pick(cand.size(), 0);
  const double tol = 1e-8;
  for (;;) {
    std::vector<std::pair<int, Mat>> S;
    for (int n : Ngens) S.push_back({n, t.theta(n)});
    for (std::size_t i = 0; i < gq.size(); ++i) S.push_back({gq[i], cand[i][pick[i]] * c.Theta[gq[i]]});
    std::vector<Mat> xi(G.order());
    std::vector<char> have(G.order(), 0);
    std::queue<int> bfs;
    xi[G.identity()] = Mat::Identity(d, d);
    have[G.identity()] = 1;
    bfs.push(G.identity());
    bool ok = true;
    while (!bfs.empty() && ok) {
      int g = bfs.front();
      bfs.pop();
      for (auto& [s, Ms] : S) {
        int h = G.mul(g, s);
        Mat X = xi[g] * Ms;
        if (!have[h]) {
          have[h] = 1;
          xi[h] = X;
          bfs.push(h);
        } else if ((xi[h] - X).cwiseAbs().maxCoeff() > tol) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      for (int n : t.N->elems) ok = ok && (xi[n] - t.theta(n)).cwiseAbs().maxCoeff() < tol;
      if (ok) {
        std::vector<Mat> out(G.order());
        for (int g : c.inertia.elems) out[g] = xi[g];
        return out;
      }
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == int(cand[i].size())) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return {};
}

}  // namespace

NormalAnalysis normal_mf_and_spherical(const NormalTriple& t, const CocycleData& c, std::uint64_t seed) {
  const Group& G = *t.G;
  const int m = c.index();
  NormalAnalysis a;
  a.quotient_abelian = true;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) a.quotient_abelian = a.quotient_abelian && c.qmul[x][y] == c.qmul[y][x];
  a.xi = find_extension(t, c);
  a.theta_extends = !a.xi.empty();
  // Gallagher: the constituents of Ind_N^I theta are xi (x) chi, restricting to (dim chi) theta.
  a.restriction_criterion = a.theta_extends && a.quotient_abelian;
  a.mf = a.quotient_abelian && a.restriction_criterion;

  Triple tr = make_triple(G, t.N, t.theta, t.v, t.name);
  auto H = hecke_basis(tr);
  a.engine_mf = H.commutative;
  a.hecke_dim = H.dim();
  if (a.hecke_dim != m) throw NumericError("dim End differs from |I/N|");
  if (a.engine_mf != a.mf) throw NumericError("inertia criterion and Hecke engine disagree");

  CVec psi = psi_of(tr);
  auto dev = [](const CVec& x, const CVec& y) { return max_abs_diff(x, y); };
  a.psi_identity_dev = std::max({dev(convolve(G, c.Psi, psi), c.Psi), dev(convolve(G, psi, c.Psi), c.Psi),
                                 dev(convolve(G, convolve(G, psi, c.Psi), psi), c.Psi)});

  const auto& I = c.inertia.elems;
  std::vector<cd> cpsi;
  for (int n : t.N->elems) cpsi.push_back(std::conj(psi[n]));
  auto tau_dev = [&](int k, int h) {
    cd s = 0;
    for (std::size_t i = 0; i < t.N->elems.size(); ++i) s += c.Psi[G.mul(G.mul(k, t.N->elems[i]), h)] * cpsi[i];
    cd rhs = std::conj(c.eta(c.coset_of[k], c.coset_of[h])) * c.Psi[k] * c.Psi[h];
    return std::abs(s - rhs);
  };
  if (double(I.size()) * I.size() <= 2e5) {
    for (int k : I)
      for (int h : I) a.tau_identity_dev = std::max(a.tau_identity_dev, tau_dev(k, h));
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pi(0, I.size() - 1);
    for (int s = 0; s < 2000; ++s) a.tau_identity_dev = std::max(a.tau_identity_dev, tau_dev(I[pi(rng)], I[pi(rng)]));
  }
  for (auto& f : H.basis)
    for (int g = 0; g < G.order(); ++g)
      if (c.coset_of[g] < 0) a.support_dev = std::max(a.support_dev, std::abs(f[g]));

  if (!a.mf) return a;
  CVec PsiXi(G.order(), 0.0);
  for (int g : I) PsiXi[g] = (a.xi[g] * t.v).dot(t.v);
  auto engine = spherical_set(H, {seed, 5, true});
  std::vector<char> used(engine.size(), 0);
  for (auto& chi : abelian_characters(c.qmul, 0)) {
    NormalSpherical s;
    s.chi = chi;
    s.values.assign(G.order(), 0.0);
    for (int g : I) s.values[g] = std::conj(chi[c.coset_of[g]]) * PsiXi[g];
    s.functional_dev = functional_equation(tr, psi, s.values, seed).max_dev;
    for (std::size_t e = 0; e < engine.size(); ++e)
      if (!used[e] && max_abs_diff(engine[e].values, s.values) < 1e-8) {
        used[e] = 1;
        s.engine_match = int(e);
        break;
      }
    if (s.engine_match < 0) throw NumericError("closed-form spherical function not found by the engine");
    a.sphericals.push_back(std::move(s));
  }
  return a;
}

std::shared_ptr<TableGroup> cyclic_group(int n) {
  if (n < 1) throw UsageError("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back("r^" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return std::make_shared<TableGroup>(t, names);
}

std::shared_ptr<TableGroup> dihedral_group(int n) {
  if (n < 2) throw UsageError("dihedral group needs n >= 2");
  const int N = 2 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  std::vector<std::string> names(N);
  for (int x = 0; x < N; ++x) {
    int a = x % n, b = x / n;
    names[x] = "r^" + std::to_string(a) + (b ? " s" : "");
    for (int y = 0; y < N; ++y) {
      int c = y % n, d = y / n;
      int e = ((b ? a - c : a + c) % n + n) % n;
      t[x][y] = e + n * ((b + d) % 2);
    }
  }
  return std::make_shared<TableGroup>(t, names);
}

std::shared_ptr<TableGroup> quaternion_group() {
  // units 1,i,j,k; u_a u_b = sign * u_c
  static const int prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  const char* un[4] = {"1", "i", "j", "k"};
  std::vector<std::string> names(8);
  for (int x = 0; x < 8; ++x) {
    names[x] = std::string(x >= 4 ? "-" : "") + un[x % 4];
    for (int y = 0; y < 8; ++y) {
      int a = x % 4, b = y % 4;
      int s = sgn[a][b] * (x >= 4 ? -1 : 1) * (y >= 4 ? -1 : 1);
      t[x][y] = prod[a][b] + (s < 0 ? 4 : 0);
    }
  }
  return std::make_shared<TableGroup>(t, names);
}

std::shared_ptr<TableGroup> direct_product(const Group& A, const Group& B) {
  const int na = A.order(), nb = B.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  std::vector<std::string> names(na * nb);
  for (int x = 0; x < na * nb; ++x) {
    names[x] = "(" + A.describe(x % na) + "," + B.describe(x / na) + ")";
    for (int y = 0; y < na * nb; ++y) t[x][y] = A.mul(x % na, y % na) + na * B.mul(x / na, y / na);
  }
  return std::make_shared<TableGroup>(t, names);
}

namespace {

nlohmann::json parse(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

cd to_cd(const nlohmann::json& j) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) return cd(j[0].get<double>(), j[1].get<double>());
  throw UsageError("complex numbers are [re, im] pairs");
}

}  // namespace

std::shared_ptr<TableGroup> group_from_json(const std::string& text) {
  auto j = parse(text);
  if (!j.contains("table")) throw UsageError("group JSON needs a \"table\"");
  std::vector<std::vector<int>> t;
  std::vector<std::string> names;
  try {
    t = j["table"].get<std::vector<std::vector<int>>>();
    if (j.contains("names")) names = j["names"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed group JSON: ") + e.what());
  }
  return std::make_shared<TableGroup>(t, names);
}

std::vector<int> indices_from_json(const std::string& text) {
  auto j = parse(text);
  if (j.is_object() && j.contains("elements")) j = j["elements"];
  try {
    return j.get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("subgroup must be a list of element indices: ") + e.what());
  }
}

Rep rep_from_json(const Group& G, const SubgroupPtr& N, const std::string& text) {
  auto j = parse(text);
  Rep r{&G, N, 0, j.value("label", std::string("theta")), {}};
  const std::size_t n = N->elems.size();
  try {
    if (j.contains("values")) {
      auto& vals = j["values"];
      if (vals.size() != n) throw UsageError("character needs one value per element of N");
      r.dim = 1;
      for (auto& v : vals) r.mats.push_back(Mat::Constant(1, 1, to_cd(v)));
    } else if (j.contains("mats")) {
      r.dim = j.at("dim").get<int>();
      auto& ms = j["mats"];
      if (ms.size() != n) throw UsageError("representation needs one matrix per element of N");
      for (auto& m : ms) {
        if (int(m.size()) != r.dim * r.dim) throw UsageError("matrix has the wrong number of entries");
        Mat M(r.dim, r.dim);
        for (int a = 0; a < r.dim; ++a)
          for (int b = 0; b < r.dim; ++b) M(a, b) = to_cd(m[a * r.dim + b]);
        r.mats.push_back(M);
      }
    } else {
      throw UsageError("representation JSON needs \"values\" or \"mats\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed representation JSON: ") + e.what());
  }
  return r;
}

}  // namespace mft
