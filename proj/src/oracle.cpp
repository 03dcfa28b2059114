#include "mft/oracle.hpp"

#include <chrono>
#include <map>
#include <random>

#include "mft/triples.hpp"

namespace mft {

NaiveGL2::NaiveGL2(FieldPtr F) : F_(std::move(F)) {
  const Field& f = *F_;
  const int q = f.q();
  index_.assign(std::size_t(q) * q * q * q, -1);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) {
          if (f.minus(f.mul(a, d), f.mul(b, c)) == 0) continue;
          index_[((a * q + b) * q + c) * q + d] = int(elems_.size());
          elems_.push_back({a, b, c, d});
        }
  const int n = order();
  if (n <= 2100) {
    table_.resize(std::size_t(n) * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) table_[std::size_t(x) * n + y] = mul_direct(x, y);
  }
}

int NaiveGL2::index(int a, int b, int c, int d) const {
  const int q = F_->q();
  return index_[((a * q + b) * q + c) * q + d];
}

int NaiveGL2::mul_direct(int x, int y) const {
  const Field& f = *F_;
  auto [a, b, c, d] = elems_[x];
  auto [e, g, h, k] = elems_[y];
  return index(f.add(f.mul(a, e), f.mul(b, h)), f.add(f.mul(a, g), f.mul(b, k)),
               f.add(f.mul(c, e), f.mul(d, h)), f.add(f.mul(c, g), f.mul(d, k)));
}

int NaiveGL2::mul(int x, int y) const {
  if (!table_.empty()) return table_[std::size_t(x) * order() + y];
  return mul_direct(x, y);
}

int NaiveGL2::inv(int x) const {
  const Field& f = *F_;
  auto [a, b, c, d] = elems_[x];
  int di = f.inv(f.minus(f.mul(a, d), f.mul(b, c)));
  return index(f.mul(d, di), f.neg(f.mul(b, di)), f.neg(f.mul(c, di)), f.mul(a, di));
}

CVec naive_convolve(const NaiveGL2& G, const CVec& f1, const CVec& f2) {
  const int n = G.order();
  CVec out(n, 0.0);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) out[g] += f1[h] * f2[G.mul(G.inv(h), g)];
  return out;
}

Mat naive_project(const std::vector<int>& K, const CVec& chi, int d, const std::function<Mat(int)>& rho) {
  Mat P = rho(K[0]) * std::conj(chi[0]);
  for (std::size_t i = 1; i < K.size(); ++i) P += std::conj(chi[i]) * rho(K[i]);
  return P * (double(d) / double(K.size()));
}

double naive_functional_eq(const NaiveGL2& G, const std::vector<int>& K, const CVec& psi, const CVec& phi,
                           int samples, std::uint64_t seed) {
  auto dev = [&](int g, int h) {
    cd s = 0;
    for (std::size_t i = 0; i < K.size(); ++i) s += phi[G.mul(G.mul(g, K[i]), h)] * std::conj(psi[i]);
    return std::abs(s - phi[g] * phi[h]);
  };
  double m = 0;
  if (samples == 0) {
    for (int g = 0; g < G.order(); ++g)
      for (int h = 0; h < G.order(); ++h) m = std::max(m, dev(g, h));
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, G.order() - 1);
    for (int i = 0; i < samples; ++i) {
      int g = pick(rng), h = pick(rng);
      m = std::max(m, dev(g, h));
    }
  }
  return m;
}

int naive_mackey_count(const NaiveGL2& G, const std::vector<int>& K, const CVec& theta_char) {
  const int n = G.order();
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < K.size(); ++i) pos[K[i]] = int(i);
  std::vector<char> seen(n, 0);
  double total = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    for (int k1 : K)
      for (int k2 : K) seen[G.mul(G.mul(k1, s), k2)] = 1;
    const int si = G.inv(s);
    cd acc = 0;
    int count = 0;
    for (int x : K) {
      int y = G.mul(G.mul(si, x), s);
      if (pos[y] < 0) continue;
      acc += theta_char[pos[x]] * std::conj(theta_char[pos[y]]);
      ++count;
    }
    total += std::real(acc) / count;
  }
  return int(std::lround(total));
}

CVec naive_induced_character(const NaiveGL2& G, const std::vector<int>& K, const CVec& theta_char) {
  const int n = G.order();
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < K.size(); ++i) pos[K[i]] = int(i);
  CVec out(n, 0.0);
  for (int g = 0; g < n; ++g) {
    cd s = 0;
    for (int x = 0; x < n; ++x) {
      int y = G.mul(G.mul(G.inv(x), g), x);
      if (pos[y] >= 0) s += theta_char[pos[y]];
    }
    out[g] = s / double(K.size());
  }
  return out;
}

int naive_intertwiner_dim(const std::vector<Mat>& r1, const std::vector<Mat>& r2) {
  const int m = int(r1[0].rows()), n = int(r2[0].rows());
  // Unknown T is n x m, column-major vec(T); T A - B T = (A^T kron I - I kron B) vec(T).
  Mat S(std::int64_t(r1.size()) * n * m, n * m);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    Mat blk = Mat::Zero(n * m, n * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) blk.block(b * n, a * n, n, n) += r1[i](a, b) * Mat::Identity(n, n);
    for (int a = 0; a < m; ++a) blk.block(a * n, a * n, n, n) -= r2[i];
    S.block(std::int64_t(i) * n * m, 0, n * m, n * m) = blk;
  }
  Eigen::JacobiSVD<Mat> svd(S);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8) ++rank;
  return n * m - rank;
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double sec() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

OracleReport finish(std::string name, double dev, double tol, const Timer& t) {
  return {std::move(name), dev, tol, dev <= tol, t.sec(), ""};
}

std::vector<int> naive_cartan(const NaiveGL2& N) {
  const Field& f = N.f();
  std::vector<int> C;
  for (int a = 0; a < f.q(); ++a)
    for (int b = 0; b < f.q(); ++b)
      if (a || b) C.push_back(N.index(a, f.mul(f.gen(), b), b, a));
  return C;
}

}  // namespace

std::vector<OracleReport> oracle_suite(int q, std::uint64_t seed, double tol) {
  std::vector<OracleReport> out;
  auto F = Field::build(q, 1);
  if (F->q() != q) throw UsageError("oracle suite needs a prime q");
  Extension e = quadratic_extension(F);
  const std::string qs = " q=" + std::to_string(q);

  Timer t0;
  NaiveGL2 N(F);
  GL2 G(F);
  double mism = N.order() == G.order() ? 0 : 1;
  for (int g = 0; g < std::min(N.order(), G.order()); ++g)
    if (N.mat(g) != G.mat(g)) mism = 1;
  out.push_back(finish("oracle.enumeration" + qs, mism, 0, t0));
  if (mism) return out;

  {
    Timer t;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    double dev = 0;
    for (int rep = 0; rep < 50; ++rep) {
      CVec a(G.order()), b(G.order());
      for (auto& x : a) x = cd(nd(rng), nd(rng));
      for (auto& x : b) x = cd(nd(rng), nd(rng));
      dev = std::max(dev, max_abs_diff(naive_convolve(N, a, b), convolve(G, a, b)));
    }
    out.push_back(finish("oracle.convolve" + qs, dev, tol, t));
  }

  auto C = naive_cartan(N);
  auto nu_on_C = [&](const MultChar& nu) {
    CVec v(C.size());
    for (std::size_t i = 0; i < C.size(); ++i) v[i] = nu.at(e.make(N.mat(C[i])[0], N.mat(C[i])[2]));
    return v;
  };
  std::vector<int> adm;
  for (int k = 0; k < q * q - 1; ++k)
    if (is_indecomposable(e, k)) adm.push_back(k);

  {
    Timer t;
    double dev = 0;
    for (int k : adm) {
      MultChar nu0(e.ext, k);
      CVec ch = nu_on_C(nu0);
      auto T = make_triple1(q, k);
      for (auto& c : triple1_analyze(T).constituents) {
        auto l = parse_label(c.label);
        if (l.kind != IrrepLabel::Cuspidal) continue;
        MultChar nu(e.ext, l.k1);
        Rep rho = cuspidal(G, nu);
        Mat E = naive_project(C, ch, 1, [&](int g) { return rho(g); });
        dev = std::max(dev, (E - closed_F0(e, T.chi, nu0, nu).transpose()).cwiseAbs().maxCoeff());
      }
    }
    out.push_back(finish("oracle.project_E_vs_F0" + qs, dev, tol, t));
  }

  {
    Timer t;
    double dev = 0;
    for (int k : adm) {
      auto T = make_triple1(q, k);
      CVec psi = nu_on_C(T.nu0);
      // psi(k) = (1/|C|) <v, theta(k) v> = conj nu0(k) / |C|.
      for (auto& x : psi) x = std::conj(x) / double(C.size());
      for (auto& c : triple1_analyze(T).constituents) {
        auto l = parse_label(c.label);
        CVec phi = l.kind == IrrepLabel::Cuspidal ? triple1_cuspidal_phi(T, MultChar(e.ext, l.k1))
                                                  : triple1_spherical_parabolic(T, l);
        dev = std::max(dev, naive_functional_eq(N, C, psi, phi));
      }
    }
    out.push_back(finish("oracle.functional_eq_triple1" + qs, dev, tol, t));
  }

  {
    Timer t;
    double dev = 0;
    auto S = standard_subgroups(G);
    auto check = [&](const Triple& tr, const std::vector<int>& K, const CVec& ch) {
      int naive = naive_mackey_count(N, K, ch);
      CVec ind = naive_induced_character(N, K, ch);
      int by_chars = int(std::lround(std::real(inner(ind, ind)) / N.order()));
      auto H = hecke_basis(tr);
      dev = std::max(dev, double(std::abs(naive - H.dim())));
      dev = std::max(dev, double(std::abs(naive - by_chars)));
    };
    auto Cs = share(S.C);
    for (int k = 0; k < q * q - 1; ++k) {
      MultChar nu(e.ext, k);
      Rep th = character_rep(G, Cs, [&](int g) { return nu.at(e.make(G.mat(g)[0], G.mat(g)[2])); }, "nu");
      check(make_triple(G, Cs, th), C, nu_on_C(nu));
    }
    std::vector<int> U;
    for (int b = 0; b < q; ++b) U.push_back(N.index(1, b, 0, 1));
    auto Us = share(S.U);
    AddChar chi(F, 1);
    CVec chU(U.size()), one(U.size(), 1.0);
    for (std::size_t i = 0; i < U.size(); ++i) chU[i] = chi(N.mat(U[i])[1]);
    check(make_triple(G, Us, character_rep(G, Us, [&](int g) { return chi(G.mat(g)[1]); }, "chi")), U, chU);
    check(make_triple(G, Us, character_rep(G, Us, [](int) { return cd(1); }, "1")), U, one);
    out.push_back(finish("oracle.mackey_count" + qs, dev, 0, t));
  }

  {
    Timer t;
    double dev = 0;
    for (int k : adm) {
      if (q > 3 && k > adm.front()) break;
      auto T = make_triple1(q, k);
      auto r = triple1_analyze(T);
      CVec ch = nu_on_C(T.nu0);
      std::vector<Mat> th;
      for (auto& x : ch) th.push_back(Mat::Constant(1, 1, x));
      for (auto& l : gl2_irreps(e)) {
        Rep s = irrep_rep(G, e, l);
        std::vector<Mat> rs;
        for (int c : C) rs.push_back(s(c));
        int want = 0;
        for (auto& c : r.constituents)
          if (c.label == l.str()) want = c.mult;
        dev = std::max(dev, double(std::abs(naive_intertwiner_dim(th, rs) - want)));
      }
    }
    out.push_back(finish("oracle.intertwiner_triple1" + qs, dev, 0, t));
  }

  if (q != 3) return out;

  {
    Timer t;
    auto T = make_triple2(3, 1);
    NaiveGL2 N2(T.e1.ext);
    const GL2& G2 = *T.G;
    double mm = N2.order() == G2.order() ? 0 : 1;
    for (int g = 0; g < N2.order() && !mm; ++g)
      if (N2.mat(g) != G2.mat(g)) mm = 1;
    std::vector<int> G1;
    for (int g = 0; g < N2.order(); ++g) {
      auto m = N2.mat(g);
      if (m[0] < q && m[1] < q && m[2] < q && m[3] < q) G1.push_back(g);
    }
    CVec chn(G1.size()), psi(G1.size());
    for (std::size_t i = 0; i < G1.size(); ++i) {
      Mat x = T.rho_nu(G1[i]);
      chn[i] = x.trace();
      psi[i] = std::conj(x(0, 0)) * double(T.rho_nu.dim) / double(G1.size());
    }
    double dev = mm;
    double fe = 0, fe_sec = 0;
    for (auto& c : triple2_analyze(T).constituents) {
      auto l = parse_label(c.label);
      CVec phi(G2.order());
      if (l.kind == IrrepLabel::Cuspidal) {
        auto cf = triple2_cuspidal(T, l.k1);
        Rep rm = cuspidal(G2, T.G1, T.e2, T.chi2, cf.mu);
        Mat P = naive_project(G1, chn, T.rho_nu.dim, [&](int g) { return rm(g); });
        dev = std::max(dev, (P - triple2_P(T, rm)).cwiseAbs().maxCoeff());
        for (int g = 0; g < G2.order(); ++g) phi[g] = cf.at(g);
      } else {
        auto pf = triple2_parabolic(T, l.k1, l.k2);
        for (int g = 0; g < G2.order(); ++g) phi[g] = pf.at(g);
      }
      Timer tf;
      fe = std::max(fe, naive_functional_eq(N2, G1, psi, phi, 200, seed));
      fe_sec += tf.sec();
    }
    out.push_back(finish("oracle.project_P_triple2", dev, tol, t));
    out.back().seconds -= fe_sec;
    out.push_back({"oracle.functional_eq_triple2_sampled", fe, tol, fe <= tol, fe_sec, "200 pairs per spherical"});
  }
  return out;
}

}  // namespace mft
