#include "mft/hecke.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace mft {

Triple make_triple(const Group& G, SubgroupPtr K, Rep theta, std::optional<Vec> v, std::string name) {
  if (theta.dom->elems != K->elems) throw UsageError("theta must be defined on K");
  Triple t{&G, std::move(K), std::move(theta), Vec(), std::move(name)};
  if (v) {
    if (v->size() != t.theta.dim) throw UsageError("vector dimension does not match theta");
    t.v = *v;
  } else {
    t.v = Vec::Zero(t.theta.dim);
    t.v(0) = 1.0;
  }
  double n = t.v.norm();
  if (std::abs(n - 1.0) > 1e-12) throw UsageError("distinguished vector must be a unit vector");
  return t;
}

CVec psi_of(const Triple& t) {
  const double scale = double(t.theta.dim) / double(t.K->size());
  CVec psi(t.G->order(), 0.0);
  for (int k : t.K->elems) psi[k] = scale * (t.theta(k) * t.v).dot(t.v);
  return psi;
}

Vec HeckeAlgebra::coords(const CVec& f) const {
  Vec c = Vec::Zero(dim());
  for (auto& B : blocks) {
    Vec vals(B.count);
    for (int r = 0; r < B.count; ++r) vals(r) = f[B.points[r]];
    c.segment(B.first, B.count) = B.Einv * vals;
  }
  return c;
}

CVec HeckeAlgebra::function(const Vec& c) const {
  CVec f(t->G->order(), 0.0);
  for (auto& B : blocks)
    for (int g : dc.members[B.coset]) {
      cd s = 0;
      for (int k = 0; k < B.count; ++k) s += c(B.first + k) * basis[B.first + k][g];
      f[g] = s;
    }
  return f;
}

Mat HeckeAlgebra::left_action(const Vec& c) const {
  const int n = dim();
  Mat L = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (c(i) == cd(0)) continue;
    for (int j = 0; j < n; ++j) L.col(j) += c(i) * N[i][j];
  }
  return L;
}

std::vector<int> HeckeAlgebra::good_reps() const {
  std::vector<int> out;
  for (auto& B : blocks) out.push_back(B.s);
  return out;
}

namespace {

// Greedy choice of points in a coset making the evaluation matrix invertible.
void choose_points(HeckeBlock& B, const std::vector<int>& members, const std::vector<CVec>& basis) {
  Mat rows(0, B.count);
  for (int g : members) {
    if (int(B.points.size()) == B.count) break;
    Mat cand(rows.rows() + 1, B.count);
    cand.topRows(rows.rows()) = rows;
    for (int k = 0; k < B.count; ++k) cand(rows.rows(), k) = basis[B.first + k][g];
    Eigen::JacobiSVD<Mat> svd(cand);
    auto sv = svd.singularValues();
    if (sv(sv.size() - 1) > 1e-6 * std::max(1e-300, sv(0)) && sv(sv.size() - 1) > 1e-12) {
      rows = cand;
      B.points.push_back(g);
    }
  }
  if (int(B.points.size()) != B.count) throw NumericError("could not choose sample points for a Hecke block");
  B.Einv = rows.inverse();
}

}  // namespace

HeckeAlgebra hecke_basis(const Triple& t_in) {
  HeckeAlgebra H;
  H.owned = std::make_shared<const Triple>(t_in);
  H.t = H.owned.get();
  const Triple& t = *H.t;
  const Group& G = *t.G;
  const Subgroup& K = *t.K;
  const int d = t.theta.dim;
  H.dc = double_cosets(G, K);
  const int nK = K.size();

  std::vector<Vec> a(nK), b(nK);
  for (int i = 0; i < nK; ++i) {
    const Mat& th = t.theta.mats[i];
    a[i] = th * t.v;
    b[i] = th.adjoint() * t.v;
  }

  for (std::size_t c = 0; c < H.dc.reps.size(); ++c) {
    const int s = H.dc.reps[c];
    HeckeBlock B;
    B.coset = int(c);
    B.s = s;
    if (d == 1) {
      bool good = true;
      int si = G.inv(s);
      for (int x : H.dc.stab[c])
        if (std::abs(t.theta(x)(0, 0) - t.theta(G.mul(G.mul(si, x), s))(0, 0)) > 1e-9) {
          good = false;
          break;
        }
      if (good) B.T.push_back(Mat::Identity(1, 1));
    } else {
      auto Ks = share(make_subgroup(G, H.dc.stab[c], "K_s", false));
      Rep res = restrict(t.theta, Ks);
      Rep ths = conjugate_rep(t.theta, s, Ks);
      B.T = hom_space(res, ths, true);
    }
    H.mackey_dim += int(B.T.size());
    if (B.T.empty()) continue;
    B.first = int(H.basis.size());
    B.count = int(B.T.size());
    std::vector<int> left(nK);
    for (int i = 0; i < nK; ++i) left[i] = G.mul(K.elems[i], s);
    for (auto& T : B.T) {
      CVec f(G.order(), 0.0);
      std::vector<char> seen(G.order(), 0);
      std::vector<Vec> tb(nK);
      for (int i = 0; i < nK; ++i) tb[i] = T * b[i];
      for (int i = 0; i < nK; ++i)
        for (int j = 0; j < nK; ++j) {
          int g = G.mul(left[i], K.elems[j]);
          cd val = double(d) * a[j].dot(tb[i]);
          if (seen[g]) {
            H.construction_residual = std::max(H.construction_residual, std::abs(f[g] - val));
          } else {
            seen[g] = 1;
            f[g] = val;
          }
        }
      H.raw.push_back(f);
    }
    // Orthonormalize inside the block.
    for (int k = 0; k < B.count; ++k) {
      CVec f = H.raw[B.first + k];
      for (int m = 0; m < k; ++m) {
        const CVec& e = H.basis[B.first + m];
        cd p = inner(f, e);
        for (int g : H.dc.members[c]) f[g] -= p * e[g];
      }
      double nn = std::sqrt(std::abs(inner(f, f)));
      if (nn < 1e-9) throw NumericError("degenerate Hecke basis element");
      for (auto& x : f) x /= nn;
      H.basis.push_back(std::move(f));
      H.block_of.push_back(int(H.blocks.size()));
    }
    choose_points(B, H.dc.members[c], H.basis);
    H.blocks.push_back(std::move(B));
  }
  if (H.construction_residual > 1e-8) throw NumericError("Hecke basis element is not well defined on its coset");
  if (H.blocks.empty() || H.blocks[0].s != G.identity()) throw NumericError("identity coset must be good");
  if (H.dim() != H.mackey_dim) throw NumericError("Hecke dimension differs from the Mackey count");

  // Structure constants at the sample points.
  const int n = H.dim();
  std::vector<int> pts;
  for (auto& B : H.blocks)
    for (int p : B.points) pts.push_back(p);
  std::vector<int> good_members;
  for (auto& B : H.blocks)
    for (int g : H.dc.members[B.coset]) good_members.push_back(g);
  std::vector<std::vector<cd>> vals(pts.size(), std::vector<cd>(std::size_t(n) * n, 0.0));
  parallel_for(std::int64_t(pts.size()), [&](std::int64_t pi) {
    const int g = pts[pi];
    std::vector<int> perm(G.order(), -1);
    for (int h : good_members) perm[h] = G.mul(G.inv(h), g);
    auto& out = vals[pi];
    for (int i = 0; i < n; ++i) {
      const auto& mem = H.dc.members[H.blocks[H.block_of[i]].coset];
      const CVec& fi = H.basis[i];
      for (int h : mem) {
        cd fa = fi[h];
        int x = perm[h];
        for (int j = 0; j < n; ++j) out[std::size_t(i) * n + j] += fa * H.basis[j][x];
      }
    }
  });
  H.N.assign(n, std::vector<Vec>(n, Vec::Zero(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p0 = 0;
      for (auto& B : H.blocks) {
        Vec v(B.count);
        for (int r = 0; r < B.count; ++r) v(r) = vals[p0 + r][std::size_t(i) * n + j];
        H.N[i][j].segment(B.first, B.count) = B.Einv * v;
        p0 += B.count;
      }
    }
  H.adjoint = Mat::Zero(n, n);
  for (int bidx = 0; bidx < n; ++bidx) {
    Vec v(n);
    for (auto& B : H.blocks) {
      Vec w(B.count);
      for (int r = 0; r < B.count; ++r) w(r) = std::conj(H.basis[bidx][G.inv(B.points[r])]);
      v.segment(B.first, B.count) = B.Einv * w;
    }
    H.adjoint.col(bidx) = v;
  }

  // Commutator sup-norm, coset by coset.
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec c = H.N[i][j] - H.N[j][i];
      if (c.cwiseAbs().maxCoeff() == 0) continue;
      for (auto& B : H.blocks) {
        bool any = false;
        for (int k = 0; k < B.count; ++k) any = any || std::abs(c(B.first + k)) > 0;
        if (!any) continue;
        for (int g : H.dc.members[B.coset]) {
          cd s = 0;
          for (int k = 0; k < B.count; ++k) s += c(B.first + k) * H.basis[B.first + k][g];
          worst = std::max(worst, std::abs(s));
        }
      }
    }
  H.max_commutator = worst;
  H.commutative = worst < 1e-7 * G.order();
  return H;
}

MfResult is_multiplicity_free(const HeckeAlgebra& H) {
  return {H.commutative, H.dim(), H.max_commutator, 1e-7 * H.t->G->order()};
}

namespace {

Vec random_selfadjoint(const HeckeAlgebra& H, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Vec c(H.dim());
  for (int i = 0; i < H.dim(); ++i) c(i) = cd(U(rng), U(rng));
  // the involution is conjugate-linear in coordinates
  return c + H.adjoint * c.conjugate();
}

// Splits the columns of V into eigenspaces of the Hermitian matrix V^* M V.
std::vector<Mat> split(const Mat& V, const Mat& M) {
  Mat R = V.adjoint() * M * V;
  R = (R + R.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(R);
  const auto& ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<Mat> out;
  int start = 0;
  for (int i = 1; i <= ev.size(); ++i) {
    if (i == ev.size() || ev(i) - ev(i - 1) > 1e-6 * scale) {
      out.push_back(V * es.eigenvectors().middleCols(start, i - start));
      start = i;
    }
  }
  return out;
}

}  // namespace

std::vector<Spherical> spherical_set(const HeckeAlgebra& H, const SphericalOptions& opt) {
  if (!H.commutative) throw UsageError("spherical functions need a multiplicity-free triple");
  const Group& G = *H.t->G;
  const int n = H.dim();
  std::vector<Mat> vecs;
  bool done = false;
  for (int attempt = 0; attempt < opt.retries && !done; ++attempt) {
    std::mt19937_64 rng(opt.seed + std::uint64_t(attempt));
    std::vector<Mat> clusters{Mat::Identity(n, n)};
    for (int round = 0; round < 4; ++round) {
      std::vector<Mat> next;
      Mat L = H.left_action(random_selfadjoint(H, rng));
      for (auto& V : clusters) {
        if (V.cols() == 1) {
          next.push_back(V);
          continue;
        }
        for (auto& W : split(V, L)) next.push_back(W);
      }
      clusters = std::move(next);
      bool all1 = std::all_of(clusters.begin(), clusters.end(), [](const Mat& V) { return V.cols() == 1; });
      if (all1) {
        done = true;
        break;
      }
    }
    if (done) vecs = clusters;
  }
  if (!done) throw NumericError("degenerate diagonalization after the retry budget");

  std::vector<Spherical> out;
  const int id = G.identity();
  for (auto& V : vecs) {
    Vec c = V.col(0);
    CVec phi = H.function(c);
    cd at1 = phi[id];
    if (std::abs(at1) < 1e-10) throw NumericError("eigenvector vanishes at the identity");
    for (auto& x : phi) x /= at1;
    c /= at1;
    Spherical S;
    S.values = std::move(phi);
    S.eigenvalues.resize(n);
    int kmax = 0;
    c.cwiseAbs().maxCoeff(&kmax);
    for (int b = 0; b < n; ++b) {
      Vec e = Vec::Zero(n);
      e(b) = 1.0;
      Vec Lc = H.left_action(e) * c;
      S.eigenvalues[b] = Lc(kmax) / c(kmax);
      if ((Lc - S.eigenvalues[b] * c).cwiseAbs().maxCoeff() > 1e-6 * std::max(1.0, c.cwiseAbs().maxCoeff()))
        throw NumericError("common eigenvector check failed");
    }
    S.norm2 = std::real(inner(S.values, S.values));
    S.d_sigma = int(std::lround(G.order() / S.norm2));
    out.push_back(std::move(S));
  }
  // Deterministic order: by dimension, then by values at the sample points.
  std::vector<int> pts;
  for (auto& B : H.blocks)
    for (int p : B.points) pts.push_back(p);
  std::sort(out.begin(), out.end(), [&](const Spherical& x, const Spherical& y) {
    if (x.d_sigma != y.d_sigma) return x.d_sigma < y.d_sigma;
    for (int p : pts) {
      double a = std::round(x.values[p].real() * 1e6), b = std::round(y.values[p].real() * 1e6);
      if (a != b) return a < b;
      a = std::round(x.values[p].imag() * 1e6);
      b = std::round(y.values[p].imag() * 1e6);
      if (a != b) return a < b;
    }
    return false;
  });
  if (opt.verify) {
    CVec psi = psi_of(*H.t);
    for (auto& S : out) {
      auto r = functional_equation(*H.t, psi, S.values, opt.seed);
      if (r.max_dev > 1e-6) throw NumericError("spherical function fails the functional equation");
    }
  }
  return out;
}

Spherical spherical_from_irrep(const Triple& t, const Rep& sigma) {
  Rep res = restrict(sigma, t.K);
  auto hom = hom_space(t.theta, res, true);
  if (hom.empty()) throw UsageError(sigma.label + " is not contained in the induced representation");
  if (hom.size() > 1) throw UsageError(sigma.label + " occurs with multiplicity > 1");
  Vec w = hom[0] * t.v;
  Spherical S;
  S.label = sigma.label;
  S.values.resize(t.G->order());
  for (int g = 0; g < t.G->order(); ++g) S.values[g] = (sigma(g) * w).dot(w);
  S.norm2 = std::real(inner(S.values, S.values));
  S.d_sigma = sigma.dim;
  return S;
}

FunctionalEqReport functional_equation(const Triple& t, const CVec& psi, const CVec& phi, std::uint64_t seed) {
  const Group& G = *t.G;
  const auto& K = t.K->elems;
  std::vector<cd> cpsi(K.size());
  for (std::size_t i = 0; i < K.size(); ++i) cpsi[i] = std::conj(psi[K[i]]);
  FunctionalEqReport r;
  auto dev = [&](int g, int h) {
    cd s = 0;
    for (std::size_t i = 0; i < K.size(); ++i) s += phi[G.mul(G.mul(g, K[i]), h)] * cpsi[i];
    return std::abs(s - phi[g] * phi[h]);
  };
  if (G.order() <= 1000) {
    std::vector<double> rows(G.order(), 0.0);
    parallel_for(G.order(), [&](std::int64_t g) {
      double m = 0;
      for (int h = 0; h < G.order(); ++h) m = std::max(m, dev(int(g), h));
      rows[g] = m;
    });
    r.max_dev = *std::max_element(rows.begin(), rows.end());
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, G.order() - 1);
    for (int i = 0; i < 2000; ++i) r.max_dev = std::max(r.max_dev, dev(pick(rng), pick(rng)));
  }
  return r;
}

CVec sft(const std::vector<Spherical>& S, const CVec& f) {
  CVec out;
  for (auto& s : S) out.push_back(inner(f, s.values));
  return out;
}

CVec isft(const std::vector<Spherical>& S, const CVec& coeffs, int order) {
  CVec f(order, 0.0);
  for (std::size_t i = 0; i < S.size(); ++i) {
    cd w = double(S[i].d_sigma) * coeffs[i] / double(order);
    for (int g = 0; g < order; ++g) f[g] += w * S[i].values[g];
  }
  return f;
}

CVec convolve(const Group& G, const CVec& f1, const CVec& f2) {
  std::vector<int> supp;
  for (int h = 0; h < G.order(); ++h)
    if (f1[h] != cd(0)) supp.push_back(h);
  std::vector<int> hinv(supp.size());
  for (std::size_t i = 0; i < supp.size(); ++i) hinv[i] = G.inv(supp[i]);
  CVec out(G.order(), 0.0);
  parallel_for(G.order(), [&](std::int64_t g) {
    cd s = 0;
    for (std::size_t i = 0; i < supp.size(); ++i) s += f1[supp[i]] * f2[G.mul(hinv[i], int(g))];
    out[g] = s;
  });
  return out;
}

CVec involution(const Group& G, const CVec& f) {
  CVec out(G.order());
  for (int g = 0; g < G.order(); ++g) out[g] = std::conj(f[G.inv(g)]);
  return out;
}

CVec character_from_spherical(const Group& G, const ConjugacyClasses& cc, const CVec& phi, int d_sigma) {
  CVec chi(G.order());
  for (auto& cls : cc.classes) {
    cd s = 0;
    for (int x : cls) s += std::conj(phi[x]);
    s *= double(d_sigma) / double(cls.size());
    for (int x : cls) chi[x] = s;
  }
  return chi;
}

cd frobenius_schur(const Group& G, const CVec& phi, int d_sigma) {
  cd s = 0;
  for (int g = 0; g < G.order(); ++g) s += phi[G.mul(g, g)];
  return s * double(d_sigma) / double(G.order());
}

cd frobenius_schur_classical(const Group& G, const CVec& chi) {
  cd s = 0;
  for (int g = 0; g < G.order(); ++g) s += chi[G.mul(g, g)];
  return s / double(G.order());
}

SymmetryReport symmetry_criteria(const HeckeAlgebra& H, const std::vector<int>& tau,
                                 const std::function<Mat(const Mat&)>& sharp_in) {
  const Triple& t = *H.t;
  const Group& G = *t.G;
  const Subgroup& K = *t.K;
  const int d = t.theta.dim;
  if (int(tau.size()) != G.order()) throw UsageError("tau must map every group element");
  if (d > 1 && !sharp_in) throw UsageError("dim theta > 1 needs an antiautomorphism of End(V)");
  auto sharp = sharp_in ? sharp_in : std::function<Mat(const Mat&)>([](const Mat& M) { return M; });
  SymmetryReport r;

  std::vector<char> hit(G.order(), 0);
  bool bij = true;
  for (int g = 0; g < G.order(); ++g) {
    if (tau[g] < 0 || tau[g] >= G.order() || hit[tau[g]]) {
      bij = false;
      break;
    }
    hit[tau[g]] = 1;
  }
  r.antiautomorphism = bij;
  if (bij) {
    auto gens = generators(G, whole_group(G));
    for (int g = 0; g < G.order() && r.antiautomorphism; ++g)
      for (int s : gens)
        if (tau[G.mul(g, s)] != G.mul(tau[s], tau[g])) {
          r.antiautomorphism = false;
          break;
        }
  }
  if (!r.antiautomorphism) {
    r.all_s_found = false;
    r.failed = "tau is not an antiautomorphism";
    return r;
  }

  r.K_invariant = true;
  for (int k : K.elems) r.K_invariant = r.K_invariant && K.contains(tau[k]);
  r.compatible = r.K_invariant;
  if (r.K_invariant)
    for (int k : K.elems)
      if ((t.theta(tau[k]) - sharp(t.theta(k))).cwiseAbs().maxCoeff() > 1e-9) {
        r.compatible = false;
        break;
      }
  if (d > 1) {
    for (int i = 0; i < d && r.sharp_commutes; ++i)
      for (int j = 0; j < d; ++j) {
        Mat E = Mat::Zero(d, d);
        E(i, j) = cd(1.0, 0.5);
        if ((sharp(E).adjoint() - sharp(E.adjoint())).cwiseAbs().maxCoeff() > 1e-12) {
          r.sharp_commutes = false;
          break;
        }
      }
  }
  r.all_s_found = true;
  if (r.compatible) {
    for (auto& B : H.blocks) {
      const int s = B.s;
      const int ts = tau[s];
      bool found = false;
      for (int k1 : K.elems) {
        int k2 = G.mul(G.inv(G.mul(k1, s)), ts);
        if (!K.contains(k2)) continue;
        bool ok = true;
        for (auto& T : B.T) {
          Mat lhs = t.theta(k2).adjoint() * T * t.theta(k1).adjoint();
          if ((lhs - sharp(T)).cwiseAbs().maxCoeff() > 1e-9) {
            ok = false;
            break;
          }
        }
        if (ok) {
          found = true;
          break;
        }
      }
      if (!found) {
        r.all_s_found = false;
        r.failing_s.push_back(s);
      }
    }
  } else {
    r.all_s_found = false;
  }
  if (!r.K_invariant)
    r.failed = "tau(K) != K";
  else if (!r.compatible)
    r.failed = "theta(tau(k)) != theta(k)^sharp";
  else if (!r.sharp_commutes)
    r.failed = "sharp does not commute with adjoint";
  else if (!r.all_s_found)
    r.failed = "no k1,k2 with tau(s) = k1 s k2 for some s in S0";
  return r;
}

std::vector<Mat> op_function(const HeckeAlgebra& H, int b) {
  const Triple& t = *H.t;
  const Group& G = *t.G;
  const auto& B = H.blocks[H.block_of[b]];
  const Mat& T = B.T[b - B.first];
  const int d = t.theta.dim;
  std::vector<Mat> F(G.order(), Mat::Zero(d, d));
  for (int k1 : t.K->elems)
    for (int k2 : t.K->elems) {
      int g = G.mul(G.mul(k1, B.s), k2);
      F[g] = t.theta(k2).adjoint() * T * t.theta(k1).adjoint();
    }
  return F;
}

std::vector<Mat> op_convolve(const Group& G, const std::vector<Mat>& F1, const std::vector<Mat>& F2) {
  const int d = int(F1[0].rows());
  std::vector<Mat> out(G.order(), Mat::Zero(d, d));
  std::vector<int> supp;
  for (int h = 0; h < G.order(); ++h)
    if (F2[h].cwiseAbs().maxCoeff() > 0) supp.push_back(h);
  parallel_for(G.order(), [&](std::int64_t g) {
    Mat s = Mat::Zero(d, d);
    for (int h : supp) s += F1[G.mul(G.inv(h), int(g))] * F2[h];
    out[g] = s;
  });
  return out;
}

cd op_inner(const std::vector<Mat>& F1, const std::vector<Mat>& F2) {
  cd s = 0;
  for (std::size_t g = 0; g < F1.size(); ++g) s += hs_inner(F1[g], F2[g]);
  return s;
}

CVec S_v(const Triple& t, const std::vector<Mat>& F) {
  CVec out(F.size());
  const double d = t.theta.dim;
  for (std::size_t g = 0; g < F.size(); ++g) out[g] = d * t.v.dot(F[g] * t.v);
  return out;
}

}  // namespace mft
