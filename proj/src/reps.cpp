#include "mft/reps.hpp"

#include <algorithm>
#include <random>

namespace mft {

SubgroupPtr share(Subgroup K) { return std::make_shared<const Subgroup>(std::move(K)); }
SubgroupPtr whole(const Group& G) { return share(whole_group(G)); }

Rep restrict(const Rep& r, const SubgroupPtr& K) {
  Rep out{r.G, K, r.dim, "Res " + r.label, {}};
  out.mats.reserve(K->size());
  for (int g : K->elems) out.mats.push_back(r(g));
  return out;
}

Rep character_rep(const Group& G, const SubgroupPtr& K, const std::function<cd(int)>& chi, std::string label) {
  Rep out{&G, K, 1, std::move(label), {}};
  out.mats.reserve(K->size());
  for (int g : K->elems) out.mats.push_back(Mat::Constant(1, 1, chi(g)));
  return out;
}

Rep conjugate_rep(const Rep& theta, int s, const SubgroupPtr& Ks) {
  const Group& G = *theta.G;
  int si = G.inv(s);
  Rep out{&G, Ks, theta.dim, theta.label + "^s", {}};
  for (int x : Ks->elems) out.mats.push_back(theta(G.mul(G.mul(si, x), s)));
  return out;
}

Rep twist(const Rep& r, const std::function<cd(int)>& chi, std::string label) {
  Rep out = r;
  out.label = std::move(label);
  for (std::size_t i = 0; i < out.mats.size(); ++i) out.mats[i] *= chi(r.dom->elems[i]);
  return out;
}

std::vector<int> induce_transversal(const Group& G, const Subgroup& K) { return left_transversal(G, K); }

Rep induce(const Group& G, const SubgroupPtr& K, const Rep& theta, std::string label, const SubgroupPtr& over) {
  if (theta.dom.get() != K.get() && theta.dom->elems != K->elems)
    throw UsageError("induce: representation not defined on the inducing subgroup");
  SubgroupPtr H = over ? over : whole(G);
  for (int k : K->elems)
    if (!H->contains(k)) throw UsageError("induce: K is not inside the target subgroup");
  std::vector<int> T;
  {
    std::vector<char> seen(G.order(), 0);
    for (int g : H->elems) {
      if (seen[g]) continue;
      T.push_back(g);
      for (int k : K->elems) seen[G.mul(g, k)] = 1;
    }
    // identity first
    for (auto& t : T)
      if (K->contains(t)) t = G.identity();
    std::stable_partition(T.begin(), T.end(), [&](int t) { return t == G.identity(); });
  }
  const int m = int(T.size()), d = theta.dim;
  if (m * d > 512) throw UsageError("induced dimension exceeds 512");
  std::vector<int> pos(G.order(), -1);
  for (int i = 0; i < m; ++i)
    for (int k : K->elems) pos[G.mul(T[i], k)] = i;
  std::vector<int> Tinv(m);
  for (int i = 0; i < m; ++i) Tinv[i] = G.inv(T[i]);
  Rep out{&G, H, m * d, label.empty() ? "Ind " + theta.label : std::move(label), {}};
  out.mats.assign(H->size(), Mat());
  parallel_for(H->size(), [&](std::int64_t li) {
    const int g = H->elems[li];
    Mat M = Mat::Zero(m * d, m * d);
    for (int j = 0; j < m; ++j) {
      int x = G.mul(g, T[j]);
      int i = pos[x];
      M.block(i * d, j * d, d, d) = theta(G.mul(Tinv[i], x));
    }
    out.mats[li] = std::move(M);
  });
  return out;
}

Rep onedim(const GL2& G, const MultChar& psi) {
  if (psi.field() != G.field()) throw UsageError("character field mismatch");
  return character_rep(G, whole(G), [&](int g) { return psi.at(G.det(g)); }, "onedim:" + std::to_string(psi.k()));
}

namespace {

SubgroupPtr borel(const GL2& G) {
  std::vector<int> B;
  for (int g = 0; g < G.order(); ++g)
    if (G.mat(g)[2] == 0) B.push_back(g);
  return share(make_subgroup(G, B, "B", false));
}

}  // namespace

Rep parabolic_full(const GL2& G, const MultChar& psi1, const MultChar& psi2) {
  if (psi1.field() != G.field() || psi2.field() != G.field()) throw UsageError("character field mismatch");
  auto B = borel(G);
  Rep chi = character_rep(G, B, [&](int b) { return psi1.at(G.mat(b)[0]) * psi2.at(G.mat(b)[3]); }, "chi_B");
  return induce(G, B, chi, "parabolic_full:" + std::to_string(psi1.k()) + "," + std::to_string(psi2.k()));
}

Rep parabolic_q(const GL2& G, const MultChar& psi) {
  Rep full = parabolic_full(G, psi, psi);
  const int n = full.dim;
  // Projection onto the psi(det) line, then its orthogonal complement.
  Mat P = Mat::Zero(n, n);
  for (int g = 0; g < G.order(); ++g) P += std::conj(psi.at(G.det(g))) * full(g);
  P /= double(G.order());
  Eigen::SelfAdjointEigenSolver<Mat> es((P + P.adjoint()) / 2.0);
  if (std::abs(es.eigenvalues()(n - 1) - 1.0) > 1e-8 || std::abs(es.eigenvalues()(n - 2)) > 1e-8)
    throw NumericError("parabolic_q: psi(det) component is not a line");
  Mat V = es.eigenvectors().leftCols(n - 1);
  Rep out{&G, full.dom, n - 1, "parabolic_q:" + std::to_string(psi.k()), {}};
  out.mats.resize(full.mats.size());
  for (std::size_t i = 0; i < full.mats.size(); ++i) out.mats[i] = V.adjoint() * full.mats[i] * V;
  return out;
}

Rep cuspidal(const GL2& G, const SubgroupPtr& dom, const Extension& e, const AddChar& chi, const MultChar& nu) {
  if (!is_indecomposable(e, nu.k())) throw UsageError("cuspidal representation needs an indecomposable character");
  const Field& F = *e.base;
  const int Q = F.q();
  for (int g : dom->elems)
    for (int x : G.mat(g))
      if (x >= Q) throw UsageError("cuspidal: domain element has entries outside the base field");
  auto j = kloosterman_cached(e, chi, nu);
  const int n = Q - 1;
  Rep out{&G, dom, n, "cuspidal:" + std::to_string(nu.k()), {}};
  out.mats.assign(dom->size(), Mat());
  parallel_for(dom->size(), [&](std::int64_t li) {
    auto [al, be, ga, de] = G.mat(dom->elems[li]);
    Mat M = Mat::Zero(n, n);
    if (ga == 0) {
      int r = F.div(de, al);
      cd nd = nu.at(de);
      int bd = F.div(be, de);
      for (int y = 1; y < Q; ++y) M(y - 1, F.mul(r, y) - 1) = nd * chi(F.div(bd, y));
    } else {
      int gi = F.inv(ga);
      int det = F.minus(F.mul(al, de), F.mul(be, ga));
      int agi = F.mul(al, gi), dgi = F.mul(de, gi), g2d = F.mul(F.mul(gi, gi), det);
      for (int y = 1; y < Q; ++y) {
        int yi = F.inv(y);
        for (int x = 1; x < Q; ++x) {
          int xi = F.inv(x);
          M(y - 1, x - 1) = -nu.at(F.neg(F.mul(ga, x))) * chi(F.add(F.mul(agi, yi), F.mul(dgi, xi))) *
                            j->values[F.mul(g2d, F.mul(yi, xi))];
        }
      }
    }
    out.mats[li] = std::move(M);
  });
  return out;
}

Rep cuspidal(const GL2& G, const MultChar& nu) {
  Extension e = quadratic_extension(G.field());
  return cuspidal(G, whole(G), e, AddChar(G.field(), 1), nu);
}

RepCheck check_rep(const Rep& r, std::uint64_t seed) {
  const Group& G = *r.G;
  const auto& el = r.dom->elems;
  RepCheck c;
  Mat I = Mat::Identity(r.dim, r.dim);
  for (auto& M : r.mats) c.unitarity = std::max(c.unitarity, (M.adjoint() * M - I).cwiseAbs().maxCoeff());
  auto pair_dev = [&](int a, int b) { return (r(a) * r(b) - r(G.mul(a, b))).cwiseAbs().maxCoeff(); };
  if (el.size() <= 1000) {
    for (int a : el)
      for (int b : el) c.homomorphism = std::max(c.homomorphism, pair_dev(a, b));
  } else {
    c.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
    for (int t = 0; t < 500; ++t) c.homomorphism = std::max(c.homomorphism, pair_dev(el[pick(rng)], el[pick(rng)]));
  }
  return c;
}

CVec character(const Rep& r) {
  CVec out(r.mats.size());
  for (std::size_t i = 0; i < r.mats.size(); ++i) out[i] = r.mats[i].trace();
  return out;
}

double inner_product_raw(const CVec& a, const CVec& b) {
  cd s = inner(a, b) / double(a.size());
  return s.real();
}

int multiplicity(const CVec& a, const CVec& b) {
  cd s = inner(a, b) / double(a.size());
  long r = std::lround(s.real());
  if (std::abs(s - double(r)) > 1e-6 || r < 0)
    throw NumericError("character inner product is not a nonnegative integer: " + std::to_string(s.real()) + "+" +
                       std::to_string(s.imag()) + "i");
  return int(r);
}

double class_constancy(const Group& G, const CVec& chi, const ConjugacyClasses& cc) {
  (void)G;
  double m = 0;
  for (auto& cls : cc.classes)
    for (int g : cls) m = std::max(m, std::abs(chi[g] - chi[cls[0]]));
  return m;
}

cd hs_inner(const Mat& A, const Mat& B) { return (B.adjoint() * A).trace() / double(A.cols()); }

std::vector<Mat> hom_space(const Rep& r1, const Rep& r2, bool check) {
  if (r1.dom->elems != r2.dom->elems) throw UsageError("hom_space: representations on different domains");
  const int d1 = r1.dim, d2 = r2.dim, n = d1 * d2;
  auto gens = generators(*r1.G, *r1.dom);
  // vec(r2 X - X r1) = (I (x) r2 - r1^T (x) I) vec X, column-major.
  Mat A = Mat::Zero(n, n);
  Mat M(n, n);
  for (int g : gens) {
    const Mat& R1 = r1(g);
    const Mat& R2 = r2(g);
    M.setZero();
    for (int j = 0; j < d1; ++j) M.block(j * d2, j * d2, d2, d2) += R2;
    for (int j = 0; j < d1; ++j)
      for (int k = 0; k < d1; ++k) M.block(j * d2, k * d2, d2, d2) -= R1(k, j) * Mat::Identity(d2, d2);
    A += M.adjoint() * M;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  std::vector<Mat> basis;
  for (int i = 0; i < n; ++i) {
    if (std::sqrt(std::max(0.0, es.eigenvalues()(i))) >= 1e-7) continue;
    Mat X = Eigen::Map<const Mat>(es.eigenvectors().col(i).data(), d2, d1);
    basis.push_back(X);
  }
  // Gram-Schmidt in the normalized Hilbert-Schmidt product.
  std::vector<Mat> ortho;
  for (auto& X : basis) {
    Mat Y = X;
    for (auto& P : ortho) Y -= hs_inner(Y, P) * P;
    double nn = std::sqrt(std::abs(hs_inner(Y, Y)));
    if (nn < 1e-9) continue;
    ortho.push_back(Y / nn);
  }
  if (check) {
    CVec c1 = character(r1), c2 = character(r2);
    int m = multiplicity(c1, c2);
    if (m != int(ortho.size()))
      throw NumericError("hom_space: rank " + std::to_string(ortho.size()) + " disagrees with character count " +
                         std::to_string(m));
  }
  return ortho;
}

}  // namespace mft
