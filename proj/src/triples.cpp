#include "mft/triples.hpp"

#include <algorithm>
#include <sstream>

namespace mft {

// ---------- irreducibles of GL(2,F) ----------

std::string IrrepLabel::str() const {
  switch (kind) {
    case OneDim: return "onedim:" + std::to_string(k1);
    case Parabolic1: return "parabolic1:" + std::to_string(k1);
    case Parabolic: return "parabolic:" + std::to_string(k1) + "," + std::to_string(k2);
    case Cuspidal: return "cuspidal:" + std::to_string(k1);
  }
  return "?";
}

int IrrepLabel::dim(int q) const {
  switch (kind) {
    case OneDim: return 1;
    case Parabolic1: return q;
    case Parabolic: return q + 1;
    case Cuspidal: return q - 1;
  }
  return 0;
}

IrrepLabel parse_label(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("label '" + s + "' has no ':'");
  std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  IrrepLabel l;
  try {
    if (kind == "onedim" || kind == "parabolic1" || kind == "cuspidal") {
      std::size_t used = 0;
      l.k1 = std::stoi(rest, &used);
      if (used != rest.size()) throw UsageError("");
      l.kind = kind == "onedim" ? IrrepLabel::OneDim
                                : kind == "parabolic1" ? IrrepLabel::Parabolic1 : IrrepLabel::Cuspidal;
    } else if (kind == "parabolic") {
      auto comma = rest.find(',');
      if (comma == std::string::npos) throw UsageError("");
      l.kind = IrrepLabel::Parabolic;
      l.k1 = std::stoi(rest.substr(0, comma));
      l.k2 = std::stoi(rest.substr(comma + 1));
      if (l.k1 > l.k2) std::swap(l.k1, l.k2);
      if (l.k1 == l.k2) throw UsageError("");
    } else {
      throw UsageError("");
    }
  } catch (const std::exception&) {
    throw UsageError("cannot parse constituent label '" + s +
                     "' (expected onedim:K, parabolic1:K, parabolic:K1,K2 or cuspidal:K)");
  }
  return l;
}

std::vector<IrrepLabel> gl2_irreps(const Extension& e) {
  const int m = e.base->q() - 1, n = e.ext->q() - 1;
  std::vector<IrrepLabel> out;
  for (int k = 0; k < m; ++k) out.push_back({IrrepLabel::OneDim, k, 0});
  for (int k = 0; k < m; ++k) out.push_back({IrrepLabel::Parabolic1, k, 0});
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) out.push_back({IrrepLabel::Parabolic, a, b});
  for (int k = 0; k < n; ++k)
    if (is_indecomposable(e, k) && k < bar_index(e, k)) out.push_back({IrrepLabel::Cuspidal, k, 0});
  return out;
}

namespace {

// Left coset representatives of B inside GL(2, e.base): 1 and [[x,1],[1,0]].
std::vector<int> borel_reps(const GL2& G, const Extension& e) {
  std::vector<int> t{G.index(1, 0, 0, 1)};
  for (int x = 0; x < e.base->q(); ++x) t.push_back(G.index(x, 1, 1, 0));
  return t;
}

cd induced_borel_char(const GL2& G, const std::vector<int>& reps, const MultChar& p1, const MultChar& p2, int g) {
  cd s = 0;
  for (int t : reps) {
    int h = G.mul(G.mul(G.inv(t), g), t);
    const auto& m = G.mat(h);
    if (m[2] == 0) s += p1.at(m[0]) * p2.at(m[3]);
  }
  return s;
}

}  // namespace

CVec irrep_character(const GL2& G, const Extension& e, const IrrepLabel& l, const SubgroupPtr& dom) {
  const FieldPtr& F = e.base;
  CVec out(dom->size());
  if (l.kind == IrrepLabel::Cuspidal) {
    Rep r = cuspidal(G, dom, e, AddChar(F, 1), MultChar(e.ext, l.k1));
    return character(r);
  }
  MultChar p1(F, l.k1), p2(F, l.kind == IrrepLabel::Parabolic ? l.k2 : l.k1);
  auto reps = borel_reps(G, e);
  for (int i = 0; i < dom->size(); ++i) {
    int g = dom->elems[i];
    const auto& m = G.mat(g);
    int det = G.f().minus(G.f().mul(m[0], m[3]), G.f().mul(m[1], m[2]));
    if (det >= F->q()) throw UsageError("irrep_character: element outside GL(2, base)");
    if (l.kind == IrrepLabel::OneDim) {
      out[i] = p1.at(det);
    } else {
      out[i] = induced_borel_char(G, reps, p1, p2, g);
      if (l.kind == IrrepLabel::Parabolic1) out[i] -= p1.at(det);
    }
  }
  return out;
}

Rep irrep_rep(const GL2& G, const Extension& e, const IrrepLabel& l) {
  if (G.field() != e.base) throw UsageError("irrep_rep: the extension must sit over the group's field");
  switch (l.kind) {
    case IrrepLabel::OneDim: return onedim(G, MultChar(e.base, l.k1));
    case IrrepLabel::Parabolic1: return parabolic_q(G, MultChar(e.base, l.k1));
    case IrrepLabel::Parabolic: return parabolic_full(G, MultChar(e.base, l.k1), MultChar(e.base, l.k2));
    case IrrepLabel::Cuspidal: return cuspidal(G, MultChar(e.ext, l.k1));
  }
  throw UsageError("unknown label");
}

namespace {

int char_multiplicity(const CVec& a, const CVec& b) { return multiplicity(a, b); }

void finish_report(DecompositionReport& r, const std::vector<IrrepLabel>& all, const std::vector<int>& mult,
                   const std::vector<IrrepLabel>& listed, int q) {
  r.mf = true;
  r.dim_sum = 0;
  for (auto& l : listed) {
    int m = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].str() == l.str()) m = mult[i];
    r.constituents.push_back({l.str(), l.dim(q), m});
    r.dim_sum += m * l.dim(q);
    if (m != 1) r.mf = false;
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (mult[i] == 0) continue;
    bool found = false;
    for (auto& l : listed) found = found || l.str() == all[i].str();
    if (!found) r.unexpected.push_back(all[i].str() + " x" + std::to_string(mult[i]));
  }
}

cd nu_at_cartan(const GL2& G, const Extension& e, const MultChar& nu, int g) {
  const auto& m = G.mat(g);
  return nu.at(e.make(m[0], m[2]));
}

}  // namespace

// ---------- triple 1 ----------

Triple1 make_triple1(int q, int nu0) {
  Triple1 T;
  T.q = q;
  auto F = Field::build(q, 1);
  if (F->q() != q) throw UsageError("q must be prime for triple 1");
  T.G = std::make_shared<const GL2>(F);
  T.e = quadratic_extension(F);
  if (!is_indecomposable(T.e, nu0))
    throw UsageError("nu0 = " + std::to_string(nu0) + " is decomposable (nu0 = bar nu0); triple 1 needs an indecomposable character");
  T.chi = AddChar(F, 1);
  T.nu0 = MultChar(T.e.ext, nu0);
  T.C = share(standard_subgroups(*T.G).C);
  const GL2& G = *T.G;
  Extension e = T.e;
  MultChar n0 = T.nu0;
  Rep th = character_rep(G, T.C, [&](int g) { return nu_at_cartan(G, e, n0, g); }, "nu0:" + std::to_string(nu0));
  T.t = make_triple(G, T.C, th, {}, "t1");
  return T;
}

DecompositionReport triple1_analyze(const Triple1& T) {
  const GL2& G = *T.G;
  const int q = T.q, m = q - 1;
  DecompositionReport r;
  r.triple = "t1";
  r.dim_ind = G.order() / T.C->size();
  CVec nu0c(T.C->size());
  for (int i = 0; i < T.C->size(); ++i) nu0c[i] = nu_at_cartan(G, T.e, T.nu0, T.C->elems[i]);
  auto all = gl2_irreps(T.e);
  std::vector<int> mult;
  for (auto& l : all) mult.push_back(char_multiplicity(irrep_character(G, T.e, l, T.C), nu0c));

  const int s = sharp_index(T.e, T.nu0.k());
  const int k0 = T.nu0.k(), k0b = bar_index(T.e, k0);
  std::vector<IrrepLabel> listed;
  for (int k = 0; k < m; ++k)
    if ((2 * k) % m == s) listed.push_back({IrrepLabel::Parabolic1, k, 0});
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if ((a + b) % m == s) listed.push_back({IrrepLabel::Parabolic, a, b});
  for (auto& l : all)
    if (l.kind == IrrepLabel::Cuspidal && sharp_index(T.e, l.k1) == s && l.k1 != k0 && l.k1 != k0b)
      listed.push_back(l);
  finish_report(r, all, mult, listed, q);
  return r;
}

CVec triple1_F_nu(const Triple1& T, const MultChar& psi1, const MultChar& psi2) {
  (void)psi2;
  const GL2& G = *T.G;
  CVec F(G.order());
  for (int g = 0; g < G.order(); ++g) {
    auto r = cartan_then_aff(G, g);
    F[g] = std::conj(T.nu0.at(T.e.make(r.a, r.b))) * std::conj(psi1.at(r.x));
  }
  return F;
}

CVec triple1_spherical_parabolic(const Triple1& T, const IrrepLabel& l) {
  const GL2& G = *T.G;
  const Field& f = G.f();
  const int m = T.q - 1, s = sharp_index(T.e, T.nu0.k());
  MultChar p1, p2;
  if (l.kind == IrrepLabel::Parabolic1) {
    if ((2 * l.k1) % m != s) throw UsageError(l.str() + " does not occur: psi^2 != nu0#");
    p1 = p2 = MultChar(T.e.base, l.k1);
  } else if (l.kind == IrrepLabel::Parabolic) {
    if ((l.k1 + l.k2) % m != s) throw UsageError(l.str() + " does not occur: psi1 psi2 != nu0#");
    p1 = MultChar(T.e.base, l.k1);
    p2 = MultChar(T.e.base, l.k2);
  } else {
    throw UsageError(l.str() + " is not a parabolic constituent");
  }
  const int eta = f.gen();
  const double c = 1.0 / double(T.q + 1);
  CVec phi(G.order());
  parallel_for(G.order(), [&](std::int64_t g) {
    auto r = aff_then_cartan(G, int(g));
    cd S = 0;
    for (int ga = 0; ga < T.q; ++ga) {
      int xg = f.add(f.mul(r.x, ga), r.y);
      int num = f.minus(f.mul(xg, xg), eta);
      int den = f.mul(r.x, f.minus(f.mul(ga, ga), eta));
      S += T.nu0.at(T.e.make(ga, 1)) * std::conj(T.nu0.at(T.e.make(xg, 1))) * p2.at(f.div(num, den));
    }
    phi[g] = std::conj(T.nu0.at(T.e.make(r.a, r.b))) * c * (S + std::conj(p1.at(r.x)));
  });
  return phi;
}

Mat closed_F0(const Extension& e, const AddChar& chi, const MultChar& nu0, const MultChar& nu) {
  const Field& f = *e.base;
  const int q = f.q(), n = q - 1, eta = f.gen();
  Mat F0 = Mat::Zero(n, n);
  if (sharp_index(e, nu0.k()) != sharp_index(e, nu.k())) return F0;
  auto j = kloosterman_cached(e, chi, nu);
  for (int x = 1; x < q; ++x)
    for (int y = 1; y < q; ++y) {
      int xi = f.inv(x), yi = f.inv(y);
      cd S = 0;
      for (int ga = 0; ga < q; ++ga)
        S += std::conj(nu0.at(e.make(ga, 1))) * chi(f.mul(ga, f.add(xi, yi))) *
             j->values[f.mul(f.mul(xi, yi), f.minus(f.mul(ga, ga), eta))];
      F0(x - 1, y - 1) = (-nu.at(f.neg(x)) * S + (x == y ? 1.0 : 0.0)) / double(q + 1);
    }
  return F0;
}

Mat projection_E(const GL2& G, const Extension& e, const MultChar& nu0, const Rep& rho) {
  const Field& f = *e.base;
  const int q = f.q();
  Mat E = Mat::Zero(rho.dim, rho.dim);
  int count = 0;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (a == 0 && b == 0) continue;
      int g = G.index(a, f.mul(f.gen(), b), b, a);
      E += std::conj(nu0.at(e.make(a, b))) * rho(g);
      ++count;
    }
  return E / double(count);
}

Vec range_vector(const Mat& P, double phase) {
  Eigen::SelfAdjointEigenSolver<Mat> es((P + P.adjoint()) / 2.0);
  const int n = int(P.rows());
  Vec v = es.eigenvectors().col(n - 1);
  int big = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(v(i)) > std::abs(v(big)) + 1e-12) big = i;
  v *= std::conj(v(big)) / std::abs(v(big));
  return v * std::polar(1.0, phase);
}

CVec matrix_coefficient(const Rep& rho, const Vec& w) {
  CVec out(rho.mats.size());
  for (std::size_t i = 0; i < rho.mats.size(); ++i) out[i] = (rho.mats[i] * w).dot(w);
  return out;
}

CVec triple1_cuspidal_phi(const Triple1& T, const MultChar& nu) {
  const GL2& G = *T.G;
  const Field& f = G.f();
  const int q = T.q, eta = f.gen();
  auto j = kloosterman_cached(T.e, T.chi, nu);
  CVec phi(G.order());
  parallel_for(G.order(), [&](std::int64_t g) {
    auto r = aff_then_cartan(G, int(g));
    int xinv = f.inv(r.x), x1 = f.add(r.x, 1);
    cd S = 0;
    for (int z = 1; z < q; ++z) {
      int zi = f.inv(z);
      cd in = 0;
      for (int ga = 0; ga < q; ++ga)
        in += std::conj(T.nu0.at(T.e.make(ga, 1))) * T.chi(f.mul(f.mul(ga, zi), x1)) *
              j->values[f.mul(f.mul(r.x, f.mul(zi, zi)), f.minus(f.mul(ga, ga), eta))];
      S += nu.at(f.neg(f.mul(xinv, z))) * T.chi(f.neg(f.mul(r.y, zi))) * in;
    }
    double delta = r.x == 1 ? (r.y == 0 ? double(q) : 0.0) - 1.0 : 0.0;
    phi[g] = std::conj(T.nu0.at(T.e.make(r.a, r.b))) / double(q + 1) * (-S + delta);
  });
  return phi;
}

CuspidalMachinery triple1_cuspidal(const Triple1& T, int nu_index) {
  if (!is_indecomposable(T.e, nu_index)) throw UsageError("nu must be indecomposable");
  MultChar nu(T.e.ext, nu_index);
  if (sharp_index(T.e, nu_index) != sharp_index(T.e, T.nu0.k())) throw UsageError("nu# != nu0#");
  if (nu_index == T.nu0.k() || nu_index == bar_index(T.e, T.nu0.k()))
    throw UsageError("nu0 in {nu, bar nu}: rho_nu does not occur");
  CuspidalMachinery M;
  M.nu = nu;
  M.F0 = closed_F0(T.e, T.chi, T.nu0, nu);
  Rep rho = cuspidal(*T.G, nu);
  M.E = projection_E(*T.G, T.e, T.nu0, rho);
  M.trace_dev = std::abs(M.F0.trace() - 1.0);
  M.idempotence_dev = (M.F0 * M.F0 - M.F0).cwiseAbs().maxCoeff();
  M.hermitian_dev = (M.F0 - M.F0.adjoint()).cwiseAbs().maxCoeff();
  M.projection_dev = (M.E - M.F0.transpose()).cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Mat> svd(M.F0);
  M.rank2 = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
  if (M.rank2 > 1e-6) throw NumericError("F0 is not of rank one");
  M.f0 = range_vector(M.E);
  M.phi = triple1_cuspidal_phi(T, nu);
  return M;
}

// ---------- triple 2 ----------

Triple2 make_triple2(int q, int nu) {
  if (q != 3) throw UsageError("triple 2 is supported at q = 3 only");
  Triple2 T;
  T.q = q;
  auto F2 = Field::build(q, 2);
  T.G = std::make_shared<const GL2>(F2);
  T.D = g2_data(*T.G);
  T.G1 = share(T.D.G1);
  T.e1 = T.D.e;
  T.e2 = quadratic_extension(F2);
  if (!is_indecomposable(T.e1, nu)) throw UsageError("nu = " + std::to_string(nu) + " is decomposable");
  if (sharp_index(T.e1, nu) % 2 == 0)
    throw UsageError("nu# is a square; the square case is not treated (nu = " + std::to_string(nu) + ")");
  T.chi = AddChar(T.e1.base, 1);
  T.chi2 = T.chi.lift(T.e1);
  T.nu = MultChar(T.e1.ext, nu);
  T.rho_nu = cuspidal(*T.G, T.G1, T.e1, T.chi, T.nu);
  Vec v = Vec::Zero(T.rho_nu.dim);
  v(0) = 1;
  T.t = make_triple(*T.G, T.G1, T.rho_nu, v, "t2");
  return T;
}

namespace {

std::vector<CVec> g2_chars_on_G1(const GL2& G2, const Extension& e2, const SubgroupPtr& G1,
                                 const std::vector<IrrepLabel>& all) {
  std::vector<CVec> out(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) out[i] = irrep_character(G2, e2, all[i], G1);
  return out;
}

}  // namespace

DecompositionReport triple2_analyze(const Triple2& T) {
  const GL2& G = *T.G;
  DecompositionReport r;
  r.triple = "t2";
  r.dim_ind = G.order() / T.G1->size() * T.rho_nu.dim;
  auto all = gl2_irreps(T.e2);
  auto chars = g2_chars_on_G1(G, T.e2, T.G1, all);
  CVec th = character(T.rho_nu);
  std::vector<int> mult;
  for (auto& c : chars) mult.push_back(char_multiplicity(c, th));

  const int n1 = T.e1.ext->q() - 1;
  const int s = sharp_index(T.e1, T.nu.k());
  const int k = T.nu.k(), kb = bar_index(T.e1, k);
  std::vector<IrrepLabel> listed;
  for (int a = 0; a < n1; ++a)
    for (int b = a + 1; b < n1; ++b) {
      if (sharp_index(T.e1, (a + b) % n1) != s) continue;
      // bar(xi1) xi2, bar the Galois conjugation, for either ordering
      int d1 = (bar_index(T.e1, a) + b) % n1, d2 = (bar_index(T.e1, b) + a) % n1;
      bool bad = d1 == k || d1 == kb || d2 == k || d2 == kb;
      if (!bad) listed.push_back({IrrepLabel::Parabolic, a, b});
    }
  for (auto& l : all)
    if (l.kind == IrrepLabel::Cuspidal && sharp_index(T.e1, sharp_index(T.e2, l.k1)) == s) listed.push_back(l);
  finish_report(r, all, mult, listed, T.e2.base->q());
  return r;
}

Rep triple2_rep(const Triple2& T, const std::string& label) {
  IrrepLabel l = parse_label(label);
  if (l.kind == IrrepLabel::Parabolic)
    return parabolic_full(*T.G, MultChar(T.e1.ext, l.k1), MultChar(T.e1.ext, l.k2));
  if (l.kind == IrrepLabel::Cuspidal) {
    if (!is_indecomposable(T.e2, l.k1)) throw UsageError("mu must be indecomposable over F_{q^2}");
    return cuspidal(*T.G, whole(*T.G), T.e2, T.chi2, MultChar(T.e2.ext, l.k1));
  }
  throw UsageError("triple 2 constituents are parabolic:K1,K2 or cuspidal:K");
}

T2Parabolic triple2_parabolic(const Triple2& T, int k1, int k2) {
  T2Parabolic P;
  P.T = &T;
  P.xi1 = MultChar(T.e1.ext, k1);
  P.xi2 = MultChar(T.e1.ext, k2);
  const int n1 = T.e1.ext->q() - 1;
  if (sharp_index(T.e1, ((k1 + k2) % n1 + n1) % n1) != sharp_index(T.e1, T.nu.k()))
    throw UsageError("(xi1 xi2)# != nu#: the pair does not occur");
  if (P.xi1 == P.xi2) throw UsageError("xi1 = xi2");
  // nu0 = xi1 bar(xi2), bar the Galois conjugation z -> z^q
  MultChar nu0(T.e1.ext, k1 + bar_index(T.e1, P.xi2.k()));
  int k = T.nu.k(), kb = bar_index(T.e1, k);
  if (nu0.k() == k || nu0.k() == kb) throw UsageError("xi1 bar(xi2) in {nu, bar nu}: the pair does not occur");
  P.F0 = closed_F0(T.e1, T.chi, nu0, T.nu);
  return P;
}

cd T2Parabolic::at(int g) const {
  const GL2& G = *T->G;
  const Field& f = G.f();
  const Field& b = *T->e1.base;
  const Extension& e = T->e1;
  auto [A, B, C, D] = G.mat(g);
  int det = f.minus(f.mul(A, D), f.mul(B, C));
  cd S = 0;
  for (int u = 0; u < f.q(); ++u) {
    if (e.in_base(u)) continue;
    int al = e.im(u), be = e.re(u);
    int s = f.add(f.mul(C, u), D);
    if (s == 0) continue;
    int w = f.div(f.add(f.mul(A, u), B), s);
    if (e.in_base(w)) continue;
    int al1 = e.im(w), be1 = e.re(w);
    cd t = std::conj(xi1.at(s)) * std::conj(xi2.at(f.div(f.mul(al, det), f.mul(al1, s)))) *
           T->chi(b.minus(be, be1)) * F0(b.inv(al1) - 1, b.inv(al) - 1);
    S += t;
  }
  return S / double(T->q);
}

int t2_slot(const Triple2& T, int theta) {
  const Extension& e = T.e1;
  return e.ext->inv(e.make(1, e.base->neg(theta))) - 1;
}

T2Cuspidal triple2_cuspidal(const Triple2& T, int mu) {
  if (!is_indecomposable(T.e2, mu)) throw UsageError("mu must be indecomposable over F_{q^2}");
  if (sharp_index(T.e1, sharp_index(T.e2, mu)) != sharp_index(T.e1, T.nu.k()))
    throw UsageError("mu# != nu# on F_q^*: rho_mu does not occur");
  T2Cuspidal c;
  c.T = &T;
  c.mu = MultChar(T.e2.ext, mu);
  c.j = kloosterman_cached(T.e1, T.chi, T.nu);
  c.J = kloosterman_cached(T.e2, T.chi2, c.mu);
  const int q = T.q;
  const Field& f2 = *T.e1.ext;
  const Field& b = *T.e1.base;
  c.F1 = Mat::Zero(q, q);
  for (int th = 0; th < q; ++th) {
    int one_th = T.e1.make(1, b.neg(th));
    for (int si = 0; si < q; ++si) {
      int one_si = T.e1.make(1, b.neg(si));
      cd S = 0;
      for (int t = 1; t < q; ++t) {
        int arg = f2.neg(f2.mul(b.inv(t), f2.inv(one_th)));
        S += c.mu.at(arg) * c.j->values[t] * c.J->values[f2.mul(t, f2.mul(one_si, one_th))];
      }
      c.F1(th, si) = (th == si ? 1.0 : 0.0) / double(q + 1) + double(q) / double(q + 1) * S;
    }
  }
  return c;
}

cd T2Cuspidal::at(int g) const {
  const GL2& G = *T->G;
  const Field& f = G.f();
  const Field& b = *T->e1.base;
  const Extension& e = T->e1;
  const int q = T->q;
  auto [A, B, C, D] = G.mat(g);
  auto one_minus_i = [&](int th) { return e.make(1, b.neg(th)); };
  if (C == 0) {
    int di = f.inv(D);
    if (A == D) {
      cd S = 0;
      for (int th = 0; th < q; ++th)
        S += mu.at(di) * T->chi2(f.neg(f.mul(f.mul(f.inv(A), B), one_minus_i(th)))) * F1(th, th);
      return S;
    }
    int r = f.mul(D, f.inv(A));
    if (e.in_base(r)) return 0.0;
    int al = e.re(r), be = e.im(r);
    int si = b.div(b.minus(al, 1), b.mul(be, b.gen()));
    int th = b.minus(b.mul(si, al), be);
    return mu.at(di) * T->chi2(f.neg(f.mul(f.mul(di, B), one_minus_i(th)))) * F1(si, th);
  }
  int det = f.minus(f.mul(A, D), f.mul(B, C));
  int ci = f.inv(C), deti = f.inv(det);
  int aci = f.mul(A, ci), dci = f.mul(D, ci), c2d = f.mul(f.mul(ci, ci), det);
  cd S = 0;
  for (int th = 0; th < q; ++th)
    for (int si = 0; si < q; ++si) {
      int ws = one_minus_i(si), wt = one_minus_i(th);
      S += mu.at(f.mul(f.mul(C, f.inv(ws)), deti)) *
           T->chi2(f.neg(f.add(f.mul(aci, ws), f.mul(dci, wt)))) * J->values[f.mul(c2d, f.mul(ws, wt))] *
           F1(th, si);
    }
  return -S;
}

Mat triple2_P(const Triple2& T, const Rep& rho_mu) {
  CVec ch = character(T.rho_nu);
  Mat P = Mat::Zero(rho_mu.dim, rho_mu.dim);
  for (int i = 0; i < T.G1->size(); ++i) P += std::conj(ch[i]) * rho_mu(T.G1->elems[i]);
  return P * double(T.q - 1) / double(T.G1->size());
}

Mat triple2_Q1(const Triple2& T) {
  const int n = T.e1.ext->q() - 1;
  Mat Q = Mat::Zero(n, n);
  for (int th = 0; th < T.q; ++th) Q(t2_slot(T, th), t2_slot(T, th)) = 1;
  return Q;
}

namespace {

// [L_theta f](x + i theta x) = f((1 - theta^2 eta) x).
Mat L_theta(const Triple2& T, int th) {
  const Field& b = *T.e1.base;
  const int n = T.e1.ext->q() - 1, m = b.q() - 1;
  Mat L = Mat::Zero(n, m);
  int s = b.minus(1, b.mul(b.mul(th, th), b.gen()));
  for (int x = 1; x <= m; ++x) L(T.e1.make(x, b.mul(th, x)) - 1, b.mul(s, x) - 1) = 1;
  return L;
}

}  // namespace

Mat triple2_Ltilde_average(const Triple2& T, const Rep& rho_mu) {
  const GL2& G = *T.G;
  Mat L0 = L_theta(T, 0);
  Mat L = Mat::Zero(L0.rows(), L0.cols());
  for (int g : T.G1->elems) L += rho_mu(g) * L0 * T.rho_nu(G.inv(g));
  return L / double(T.G1->size());
}

Mat triple2_Ltilde_closed(const Triple2& T, const T2Cuspidal& c) {
  const Field& f2 = *T.e1.ext;
  const Field& b = *T.e1.base;
  const int q = T.q;
  Mat L = L_theta(T, 0) / double(q + 1);
  for (int th = 0; th < q; ++th) {
    int w = T.e1.make(1, b.neg(th));
    cd s = 0;
    for (int t = 1; t < q; ++t)
      s += T.nu.at(b.neg(b.inv(t))) * c.J->values[f2.mul(t, w)] * c.j->values[t];
    L += double(q) / double(q + 1) * s * L_theta(T, th);
  }
  return L;
}

// ---------- Gelfand-Graev ----------

GGReport gelfand_graev_verify(int q, int chi_param) {
  auto F = Field::build(q, 1);
  if (F->q() != q) throw UsageError("q must be prime");
  if (chi_param % q == 0) throw UsageError("the additive character must be nontrivial");
  GL2 G(F);
  auto S = standard_subgroups(G);
  auto U = share(S.U);
  AddChar chi(F, chi_param);
  auto th = character_rep(G, U, [&](int g) { return chi(G.mat(g)[1]); }, "chi");
  Triple t = make_triple(G, U, th, {}, "ggr");
  HeckeAlgebra H = hecke_basis(t);
  GGReport r;
  r.q = q;
  r.mf = H.commutative;
  r.dim = H.dim();
  r.expected_dim = (q - 1) + (q - 1) * (q - 1);
  r.max_commutator = H.max_commutator;
  std::vector<int> tau(G.order());
  for (int g = 0; g < G.order(); ++g) {
    auto m = G.mat(g);
    tau[g] = G.index(m[3], m[1], m[2], m[0]);
  }
  auto sym = symmetry_criteria(H, tau);
  r.symmetric = sym.symmetric();
  r.symmetry_failed = sym.failed;
  std::vector<int> want;
  for (int z : S.Z.elems) want.push_back(H.dc.coset_of[z]);
  for (int d : S.D.elems) want.push_back(H.dc.coset_of[G.mul(G.weyl(), d)]);
  std::vector<int> have;
  for (auto& B : H.blocks) have.push_back(B.coset);
  r.good_cosets = int(have.size());
  std::sort(want.begin(), want.end());
  std::sort(have.begin(), have.end());
  bool distinct = std::adjacent_find(want.begin(), want.end()) == want.end();
  r.S0_is_Z_wD = distinct && want == have;
  for (int g : S.B.elems) {
    auto m = G.mat(g);
    if (m[0] == m[3]) continue;
    for (auto& f : H.basis) r.off_support = std::max(r.off_support, std::abs(f[g]));
  }
  return r;
}

// ---------- special cases ----------

std::vector<Constituent> induce_G1_to_G2(const GL2& G2, const G2Data& D, const CVec& th) {
  Extension e2 = quadratic_extension(G2.field());
  auto G1 = share(D.G1);
  auto all = gl2_irreps(e2);
  std::vector<Constituent> out;
  const int q2 = e2.base->q();
  for (auto& l : all) {
    int m = char_multiplicity(irrep_character(G2, e2, l, G1), th);
    if (m > 0) out.push_back({l.str(), l.dim(q2), m});
  }
  return out;
}

SpecialReport special_cases(int q, bool gow) {
  SpecialReport r;
  r.q = q;
  auto F = Field::build(q, 1);
  if (F->q() != q) throw UsageError("q must be prime");
  GL2 G(F);
  Extension e = quadratic_extension(F);
  auto S = standard_subgroups(G);
  auto U = share(S.U);
  CVec one(U->size(), 1.0);
  r.ricci_pattern = true;
  for (auto& l : gl2_irreps(e)) {
    int m = char_multiplicity(irrep_character(G, e, l, U), one);
    r.ricci.push_back({l.str(), l.dim(q), m});
    int want = l.kind == IrrepLabel::Parabolic ? 2 : l.kind == IrrepLabel::Cuspidal ? 0 : 1;
    if (m != want) r.ricci_pattern = false;
  }
  auto triv = character_rep(G, U, [](int) { return cd(1, 0); }, "iota");
  r.ricci_engine_noncommutative = !hecke_basis(make_triple(G, U, triv, {}, "ricci")).commutative;

  if (!gow || q != 3) return r;
  r.gow_checked = true;
  auto F2 = Field::build(q, 2);
  GL2 G2(F2);
  G2Data D = g2_data(G2);
  auto G1 = share(D.G1);
  auto t1 = character_rep(G2, G1, [](int) { return cd(1, 0); }, "iota");
  HeckeAlgebra H = hecke_basis(make_triple(G2, G1, t1, {}, "gow"));
  r.gow_commutative = H.commutative;
  r.gow_max_commutator = H.max_commutator;
  r.gow_dim = H.dim();

  const Extension& e1 = D.e;
  CVec ones(G1->size(), 1.0);
  auto ind_triv = induce_G1_to_G2(G2, D, ones);
  r.gow_trivial_mf = std::all_of(ind_triv.begin(), ind_triv.end(), [](const Constituent& c) { return c.mult == 1; });
  auto worst = [](const std::vector<Constituent>& v) {
    int m = 0;
    for (auto& c : v) m = std::max(m, c.mult);
    return m;
  };
  for (auto& l : gl2_irreps(e1)) {
    CVec ch = irrep_character(G2, e1, l, G1);
    auto ind = induce_G1_to_G2(G2, D, ch);
    if (l.kind == IrrepLabel::Parabolic1) {
      r.max_mult_parabolic1 = std::max(r.max_mult_parabolic1, worst(ind));
      if (r.ind_parabolic1.empty()) r.ind_parabolic1 = ind;
    } else if (l.kind == IrrepLabel::Parabolic) {
      r.max_mult_parabolic = std::max(r.max_mult_parabolic, worst(ind));
      if (r.ind_parabolic.empty()) r.ind_parabolic = ind;
    }
  }
  r.ind_onedim_cuspidal_mf = true;
  for (auto& l : gl2_irreps(e1))
    if (l.kind == IrrepLabel::Cuspidal || l.kind == IrrepLabel::OneDim)
      if (worst(induce_G1_to_G2(G2, D, irrep_character(G2, e1, l, G1))) > 1) r.ind_onedim_cuspidal_mf = false;
  return r;
}

}  // namespace mft
