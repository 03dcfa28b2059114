#include "mft/gl2.hpp"

#include <sstream>

namespace mft {

GL2::GL2(FieldPtr F) : F_(std::move(F)) {
  const int q = F_->q();
  if (q > 9) throw UsageError("GL(2,F_q) enumeration supports q <= 9 (|G| <= 5760)");
  const Field& f = *F_;
  index_.assign(std::size_t(q) * q * q * q, -1);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) {
          if (f.minus(f.mul(a, d), f.mul(b, c)) == 0) continue;
          index_[((std::size_t(a) * q + b) * q + c) * q + d] = int(elems_.size());
          elems_.push_back({a, b, c, d});
        }
  std::vector<int> inv(elems_.size());
  for (std::size_t g = 0; g < elems_.size(); ++g) {
    auto [a, b, c, d] = elems_[g];
    int di = f.inv(f.minus(f.mul(a, d), f.mul(b, c)));
    inv[g] = index(f.mul(d, di), f.neg(f.mul(b, di)), f.neg(f.mul(c, di)), f.mul(a, di));
  }
  finalize(int(elems_.size()), index(1, 0, 0, 1), std::move(inv));
}

int GL2::index(const M2& m) const {
  const std::size_t q = F_->q();
  for (int x : m)
    if (x < 0 || x >= int(q)) return -1;
  return index_[((m[0] * q + m[1]) * q + m[2]) * q + m[3]];
}

int GL2::det(int g) const {
  auto [a, b, c, d] = elems_[g];
  return F_->minus(F_->mul(a, d), F_->mul(b, c));
}

M2 GL2::mul_mat(const M2& x, const M2& y) const {
  const Field& f = *F_;
  return {f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])), f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
          f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])), f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3]))};
}

int GL2::mul_impl(int a, int b) const { return index(mul_mat(elems_[a], elems_[b])); }

std::string GL2::describe(int g) const {
  auto [a, b, c, d] = elems_[g];
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

int GL2::cartan(int a, int b) const { return index(a, F_->mul(F_->gen(), b), b, a); }
int GL2::affine(int x, int y) const { return index(x, y, 0, 1); }

StandardSubgroups standard_subgroups(const GL2& G) {
  const Field& f = G.f();
  const int q = f.q();
  std::vector<int> B, U, D, Z, C;
  for (int g = 0; g < G.order(); ++g) {
    auto [a, b, c, d] = G.mat(g);
    if (c == 0) {
      B.push_back(g);
      if (a == 1 && d == 1) U.push_back(g);
      if (b == 0) {
        D.push_back(g);
        if (a == d) Z.push_back(g);
      }
    }
  }
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (a || b) C.push_back(G.cartan(a, b));
  bool check = G.order() <= 1000;
  return {make_subgroup(G, B, "B", check), make_subgroup(G, U, "U", check), make_subgroup(G, D, "D", check),
          make_subgroup(G, Z, "Z", check), make_subgroup(G, C, "C", check)};
}

Bruhat bruhat_factor(const GL2& G, int g) {
  const Field& f = G.f();
  auto [a, b, c, d] = G.mat(g);
  Bruhat r;
  if (c == 0) {
    r.in_B = true;
    r.b = g;
    return r;
  }
  int x = f.div(a, c);
  r.u = G.index(1, x, 0, 1);
  r.b = G.index(c, d, 0, f.minus(b, f.mul(x, d)));
  return r;
}

CartanAffine aff_then_cartan(const GL2& G, int g) {
  const Field& f = G.f();
  auto [al, be, ga, de] = G.mat(g);
  int eta = f.gen();
  int den = f.inv(f.minus(f.mul(de, de), f.mul(eta, f.mul(ga, ga))));
  int x = f.mul(f.minus(f.mul(al, de), f.mul(be, ga)), den);
  int y = f.mul(f.minus(f.mul(be, de), f.mul(eta, f.mul(al, ga))), den);
  return {x, y, de, ga};
}

CartanAffine cartan_then_aff(const GL2& G, int g) {
  const Field& f = G.f();
  // g^-1 = Aff(x,y) C(a,b) gives g = C(a,b)^-1 Aff(x,y)^-1.
  CartanAffine r = aff_then_cartan(G, G.inv(g));
  int n = f.inv(f.minus(f.mul(r.a, r.a), f.mul(f.gen(), f.mul(r.b, r.b))));
  int xi = f.inv(r.x);
  return {xi, f.neg(f.mul(r.y, xi)), f.mul(r.a, n), f.neg(f.mul(r.b, n))};
}

Exchange exchange(const Field& f, int x, int y, int al, int be) {
  if (x == 0 || (al == 0 && be == 0)) throw UsageError("exchange needs x != 0 and (alpha,beta) != 0");
  int eta = f.gen();
  int A = f.add(f.mul(x, al), f.mul(y, be));
  int n = f.minus(f.mul(al, al), f.mul(eta, f.mul(be, be)));
  int m = f.minus(f.mul(A, A), f.mul(eta, f.mul(be, be)));
  int mi = f.inv(m);
  int xni = f.inv(f.mul(x, n));
  Exchange r;
  r.u = f.mul(f.mul(x, A), f.mul(n, mi));
  r.v = f.mul(f.mul(x, be), f.mul(n, mi));
  r.a = f.mul(m, xni);
  int t = f.minus(f.mul(A, f.add(f.mul(y, al), f.mul(eta, f.mul(be, x)))), f.mul(eta, f.mul(al, be)));
  r.b = f.mul(t, xni);
  return r;
}

G2Data g2_data(const GL2& G2) {
  const FieldPtr& F2 = G2.field();
  if (!F2->sub() || F2->d() != 2 * F2->sub()->d())
    throw UsageError("G2 data needs a quadratic extension field");
  G2Data D;
  D.e = quadratic_extension(F2->sub());
  const int Q = D.e.base->q();
  std::vector<int> g1, b2, c1;
  for (int g = 0; g < G2.order(); ++g) {
    auto m = G2.mat(g);
    if (m[0] < Q && m[1] < Q && m[2] < Q && m[3] < Q) g1.push_back(g);
    if (m[2] == 0) b2.push_back(g);
  }
  const Field& B = *D.e.base;
  for (int a = 0; a < Q; ++a)
    for (int b = 0; b < Q; ++b)
      if (a || b) c1.push_back(G2.index(a, B.mul(B.gen(), b), b, a));
  D.G1 = make_subgroup(G2, g1, "G1", true);
  D.B2 = make_subgroup(G2, b2, "B2", false);
  D.C1 = make_subgroup(G2, c1, "C1", true);
  D.W = G2.index(D.e.i_elem, 1, 1, 0);
  return D;
}

G2Decomp g2_decomposition(const GL2& G2, const G2Data& D, int g) {
  const Field& f = G2.f();
  auto [a, b, c, d] = G2.mat(g);
  G2Decomp r;
  if (c == 0) return r;
  int t = f.div(a, c);
  if (D.e.in_base(t)) return r;
  r.big = true;
  r.alpha = D.e.im(t);
  r.beta = D.e.re(t);
  r.c = c;
  r.d = d;
  r.z = f.div(f.minus(f.mul(b, c), f.mul(a, d)), f.mul(r.alpha, c));
  return r;
}

M2 conj_W(const GL2& G2, const G2Data& D, int x1, int x2) {
  const Field& f = G2.f();
  int ix2 = f.mul(D.e.i_elem, x2);
  return {f.add(x1, ix2), x2, 0, f.minus(x1, ix2)};
}

}  // namespace mft
