#pragma once

#include <array>
#include <optional>

#include "mft/ff.hpp"
#include "mft/group.hpp"

namespace mft {

using M2 = std::array<int, 4>;  // (a,b,c,d) for [[a,b],[c,d]]

// GL(2,F) with elements ordered lexicographically on (a,b,c,d).
class GL2 : public Group {
 public:
  explicit GL2(FieldPtr F);

  const FieldPtr& field() const { return F_; }
  const Field& f() const { return *F_; }
  int q() const { return F_->q(); }
  const M2& mat(int g) const { return elems_[g]; }
  int index(const M2& m) const;  // -1 if singular
  int index(int a, int b, int c, int d) const { return index(M2{a, b, c, d}); }
  int det(int g) const;
  M2 mul_mat(const M2& x, const M2& y) const;
  std::string describe(int g) const override;

  int cartan(int a, int b) const;  // [[a, eta b],[b, a]]
  int affine(int x, int y) const;  // [[x, y],[0, 1]]
  int weyl() const { return index(0, 1, 1, 0); }

 protected:
  int mul_impl(int a, int b) const override;

 private:
  FieldPtr F_;
  std::vector<M2> elems_;
  std::vector<int> index_;
};

struct StandardSubgroups {
  Subgroup B, U, D, Z, C;
};

StandardSubgroups standard_subgroups(const GL2& G);

struct Bruhat {
  bool in_B = false;
  int u = -1;  // in U
  int b = -1;  // in B; g = b, or g = u w b
};
Bruhat bruhat_factor(const GL2& G, int g);

struct CartanAffine {
  // g = [[x,y],[0,1]] [[a, eta b],[b, a]]
  int x, y, a, b;
};
// Aff then Cartan.
CartanAffine aff_then_cartan(const GL2& G, int g);
// g = [[alpha, eta beta],[beta, alpha]] [[x, y],[0, 1]], returned as (x,y,alpha,beta).
CartanAffine cartan_then_aff(const GL2& G, int g);

struct Exchange {
  int u, v, a, b;
};
// [[x,y],[0,1]] C(alpha,beta) = C(u,v) [[a,b],[0,1]] by the closed forms.
Exchange exchange(const Field& F, int x, int y, int alpha, int beta);

// GL(2,F_{q^2}) with the embedded GL(2,F_q) and W = [[i,1],[1,0]].
struct G2Data {
  Extension e;          // F_q inside F_{q^2}
  Subgroup G1, B2, C1;  // C1 is the Cartan of G1 (eta = generator of F_q)
  int W = -1;
};
G2Data g2_data(const GL2& G2);

struct G2Decomp {
  bool big = false;  // g in G1 W B2
  // big cell: g = [[alpha,beta],[0,1]] W [[c,d],[0,z]]
  int alpha = 0, beta = 0, c = 0, d = 0, z = 0;
};
G2Decomp g2_decomposition(const GL2& G2, const G2Data& D, int g);
// W^-1 [[x1, eta x2],[x2, x1]] W = [[x1 + i x2, x2],[0, x1 - i x2]] (eta of F_q).
M2 conj_W(const GL2& G2, const G2Data& D, int x1, int x2);

}  // namespace mft
