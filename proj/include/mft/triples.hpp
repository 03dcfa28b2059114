#pragma once

#include <memory>

#include "mft/hecke.hpp"

namespace mft {

// Irreducible labels for GL(2,F):
//   onedim:k            psi_k(det)
//   parabolic1:k        chi^1_psi, dimension q
//   parabolic:k1,k2     chi_{psi1,psi2}, k1 < k2, dimension q+1
//   cuspidal:k          rho_nu, k the smaller index of {k, bar k}, dimension q-1
// Indices k are exponents of the field generator: psi_k(g^m) = exp(2 pi i k m / (q-1)).
struct IrrepLabel {
  enum Kind { OneDim, Parabolic1, Parabolic, Cuspidal } kind = OneDim;
  int k1 = 0, k2 = 0;
  std::string str() const;
  int dim(int q) const;
};
IrrepLabel parse_label(const std::string& s);
std::vector<IrrepLabel> gl2_irreps(const Extension& e);

// Character of an irreducible of G at the elements of dom. Parabolic
// characters use the induced-character formula over B; cuspidal ones the
// trace of the big-cell realization.
CVec irrep_character(const GL2& G, const Extension& e, const IrrepLabel& l, const SubgroupPtr& dom);
// An explicit realization on all of G.
Rep irrep_rep(const GL2& G, const Extension& e, const IrrepLabel& l);

struct Constituent {
  std::string label;
  int dim = 0;
  int mult = 0;
};

struct DecompositionReport {
  std::string triple;
  int dim_ind = 0;
  int dim_sum = 0;  // sum mult * dim over the listed constituents
  std::vector<Constituent> constituents;  // from the closed-form conditions
  std::vector<std::string> unexpected;    // irreducibles found by characters but not listed
  bool mf = false;
  bool ok() const { return unexpected.empty() && dim_sum == dim_ind && mf; }
};

// (GL(2,F_q), C, nu0).
struct Triple1 {
  int q = 0;
  std::shared_ptr<const GL2> G;
  Extension e;
  AddChar chi;  // parameter 1
  MultChar nu0;
  SubgroupPtr C;
  Triple t;
};

// Throws UsageError for a decomposable nu0.
Triple1 make_triple1(int q, int nu0);
DecompositionReport triple1_analyze(const Triple1& T);

// F_nu(C(a,b) Aff(x,y)) = conj nu0(a+ib) conj psi1(x) in Ind_B^G chi_{psi1,psi2}.
CVec triple1_F_nu(const Triple1& T, const MultChar& psi1, const MultChar& psi2);
// Closed form for a parabolic constituent via g = Aff(x,y) C(a,b).
CVec triple1_spherical_parabolic(const Triple1& T, const IrrepLabel& l);

// F0(x,y), rows and columns by x-1, y-1 over the base field.
Mat closed_F0(const Extension& e, const AddChar& chi, const MultChar& nu0, const MultChar& nu);
// (1/|C|) sum conj nu0(g) rho(g), with C = {C(a,b)} in G.
Mat projection_E(const GL2& G, const Extension& e, const MultChar& nu0, const Rep& rho);
// A unit vector spanning the range of a rank-one projection, times exp(i phase).
Vec range_vector(const Mat& P, double phase = 0);
// <w, rho(g) w> over the domain.
CVec matrix_coefficient(const Rep& rho, const Vec& w);

struct CuspidalMachinery {
  MultChar nu;
  Mat F0;
  Mat E;     // [E f](y) = sum_x E(y,x) f(x), so E = F0^T
  Vec f0;
  CVec phi;  // closed form on G
  double trace_dev = 0, idempotence_dev = 0, hermitian_dev = 0, projection_dev = 0;
  double rank2 = 0;  // second singular value of F0
};
// Requires nu indecomposable, nu# = nu0#, nu0 not in {nu, bar nu}.
CuspidalMachinery triple1_cuspidal(const Triple1& T, int nu);
CVec triple1_cuspidal_phi(const Triple1& T, const MultChar& nu);

// (GL(2,F_{q^2}), GL(2,F_q), rho_nu), q = 3.
struct Triple2 {
  int q = 0;
  std::shared_ptr<const GL2> G;
  G2Data D;
  SubgroupPtr G1;
  Extension e1;  // F_{q^2} / F_q
  Extension e2;  // F_{q^4} / F_{q^2}
  AddChar chi;   // on F_q, parameter 1
  AddChar chi2;  // chi~(x + i y) = chi(x)
  MultChar nu;
  Rep rho_nu;    // on G1
  Triple t;      // v = delta_1
};

// Throws UsageError unless q = 3 and nu is indecomposable with nu# not a square.
Triple2 make_triple2(int q, int nu);
DecompositionReport triple2_analyze(const Triple2& T);
// "parabolic:k1,k2" over F_{q^2}, or "cuspidal:k" with k over F_{q^4}.
Rep triple2_rep(const Triple2& T, const std::string& label);

// Parabolic closed form, reusing the triple-1 F0 with nu0 = xi1 bar(xi2).
struct T2Parabolic {
  const Triple2* T = nullptr;
  MultChar xi1, xi2;
  Mat F0;
  cd at(int g) const;
};
T2Parabolic triple2_parabolic(const Triple2& T, int k1, int k2);

struct T2Cuspidal {
  const Triple2* T = nullptr;
  MultChar mu;
  std::shared_ptr<const KloostermanTable> j, J;
  Mat F1;  // F1(theta, sigma) = F1((1-i theta)^-1, (1-i sigma)^-1)
  cd at(int g) const;
};
T2Cuspidal triple2_cuspidal(const Triple2& T, int mu);

// Position of (1 - i theta)^-1 in L(F_{q^2}^*).
int t2_slot(const Triple2& T, int theta);
// P = ((q-1)/|G1|) sum conj chi^{rho_nu}(g) rho_mu(g), from rho_mu on G1.
Mat triple2_P(const Triple2& T, const Rep& rho_mu_on_G1);
// Q1: projection onto the span of the delta_{(1-i theta)^-1}.
Mat triple2_Q1(const Triple2& T);
// (1/|G1|) sum rho_mu(g) L0 rho_nu(g^-1), and its closed form.
Mat triple2_Ltilde_average(const Triple2& T, const Rep& rho_mu_on_G1);
Mat triple2_Ltilde_closed(const Triple2& T, const T2Cuspidal& c);

struct GGReport {
  int q = 0;
  bool mf = false;
  int dim = 0, expected_dim = 0;
  double max_commutator = 0;
  bool symmetric = false;
  std::string symmetry_failed;
  bool S0_is_Z_wD = false;
  int good_cosets = 0;
  double off_support = 0;  // sup of basis elements on dU, d in D \ Z
};
GGReport gelfand_graev_verify(int q, int chi = 1);

struct SpecialReport {
  int q = 0;
  // Ricci-Samanta: Ind_U^G iota by characters.
  std::vector<Constituent> ricci;
  bool ricci_pattern = false;  // 1 on onedim, 1 on parabolic1, 2 on parabolic, 0 on cuspidal
  bool ricci_engine_noncommutative = false;
  // Gow: (GL(2,F_{q^2}), GL(2,F_q)) at q = 3.
  bool gow_checked = false;
  bool gow_commutative = false;
  double gow_max_commutator = 0;
  int gow_dim = 0;
  bool gow_trivial_mf = false;
  std::vector<Constituent> ind_parabolic1;  // Ind chi^1_psi, multiplicities > 0
  std::vector<Constituent> ind_parabolic;   // Ind chi_{psi1,psi2}
  bool ind_onedim_cuspidal_mf = false;  // Ind of every one-dimensional and cuspidal theta
  int max_mult_parabolic1 = 0, max_mult_parabolic = 0;
};
SpecialReport special_cases(int q, bool gow = true);

// Multiplicities of every irreducible of G2 in Ind_{G1}^{G2} theta, given chi^theta on G1.
std::vector<Constituent> induce_G1_to_G2(const GL2& G2, const G2Data& D, const CVec& theta_char_on_G1);

}  // namespace mft
