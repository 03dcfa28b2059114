#pragma once

#include <optional>

#include "mft/reps.hpp"

namespace mft {

struct Triple {
  const Group* G = nullptr;
  SubgroupPtr K;
  Rep theta;  // irreducible, on K
  Vec v;      // unit vector in V_theta
  std::string name;
};

// v defaults to the first basis vector.
Triple make_triple(const Group& G, SubgroupPtr K, Rep theta, std::optional<Vec> v = {}, std::string name = "");

// psi(k) = (d/|K|) <v, theta(k) v> on K, zero elsewhere.
CVec psi_of(const Triple& t);

struct HeckeBlock {
  int coset = 0;  // index into the double-coset list
  int s = 0;      // representative
  std::vector<Mat> T;       // orthonormal basis of Hom_{K_s}(Res theta, theta^s)
  int first = 0, count = 0; // range in the scalar basis
  std::vector<int> points;  // sample points inside K s K
  Mat Einv;                 // inverse of the evaluation matrix at the points
};

struct HeckeAlgebra {
  std::shared_ptr<const Triple> owned;  // private copy of the triple
  const Triple* t = nullptr;
  DoubleCosets dc;
  std::vector<HeckeBlock> blocks;  // good cosets only; blocks[0] is K itself
  std::vector<CVec> basis;         // orthonormal scalar basis
  std::vector<CVec> raw;           // S_v(L_T) before normalization
  std::vector<int> block_of;
  int mackey_dim = 0;
  std::vector<std::vector<Vec>> N;  // coords of basis[i] * basis[j]
  Mat adjoint;                      // column b = coords of basis[b]^*
  double max_commutator = 0;
  bool commutative = false;
  double construction_residual = 0;  // well-definedness of the coset fill

  int dim() const { return int(basis.size()); }
  Vec coords(const CVec& f) const;
  CVec function(const Vec& c) const;
  // Matrix of left convolution by the element with coordinates c.
  Mat left_action(const Vec& c) const;
  std::vector<int> good_reps() const;
};

// Builds the basis and structure constants; dim-1 theta takes the short cut
// (membership by f(k1 g k2) = conj chi(k1) conj chi(k2) f(g)).
HeckeAlgebra hecke_basis(const Triple& t);

struct MfResult {
  bool mf = false;
  int dim = 0;
  double max_commutator = 0;
  double threshold = 0;
};
MfResult is_multiplicity_free(const HeckeAlgebra& H);

struct Spherical {
  CVec values;       // on G
  CVec eigenvalues;  // f_b * phi = lambda_b phi
  double norm2 = 0;  // <phi, phi>
  int d_sigma = 0;   // |G| / norm2, rounded
  std::string label;
};

struct SphericalOptions {
  std::uint64_t seed = 0;
  int retries = 5;
  bool verify = true;
};

// Simultaneous diagonalization of the commutative Hecke algebra.
std::vector<Spherical> spherical_set(const HeckeAlgebra& H, const SphericalOptions& opt = {});

// phi(g) = <w, sigma(g) w> with w = L v, L the isometric intertwiner V -> W_sigma.
Spherical spherical_from_irrep(const Triple& t, const Rep& sigma);

struct FunctionalEqReport {
  double max_dev = 0;
  bool exhaustive = true;
};
// sum_k phi(g k h) conj psi(k) = phi(g) phi(h)
FunctionalEqReport functional_equation(const Triple& t, const CVec& psi, const CVec& phi, std::uint64_t seed = 0);

// Spherical Fourier transform over a spherical set.
CVec sft(const std::vector<Spherical>& S, const CVec& f);
CVec isft(const std::vector<Spherical>& S, const CVec& coeffs, int order);

// Convolution restricted to the support of f1 (fast path).
CVec convolve(const Group& G, const CVec& f1, const CVec& f2);
CVec involution(const Group& G, const CVec& f);

// chi(g) = (d/|cl(g)|) sum_{x in cl(g)} conj phi(x)
CVec character_from_spherical(const Group& G, const ConjugacyClasses& cc, const CVec& phi, int d_sigma);
// (d/|G|) sum phi(g^2)
cd frobenius_schur(const Group& G, const CVec& phi, int d_sigma);
// (1/|G|) sum chi(g^2)
cd frobenius_schur_classical(const Group& G, const CVec& chi);

struct SymmetryReport {
  bool antiautomorphism = false;
  bool K_invariant = false;
  bool compatible = false;
  bool sharp_commutes = true;
  bool all_s_found = false;
  std::vector<int> failing_s;
  std::string failed;  // first failing hypothesis, empty if none
  bool symmetric() const { return failed.empty(); }
};
// tau as an index map. For dim theta > 1 a sharp antiautomorphism of End(V)
// must be supplied; for dim 1 it is the identity.
// A tau that is not an antiautomorphism is reported, not thrown.
SymmetryReport symmetry_criteria(const HeckeAlgebra& H, const std::vector<int>& tau,
                                 const std::function<Mat(const Mat&)>& sharp = nullptr);

// Operator-valued basis element L_T over G (zero off its coset).
std::vector<Mat> op_function(const HeckeAlgebra& H, int b);
// (F1 * F2)(g) = sum_h F1(h^-1 g) F2(h)
std::vector<Mat> op_convolve(const Group& G, const std::vector<Mat>& F1, const std::vector<Mat>& F2);
// sum_g <F1(g), F2(g)>_HS
cd op_inner(const std::vector<Mat>& F1, const std::vector<Mat>& F2);
// S_v F(g) = d <F(g) v, v>
CVec S_v(const Triple& t, const std::vector<Mat>& F);

}  // namespace mft
