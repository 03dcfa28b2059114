#pragma once

#include <memory>

#include "mft/hecke.hpp"

namespace mft {

// A triple (G, N, theta) with N normal in G.
struct NormalTriple {
  std::shared_ptr<const Group> G;
  SubgroupPtr N;
  Rep theta;
  Vec v;
  std::string name;
};

// Checks normality and irreducibility; v defaults to the first basis vector.
NormalTriple make_normal_triple(std::shared_ptr<const Group> G, SubgroupPtr N, Rep theta,
                                std::optional<Vec> v = {}, std::string name = "");

struct CocycleData {
  Subgroup inertia;
  std::vector<int> Q;         // coset representatives of N in I, Q[0] = identity
  std::vector<int> coset_of;  // over G; -1 outside I
  std::vector<std::vector<int>> qmul;  // multiplication on I/N by coset index
  std::vector<int> qinv;
  std::vector<Mat> Theta_raw;  // over G, empty outside I
  std::vector<Mat> Theta;      // equalized: Theta(h)^-1 = Theta(h^-1)
  Mat tau;                     // raw cocycle on I/N x I/N
  Mat eta;                     // equalized cocycle
  CVec Psi;                    // <v, Theta(h) v>, zero outside I
  double intertwining_residual = 0;
  double cocycle_residual = 0;
  double bi_invariance_residual = 0;
  int index() const { return int(Q.size()); }
};

CocycleData inertia_and_cocycle(const NormalTriple& t);

// [f1 *_eta f2](k) = sum_h f1(h^-1 k) f2(h) eta(k^-1, h) on I/N.
CVec cocycle_convolve(const CocycleData& c, const CVec& f1, const CVec& f2);
CVec cocycle_involution(const CocycleData& c, const CVec& f);

// Phi(f)(h) = (1/|N|) Theta(h)^* f(hN) on I, zero elsewhere.
std::vector<Mat> phi_map(const NormalTriple& t, const CocycleData& c, const CVec& f);

struct NormalSpherical {
  CVec chi;     // character of I/N by coset index
  CVec values;  // conj(chi~) Psi over G
  double functional_dev = 0;
  int engine_match = -1;  // index in the engine's spherical set
};

struct NormalAnalysis {
  bool quotient_abelian = false;
  bool theta_extends = false;  // an extension xi of theta to I exists
  bool restriction_criterion = false;  // Res xi = theta for every constituent of Ind_N^I theta
  bool mf = false;
  bool engine_mf = false;
  int hecke_dim = 0;
  double psi_identity_dev = 0;  // Psi = Psi*psi = psi*Psi = psi*Psi*psi
  double tau_identity_dev = 0;  // sum_n Psi(knh) conj psi(n) = conj tau(k,h) Psi(k) Psi(h)
  double support_dev = 0;       // engine basis outside I
  std::vector<Mat> xi;          // extension over G (empty outside I), when it exists
  std::vector<NormalSpherical> sphericals;
};

// Decides multiplicity-freeness by the inertia criterion and by the Hecke engine.
// Throws NumericError if the two disagree.
NormalAnalysis normal_mf_and_spherical(const NormalTriple& t, const CocycleData& c, std::uint64_t seed = 0);

// Characters of an abelian group given by its multiplication table.
std::vector<CVec> abelian_characters(const std::vector<std::vector<int>>& table, int identity);

// Fixtures.
std::shared_ptr<TableGroup> cyclic_group(int n);
std::shared_ptr<TableGroup> dihedral_group(int n);  // order 2n, r^a s^b at index a + n b
std::shared_ptr<TableGroup> quaternion_group();     // 1,i,j,k,-1,-i,-j,-k
std::shared_ptr<TableGroup> direct_product(const Group& A, const Group& B);  // (a,b) at a + |A| b

// JSON input. Group: {"table": [[...]], "names": [...]}.
// Subgroup: list of indices. Rep: {"dim": d, "mats": [[[re, im], ...] row-major per element of N]}
// or {"values": [[re, im], ...]} for a character.
std::shared_ptr<TableGroup> group_from_json(const std::string& text);
std::vector<int> indices_from_json(const std::string& text);
Rep rep_from_json(const Group& G, const SubgroupPtr& N, const std::string& text);

}  // namespace mft
