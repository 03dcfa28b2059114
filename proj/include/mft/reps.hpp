#pragma once

#include <memory>

#include "mft/gl2.hpp"
#include "mft/kloosterman.hpp"

namespace mft {

using SubgroupPtr = std::shared_ptr<const Subgroup>;

// A unitary representation of the subgroup `dom` of G, one matrix per element.
struct Rep {
  const Group* G = nullptr;
  SubgroupPtr dom;
  int dim = 0;
  std::string label;
  std::vector<Mat> mats;  // indexed by position in dom->elems

  const Mat& operator()(int g) const {
    int l = dom->local[g];
    if (l < 0) throw NumericError("representation " + label + " evaluated outside its domain");
    return mats[l];
  }
};

SubgroupPtr share(Subgroup K);
SubgroupPtr whole(const Group& G);

// Restriction to a subgroup of the domain.
Rep restrict(const Rep& r, const SubgroupPtr& K);
// One-dimensional representation k -> chi(k).
Rep character_rep(const Group& G, const SubgroupPtr& K, const std::function<cd(int)>& chi, std::string label);
// x -> theta(s^-1 x s) on the subgroup Ks (the conjugate theta^s).
Rep conjugate_rep(const Rep& theta, int s, const SubgroupPtr& Ks);
// Tensor with a one-dimensional character of the same domain.
Rep twist(const Rep& r, const std::function<cd(int)>& chi, std::string label);

// Induced representation on functions f(gk) = theta(k^-1) f(g), basis
// indexed by (left coset t_i, basis vector of V).
// With `over` set, induces inside that intermediate subgroup instead of G.
Rep induce(const Group& G, const SubgroupPtr& K, const Rep& theta, std::string label = "",
           const SubgroupPtr& over = nullptr);
std::vector<int> induce_transversal(const Group& G, const Subgroup& K);

// GL(2,F_q) builders. `psi` characters live on F_q.
Rep onedim(const GL2& G, const MultChar& psi);
Rep parabolic_full(const GL2& G, const MultChar& psi1, const MultChar& psi2);
Rep parabolic_q(const GL2& G, const MultChar& psi);
// Cuspidal rep on L(F^*) for the entries' field e.base, restricted to `dom`
// (whose matrix entries must all lie in e.base).
Rep cuspidal(const GL2& G, const SubgroupPtr& dom, const Extension& e, const AddChar& chi, const MultChar& nu);
Rep cuspidal(const GL2& G, const MultChar& nu);  // F_q level, chi of parameter 1

struct RepCheck {
  double unitarity = 0;
  double homomorphism = 0;
  bool exhaustive = true;
};
RepCheck check_rep(const Rep& r, std::uint64_t seed = 0);

CVec character(const Rep& r);  // by position in dom->elems
// (1/|K|) sum a conj(b), rounded; throws if far from an integer.
int multiplicity(const CVec& a, const CVec& b);
double inner_product_raw(const CVec& a, const CVec& b);
// Max deviation of a class function from constancy on the classes.
double class_constancy(const Group& G, const CVec& chi_on_G, const ConjugacyClasses& cc);

// Orthonormal basis (normalized Hilbert-Schmidt) of Hom_dom(r1, r2):
// X with r2(g) X = X r1(g). Cross-checked against characters when check.
std::vector<Mat> hom_space(const Rep& r1, const Rep& r2, bool check = true);

// <A,B> = (1/cols) tr(B^* A)
cd hs_inner(const Mat& A, const Mat& B);

}  // namespace mft
