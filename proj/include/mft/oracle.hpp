#pragma once

#include <functional>

#include "mft/ff.hpp"

namespace mft {

// Definitional reference computations. They use only the field layer and
// Eigen; group elements are re-enumerated here and never looked up in the
// fast group tables.

struct OracleReport {
  std::string check;
  double max_dev = 0;
  double tol = 0;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

// GL(2,F) listed lexicographically by (a,b,c,d) with ad - bc != 0.
class NaiveGL2 {
 public:
  explicit NaiveGL2(FieldPtr F);
  int order() const { return int(elems_.size()); }
  const std::array<int, 4>& mat(int g) const { return elems_[g]; }
  int index(int a, int b, int c, int d) const;
  int mul(int x, int y) const;
  int inv(int x) const;
  int identity() const { return index(1, 0, 0, 1); }
  const Field& f() const { return *F_; }

 private:
  int mul_direct(int x, int y) const;
  FieldPtr F_;
  std::vector<int> table_;  // Cayley table, kept only for small groups
  std::vector<std::array<int, 4>> elems_;
  std::vector<int> index_;
};

// (f1 * f2)(g) = sum_h f1(h) f2(h^-1 g), every pair (h, g).
CVec naive_convolve(const NaiveGL2& G, const CVec& f1, const CVec& f2);

// (d / |K|) sum_{k in K} conj chi(k) rho(k); chi is given at the positions of K.
Mat naive_project(const std::vector<int>& K, const CVec& chi, int d, const std::function<Mat(int)>& rho);

// max over g, h of |sum_k phi(g k h) conj psi(k) - phi(g) phi(h)|, psi given at the positions of K.
// samples = 0 runs every pair; otherwise that many seeded random pairs.
double naive_functional_eq(const NaiveGL2& G, const std::vector<int>& K, const CVec& psi, const CVec& phi,
                           int samples = 0, std::uint64_t seed = 1);

// sum over double cosets K s K of dim Hom_{K cap sKs^-1}(Res theta, theta^s), by characters.
int naive_mackey_count(const NaiveGL2& G, const std::vector<int>& K, const CVec& theta_char);

// chi_{Ind}(g) = (1/|K|) sum_{x : x^-1 g x in K} theta(x^-1 g x), on all of G.
CVec naive_induced_character(const NaiveGL2& G, const std::vector<int>& K, const CVec& theta_char);

// dim {T : T r1(x) = r2(x) T for all x}, as the null space of the stacked linear system.
int naive_intertwiner_dim(const std::vector<Mat>& r1, const std::vector<Mat>& r2);

// Every fast-path/oracle comparison at field size q (q = 3 adds the triple-2 checks).
std::vector<OracleReport> oracle_suite(int q, std::uint64_t seed = 1, double tol = 1e-8);

}  // namespace mft
