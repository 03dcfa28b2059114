#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mft/common.hpp"

namespace mft {

// A finite group on indices 0..n-1.
class Group {
 public:
  virtual ~Group() = default;

  int order() const { return n_; }
  int identity() const { return id_; }
  int mul(int a, int b) const { return table_.empty() ? mul_impl(a, b) : table_[std::size_t(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  // g x g^-1
  int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }
  int pow(int a, long long e) const;
  int element_order(int a) const;
  bool has_table() const { return !table_.empty(); }
  virtual std::string describe(int a) const { return std::to_string(a); }

 protected:
  virtual int mul_impl(int a, int b) const = 0;
  // Call once the subclass can multiply. Builds the table when n <= max_table.
  void finalize(int n, int identity, std::vector<int> inverses, int max_table = 1000);

 private:
  int n_ = 0, id_ = 0;
  std::vector<int> inv_;
  std::vector<int> table_;
};

// A group given by an explicit multiplication table.
class TableGroup : public Group {
 public:
  explicit TableGroup(std::vector<std::vector<int>> table, std::vector<std::string> names = {});
  std::string describe(int a) const override;
  const std::vector<std::vector<int>>& table() const { return t_; }

 protected:
  int mul_impl(int a, int b) const override { return t_[a][b]; }

 private:
  std::vector<std::vector<int>> t_;
  std::vector<std::string> names_;
};

struct Subgroup {
  std::string name;
  std::vector<int> elems;   // sorted
  std::vector<char> mask;   // over the ambient group
  std::vector<int> local;   // ambient index -> position in elems, or -1

  int size() const { return int(elems.size()); }
  bool contains(int g) const { return mask[g] != 0; }
};

// Validates closure (exhaustively) unless check is false.
Subgroup make_subgroup(const Group& G, std::vector<int> elems, std::string name, bool check = true);
Subgroup generated_subgroup(const Group& G, const std::vector<int>& gens, std::string name);
Subgroup whole_group(const Group& G);
bool is_normal(const Group& G, const Subgroup& N);
// A small generating set, chosen greedily in index order.
std::vector<int> generators(const Group& G, const Subgroup& K);

struct DoubleCosets {
  std::vector<int> reps;                 // reps[0] is the identity
  std::vector<int> coset_of;             // ambient index -> coset id
  std::vector<std::vector<int>> members; // elements of K s K
  std::vector<std::vector<int>> stab;    // K_s = K cap s K s^-1
};

DoubleCosets double_cosets(const Group& G, const Subgroup& K);

struct ConjugacyClasses {
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;
};

ConjugacyClasses conjugacy_classes(const Group& G);

// Left coset representatives of G/K, identity first.
std::vector<int> left_transversal(const Group& G, const Subgroup& K);

}  // namespace mft
