#include "mft/group.hpp"

#include <algorithm>
#include <deque>

namespace mft {

void Group::finalize(int n, int identity, std::vector<int> inverses, int max_table) {
  n_ = n;
  id_ = identity;
  inv_ = std::move(inverses);
  table_.clear();
  if (n <= max_table) {
    std::vector<int> t(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[std::size_t(a) * n + b] = mul_impl(a, b);
    table_ = std::move(t);
  }
}

int Group::pow(int a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  int r = id_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int Group::element_order(int a) const {
  int k = 1, x = a;
  while (x != id_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

TableGroup::TableGroup(std::vector<std::vector<int>> table, std::vector<std::string> names)
    : t_(std::move(table)), names_(std::move(names)) {
  const int n = int(t_.size());
  if (n == 0) throw UsageError("empty multiplication table");
  for (auto& row : t_) {
    if (int(row.size()) != n) throw UsageError("multiplication table is not square");
    std::vector<char> seen(n, 0);
    for (int x : row) {
      if (x < 0 || x >= n || seen[x]) throw UsageError("multiplication table rows must be permutations");
      seen[x] = 1;
    }
  }
  int id = -1;
  for (int e = 0; e < n && id < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = t_[e][a] == a && t_[a][e] == a;
    if (ok) id = e;
  }
  if (id < 0) throw UsageError("multiplication table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t_[t_[a][b]][c] != t_[a][t_[b][c]]) throw UsageError("multiplication table is not associative");
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t_[a][b] == id) inv[a] = b;
  finalize(n, id, std::move(inv), 0);
  if (names_.size() != std::size_t(n)) names_.clear();
}

std::string TableGroup::describe(int a) const {
  return names_.empty() ? std::to_string(a) : names_[a];
}

Subgroup make_subgroup(const Group& G, std::vector<int> elems, std::string name, bool check) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subgroup K;
  K.name = std::move(name);
  K.mask.assign(G.order(), 0);
  K.local.assign(G.order(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    int g = elems[i];
    if (g < 0 || g >= G.order()) throw UsageError("subgroup element out of range");
    K.mask[g] = 1;
    K.local[g] = int(i);
  }
  K.elems = std::move(elems);
  if (check) {
    if (!K.mask[G.identity()]) throw UsageError("subgroup " + K.name + " misses the identity");
    for (int a : K.elems) {
      if (!K.mask[G.inv(a)]) throw UsageError("subgroup " + K.name + " not closed under inverse");
      for (int b : K.elems)
        if (!K.mask[G.mul(a, b)]) throw UsageError("subgroup " + K.name + " not closed under product");
    }
  }
  return K;
}

Subgroup generated_subgroup(const Group& G, const std::vector<int>& gens, std::string name) {
  std::vector<char> seen(G.order(), 0);
  std::vector<int> out{G.identity()};
  seen[G.identity()] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int g : gens) {
      int x = G.mul(out[i], g);
      if (!seen[x]) {
        seen[x] = 1;
        out.push_back(x);
      }
    }
  return make_subgroup(G, std::move(out), std::move(name), false);
}

Subgroup whole_group(const Group& G) {
  std::vector<int> all(G.order());
  for (int i = 0; i < G.order(); ++i) all[i] = i;
  return make_subgroup(G, std::move(all), "G", false);
}

bool is_normal(const Group& G, const Subgroup& N) {
  auto gens = generators(G, whole_group(G));
  for (int g : gens)
    for (int n : N.elems)
      if (!N.contains(G.conj(g, n))) return false;
  return true;
}

std::vector<int> generators(const Group& G, const Subgroup& K) {
  std::vector<int> gens;
  std::vector<char> in(G.order(), 0);
  in[G.identity()] = 1;
  std::vector<int> span{G.identity()};
  for (int g : K.elems) {
    if (in[g]) continue;
    gens.push_back(g);
    // Re-close the span under all generators.
    std::fill(in.begin(), in.end(), 0);
    span.assign(1, G.identity());
    in[G.identity()] = 1;
    for (std::size_t i = 0; i < span.size(); ++i)
      for (int h : gens) {
        int x = G.mul(span[i], h);
        if (!in[x]) {
          in[x] = 1;
          span.push_back(x);
        }
      }
    if (int(span.size()) == K.size()) break;
  }
  return gens;
}

DoubleCosets double_cosets(const Group& G, const Subgroup& K) {
  DoubleCosets dc;
  const int n = G.order();
  dc.coset_of.assign(n, -1);
  std::vector<int> order;
  order.reserve(n);
  order.push_back(G.identity());
  for (int g = 0; g < n; ++g)
    if (g != G.identity()) order.push_back(g);
  std::vector<int> left(K.size());
  for (int s : order) {
    if (dc.coset_of[s] >= 0) continue;
    int id = int(dc.reps.size());
    dc.reps.push_back(s);
    std::vector<int> mem;
    for (int i = 0; i < K.size(); ++i) left[i] = G.mul(K.elems[i], s);
    for (int i = 0; i < K.size(); ++i)
      for (int k2 : K.elems) {
        int x = G.mul(left[i], k2);
        if (dc.coset_of[x] < 0) {
          dc.coset_of[x] = id;
          mem.push_back(x);
        }
      }
    std::sort(mem.begin(), mem.end());
    dc.members.push_back(std::move(mem));
    std::vector<int> st;
    int si = G.inv(s);
    for (int x : K.elems)
      if (K.contains(G.mul(G.mul(si, x), s))) st.push_back(x);
    dc.stab.push_back(std::move(st));
  }
  return dc;
}

ConjugacyClasses conjugacy_classes(const Group& G) {
  ConjugacyClasses cc;
  const int n = G.order();
  cc.class_of.assign(n, -1);
  auto gens = generators(G, whole_group(G));
  for (int g = 0; g < n; ++g) {
    if (cc.class_of[g] >= 0) continue;
    int id = int(cc.classes.size());
    std::vector<int> cls{g};
    cc.class_of[g] = id;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (int h : gens) {
        int x = G.conj(h, cls[i]);
        if (cc.class_of[x] < 0) {
          cc.class_of[x] = id;
          cls.push_back(x);
        }
      }
    std::sort(cls.begin(), cls.end());
    cc.classes.push_back(std::move(cls));
  }
  return cc;
}

std::vector<int> left_transversal(const Group& G, const Subgroup& K) {
  std::vector<char> seen(G.order(), 0);
  std::vector<int> reps;
  std::vector<int> order{G.identity()};
  for (int g = 0; g < G.order(); ++g)
    if (g != G.identity()) order.push_back(g);
  for (int g : order) {
    if (seen[g]) continue;
    reps.push_back(g);
    for (int k : K.elems) seen[G.mul(g, k)] = 1;
  }
  return reps;
}

}  // namespace mft
