#include "mft/kloosterman.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace mft {

KloostermanTable kloosterman_table(const Extension& e, const AddChar& chi, const MultChar& nu) {
  if (chi.field() != e.base) throw UsageError("additive character must live on the base field");
  if (chi.a() == 0) throw UsageError("additive character must be nontrivial");
  if (nu.field() != e.ext) throw UsageError("multiplicative character must live on the extension");
  if (!is_indecomposable(e, nu.k())) throw UsageError("Kloosterman sums need an indecomposable character");
  const int q = e.base->q();
  KloostermanTable t{e, chi, nu, CVec(q, 0.0), std::vector<int>(q, 0)};
  for (int w = 1; w < e.ext->q(); ++w) {
    int x = e.norm(w);
    t.values[x] += chi(e.re(e.trace(w))) * nu.at(w);
    t.fiber_size[x]++;
  }
  for (int x = 1; x < q; ++x) t.values[x] /= double(q);
  return t;
}

std::shared_ptr<const KloostermanTable> kloosterman_cached(const Extension& e, const AddChar& chi,
                                                           const MultChar& nu) {
  static std::mutex mu;
  static std::map<std::tuple<const Field*, int, int>, std::shared_ptr<const KloostermanTable>> cache;
  auto key = std::make_tuple(e.ext.get(), chi.a(), nu.k());
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const KloostermanTable>(kloosterman_table(e, chi, nu));
  cache.emplace(key, p);
  return p;
}

double KloostermanReport::max() const {
  return std::max({dev_orth, dev_twisted, dev_trace, dev_trace_base, dev_conj});
}

KloostermanReport verify_kloosterman_identities(const KloostermanTable& t) {
  const Field& B = *t.e.base;
  const Field& X = *t.e.ext;
  const int q = B.q();
  const int m1 = B.neg(1);
  const cd nu_m1 = t.nu.at(m1);
  KloostermanReport r;
  for (int x = 1; x < q; ++x) {
    cd lhs_conj = std::conj(t.values[x]);
    cd rhs_conj = t.values[x] * std::conj(t.nu.at(B.neg(x)));
    r.dev_conj = std::max(r.dev_conj, std::abs(lhs_conj - rhs_conj));
    for (int y = 1; y < q; ++y) {
      cd s1 = 0, s2 = 0;
      for (int z = 1; z < q; ++z) {
        cd term = t.values[B.mul(x, z)] * t.values[B.mul(y, z)] * t.nu.at(B.inv(z));
        s1 += term;
        s2 += term * t.chi(z);
      }
      cd e1 = (x == y) ? t.nu.at(B.neg(x)) : cd(0);
      cd e2 = -t.chi(B.neg(B.add(x, y))) * nu_m1 * t.values[B.mul(x, y)];
      r.dev_orth = std::max(r.dev_orth, std::abs(s1 - e1));
      r.dev_twisted = std::max(r.dev_twisted, std::abs(s2 - e2));
    }
  }
  for (int z = 1; z < X.q(); ++z) {
    int tr = t.e.re(t.e.trace(z));
    int nm = t.e.norm(z);
    cd s = 0;
    for (int a = 1; a < q; ++a) {
      int ai = B.inv(a);
      s += t.nu.at(B.neg(a)) * t.chi(B.mul(ai, tr)) * t.values[B.mul(B.mul(ai, ai), nm)];
    }
    cd e = t.nu.at(z) + t.nu.at(t.e.conj(z));
    if (t.e.in_base(z)) {
      r.dev_trace_base = std::max(r.dev_trace_base, std::abs(s - t.nu.at(z)));
      r.literal_base_gap = std::max(r.literal_base_gap, std::abs(s - e));
    } else {
      r.dev_trace = std::max(r.dev_trace, std::abs(s - e));
    }
  }
  return r;
}

}  // namespace mft
