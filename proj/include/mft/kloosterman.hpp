#pragma once

#include <memory>

#include "mft/ff.hpp"

namespace mft {

// j(x) = (1/q) sum_{w conj(w) = x} chi(w + conj w) nu(w), x in base^*,
// with q the base order. Used with (F_{q^2}/F_q) for j and (F_{q^4}/F_{q^2})
// for J.
struct KloostermanTable {
  Extension e;
  AddChar chi;  // on the base
  MultChar nu;  // on the extension, indecomposable
  CVec values;  // indexed by base element; values[0] unused
  std::vector<int> fiber_size;

  cd operator()(int x) const {
    if (x == 0) throw NumericError("Kloosterman sum at 0");
    return values[x];
  }
};

KloostermanTable kloosterman_table(const Extension& e, const AddChar& chi, const MultChar& nu);
std::shared_ptr<const KloostermanTable> kloosterman_cached(const Extension& e, const AddChar& chi,
                                                           const MultChar& nu);

struct KloostermanReport {
  double dev_orth = 0;     // sum_z j(xz) j(yz) nu(1/z) = delta nu(-x)
  double dev_twisted = 0;  // ... chi(z) = -chi(-x-y) nu(-1) j(xy)
  // sum_a nu(-a) chi((z+zb)/a) j(z zb/a^2) = nu(z) + nu(zb), for z outside the base
  double dev_trace = 0;
  // On the base the same sum equals nu(z), not 2 nu(z).
  double dev_trace_base = 0;
  // Literal gap |sum - 2 nu(z)| on the base; reported, not part of max().
  double literal_base_gap = 0;
  double dev_conj = 0;     // conj j(x) = j(x) conj nu(-x)
  double max() const;
};

KloostermanReport verify_kloosterman_identities(const KloostermanTable& t);

}  // namespace mft
