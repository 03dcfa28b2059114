#pragma once

#include <memory>
#include <vector>

#include "mft/common.hpp"

namespace mft {

// F_{p^d} for d in {1,2,4}, built as a tower of quadratic extensions.
// An element is an integer in [0,q): its base-p digits are the coordinates
// in the tower basis. At each level, A + B*X is stored as A + Q*B where Q is
// the order of the level below and X^2 is that level's generator.
class Field {
 public:
  static std::shared_ptr<const Field> build(int p, int d);

  int p() const { return p_; }
  int d() const { return d_; }
  int q() const { return q_; }
  int gen() const { return gen_; }
  // Order of the level below (0 for a prime field).
  int sub_order() const { return sub_ ? sub_->q_ : 0; }
  const std::shared_ptr<const Field>& sub() const { return sub_; }

  int add(int x, int y) const;
  int neg(int x) const { return neg_[x]; }
  int minus(int x, int y) const { return add(x, neg_[y]); }
  int mul(int x, int y) const {
    if (x == 0 || y == 0) return 0;
    int s = log_[x] + log_[y];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  int inv(int x) const;
  int div(int x, int y) const { return mul(x, inv(y)); }
  int pow(int x, long long e) const;
  int log(int x) const;
  int exp(long long k) const;
  // Integer n reduced into the prime field.
  int from_int(long long n) const;
  bool is_square(int x) const { return x == 0 || log(x) % 2 == 0; }
  int frobenius(int x) const { return pow(x, p_); }
  // Absolute trace to F_p, returned as an integer in [0,p).
  int abs_trace(int x) const { return abs_trace_[x]; }
  int order_of(int x) const;

 private:
  Field() = default;
  int slow_mul(int x, int y) const;

  int p_ = 0, d_ = 0, q_ = 0, gen_ = 0;
  std::shared_ptr<const Field> sub_;
  std::vector<int> log_, exp_, neg_, add_, abs_trace_;
};

using FieldPtr = std::shared_ptr<const Field>;

// The quadratic extension base[X]/(X^2 - eta) with eta the base generator.
struct Extension {
  FieldPtr base, ext;
  int i_elem = 0;

  int embed(int x) const { return x; }
  int make(int a, int b) const { return a + base->q() * b; }
  int re(int z) const { return z % base->q(); }
  int im(int z) const { return z / base->q(); }
  int conj(int z) const { return make(re(z), base->neg(im(z))); }
  int norm(int z) const { return ext->mul(z, conj(z)); }
  int trace(int z) const { return ext->add(z, conj(z)); }
  bool in_base(int z) const { return z < base->q(); }
  int eta() const { return base->gen(); }
};

Extension quadratic_extension(const FieldPtr& base);

class MultChar {
 public:
  MultChar() = default;
  MultChar(FieldPtr f, long long k);

  const FieldPtr& field() const { return f_; }
  int k() const { return k_; }
  cd operator()(int x) const;
  // No zero check; the caller guarantees x != 0.
  cd at(int x) const { return tab_[x]; }
  bool operator==(const MultChar& o) const { return f_ == o.f_ && k_ == o.k_; }
  MultChar operator*(const MultChar& o) const;
  MultChar conj() const;

 private:
  FieldPtr f_;
  int k_ = 0;
  CVec tab_;
};

class AddChar {
 public:
  AddChar() = default;
  AddChar(FieldPtr f, int a);
  // chi~(x + i y) = chi(x) on the extension.
  AddChar lift(const Extension& e) const;

  const FieldPtr& field() const { return f_; }
  int a() const { return a_; }
  cd operator()(int x) const { return tab_[x]; }

 private:
  FieldPtr f_;
  int a_ = 0;
  CVec tab_;
};

struct CharPredicates {
  bool indecomposable;
  MultChar sharp;
  MultChar bar;
};

CharPredicates char_predicates(const Extension& e, const MultChar& nu);
int sharp_index(const Extension& e, int k);
int bar_index(const Extension& e, int k);
bool is_indecomposable(const Extension& e, int k);

}  // namespace mft
