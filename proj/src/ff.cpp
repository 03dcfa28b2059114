#include "mft/ff.hpp"

#include <map>
#include <mutex>
#include <string>

namespace mft {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int r = 2; r * r <= n; ++r)
    if (n % r == 0) return false;
  return true;
}

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int r = 2; r * r <= n; ++r) {
    if (n % r) continue;
    out.push_back(r);
    while (n % r == 0) n /= r;
  }
  if (n > 1) out.push_back(n);
  return out;
}

int digit_add(int x, int y, int p, int d) {
  int out = 0, scale = 1;
  for (int i = 0; i < d; ++i) {
    int s = (x % p + y % p) % p;
    out += s * scale;
    x /= p;
    y /= p;
    scale *= p;
  }
  return out;
}

}  // namespace

std::shared_ptr<const Field> Field::build(int p, int d) {
  if (p < 3 || !is_prime(p)) throw UsageError("field characteristic must be an odd prime, got " + std::to_string(p));
  if (d != 1 && d != 2 && d != 4) throw UsageError("extension degree must be 1, 2 or 4, got " + std::to_string(d));
  long long q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  if (q > 100000) throw UsageError("field order " + std::to_string(q) + " exceeds 10^5");

  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const Field>> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({p, d});
    if (it != cache.end()) return it->second;
  }
  FieldPtr sub;
  if (d > 1) sub = build(p, d / 2);

  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->d_ = d;
  f->q_ = int(q);
  f->sub_ = sub;
  f->neg_.resize(q);
  for (int x = 0; x < q; ++x) {
    int out = 0, scale = 1, y = x;
    for (int i = 0; i < d; ++i) {
      out += ((p - y % p) % p) * scale;
      y /= p;
      scale *= p;
    }
    f->neg_[x] = out;
  }
  if (q <= 1024) {
    f->add_.resize(q * q);
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) f->add_[x * q + y] = digit_add(x, y, p, d);
  }

  // Smallest element of order q-1.
  auto factors = prime_factors(int(q - 1));
  auto slow_pow = [&](int x, long long e) {
    int r = 1;
    while (e > 0) {
      if (e & 1) r = f->slow_mul(r, x);
      x = f->slow_mul(x, x);
      e >>= 1;
    }
    return r;
  };
  int g = 0;
  for (int c = 1; c < q && !g; ++c) {
    bool ok = true;
    for (int r : factors)
      if (slow_pow(c, (q - 1) / r) == 1) {
        ok = false;
        break;
      }
    if (ok) g = c;
  }
  if (!g) throw NumericError("no generator found");
  f->gen_ = g;
  f->exp_.resize(q - 1);
  f->log_.assign(q, -1);
  int x = 1;
  for (int k = 0; k < q - 1; ++k) {
    f->exp_[k] = x;
    f->log_[x] = k;
    x = f->slow_mul(x, g);
  }
  if (x != 1) throw NumericError("generator table did not close");

  f->abs_trace_.resize(q);
  for (int z = 0; z < q; ++z) {
    int t = 0, y = z;
    for (int i = 0; i < d; ++i) {
      t = f->add(t, y);
      y = f->pow(y, p);
    }
    if (t >= p) throw NumericError("absolute trace left the prime field");
    f->abs_trace_[z] = t;
  }

  std::lock_guard<std::mutex> lk(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(p, d), f);
  return it->second;
}

int Field::slow_mul(int x, int y) const {
  if (!sub_) return int((long long)x * y % p_);
  const Field& s = *sub_;
  int Q = s.q_;
  int a = x % Q, b = x / Q, c = y % Q, e = y / Q;
  int lo = s.add(s.mul(a, c), s.mul(s.gen_, s.mul(b, e)));
  int hi = s.add(s.mul(a, e), s.mul(b, c));
  return lo + Q * hi;
}

int Field::add(int x, int y) const {
  if (!add_.empty()) return add_[x * q_ + y];
  return digit_add(x, y, p_, d_);
}

int Field::inv(int x) const {
  if (x == 0) throw NumericError("inverse of zero");
  int l = log_[x];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

int Field::pow(int x, long long e) const {
  if (x == 0) {
    if (e == 0) return 1;
    if (e < 0) throw NumericError("negative power of zero");
    return 0;
  }
  long long n = q_ - 1;
  long long k = ((long long)log_[x] * (e % n)) % n;
  if (k < 0) k += n;
  return exp_[k];
}

int Field::log(int x) const {
  if (x <= 0 || x >= q_) throw NumericError("log of zero or out-of-range element");
  return log_[x];
}

int Field::exp(long long k) const {
  long long n = q_ - 1;
  k %= n;
  if (k < 0) k += n;
  return exp_[k];
}

int Field::from_int(long long n) const {
  n %= p_;
  if (n < 0) n += p_;
  return int(n);
}

int Field::order_of(int x) const {
  if (x == 0) throw NumericError("order of zero");
  int n = q_ - 1, l = log_[x];
  int g = n;
  int a = l;
  while (a) {
    int t = g % a;
    g = a;
    a = t;
  }
  return n / g;
}

Extension quadratic_extension(const FieldPtr& base) {
  if (base->d() == 4) throw UsageError("no quadratic extension above degree 4");
  Extension e;
  e.base = base;
  e.ext = Field::build(base->p(), base->d() * 2);
  e.i_elem = base->q();
  if (base->is_square(base->gen())) throw NumericError("eta is a square");
  if (e.ext->mul(e.i_elem, e.i_elem) != base->gen()) throw NumericError("i^2 != eta");
  return e;
}

MultChar::MultChar(FieldPtr f, long long k) : f_(std::move(f)) {
  int n = f_->q() - 1;
  k_ = int(((k % n) + n) % n);
  tab_.assign(f_->q(), cd(0, 0));
  for (int x = 1; x < f_->q(); ++x) tab_[x] = unit_root((long long)k_ * f_->log(x), n);
}

cd MultChar::operator()(int x) const {
  if (x == 0) throw NumericError("multiplicative character evaluated at 0");
  return tab_[x];
}

MultChar MultChar::operator*(const MultChar& o) const {
  if (f_ != o.f_) throw NumericError("characters over different fields");
  return MultChar(f_, k_ + o.k_);
}

MultChar MultChar::conj() const { return MultChar(f_, -k_); }

AddChar::AddChar(FieldPtr f, int a) : f_(std::move(f)), a_(a) {
  tab_.resize(f_->q());
  for (int x = 0; x < f_->q(); ++x) tab_[x] = unit_root(f_->abs_trace(f_->mul(a, x)), f_->p());
}

AddChar AddChar::lift(const Extension& e) const {
  if (e.base != f_) throw NumericError("lift: extension over a different base");
  AddChar out;
  out.f_ = e.ext;
  // chi~ agrees with the trace character of parameter a/2.
  out.a_ = e.ext->mul(a_, e.ext->inv(e.ext->from_int(2)));
  out.tab_.resize(e.ext->q());
  for (int z = 0; z < e.ext->q(); ++z) out.tab_[z] = tab_[e.re(z)];
  return out;
}

int bar_index(const Extension& e, int k) {
  long long n = e.ext->q() - 1;
  return int(((long long)k * e.base->q()) % n);
}

int sharp_index(const Extension& e, int k) {
  long long n = e.ext->q() - 1, m = e.base->q() - 1;
  long long L = e.ext->log(e.embed(e.base->gen()));
  // embed(gen) has order m, so L is a multiple of n/m.
  return int(((long long)k * (L / (n / m))) % m);
}

bool is_indecomposable(const Extension& e, int k) {
  long long n = e.ext->q() - 1;
  return ((k % n) + n) % n != bar_index(e, int(((k % n) + n) % n));
}

CharPredicates char_predicates(const Extension& e, const MultChar& nu) {
  if (nu.field() != e.ext) throw UsageError("character does not live on the extension");
  return {is_indecomposable(e, nu.k()), MultChar(e.base, sharp_index(e, nu.k())),
          MultChar(e.ext, bar_index(e, nu.k()))};
}

}  // namespace mft
