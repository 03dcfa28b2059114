#include "mft/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace mft {

namespace {

double env_double(const char* name, double fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || !(v > 0)) return fallback;
  return v;
}

int env_int(const char* name, int fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  int v = std::atoi(s);
  return v > 0 ? v : fallback;
}

std::atomic<double> g_tol{env_double("MFT_TOLERANCE", 1e-8)};
std::atomic<int> g_threads{
    env_int("MFT_THREADS", std::max(1, int(std::thread::hardware_concurrency())))};

}  // namespace

double tolerance() { return g_tol.load(); }
void set_tolerance(double t) {
  if (!(t > 0)) throw UsageError("tolerance must be positive");
  g_tol.store(t);
}

int threads() { return g_threads.load(); }
void set_threads(int n) {
  if (n < 1) throw UsageError("thread count must be at least 1");
  g_threads.store(n);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
  int t = threads();
  if (t <= 1 || n < 64) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  t = int(std::min<std::int64_t>(t, n));
  std::vector<std::thread> pool;
  std::int64_t chunk = (n + t - 1) / t;
  for (int w = 0; w < t; ++w) {
    std::int64_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

cd pairwise_sum(const cd* x, std::size_t n) {
  if (n <= 16) {
    cd s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

double max_abs_diff(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw NumericError("max_abs_diff: size mismatch");
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double sup_norm(const CVec& a) {
  double m = 0;
  for (auto& x : a) m = std::max(m, std::abs(x));
  return m;
}

cd inner(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw NumericError("inner: size mismatch");
  cd s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

}  // namespace mft
