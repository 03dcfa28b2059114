#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mft {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using CVec = std::vector<cd>;

inline constexpr double kPi = 3.14159265358979323846;

// Bad input: the CLI maps this to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A computed quantity contradicts a structural expectation.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Global tolerance; MFT_TOLERANCE overrides the 1e-8 default.
double tolerance();
void set_tolerance(double t);

// Worker count; MFT_THREADS overrides hardware concurrency.
int threads();
void set_threads(int n);

// Runs body(i) for i in [0,n). Each index writes only its own output, so
// results do not depend on the thread count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

inline cd unit_root(std::int64_t k, std::int64_t n) {
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  double t = 2.0 * kPi * double(k) / double(n);
  return {std::cos(t), std::sin(t)};
}

// Pairwise summation, fixed order.
cd pairwise_sum(const cd* x, std::size_t n);
inline cd pairwise_sum(const CVec& v) { return pairwise_sum(v.data(), v.size()); }

double max_abs_diff(const CVec& a, const CVec& b);
double sup_norm(const CVec& a);

// <a,b> = sum a_i conj(b_i)
cd inner(const CVec& a, const CVec& b);

}  // namespace mft
