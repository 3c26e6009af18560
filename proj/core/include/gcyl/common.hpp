#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gcyl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Error taxonomy. The CLI maps SchemaError to exit 2 and ConditioningError to exit 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SignatureMismatch : Error {
  using Error::Error;
};
struct NullVectorError : Error {
  using Error::Error;
};
struct DomainError : Error {  // boundary margin, window, interval
  using Error::Error;
};
struct DegenerateMetric : Error {
  using Error::Error;
};
struct GaugeFailure : Error {
  using Error::Error;
};
struct ConditioningError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct SchemaError : Error {
  using Error::Error;
};

// mt19937_64 is fully specified by the standard; the std distributions are not,
// so the mapping to doubles is done here to keep seeded runs portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t bits() { return eng_(); }
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {  // Box-Muller
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1)), a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }
  int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gcyl
