#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace covfun {

// Points and directions live in dimension 2 or 3; fixed max size keeps them
// off the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;
using Points = std::vector<Vec>;

inline constexpr double kGeoTol = 1e-9;
inline constexpr double kBoundaryTol = 1e-7;
inline constexpr double kCoverMargin = 1e-7;
inline constexpr int kMaxDim = 3;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchBudget {
  double max_time = 60.0;
  std::int64_t max_iterations = 1000000;
  std::uint64_t seed = 1;
  int starts = 16;
};

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace covfun
