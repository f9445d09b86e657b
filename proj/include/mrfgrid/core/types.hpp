#pragma once

#include <Eigen/Core>

namespace mrfgrid {

// Parameter and statistic vectors have dimension 1 (Potts) or 2 (autologistic).
// Fixed maximum size keeps them on the stack.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 2, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 2, 2>;

using ParamPoint = Vec;

inline Vec make_vec(double a) {
  Vec v(1);
  v << a;
  return v;
}

inline Vec make_vec(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace mrfgrid
