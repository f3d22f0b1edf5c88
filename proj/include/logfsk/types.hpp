#pragma once

#include <Eigen/Core>

namespace logfsk {

using Index = Eigen::Index;

template <typename Scalar>
using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Double precision is the working scalar throughout the library.
using VecX = Vec<double>;
using MatX = Mat<double>;

}  // namespace logfsk
