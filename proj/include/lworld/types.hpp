#pragma once

#include <Eigen/Dense>

namespace lworld {

template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <class Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Mat2d = Mat2<double>;
using Vec2d = Vec2<double>;

}  // namespace lworld
