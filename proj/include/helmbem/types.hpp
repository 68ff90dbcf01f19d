// Copyright (c) 2026 helm-bem developers
// SPDX-License-Identifier: MIT
#ifndef HELMBEM_TYPES_HPP
#define HELMBEM_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace helmbem {

using Real = double;
using Complex = std::complex<double>;
using Index = Eigen::Index;

using Vec3 = Eigen::Vector3d;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXc = Matrix<Complex>;
using VectorXc = Vector<Complex>;
using VectorXr = Vector<Real>;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Complex kImag{0.0, 1.0};

}  // namespace helmbem

#endif  // HELMBEM_TYPES_HPP
