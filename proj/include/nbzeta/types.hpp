// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Core>

namespace nbzeta {

template <class Scalar_>
using complex_type = std::complex<Scalar_>;

template <class Scalar_, int Rows_ = Eigen::Dynamic, int Cols_ = Eigen::Dynamic>
using colmat_type = Eigen::Matrix<Scalar_, Rows_, Cols_, Eigen::ColMajor>;

template <class Scalar_, int Rows_ = Eigen::Dynamic>
using vec_type = Eigen::Matrix<Scalar_, Rows_, 1>;

using Complex = complex_type<double>;

// Parameter matrices are m x d and column-major, so the flat view of a
// matrix is (c_11, c_21, ..., c_m1, c_12, ..., c_md): dimension-major.
using ParamMatrix = colmat_type<double>;
using Vector = vec_type<double>;
using Matrix = colmat_type<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

template <class Scalar_>
bool is_finite(const complex_type<Scalar_>& z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace nbzeta
