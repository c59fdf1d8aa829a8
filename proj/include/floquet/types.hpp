#pragma once
#include <complex>
#include <vector>
#include <Eigen/Dense>

namespace floquet {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Polynomials are stored with ascending coefficients: p[k] multiplies x^k.
using CPoly = std::vector<cplx>;
using RPoly = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

}  // namespace floquet
