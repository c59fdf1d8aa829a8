#pragma once
#include <stdexcept>
#include <string>

#include "floquet/types.hpp"

namespace floquet {

struct SymmetryViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- basic polynomial helpers -------------------------------------------
CPoly poly_trim(CPoly p, double rel = 0.0);
CPoly poly_derivative(const CPoly& p);
RPoly poly_derivative(const RPoly& p);
cplx poly_eval(const CPoly& p, cplx x);
double poly_eval(const RPoly& p, double x);
CPoly poly_mul(const CPoly& a, const CPoly& b);
// Roots from the companion matrix (dense eigenvalues).
std::vector<cplx> poly_roots(const CPoly& p);

// --- symmetric functions of a monodromy matrix ---------------------------
// e_0..e_n from power sums tr(M^j), j = 1..n, by Newton's identities.
std::vector<cplx> elementary_from_traces(const std::vector<cplx>& traces);
// e_0..e_n as sums of principal minors. Stable when M is badly scaled.
std::vector<cplx> elementary_from_minors(const CMat& M);
// d e_k / d lambda given M and dM/dlambda (Jacobi's formula on each minor).
std::vector<cplx> elementary_derivative(const CMat& M, const CMat& dM);

// p(mu) = sum_k (-mu)^k e_{n-k}
CPoly charpoly_from_elementary(const std::vector<cplx>& e);
CPoly charpoly_from_monodromy(const CMat& M);
// d p / d lambda from the derivatives of e_k.
CPoly charpoly_derivative(const std::vector<cplx>& de);

// f_k = Re e_{(k+1)/2} (k odd), Im e_{k/2} (k even), k = 1..n-1.
std::vector<double> floquet_discriminant(const std::vector<cplx>& e);
// Inverse of the above for a self-inversive pencil with e_n = 1.
std::vector<cplx> elementary_from_discriminant(const std::vector<double>& f, int n);

// --- resultants and discriminants ----------------------------------------
// Sylvester resultant. Formal degrees are the vector sizes minus one.
cplx resultant(const CPoly& p, const CPoly& q);
// (-1)^{n(n-1)/2} res(p, p') / lead(p)
cplx discriminant(const CPoly& p);

// --- Cayley transform -----------------------------------------------------
struct CayleyResult {
  CPoly complex;      // (1 - i nu)^n p((1 + i nu)/(1 - i nu))
  RPoly real;         // complex * exp(-i phase), imaginary part dropped
  double phase = 0;   // rotation that makes the transform real
  double imag_residual = 0;  // max |Im| after rotation, relative to max |coef|
  int degree_drop = 0;       // multiplicity of mu = -1 as a root (numerically)
};
// Throws SymmetryViolation when p is not self-inversive within tol.
CayleyResult cayley_transform(const CPoly& p, double tol = 1e-8);

// --- real root counting ---------------------------------------------------
struct RootCount {
  int count = 0;
  bool degenerate = false;
};
// Distinct real roots in (a, b]. Infinite bounds are allowed.
RootCount sturm_count(const RPoly& p, double a, double b);
// Roots of a self-inversive p on the unit circle, counted with multiplicity
// when simple; degenerate when a repeated root is detected.
RootCount unit_circle_root_count(const CPoly& p, double tol = 1e-8);

}  // namespace floquet
