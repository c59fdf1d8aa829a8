#pragma once
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "floquet/integrator.hpp"
#include "floquet/types.hpp"

namespace floquet {

struct SingularParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// v_x = A(x, lambda) v on one period [0, T].
struct SpectralProblem {
  std::string name;
  int n = 0;
  double T = 0;
  // Writes A(x, lambda) into the (pre-sized) output.
  std::function<void(double, cplx, CMat&)> evalA;
  // dA/dlambda; when absent a centered difference of evalA is used.
  std::function<void(double, cplx, CMat&)> evalAlambda;
  std::function<CMat(cplx)> evalB;
  bool traceFree = true;
  std::vector<cplx> excluded;
};

struct MonodromyOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  bool withDerivative = false;
  // panels used when M is badly conditioned
  int panels = 8;
  double conditionLimit = 1e12;
  // above this the determinant is taken panel by panel
  double detConditionLimit = 1e6;
};

struct MonodromyResult {
  cplx lambda;
  CMat M;
  std::optional<CMat> Mlambda;
  std::vector<cplx> e;   // e_0..e_n
  std::vector<cplx> de;  // d e_k / d lambda, when the derivative was requested
  double detResidual = 0;        // |det M - expected|, panelwise when M is ill conditioned
  double detResidualDirect = 0;  // same, from the assembled M
  double condition = 1;
  bool lowConfidence = false;
  long steps = 0;
};

struct FloquetSample {
  cplx lambda;
  std::vector<double> f;
  double imagResidual = 0;  // size of parts that must vanish on the axis
  MonodromyResult mono;
};

bool is_excluded(const SpectralProblem& p, cplx lambda, double tol = 1e-14);

MonodromyResult integrate_monodromy(const SpectralProblem& problem, cplx lambda,
                                    const MonodromyOptions& opt = {});

// Propagator over [x0, x1] (no derivative).
CMat propagate(const SpectralProblem& problem, cplx lambda, double x0, double x1,
               const StepControl& ctl, StepStats* stats = nullptr);

struct SymmetryResiduals {
  double residualA2 = 0;
  double residualM = 0;
};
// max_x |A^T(x,l) B(l) + B(l) A(x,-l)| over 32 points, and
// |M(l) - B^{-T}(l) M^{-T}(-l) B^T(l)|; both relative to the size of the terms.
SymmetryResiduals verify_generalized_hamiltonian_symmetry(const SpectralProblem& problem,
                                                          cplx lambda,
                                                          const MonodromyOptions& opt = {});

// lambda must lie on the imaginary axis.
FloquetSample floquet_sample(const SpectralProblem& problem, cplx lambda,
                             const MonodromyOptions& opt = {});

}  // namespace floquet
