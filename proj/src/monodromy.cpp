#include "floquet/monodromy.hpp"

#include <cmath>

#include "floquet/polyalg.hpp"

namespace floquet {

namespace {

void lambda_derivative(const SpectralProblem& p, double x, cplx lambda, CMat& out, CMat& tmp) {
  if (p.evalAlambda) {
    p.evalAlambda(x, lambda, out);
    return;
  }
  const double h = 1e-6 * std::max(1.0, std::abs(lambda));
  p.evalA(x, lambda + h, out);
  p.evalA(x, lambda - h, tmp);
  out = (out - tmp) / (2.0 * h);
}

double trace_integral(const SpectralProblem& p, cplx lambda, cplx& integral) {
  // periodic trapezoid rule
  const int N = 256;
  CMat A(p.n, p.n);
  integral = 0;
  for (int j = 0; j < N; ++j) {
    p.evalA(p.T * j / N, lambda, A);
    integral += A.trace();
  }
  integral *= p.T / N;
  return std::abs(integral);
}

StepControl control_from(const MonodromyOptions& opt) {
  StepControl ctl;
  ctl.rtol = opt.rtol;
  ctl.atol = opt.atol;
  return ctl;
}

}  // namespace

bool is_excluded(const SpectralProblem& p, cplx lambda, double tol) {
  for (auto z : p.excluded)
    if (std::abs(lambda - z) <= tol) return true;
  return false;
}

CMat propagate(const SpectralProblem& problem, cplx lambda, double x0, double x1,
               const StepControl& ctl, StepStats* stats) {
  const int n = problem.n;
  CMat A(n, n);
  auto rhs = [&](double x, const CMat& Y, CMat& dY) {
    problem.evalA(x, lambda, A);
    dY.noalias() = A * Y;
  };
  return integrate_rk87(rhs, x0, x1, CMat(CMat::Identity(n, n)), ctl, stats);
}

MonodromyResult integrate_monodromy(const SpectralProblem& problem, cplx lambda,
                                    const MonodromyOptions& opt) {
  if (is_excluded(problem, lambda))
    throw SingularParameterError("integrate_monodromy: lambda is excluded for " + problem.name);
  const int n = problem.n;
  const StepControl ctl = control_from(opt);
  StepStats stats;
  MonodromyResult res;
  res.lambda = lambda;

  if (opt.withDerivative) {
    CMat A(n, n), Al(n, n), tmp(n, n);
    auto rhs = [&](double x, const CMat& Y, CMat& dY) {
      problem.evalA(x, lambda, A);
      lambda_derivative(problem, x, lambda, Al, tmp);
      dY.leftCols(n).noalias() = A * Y.leftCols(n);
      dY.rightCols(n).noalias() = A * Y.rightCols(n);
      dY.rightCols(n).noalias() += Al * Y.leftCols(n);
    };
    CMat Y0 = CMat::Zero(n, 2 * n);
    Y0.leftCols(n).setIdentity();
    CMat Y = integrate_rk87(rhs, 0.0, problem.T, Y0, ctl, &stats);
    res.M = Y.leftCols(n);
    res.Mlambda = Y.rightCols(n);
  } else {
    res.M = propagate(problem, lambda, 0.0, problem.T, ctl, &stats);
  }
  res.steps = stats.accepted + stats.rejected;

  Eigen::JacobiSVD<CMat> svd(res.M);
  const auto& sv = svd.singularValues();
  res.condition = sv(n - 1) > 0 ? sv(0) / sv(n - 1) : INFINITY;
  // det of a badly conditioned M loses ~cond*eps to rounding, so the Liouville
  // check then uses the product of the panel determinants
  cplx panelDet = 0;
  const bool usePanels = opt.panels > 1 && res.condition > opt.detConditionLimit;
  if (usePanels) {
    CMat P = CMat::Identity(n, n);
    panelDet = 1.0;
    for (int k = 0; k < opt.panels; ++k) {
      const double a = problem.T * k / opt.panels, b = problem.T * (k + 1) / opt.panels;
      const CMat Pk = propagate(problem, lambda, a, b, ctl, &stats);
      panelDet *= Pk.determinant();
      P = Pk * P;
    }
    if (res.condition > opt.conditionLimit) {
      res.lowConfidence = true;
      res.M = P;
    }
  }

  res.e = elementary_from_minors(res.M);
  if (res.Mlambda) res.de = elementary_derivative(res.M, *res.Mlambda);

  cplx expected = 1.0;
  if (!problem.traceFree) {
    cplx trint = 0;
    trace_integral(problem, lambda, trint);
    expected = std::exp(trint);
  }
  res.detResidualDirect = std::abs(res.e[n] - expected) / std::abs(expected);
  res.detResidual = usePanels ? std::abs(panelDet - expected) / std::abs(expected)
                              : res.detResidualDirect;
  return res;
}

SymmetryResiduals verify_generalized_hamiltonian_symmetry(const SpectralProblem& problem,
                                                          cplx lambda,
                                                          const MonodromyOptions& opt) {
  if (!problem.evalB) throw std::invalid_argument("symmetry check needs B for " + problem.name);
  if (is_excluded(problem, lambda) || is_excluded(problem, -lambda))
    throw SingularParameterError("symmetry check: lambda is excluded for " + problem.name);
  const int n = problem.n;
  const CMat B = problem.evalB(lambda);
  Eigen::FullPivLU<CMat> luB(B);
  if (!luB.isInvertible())
    throw SingularParameterError("symmetry check: B is singular at lambda");

  SymmetryResiduals r;
  CMat Ap(n, n), Am(n, n);
  for (int j = 0; j < 32; ++j) {
    const double x = problem.T * j / 32.0;
    problem.evalA(x, lambda, Ap);
    problem.evalA(x, -lambda, Am);
    const CMat R = Ap.transpose() * B + B * Am;
    const double scale = B.norm() * (Ap.norm() + Am.norm());
    r.residualA2 = std::max(r.residualA2, R.norm() / std::max(scale, 1e-300));
  }

  MonodromyOptions o = opt;
  o.withDerivative = false;
  const CMat Mp = integrate_monodromy(problem, lambda, o).M;
  const CMat Mm = integrate_monodromy(problem, -lambda, o).M;
  // B^{-T} Mm^{-T} B^T = (B^T)^{-1} (Mm^T)^{-1} B^T
  const CMat X = B.transpose().fullPivLu().solve(Mm.transpose().fullPivLu().solve(B.transpose()));
  r.residualM = (Mp - X).norm() / std::max(1.0, Mp.norm());
  return r;
}

FloquetSample floquet_sample(const SpectralProblem& problem, cplx lambda,
                             const MonodromyOptions& opt) {
  if (lambda.real() != 0.0)
    throw std::invalid_argument("floquet_sample: lambda must be purely imaginary");
  FloquetSample s;
  s.lambda = lambda;
  s.mono = integrate_monodromy(problem, lambda, opt);
  const auto& e = s.mono.e;
  const int n = problem.n;
  s.f = floquet_discriminant(e);
  if (problem.traceFree) {
    for (int k = 0; k <= n; ++k)
      s.imagResidual =
          std::max(s.imagResidual, std::abs(e[k] - std::conj(e[n - k])) / (1.0 + std::abs(e[k])));
  }
  return s;
}

}  // namespace floquet
