#include "floquet/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "floquet/parallel.hpp"
#include "floquet/polyalg.hpp"

namespace floquet {

namespace {

double sq(double x) { return x * x; }

// fallback when a sign rule sits on its boundary
Classification with_fallback(Classification c, const std::vector<cplx>& e) {
  c.boundary = true;
  c.multiplicity = companion_unit_circle_count(e);
  return c;
}

std::vector<cplx> e_from_trace3(cplx f) { return {1.0, f, std::conj(f), 1.0}; }
std::vector<cplx> e_from_f4(double f1, double f2, double f3) {
  return {1.0, cplx(f1, f2), f3, cplx(f1, -f2), 1.0};
}

// log|x| + i arg(x) accumulated over products
struct LogValue {
  double logAbs = 0;
  double phase = 0;
  void mul(cplx z) {
    logAbs += std::log(std::abs(z));
    phase += std::arg(z);
  }
  int sign(double tol = 1e-6) const {
    const double c = std::cos(phase);
    if (std::abs(std::sin(phase)) > tol) return 0;
    return c > 0 ? 1 : -1;
  }
};

// log(exp(a) - exp(b)) as a complex log, stable when Re a >> Re b
cplx log_diff_exp(cplx a, cplx b) {
  if (b.real() > a.real()) return log_diff_exp(b, a) + cplx(0.0, kPi);
  return a + std::log(1.0 - std::exp(b - a));
}

// Theta-product asymptotics for exponents kappa_k (theta_k = exp(kappa_k T)).
WkbValue theta_product(const std::vector<cplx>& kappa, const std::vector<cplx>& dkappa,
                       double T) {
  const int n = static_cast<int>(kappa.size());
  cplx logDisc = 0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) logDisc += 2.0 * log_diff_exp(kappa[j] * T, kappa[k] * T);
  cplx logPhi = logDisc;
  if ((n * (n - 1) / 2) % 2) logPhi += cplx(0.0, kPi);
  for (int k = 0; k < n; ++k) logPhi += kappa[k] * T + std::log(T * dkappa[k]);
  auto sgn = [](cplx l) {
    const double s = std::sin(l.imag()), c = std::cos(l.imag());
    if (std::abs(s) > 1e-6) return 0;
    return c > 0 ? 1 : -1;
  };
  WkbValue w;
  w.logAbsDelta = logDisc.real();
  w.deltaSign = sgn(logDisc);
  w.logAbsPhi = logPhi.real();
  w.phiSign = sgn(logPhi);
  return w;
}

double log_abs_sinh(double a) {
  a = std::abs(a);
  return a + std::log((1.0 - std::exp(-2.0 * a)) / 2.0);
}
// log|cos b - cosh a|
double log_abs_cos_minus_cosh(double b, double a) {
  a = std::abs(a);
  return a + std::log(std::abs(0.5 * (1.0 + std::exp(-2.0 * a)) - std::cos(b) * std::exp(-a)));
}

}  // namespace

int companion_unit_circle_count(const std::vector<cplx>& e, double tol) {
  const auto roots = poly_roots(charpoly_from_elementary(e));
  int c = 0;
  for (auto r : roots)
    if (std::abs(std::abs(r) - 1.0) < tol) ++c;
  return c;
}

Classification classify2(double f, double tol) {
  Classification c;
  const double d = f * f - 4.0;
  c.quantities["Delta"] = d;
  c.multiplicity = d < 0 ? 2 : 0;
  if (std::abs(d) < tol * sq(1.0 + std::abs(f))) {
    c.boundary = true;
    c.multiplicity = 2;  // band edge, double eigenvalue on the circle
  }
  return c;
}

bool deltoid_contains(cplx f) {
  const int M = 2048;
  double wind = 0;
  cplx prev = 2.0 * std::exp(cplx(0.0, -kPi)) + std::exp(cplx(0.0, 2.0 * kPi)) - f;
  for (int j = 1; j <= M; ++j) {
    const double t = -kPi + 2.0 * kPi * j / M;
    const cplx cur = 2.0 * std::exp(cplx(0.0, t)) + std::exp(cplx(0.0, -2.0 * t)) - f;
    wind += std::arg(cur / prev);
    prev = cur;
  }
  return std::abs(wind) > kPi;
}

Classification classify3(cplx f, double tol) {
  Classification c;
  const double a2 = std::norm(f);
  const double d = a2 * a2 - 8.0 * (f * f * f).real() + 18.0 * a2 - 27.0;
  c.quantities["Delta"] = d;
  c.quantities["deltoid"] = deltoid_contains(f) ? 1.0 : 0.0;
  c.multiplicity = d < 0 ? 3 : 1;
  if (std::abs(d) < tol * std::pow(1.0 + std::abs(f), 4)) {
    c.boundary = true;
    c.multiplicity = 3;  // all three on the circle, counted with multiplicity
  }
  return c;
}

Classification classify4(double f1, double f2, double f3, double tol) {
  Classification c;
  const double s = f1 * f1 + f2 * f2;
  const double d = -4.0 * (std::pow(f1, 6) + std::pow(f2, 6)) - 12.0 * f1 * f1 * f2 * f2 * s +
                   s * s * f3 * f3 + 36.0 * (std::pow(f1, 4) - std::pow(f2, 4)) * f3 -
                   8.0 * (f1 * f1 - f2 * f2) * std::pow(f3, 3) -
                   60.0 * (std::pow(f1, 4) + std::pow(f2, 4)) + 312.0 * f1 * f1 * f2 * f2 +
                   16.0 * std::pow(f3, 4) - 80.0 * s * f3 * f3 + 288.0 * (f1 * f1 - f2 * f2) * f3 -
                   192.0 * s - 128.0 * f3 * f3 + 256.0;
  const double P = 8.0 * (2.0 * f1 + f3 + 2.0) * (2.0 * f3 - 12.0) - 48.0 * f2 * f2;
  const double D =
      -256.0 * (4.0 * std::pow(f1, 4) + 3.0 * std::pow(f2, 4) +
                f1 * f1 * (4.0 * f2 * f2 + sq(f3 - 6.0)) + f2 * f2 * (28.0 + 12.0 * f3 - f3 * f3) +
                4.0 * std::pow(f1, 3) * (2.0 + f3) - 4.0 * (f3 - 2.0) * sq(2.0 + f3) +
                16.0 * f1 * (4.0 + 2.0 * f2 * f2 - f3 * f3));
  c.quantities = {{"Delta", d}, {"P", P}, {"D", D}};
  const double sc = 1.0 + std::sqrt(s + f3 * f3);
  if (std::abs(d) < tol * std::pow(sc, 6) || std::abs(P) < tol * sc * sc ||
      std::abs(D) < tol * std::pow(sc, 4))
    return with_fallback(c, e_from_f4(f1, f2, f3));
  if (d < 0)
    c.multiplicity = 2;
  else
    c.multiplicity = (P < 0 && D < 0) ? 4 : 0;
  return c;
}

Classification classify4_trivialphase(double f, double g, double tol) {
  Classification c;
  const double a = 8.0 + f * f - 4.0 * g;
  const double b = 2.0 - 2.0 * f + g;
  const double d = -4096.0 * a * a * (2.0 + 2.0 * f + g) * (-2.0 + 2.0 * f - g);
  const double P = 16.0 * (g - 6.0) * b;
  const double D = -256.0 * a * b * b;
  c.quantities = {{"Delta", d}, {"P", P}, {"D", D}};
  const double sc = 1.0 + std::hypot(f, g);
  if (std::abs(d) < tol * std::pow(sc, 6) || std::abs(P) < tol * sc * sc ||
      std::abs(D) < tol * std::pow(sc, 4))
    return with_fallback(c, e_from_f4(f, 0.0, g));
  if (d < 0)
    c.multiplicity = 2;
  else
    c.multiplicity = (P < 0 && D < 0) ? 4 : 0;
  return c;
}

Classification classify5(const std::vector<cplx>& e, double tol) {
  Classification c;
  const CayleyResult cr = cayley_transform(charpoly_from_elementary(e), 1e-6);
  RPoly q = cr.real;
  q.resize(6, 0.0);
  const double big = *std::max_element(q.begin(), q.end(),
                                       [](double x, double y) { return std::abs(x) < std::abs(y); });
  for (auto& x : q) x /= std::abs(big);
  if (cr.degree_drop > 0 || std::abs(q[5]) < 1e-12) return with_fallback(c, e);

  // a0^4 p((y - a1)/a0) = y^5 + 10 A2 y^3 + 10 A3 y^2 + 5 A4 y + A5
  const double a0 = q[5], a1 = q[4] / 5.0;
  CPoly lin = {-a1 / a0, 1.0 / a0};
  CPoly acc = {q[0]}, pw = {1.0};
  for (int k = 1; k <= 5; ++k) {
    pw = poly_mul(pw, lin);
    for (size_t j = 0; j < pw.size(); ++j) {
      if (j >= acc.size()) acc.push_back(0.0);
      acc[j] += q[k] * pw[j];
    }
  }
  for (auto& x : acc) x *= std::pow(a0, 4);
  double A2 = acc[3].real() / 10.0, A3 = acc[2].real() / 10.0, A4 = acc[1].real() / 5.0,
         A5 = acc[0].real();
  // scale the roots so the A_k are O(1); signs are unchanged
  const double s = std::max({std::sqrt(std::abs(A2)), std::cbrt(std::abs(A3)),
                             std::pow(std::abs(A4), 0.25), std::pow(std::abs(A5), 0.2), 1e-300});
  A2 /= s * s;
  A3 /= s * s * s;
  A4 /= std::pow(s, 4);
  A5 /= std::pow(s, 5);
  const CPoly p0 = {A5, 5.0 * A4, 10.0 * A3, 10.0 * A2, 0.0, 1.0};
  const double d = discriminant(p0).real();
  const double P = 4.0 * A2 * A2 * A2 + A3 * A3;
  const double D = A5 * A5 + 16.0 * A2 * A4 * A4 - 76.0 * A2 * A3 * A5 -
                   (272.0 * A2 * A2 * A2 - 108.0 * A3 * A3) * A4 +
                   24.0 * A2 * A2 * (40.0 * A2 * A2 * A2 + 27.0 * A3 * A3);
  c.quantities = {{"Delta", d}, {"P", P}, {"D", D}};
  if (std::abs(d) < tol || std::abs(P) < tol || std::abs(D) < tol) return with_fallback(c, e);
  if (d < 0)
    c.multiplicity = 3;
  else
    c.multiplicity = (P < 0 && D < 0) ? 5 : 1;
  return c;
}

Classification classify_bbm(cplx fl, cplx fml, cplx lambda, double T, double c, double tol) {
  Classification out;
  const cplx ep = std::exp(lambda * T / c), em = std::exp(-lambda * T / c);
  const cplx d = fl * fl * fml * fml - 4.0 * fl * fl * fl * em - 4.0 * fml * fml * fml * ep +
                 18.0 * fl * fml - 27.0;
  out.quantities = {{"Delta", d.real()}, {"DeltaImag", d.imag()}};
  out.multiplicity = d.real() < 0 ? 3 : 1;
  if (std::abs(d.real()) < tol * std::pow(1.0 + std::abs(fl), 4)) {
    out.boundary = true;
    out.multiplicity = 3;
  }
  return out;
}

Classification classify(ClassifierKind kind, const std::vector<cplx>& e, double tol) {
  switch (kind) {
    case ClassifierKind::Band2:
      return classify2(e[1].real(), tol);
    case ClassifierKind::Cubic:
      return classify3(e[1], tol);
    case ClassifierKind::Quartic:
      return classify4(e[1].real(), e[1].imag(), e[2].real(), tol);
    case ClassifierKind::QuarticTrivial:
      return classify4_trivialphase(e[1].real(), e[2].real(), tol);
    case ClassifierKind::Quintic:
      return classify5(e, tol);
  }
  throw std::logic_error("classify: unknown kind");
}

std::pair<double, int> log_abs_discriminant(const std::vector<cplx>& e) {
  const CPoly p = charpoly_from_elementary(e);
  const int n = static_cast<int>(p.size()) - 1;
  auto roots = poly_roots(p);
  // polish against the original coefficients
  const CPoly dp = poly_derivative(p);
  for (auto& r : roots)
    for (int it = 0; it < 3; ++it) {
      const cplx d = poly_eval(dp, r);
      if (std::abs(d) == 0) break;
      r -= poly_eval(p, r) / d;
    }
  LogValue v;
  for (int k = 0; k < 2 * n - 2; ++k) v.mul(p.back());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v.mul(roots[i] - roots[j]);
      v.mul(roots[i] - roots[j]);
    }
  return {v.logAbs, v.sign()};
}

IndexValue phi3(cplx fl, cplx fml, cplx dfl, cplx dfml) {
  const cplx t[] = {dfl * dfl * dfl, dfml * dfml * dfml, fl * dfml * dfml * dfl,
                    fml * dfl * dfl * dfml};
  cplx v = 0;
  double scale = 0;
  for (cplx x : t) {
    v += x;
    scale += std::abs(x);
  }
  return {v.real(), std::abs(v.imag()), scale};
}

IndexValue phi_n(const std::vector<cplx>& e, const std::vector<cplx>& de) {
  const CPoly p = charpoly_from_elementary(e);
  CPoly q = charpoly_derivative(de);
  q.pop_back();  // d e_0 = 0
  const cplx v = resultant(p, q);
  auto norm = [](const CPoly& a) {
    double m = 0;
    for (cplx x : a) m = std::max(m, std::abs(x));
    return m;
  };
  const double scale =
      std::pow(norm(p), static_cast<double>(q.size() - 1)) * std::pow(norm(q), static_cast<double>(p.size() - 1));
  return {v.real(), std::abs(v.imag()), scale};
}

IndexValue phi_eigen(const CMat& M, const CMat& Mlambda, double relErr) {
  const int n = static_cast<int>(M.rows());
  Eigen::ComplexEigenSolver<CMat> es(M, true);
  if (es.info() != Eigen::Success) throw std::runtime_error("phi_eigen: eigensolver failed");
  const CMat V = es.eigenvectors();
  const CMat W = V.inverse();
  const auto mu = es.eigenvalues();
  const CMat D = W * Mlambda * V;
  const double nM = M.norm(), nL = Mlambda.norm();
  std::vector<double> dmu(n);
  for (int i = 0; i < n; ++i) dmu[i] = relErr * nM * W.row(i).norm() * V.col(i).norm();
  cplx v = ((n * (n - 1) / 2) % 2) ? -1.0 : 1.0;
  double rel = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cplx d = mu(i) - mu(j);
      v *= d * d;
      rel += 2.0 * (dmu[i] + dmu[j]) / std::abs(d);
    }
  for (int i = 0; i < n; ++i) {
    v *= D(i, i);
    rel += relErr * nL * W.row(i).norm() * V.col(i).norm() / std::abs(D(i, i));
  }
  IndexValue out{v.real(), std::abs(v.imag()), std::abs(v)};
  out.error = std::isfinite(rel) ? rel * std::abs(v) : INFINITY;
  return out;
}

IndexValue phi_bbm(cplx fl, cplx fml, cplx dfl, cplx dfml, cplx lambda, double T, double c) {
  const cplx E = std::exp(lambda * T / c), Ei = 1.0 / E;
  const double r = T / c;
  const cplx f = fl, g = fml, fp = dfl, gp = dfml;
  const double r2 = r * r, r3 = r2 * r;
  const cplx t[] = {Ei * fp * fp * fp,         E * gp * gp * gp,
                    f * fp * gp * gp,          g * fp * fp * gp,
                    r3,                        -r3 * f * g,
                    r2 * E * g * g * gp,       r2 * Ei * f * f * fp,
                    r2 * f * gp,               r2 * fp * g,
                    -2.0 * r * E * g * gp * gp, -2.0 * r * Ei * f * fp * fp,
                    -r * f * fp * g * gp,      -3.0 * r * fp * gp};
  cplx v = 0;
  double scale = 0;
  for (cplx x : t) {
    v += x;
    scale += std::abs(x);
  }
  return {v.real(), std::abs(v.imag()), scale};
}

IndexValue phi_bbm_rescaled(cplx fl, cplx fml, cplx dfl, cplx dfml, cplx lambda, double T,
                            double c) {
  const double r = T / (3.0 * c);
  const cplx wp = std::exp(-lambda * r), wm = std::exp(lambda * r);
  return phi3(wp * fl, wm * fml, wp * (dfl - r * fl), wm * (dfml - r * fml));
}

std::pair<cplx, cplx> omega_pm(double f, double g) {
  const cplx root = std::sqrt(cplx(f * f - 4.0 * g + 8.0, 0.0));
  return {(f + root) / 2.0, (f - root) / 2.0};
}

cplx trivial_phase_inner(cplx f, cplx g, cplx df, cplx dg) {
  return dg * dg + (g - 2.0) * df * df - f * df * dg;
}

// --- asymptotics ---------------------------------------------------------------

WkbFamily wkb_family(const std::string& name) {
  if (name == "kdv3") return WkbFamily::Kdv3;
  if (name == "nls4") return WkbFamily::Nls4;
  if (name == "boussinesq4") return WkbFamily::Boussinesq4;
  if (name == "kawahara5") return WkbFamily::Kawahara5;
  throw std::invalid_argument("wkb: unsupported family " + name);
}

WkbValue wkb_generic(int n, double nu, double T) {
  if (n % 2 == 0) throw std::invalid_argument("wkb_generic: n must be odd");
  const cplx lambda(0.0, std::pow(nu, n));
  const cplx root = nu * std::exp(cplx(0.0, kPi / (2.0 * n)));
  std::vector<cplx> kappa(n), dk(n);
  for (int k = 0; k < n; ++k) {
    kappa[k] = root * std::exp(cplx(0.0, 2.0 * kPi * k / n));
    dk[k] = kappa[k] / (static_cast<double>(n) * lambda);
  }
  return theta_product(kappa, dk, T);
}

double wkb_nls4_phi(double nu, double T) {
  const double x = nu * T;
  return 16.0 * std::pow(T, 4) * sq(std::sin(x)) * sq(std::sinh(x)) *
         std::pow(std::cos(x) - std::cosh(x), 4) / std::pow(nu, 4);
}

WkbValue wkb_asymptotics(WkbFamily family, double nu, double T) {
  const double x = nu * T;
  WkbValue w;
  switch (family) {
    case WkbFamily::Kdv3: {
      w = wkb_generic(3, nu, T);
      const double a = std::sqrt(3.0) / 2.0 * x;
      w.logAbsDelta = std::log(16.0) + 2.0 * log_abs_sinh(a) +
                      2.0 * log_abs_cos_minus_cosh(1.5 * x, a);
      w.deltaSign = 1;
      return w;
    }
    case WkbFamily::Nls4:
    case WkbFamily::Boussinesq4: {
      const double common = 2.0 * std::log(std::abs(std::sin(x))) + 2.0 * log_abs_sinh(x) +
                            4.0 * log_abs_cos_minus_cosh(x, x);
      w.logAbsDelta = std::log(256.0) + common;
      w.deltaSign = -1;
      w.logAbsPhi = std::log(16.0) + 4.0 * std::log(T) + common - 4.0 * std::log(std::abs(nu));
      w.phiSign = 1;
      return w;
    }
    case WkbFamily::Kawahara5: {
      w = wkb_generic(5, nu, T);
      const double s5 = std::sqrt(5.0);
      w.logAbsDelta =
          std::log(4096.0) +
          2.0 * log_abs_cos_minus_cosh(s5 / 2.0 * x, 0.5 * std::sqrt(5.0 - 2.0 * s5) * x) +
          2.0 * log_abs_cos_minus_cosh((5.0 + s5) / 4.0 * x,
                                       0.5 * std::sqrt((5.0 - s5) / 2.0) * x) +
          2.0 * log_abs_cos_minus_cosh((s5 - 5.0) / 4.0 * x,
                                       0.5 * std::sqrt((5.0 + s5) / 2.0) * x) +
          2.0 * log_abs_cos_minus_cosh(s5 / 2.0 * x, 0.5 * std::sqrt(5.0 + 2.0 * s5) * x) +
          2.0 * log_abs_sinh(0.5 * std::sqrt((5.0 - s5) / 2.0) * x) +
          2.0 * log_abs_sinh(0.5 * std::sqrt((5.0 + s5) / 2.0) * x);
      w.deltaSign = 1;
      return w;
    }
  }
  throw std::logic_error("wkb: unknown family");
}

std::pair<double, int> log_abs_discriminant_split(const SpectralProblem& problem, cplx lambda,
                                                  const MonodromyOptions& opt) {
  StepControl ctl;
  ctl.rtol = opt.rtol;
  ctl.atol = 1e-300;  // entries span hundreds of decades; relative control only
  const int n = problem.n, half = n / 2;
  auto by_modulus = [n](const CMat& M) {
    const double s = M.cwiseAbs().maxCoeff();
    Eigen::ComplexEigenSolver<CMat> es(M / s, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("discriminant: eigensolver failed");
    std::vector<cplx> v(es.eigenvalues().data(), es.eigenvalues().data() + n);
    for (auto& z : v) z *= s;
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    return v;
  };
  const auto big = by_modulus(propagate(problem, lambda, 0, problem.T, ctl));
  const auto inv = by_modulus(propagate(problem, lambda, problem.T, 0, ctl));
  std::vector<cplx> mu;
  cplx prod = 1;
  for (int k = 0; k < half; ++k) {
    mu.push_back(big[k]);
    mu.push_back(1.0 / inv[k]);
    prod *= big[k] / inv[k];
  }
  if (n % 2) {
    // det M = exp of the integrated trace; trapezoid is exact enough for periodic data
    const int K = 512;
    CMat A(n, n);
    cplx tr = 0;
    for (int j = 0; j < K; ++j) {
      problem.evalA(problem.T * j / K, lambda, A);
      tr += A.trace();
    }
    mu.push_back(std::exp(tr * (problem.T / K)) / prod);
  }
  LogValue v;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v.mul(mu[i] - mu[j]);
      v.mul(mu[i] - mu[j]);
    }
  // the second-largest multiplier keeps only ~1e-4 relative accuracy near nu T = 70 (n = 5)
  return {v.logAbs, v.sign(1e-3)};
}

// --- sweeps --------------------------------------------------------------------

namespace {

cplx axis_lambda(const Model& m, double& y, const SweepOptions& opt) {
  cplx l(0.0, y);
  if (is_excluded(m.problem, l)) {
    y = (y < 0 ? -1.0 : 1.0) * opt.excludedShift + y;
    l = cplx(0.0, y);
  }
  return l;
}

void fill_index(const Model& m, const MonodromyResult& r, AxisSample& s,
                const SweepOptions& opt) {
  const auto& e = s.e;
  const auto& de = s.de;
  IndexValue iv;
  switch (m.classifier) {
    case ClassifierKind::Band2:
      iv = phi_n(e, de);
      s.signal = de[1].imag();
      s.noise = opt.noiseRel * std::max(1.0, std::abs(de[1]));
      break;
    case ClassifierKind::Cubic:
      iv = phi3(e[1], e[2], de[1], -de[2]);
      s.signal = iv.value;
      s.noise = opt.noiseRel * iv.scale;
      break;
    case ClassifierKind::QuarticTrivial: {
      iv = phi_n(e, de);
      s.signal = trivial_phase_inner(e[1], e[2], de[1], de[2]).real();
      const double sc = std::norm(de[2]) + std::abs(e[2] - 2.0) * std::norm(de[1]) +
                        std::abs(e[1] * de[1] * de[2]);
      s.noise = opt.noiseRel * sc;
      break;
    }
    default:
      iv = phi_eigen(r.M, *r.Mlambda, 10.0 * opt.mono.rtol);
      s.signal = iv.value;
      s.noise = std::max(iv.error, 10.0 * iv.imagResidual);
  }
  s.phi = iv.value;
  s.phiImag = iv.imagResidual;
}

// gBBM: one integration of the full system. Classification sees the rotated
// (trace-free) invariants, the index uses the full characteristic polynomial.
void full_sample(const Model& m, cplx l, const MonodromyOptions& mo, AxisSample& s,
                 bool withIndex, double tol, double noiseRel) {
  const MonodromyResult r = integrate_monodromy(*m.full, l, mo);
  const double rr = m.full->T / m.speed;
  const cplx E = std::exp(l * rr), rot = std::exp(-l * rr / 3.0);
  s.e.assign(4, 1.0);
  s.de.assign(4, 0.0);
  cplx w = 1.0;
  for (int k = 1; k <= 3; ++k) {
    w *= rot;
    s.e[k] = w * r.e[k];
    if (withIndex) s.de[k] = w * (r.de[k] - (k * rr / 3.0) * r.e[k]);
  }
  s.e[3] = 1.0;
  s.cls = classify3(s.e[1], tol);
  if (!withIndex) return;
  const cplx g = r.e[2] / E;
  const cplx gp = rr * g - r.de[2] / E;
  const IndexValue iv = phi_bbm(r.e[1], g, r.de[1], gp, l, m.full->T, m.speed);
  s.phi = s.signal = iv.value;
  s.phiImag = iv.imagResidual;
  s.noise = noiseRel * iv.scale;
}

double classify_at(const Model& m, double y, const SweepOptions& opt) {
  return sample_axis(m, y, opt, false).cls.multiplicity;
}

// f'' at lambda and at -lambda from Richardson differences of the variational data
std::pair<cplx, cplx> second_derivatives(const Model& m, double y, const SweepOptions& opt) {
  MonodromyOptions mo = opt.mono;
  mo.withDerivative = true;
  auto D = [&](double h) {
    const auto a = integrate_monodromy(m.problem, cplx(0.0, y + h), mo);
    const auto b = integrate_monodromy(m.problem, cplx(0.0, y - h), mo);
    const cplx den(0.0, 2.0 * h);
    return std::make_pair((a.de[1] - b.de[1]) / den, (a.de[2] - b.de[2]) / den);
  };
  const auto d1 = D(1e-4), d2 = D(5e-5);
  return {(4.0 * d2.first - d1.first) / 3.0, (4.0 * d2.second - d1.second) / 3.0};
}

void annotate_zero(const Model& m, PhiZero& z, const SweepOptions& opt) {
  const double scale = std::max(1.0, std::abs(opt.yhi - opt.ylo));
  const double step = (opt.yhi - opt.ylo) / std::max(1, opt.grid - 1);
  z.inconclusive = m.zeroInconclusive && std::abs(z.y) < std::max(1e-6 * scale, 0.25 * step);
  z.sufficient = "unknown";
  AxisSample s = sample_axis(m, z.y, opt, true);
  if (!s.ok) return;
  z.residual = std::abs(s.phi);
  if (m.classifier == ClassifierKind::Cubic && opt.sufficiency && !m.full) {
    const double d = s.cls.quantities.at("Delta");
    const bool distinct = std::abs(d) > 1e-6 * std::pow(1.0 + std::abs(s.e[1]), 4);
    try {
      auto [f2p, f2m] = second_derivatives(m, s.y, opt);
      const cplx fpm = -s.de[2], fp = s.de[1];
      const cplx L = fpm * f2p, R = -fp * f2m;
      const bool transverse = std::abs(L - R) > 1e-6 * (std::abs(L) + std::abs(R) + 1e-300);
      z.sufficient = (distinct && transverse) ? "true" : "false";
    } catch (const std::exception&) {
      z.sufficient = "unknown";
    }
  }
  if (m.classifier == ClassifierKind::QuarticTrivial) {
    const double f = s.e[1].real(), g = s.e[2].real();
    const double fy = -s.de[1].imag(), gy = -s.de[2].imag();
    const auto [wp, wm] = omega_pm(f, g);
    cplx dp = NAN, dm = NAN;
    if (std::abs(wp - wm) > 1e-12) {
      dp = (gy - wp * fy) / (wm - wp);
      dm = (gy - wm * fy) / (wp - wm);
    }
    const bool plus = !(std::abs(dm) < std::abs(dp));
    z.criticalBranch = plus ? 1 : -1;
    z.omega = plus ? wp : wm;
    z.omegaInside = std::abs(z.omega.imag()) < 1e-9 && std::abs(z.omega.real()) < 2.0;
  }
}

}  // namespace

AxisSample sample_axis(const Model& m, double y, const SweepOptions& opt, bool withIndex) {
  AxisSample s;
  s.y = y;
  try {
    const cplx l = axis_lambda(m, s.y, opt);
    MonodromyOptions mo = opt.mono;
    mo.withDerivative = withIndex;
    if (m.full) {
      full_sample(m, l, mo, s, withIndex, opt.classTol, opt.noiseRel);
    } else {
      const MonodromyResult r = integrate_monodromy(m.problem, l, mo);
      s.e = r.e;
      s.de = r.de;
      s.cls = classify(m.classifier, s.e, opt.classTol);
      if (withIndex) fill_index(m, r, s, opt);
    }
  } catch (const std::exception& ex) {
    s.ok = false;
    s.error = ex.what();
  }
  return s;
}

BifurcationReport sweep_axis(const Model& m, const SweepOptions& opt) {
  if (!(opt.yhi > opt.ylo) || opt.grid < 2) throw std::invalid_argument("sweep_axis: empty range");
  BifurcationReport rep;
  const int G = opt.grid;
  rep.samples.resize(G);
  std::vector<double> ys(G);
  for (int j = 0; j < G; ++j) ys[j] = opt.ylo + (opt.yhi - opt.ylo) * j / (G - 1);
  parallel_for(G, [&](std::size_t j) { rep.samples[j] = sample_axis(m, ys[j], opt, opt.findZeros); });
  const auto& S = rep.samples;

  // multiplicity changes
  struct Bracket {
    double lo, hi;
    int mlo, mhi;
  };
  std::vector<Bracket> cls;
  int lastOk = -1;
  for (int j = 0; j < G; ++j) {
    if (!S[j].ok) continue;
    if (lastOk >= 0 && S[j].cls.multiplicity != S[lastOk].cls.multiplicity)
      cls.push_back({ys[lastOk], ys[j], S[lastOk].cls.multiplicity, S[j].cls.multiplicity});
    lastOk = j;
  }
  std::vector<double> edges(cls.size(), NAN);
  parallel_for(cls.size(), [&](std::size_t b) {
    double lo = cls[b].lo, hi = cls[b].hi;
    for (int it = 0; it < opt.bisectIters && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double mm = classify_at(m, mid, opt);
      if (mm == cls[b].mlo)
        lo = mid;
      else
        hi = mid;
    }
    edges[b] = 0.5 * (lo + hi);
  });
  {
    int first = -1;
    for (int j = 0; j < G; ++j)
      if (S[j].ok) {
        first = j;
        break;
      }
    if (first >= 0) {
      MultiplicityInterval cur;
      cur.lo = ys[first];
      cur.loClipped = true;
      cur.multiplicity = S[first].cls.multiplicity;
      for (size_t b = 0; b < cls.size(); ++b) {
        cur.hi = edges[b];
        rep.intervals.push_back(cur);
        cur = MultiplicityInterval{};
        cur.lo = edges[b];
        cur.multiplicity = cls[b].mhi;
      }
      cur.hi = ys[lastOk];
      cur.hiClipped = true;
      rep.intervals.push_back(cur);
    }
  }
  if (!opt.findZeros) return rep;

  // index zeros: sign changes of the signal and even touches of |signal|
  enum class Mode { Bisect, Touch, Flat };
  struct ZeroBracket {
    double lo, hi;
    Mode mode;
    double ref;
    std::string kind;
  };
  std::vector<ZeroBracket> zb;
  std::vector<int> ok;
  for (int j = 0; j < G; ++j)
    if (S[j].ok && std::isfinite(S[j].signal)) ok.push_back(j);
  auto sgn = [&](int j) {
    const double v = S[j].signal;
    if (std::abs(v) <= S[j].noise) return 0;
    return v > 0 ? 1 : -1;
  };
  for (size_t t = 0; t < ok.size(); ++t) {
    if (sgn(ok[t]) == 0) {
      // a run below the noise floor is reported once, at its middle
      size_t u = t;
      while (u + 1 < ok.size() && sgn(ok[u + 1]) == 0) ++u;
      const int left = t > 0 ? sgn(ok[t - 1]) : 0, right = u + 1 < ok.size() ? sgn(ok[u + 1]) : 0;
      const double mid = 0.5 * (ys[ok[t]] + ys[ok[u]]);
      zb.push_back({mid, mid, Mode::Flat, 0,
                    left != 0 && right != 0 && left != right ? "sign-change" : "even-touch"});
      t = u;
      continue;
    }
    if (t + 1 < ok.size() && sgn(ok[t + 1]) * sgn(ok[t]) < 0)
      zb.push_back({ys[ok[t]], ys[ok[t + 1]], Mode::Bisect, 0, "sign-change"});
  }
  for (size_t t = 1; t + 1 < ok.size(); ++t) {
    const int sa = sgn(ok[t - 1]), sb = sgn(ok[t]), sc = sgn(ok[t + 1]);
    if (sb == 0 || sa != sb || sc != sb) continue;
    const double a = S[ok[t - 1]].signal, b = S[ok[t]].signal, c = S[ok[t + 1]].signal;
    if (std::abs(b) <= std::abs(a) && std::abs(b) <= std::abs(c))
      zb.push_back({ys[ok[t - 1]], ys[ok[t + 1]], Mode::Touch,
                    std::max(std::abs(a), std::abs(c)), "even-touch"});
  }
  std::vector<PhiZero> found(zb.size());
  std::vector<char> keep(zb.size(), 0);
  parallel_for(zb.size(), [&](std::size_t k) {
    const auto& br = zb[k];
    auto sig = [&](double y) {
      AxisSample s = sample_axis(m, y, opt, true);
      if (!s.ok) throw std::runtime_error(s.error);
      return s.signal;
    };
    try {
      PhiZero z;
      if (br.mode == Mode::Flat) {
        z.y = br.lo;
        z.kind = br.kind;
      } else if (br.mode == Mode::Bisect) {
        double lo = br.lo, hi = br.hi;
        if (hi > lo) {
          double flo = sig(lo);
          for (int it = 0; it < opt.bisectIters && hi - lo > 1e-13 * std::max(1.0, std::abs(hi));
               ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = sig(mid);
            if (fm == 0.0) {
              lo = hi = mid;
              break;
            }
            if ((fm < 0) == (flo < 0)) {
              lo = mid;
              flo = fm;
            } else {
              hi = mid;
            }
          }
        }
        z.y = 0.5 * (lo + hi);
        z.kind = "sign-change";
      } else {
        // golden section on |signal|
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = br.lo, b = br.hi;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = std::abs(sig(c)), fd = std::abs(sig(d));
        for (int it = 0; it < 60 && b - a > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
          if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = std::abs(sig(c));
          } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = std::abs(sig(d));
          }
        }
        z.y = 0.5 * (a + b);
        const AxisSample at = sample_axis(m, z.y, opt, true);
        if (!at.ok) throw std::runtime_error(at.error);
        const double fmin = std::abs(at.signal);
        const bool resolved = at.noise < 1e-3 * br.ref;
        if (!(fmin < opt.touchRatio * br.ref || (resolved && fmin <= at.noise))) return;
        z.kind = "even-touch";
      }
      annotate_zero(m, z, opt);
      found[k] = z;
      keep[k] = 1;
    } catch (const std::exception&) {
      found[k].y = 0.5 * (br.lo + br.hi);
      keep[k] = 2;
    }
  });
  for (size_t k = 0; k < zb.size(); ++k) {
    if (keep[k] == 1) rep.zeros.push_back(found[k]);
    if (keep[k] == 2) rep.unresolved.push_back(found[k].y);
  }
  std::sort(rep.zeros.begin(), rep.zeros.end(),
            [](const PhiZero& a, const PhiZero& b) { return a.y < b.y; });
  // merge duplicates found by both detectors
  std::vector<PhiZero> merged;
  const double tolY = 1e-7 * std::max(1.0, opt.yhi - opt.ylo);
  for (const auto& z : rep.zeros)
    if (merged.empty() || std::abs(z.y - merged.back().y) > tolY) merged.push_back(z);
  rep.zeros = merged;
  return rep;
}

}  // namespace floquet
