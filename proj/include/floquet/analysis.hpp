#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "floquet/models.hpp"

namespace floquet {

// --- multiplicity on the imaginary axis --------------------------------------
struct Classification {
  int multiplicity = -1;
  bool boundary = false;  // some classifier quantity within tolerance of zero
  std::map<std::string, double> quantities;
};

// Unit-circle roots of p(mu) = sum_k (-mu)^k e_{n-k}, from companion eigenvalues.
int companion_unit_circle_count(const std::vector<cplx>& e, double tol = 1e-8);

// |tr M| < 2 inside a band.
Classification classify2(double f, double tol = 1e-8);
// f = tr M on the axis. quantities: Delta, deltoid (1 inside, 0 outside).
Classification classify3(cplx f, double tol = 1e-8);
// Point-in-deltoid test by winding number of 2e^{it} + e^{-2it}.
bool deltoid_contains(cplx f);
// f1 + i f2 = tr M, f3 = e_2.
Classification classify4(double f1, double f2, double f3, double tol = 1e-8);
// p = mu^4 - f mu^3 + g mu^2 - f mu + 1, f and g real.
Classification classify4_trivialphase(double f, double g, double tol = 1e-8);
// Self-inversive quintic through its Cayley transform and the depressed-quintic signs.
Classification classify5(const std::vector<cplx>& e, double tol = 1e-8);
// Full gBBM data: f at lambda and -lambda on the axis.
Classification classify_bbm(cplx fl, cplx fml, cplx lambda, double T, double c,
                            double tol = 1e-8);
Classification classify(ClassifierKind kind, const std::vector<cplx>& e, double tol = 1e-8);

// log|disc_mu p| for p given by e_k, without overflow. Second member is the sign of
// the real part (0 when the value is not real to working accuracy).
std::pair<double, int> log_abs_discriminant(const std::vector<cplx>& e);

// --- bifurcation indices -----------------------------------------------------
struct IndexValue {
  double value = 0;
  double imagResidual = 0;  // |Im| of the underlying complex value
  double scale = 0;         // size of the terms that cancel; rounding is relative to this
  double error = -1;        // absolute error estimate when the evaluation provides one
};
// Arguments: f(lambda), f(-lambda), f'(lambda), f'(-lambda).
IndexValue phi3(cplx fl, cplx fml, cplx dfl, cplx dfml);
// res_mu(p, p_lambda); de_k are lambda-derivatives of e_k.
IndexValue phi_n(const std::vector<cplx>& e, const std::vector<cplx>& de);
// Same resultant from the eigen-decomposition of M: (-1)^{n(n-1)/2} prod_{i<j} (mu_i - mu_j)^2
// prod_i mu_i', with mu_i' from left/right eigenvectors. relErr is the relative accuracy of M
// and M_lambda; the error estimate follows from the eigenvalue condition numbers.
IndexValue phi_eigen(const CMat& M, const CMat& Mlambda, double relErr);
// e^{-3 lambda T/c} res(p, p_lambda) for the full (not trace free) gBBM system.
IndexValue phi_bbm(cplx fl, cplx fml, cplx dfl, cplx dfml, cplx lambda, double T, double c);
// Same data mapped to the trace-free system (f0 = e^{-lambda T/3c} f) and fed to phi3.
// Its zeros are not those of phi_bbm off the points where both vanish.
IndexValue phi_bbm_rescaled(cplx fl, cplx fml, cplx dfl, cplx dfml, cplx lambda, double T,
                            double c);

// Roots of w^2 - f w + g - 2.
std::pair<cplx, cplx> omega_pm(double f, double g);
// g'^2 + (g-2) f'^2 - f f' g', whose square is the trivial-phase index.
cplx trivial_phase_inner(cplx f, cplx g, cplx df, cplx dg);

// --- large-|lambda| asymptotics ----------------------------------------------
enum class WkbFamily { Kdv3, Nls4, Boussinesq4, Kawahara5 };
WkbFamily wkb_family(const std::string& name);
struct WkbValue {
  double logAbsDelta = 0;  // log|Delta|
  int deltaSign = 0;
  double logAbsPhi = 0;
  int phiSign = 0;
};
// lambda = i nu^n. Closed forms for Delta; Phi from the theta-product resultant.
WkbValue wkb_asymptotics(WkbFamily family, double nu, double T);
// Same from the theta-product for lambda v = D^n v, principal branch of lambda^{1/n}.
WkbValue wkb_generic(int n, double nu, double T);
// Closed-form fourth-order index 16 T^4 sin^2 sinh^2 (cos - cosh)^4 / nu^4.
double wkb_nls4_phi(double nu, double T);
// log|disc| at large |lambda| where M spans too many decades for e_k. The dominant half of the
// eigenvalues comes from M, the small half from M^{-1} integrated backwards, the middle one
// (odd n) from det M. Each keeps its relative accuracy. The sign is 0 when the phase is more
// than 1e-3 from a multiple of pi.
std::pair<double, int> log_abs_discriminant_split(const SpectralProblem& problem, cplx lambda,
                                                  const MonodromyOptions& opt = {});

// --- sweeps along the axis -----------------------------------------------------
struct SweepOptions {
  double ylo = 0, yhi = 1;  // lambda = i y
  int grid = 401;
  MonodromyOptions mono;
  double classTol = 1e-8;
  double touchRatio = 1e-6;  // even-touch threshold relative to the neighbours
  int bisectIters = 52;
  bool sufficiency = true;
  bool findZeros = true;
  double excludedShift = 1e-6;
  double noiseRel = 1e-10;  // |index| below noiseRel * scale counts as zero
};

struct AxisSample {
  double y = 0;
  std::vector<cplx> e, de;
  Classification cls;
  double phi = NAN;     // index on the axis
  double phiImag = 0;
  double signal = NAN;  // sign-changing quantity used for zero finding
  double noise = 0;     // |signal| below this is indistinguishable from zero
  bool ok = true;
  std::string error;
};

struct MultiplicityInterval {
  double lo = 0, hi = 0;
  int multiplicity = -1;
  bool loClipped = false, hiClipped = false;  // endpoint is the sweep boundary
};

struct PhiZero {
  double y = 0;
  std::string kind;        // sign-change | even-touch
  double residual = 0;     // |index| at the refined point
  std::string sufficient;  // true | false | unknown
  bool inconclusive = false;
  // trivial phase only: which of omega+ (+1) / omega- (-1) is critical and whether it
  // lies strictly inside (-2, 2)
  int criticalBranch = 0;
  cplx omega = NAN;
  bool omegaInside = false;
};

struct BifurcationReport {
  std::vector<AxisSample> samples;
  std::vector<MultiplicityInterval> intervals;
  std::vector<PhiZero> zeros;
  std::vector<double> unresolved;  // brackets that could not be refined
};

AxisSample sample_axis(const Model& m, double y, const SweepOptions& opt, bool withIndex = true);
BifurcationReport sweep_axis(const Model& m, const SweepOptions& opt);

}  // namespace floquet
