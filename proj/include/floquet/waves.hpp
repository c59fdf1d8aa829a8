#pragma once
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "floquet/types.hpp"

namespace floquet {

struct NoPeriodicOrbit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complete elliptic integral of the first kind, parameter convention K(m).
double elliptic_K(double m);

struct Jacobi {
  double sn, cn, dn;
};
Jacobi jacobi_cn_dn_sn(double u, double m);

// Real periodic coefficient profile.
struct WaveProfile {
  std::string name;
  double period = 0;
  std::function<double(double)> eval;
  std::map<std::string, double> params;
  // Analytic or precomputed Fourier coefficients c_k, k = -N..N stored at index k + N.
  std::vector<cplx> fourier;
  // true when every nonzero coefficient is present in `fourier`
  bool fourierComplete = false;

  double operator()(double x) const { return eval(x); }
};

// c_k for |k| <= N (index k + N); DFT on 4N+1 samples unless the profile carries enough
// registered coefficients.
std::vector<cplx> fourier_coefficients(const WaveProfile& p, int N);

// Profile from a trigonometric polynomial c0 + sum a_j cos(j w x) + b_j sin(j w x), w = 2 pi / T.
WaveProfile trig_profile(double c0, const std::vector<double>& cosines,
                         const std::vector<double>& sines, double period = 2 * kPi,
                         const std::string& name = "trig");
// Pointwise transform of a profile, q(x) = fn(p(x)); keeps the period.
WaveProfile map_profile(const WaveProfile& p, std::function<double(double)> fn,
                        const std::string& name);
// Profile evaluated from Fourier coefficients (index k + N).
WaveProfile fourier_profile(std::vector<cplx> coeffs, double period, const std::string& name);

// G(phi) = 2E + 2a phi + c phi^2 - 2/(k+1) phi^{k+1}
struct GkdvWave {
  WaveProfile phi;
  RPoly G;                     // ascending coefficients
  int realRootCount = 0;       // real roots of G
  double phiMin = 0, phiMax = 0;
  double energyResidual = 0;   // max |phi_x^2 - G(phi)| along the computed orbit
};
GkdvWave gkdv_wave(int k, double c, double a, double E, int samples = 0);

WaveProfile bbm_wave();
WaveProfile mbbm_wave(double m);
WaveProfile boussinesq_wave();

// Root in (0,1) of the elliptic-parameter cubic for r = alpha / sigma^2, |r| < 52.
double kawahara_mstar(double r, double tol = 1e-13);
double kawahara_mpoly(double m, double r);
WaveProfile kawahara_wave(double alpha, double sigma);

// Amplitude A and phase gradient K_x of the quintic NLS standing wave.
struct NlsPhaseWave {
  WaveProfile A;
  WaveProfile Kx;
  double kappa = 0;
  double omega = 0;   // frequency in the amplitude equation A'' = kappa^2/A^3 - omega A - 3A^5
  double Amin = 0, Amax = 0;
};
NlsPhaseWave nls_quintic_phase_wave();

}  // namespace floquet
