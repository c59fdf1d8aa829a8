#include "floquet/waves.hpp"

#include <algorithm>
#include <cmath>

#include "floquet/integrator.hpp"
#include "floquet/polyalg.hpp"

namespace floquet {

double elliptic_K(double m) {
  if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("elliptic_K: parameter must lie in [0,1)");
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2.0 * a);
}

Jacobi jacobi_cn_dn_sn(double u, double m) {
  if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("jacobi: parameter must lie in [0,1)");
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  // descending AGM sequence
  double a[32], c[32];
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int N = 0;
  while (std::abs(c[N]) > 1e-16 && N < 30) {
    a[N + 1] = 0.5 * (a[N] + b);
    c[N + 1] = 0.5 * (a[N] - b);
    b = std::sqrt(a[N] * b);
    ++N;
  }
  double phi = std::ldexp(1.0, N) * a[N] * u;
  for (int k = N; k > 0; --k) phi = 0.5 * (phi + std::asin(c[k] / a[k] * std::sin(phi)));
  const double sn = std::sin(phi), cn = std::cos(phi);
  return {sn, cn, std::sqrt(1.0 - m * sn * sn)};
}

std::vector<cplx> fourier_coefficients(const WaveProfile& p, int N) {
  std::vector<cplx> out(2 * N + 1, 0.0);
  const int have = p.fourier.empty() ? -1 : (static_cast<int>(p.fourier.size()) - 1) / 2;
  if (have >= 0 && (p.fourierComplete || have >= N)) {
    for (int k = -std::min(N, have); k <= std::min(N, have); ++k) out[k + N] = p.fourier[k + have];
    return out;
  }
  const int M = std::max(4 * N + 1, 129);
  std::vector<double> f(M);
  for (int j = 0; j < M; ++j) f[j] = p.eval(p.period * j / M);
  for (int k = 0; k <= N; ++k) {
    cplx s = 0;
    for (int j = 0; j < M; ++j) {
      const double th = -2.0 * kPi * static_cast<double>((static_cast<long>(k) * j) % M) / M;
      s += f[j] * cplx(std::cos(th), std::sin(th));
    }
    s /= static_cast<double>(M);
    out[N + k] = s;
    out[N - k] = std::conj(s);
  }
  out[N] = out[N].real();
  return out;
}

WaveProfile trig_profile(double c0, const std::vector<double>& cosines,
                         const std::vector<double>& sines, double period, const std::string& name) {
  WaveProfile p;
  p.name = name;
  p.period = period;
  const double w = 2.0 * kPi / period;
  p.eval = [c0, cosines, sines, w](double x) {
    double v = c0;
    for (size_t j = 0; j < cosines.size(); ++j) v += cosines[j] * std::cos((j + 1) * w * x);
    for (size_t j = 0; j < sines.size(); ++j) v += sines[j] * std::sin((j + 1) * w * x);
    return v;
  };
  const int K = static_cast<int>(std::max(cosines.size(), sines.size()));
  p.fourier.assign(2 * K + 1, 0.0);
  p.fourier[K] = c0;
  for (int j = 1; j <= K; ++j) {
    const double a = j <= static_cast<int>(cosines.size()) ? cosines[j - 1] : 0.0;
    const double b = j <= static_cast<int>(sines.size()) ? sines[j - 1] : 0.0;
    p.fourier[K + j] = cplx(a, -b) / 2.0;
    p.fourier[K - j] = cplx(a, b) / 2.0;
  }
  p.fourierComplete = true;
  p.params["c0"] = c0;
  return p;
}

WaveProfile map_profile(const WaveProfile& p, std::function<double(double)> fn,
                        const std::string& name) {
  WaveProfile q;
  q.name = name;
  q.period = p.period;
  q.params = p.params;
  auto inner = p.eval;
  q.eval = [inner, fn](double x) { return fn(inner(x)); };
  return q;
}

WaveProfile fourier_profile(std::vector<cplx> coeffs, double period, const std::string& name) {
  WaveProfile p;
  p.name = name;
  p.period = period;
  const int K = (static_cast<int>(coeffs.size()) - 1) / 2;
  const double w = 2.0 * kPi / period;
  std::vector<cplx> pos(coeffs.begin() + K, coeffs.end());
  p.eval = [pos, w](double x) {
    const cplx z(std::cos(w * x), std::sin(w * x));
    cplx zk = z, s = 0;
    for (size_t k = 1; k < pos.size(); ++k) {
      s += pos[k] * zk;
      zk *= z;
    }
    return pos[0].real() + 2.0 * s.real();
  };
  p.fourier = std::move(coeffs);
  p.fourierComplete = true;
  return p;
}

namespace {

using Vec = Eigen::VectorXd;

// y'' = g(y) from (y0, 0). Integrates to x and returns (y, y').
Vec second_order_flow(const std::function<double(double)>& g, Vec y, double x0, double x1) {
  StepControl ctl;
  ctl.rtol = 1e-13;
  ctl.atol = 1e-15;
  auto rhs = [&](double, const Vec& s, Vec& ds) {
    ds(0) = s(1);
    ds(1) = g(s(0));
  };
  return integrate_rk87(rhs, x0, x1, std::move(y), ctl);
}

// First x > 0 with y'(x) = 0 for the orbit started at a turning point, given a guess of it.
double half_period_event(const std::function<double(double)>& g, double y0, double guess) {
  Vec s(2);
  s << y0, 0.0;
  const double h = guess / 16.0;
  double x = 0;
  // step past the start so the sign of y' is established
  Vec cur = second_order_flow(g, s, 0.0, h);
  x = h;
  const double sgn = cur(1) > 0 ? 1.0 : -1.0;
  for (int it = 0; it < 4096; ++it) {
    Vec nxt = second_order_flow(g, cur, x, x + h);
    if (sgn * nxt(1) <= 0) {
      double lo = x, hi = x + h;
      Vec ylo = cur;
      for (int b = 0; b < 200 && hi - lo > 1e-15 * hi; ++b) {
        const double mid = 0.5 * (lo + hi);
        Vec ym = second_order_flow(g, ylo, lo, mid);
        if (sgn * ym(1) > 0) {
          lo = mid;
          ylo = ym;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    cur = nxt;
    x += h;
  }
  throw NoPeriodicOrbit("half_period_event: no return to a turning point");
}

// Samples an even periodic orbit on a uniform grid of M points from its half period.
std::vector<double> sample_even_orbit(const std::function<double(double)>& g, double y0, double T,
                                      int M, std::vector<double>* slope = nullptr) {
  std::vector<double> out(M), d(M);
  Vec s(2);
  s << y0, 0.0;
  double x = 0;
  const int half = M / 2;
  for (int j = 0; j <= half; ++j) {
    const double xj = T * j / M;
    if (j > 0) s = second_order_flow(g, s, x, xj);
    x = xj;
    out[j] = s(0);
    d[j] = s(1);
  }
  for (int j = half + 1; j < M; ++j) {
    out[j] = out[M - j];
    d[j] = -d[M - j];
  }
  if (slope) *slope = d;
  return out;
}

std::vector<cplx> dft_truncated(const std::vector<double>& f, double rel) {
  const int M = static_cast<int>(f.size());
  const int Kmax = (M - 1) / 2;
  std::vector<cplx> pos(Kmax + 1);
  for (int k = 0; k <= Kmax; ++k) {
    cplx s = 0;
    for (int j = 0; j < M; ++j) {
      const double th = -2.0 * kPi * static_cast<double>((static_cast<long>(k) * j) % M) / M;
      s += f[j] * cplx(std::cos(th), std::sin(th));
    }
    pos[k] = s / static_cast<double>(M);
  }
  double big = 0;
  for (auto c : pos) big = std::max(big, std::abs(c));
  int K = Kmax;
  while (K > 1 && std::abs(pos[K]) < rel * big) --K;
  std::vector<cplx> coeffs(2 * K + 1);
  for (int k = 0; k <= K; ++k) {
    coeffs[K + k] = pos[k];
    coeffs[K - k] = std::conj(pos[k]);
  }
  coeffs[K] = coeffs[K].real();
  return coeffs;
}

double newton_real_root(const RPoly& p, double x) {
  const RPoly dp = poly_derivative(p);
  for (int i = 0; i < 50; ++i) {
    const double d = poly_eval(dp, x);
    if (d == 0) break;
    const double step = poly_eval(p, x) / d;
    x -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

// divide p by (x - r), dropping the remainder
RPoly deflate(const RPoly& p, double r) {
  const int n = static_cast<int>(p.size()) - 1;
  RPoly q(n);
  double carry = p[n];
  for (int k = n - 1; k >= 0; --k) {
    q[k] = carry;
    carry = p[k] + r * carry;
  }
  return q;
}

}  // namespace

GkdvWave gkdv_wave(int k, double c, double a, double E, int samples) {
  if (k < 2) throw std::invalid_argument("gkdv_wave: k must be >= 2");
  GkdvWave w;
  w.G.assign(k + 2, 0.0);
  w.G[0] = 2 * E;
  w.G[1] = 2 * a;
  w.G[2] += c;
  w.G[k + 1] += -2.0 / (k + 1);
  CPoly Gc(w.G.begin(), w.G.end());
  double scale = 0;
  for (double v : w.G) scale = std::max(scale, std::abs(v));
  std::vector<double> real;
  for (auto z : poly_roots(Gc))
    if (std::abs(z.imag()) < 1e-7 * std::max(1.0, std::abs(z)))
      real.push_back(newton_real_root(w.G, z.real()));
  std::sort(real.begin(), real.end());
  w.realRootCount = static_cast<int>(real.size());
  // largest adjacent pair bounding a positive-G interval
  int pick = -1;
  for (int i = static_cast<int>(real.size()) - 2; i >= 0; --i) {
    if (real[i + 1] - real[i] < 1e-9) continue;
    if (poly_eval(w.G, 0.5 * (real[i] + real[i + 1])) > 0) {
      pick = i;
      break;
    }
  }
  if (pick < 0) throw NoPeriodicOrbit("gkdv_wave: G has no oscillation well");
  const double lo = real[pick], hi = real[pick + 1];
  w.phiMin = lo;
  w.phiMax = hi;

  // H = G / ((phi - lo)(phi - hi)) is negative on the well
  const RPoly H = deflate(deflate(w.G, lo), hi);
  const int nq = 256;
  double sum = 0;
  for (int i = 1; i <= nq; ++i) {
    const double t = std::cos((2.0 * i - 1.0) * kPi / (2.0 * nq));
    const double phi = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
    sum += 1.0 / std::sqrt(-poly_eval(H, phi));
  }
  const double Tq = 2.0 * kPi / nq * sum;

  const RPoly dG = poly_derivative(w.G);
  auto g = [dG](double y) { return 0.5 * poly_eval(dG, y); };
  const double half = half_period_event(g, hi, 0.5 * Tq);
  if (std::abs(2.0 * half - Tq) > 1e-8 * Tq)
    throw NoPeriodicOrbit("gkdv_wave: quadrature and event periods disagree");
  const double T = Tq;

  const int M = samples > 0 ? samples : 512;
  std::vector<double> slope;
  auto f = sample_even_orbit(g, hi, T, M, &slope);
  for (int j = 0; j < M; ++j)
    w.energyResidual =
        std::max(w.energyResidual, std::abs(slope[j] * slope[j] - poly_eval(w.G, f[j])));

  w.phi = fourier_profile(dft_truncated(f, 1e-16), T, "gkdv_wave");
  w.phi.params = {{"k", k}, {"c", c}, {"a", a}, {"E", E}, {"period", T},
                  {"phi_min", lo}, {"phi_max", hi}, {"real_roots", w.realRootCount}};
  return w;
}

WaveProfile bbm_wave() {
  const double m = 0.2, s = std::sqrt(5.0 / 12.0);
  WaveProfile p;
  p.name = "bbm_wave";
  p.period = 2.0 * std::sqrt(12.0 / 5.0) * elliptic_K(m);
  p.eval = [m, s](double x) {
    const double cn = jacobi_cn_dn_sn(s * x, m).cn;
    return 1.0 + cn * cn;
  };
  p.params = {{"m", m}, {"c", 1.0}, {"period", p.period}};
  return p;
}

WaveProfile mbbm_wave(double m) {
  if (!(m > 0.5 && m < 1.0)) throw std::domain_error("mbbm_wave: need 1/2 < m < 1");
  const double amp = std::sqrt(2 * m / (2 * m - 1)), scale = 1.0 / std::sqrt(2 * m - 1);
  WaveProfile p;
  p.name = "mbbm_wave";
  p.period = 4.0 * elliptic_K(m) / scale;
  p.eval = [m, amp, scale](double x) { return amp * jacobi_cn_dn_sn(scale * x, m).cn; };
  p.params = {{"m", m}, {"c", 1.0}, {"amplitude", amp}, {"period", p.period}};
  return p;
}

WaveProfile boussinesq_wave() {
  const double m = 6.0 / 7.0, s = std::sqrt(7.0 / 8.0), amp = std::sqrt(7.0) / 2.0;
  WaveProfile p;
  p.name = "boussinesq_wave";
  p.period = 2.0 * elliptic_K(m) / s;
  p.eval = [m, s, amp](double x) { return amp * jacobi_cn_dn_sn(s * x, m).dn; };
  p.params = {{"m", m}, {"c", 1.0}, {"period", p.period}};
  return p;
}

double kawahara_mpoly(double m, double r) {
  return -703040.0 * (m - 2) * (m + 1) * (2 * m - 1) + 56784.0 * r * (m * m - m + 1) -
         31.0 * r * r * r;
}

double kawahara_mstar(double r, double tol) {
  if (!(std::abs(r) < 52.0)) throw std::domain_error("kawahara_mstar: need |alpha/sigma^2| < 52");
  double lo = 0.0, hi = 1.0;
  double flo = kawahara_mpoly(lo, r);
  double m = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double f = kawahara_mpoly(m, r);
    if ((f < 0) == (flo < 0)) {
      lo = m;
      flo = f;
    } else {
      hi = m;
    }
    // Newton candidate, accepted only inside the bracket
    const double dm = 1e-7;
    const double df = (kawahara_mpoly(m + dm, r) - kawahara_mpoly(m - dm, r)) / (2 * dm);
    double next = df != 0 ? m - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - m) < tol || hi - lo < tol) return next;
    m = next;
  }
  return m;
}

WaveProfile kawahara_wave(double alpha, double sigma) {
  WaveProfile p;
  p.name = "kawahara_wave";
  const double s2 = sigma * sigma, s4 = s2 * s2;
  double m, C1, C2, C3;
  if (alpha == 0.0) {
    m = 0.5;
    C1 = -168.0 * s4;
    C2 = 0.0;
    C3 = 420.0 * s4;
  } else {
    m = kawahara_mstar(alpha / s2);
    C1 = (-31.0 * alpha * alpha + 264992.0 * s4 * m * m - 264992.0 * s4 * m - 18928.0 * s4 +
          3640.0 * alpha * s2 - 7280.0 * alpha * s2 * m) /
         507.0;
    C2 = -280.0 / 13.0 * s2 * m * (-alpha + 104.0 * s2 * m - 52.0 * s2);
    C3 = 1680.0 * s4 * m * m;
  }
  p.period = 2.0 * elliptic_K(m) / std::abs(sigma);
  p.eval = [=](double x) {
    const double cn = jacobi_cn_dn_sn(sigma * x, m).cn, c2 = cn * cn;
    return C1 + C2 * c2 + C3 * c2 * c2;
  };
  p.params = {{"alpha", alpha}, {"sigma", sigma}, {"m", m},          {"C1", C1},
              {"C2", C2},       {"C3", C3},       {"period", p.period}};
  return p;
}

NlsPhaseWave nls_quintic_phase_wave() {
  NlsPhaseWave w;
  w.kappa = 3.0 * std::sqrt(2.0) / 8.0;
  // A_x^2 = -21/32 - 9/(32 A^2) + 31/16 A^2 - A^6, so A'' = 9/(32 A^3) + 31/16 A - 3 A^5
  w.omega = -31.0 / 16.0;
  const double k2 = w.kappa * w.kappa, om = w.omega;
  auto g = [k2, om](double A) { return k2 / (A * A * A) - om * A - 3.0 * std::pow(A, 5); };
  const double half = half_period_event(g, 1.0, 1.0);
  const double T = 2.0 * half;
  const int M = 512;
  auto f = sample_even_orbit(g, 1.0, T, M);
  w.A = fourier_profile(dft_truncated(f, 1e-16), T, "nls_amplitude");
  w.Amax = 1.0;
  w.Amin = *std::min_element(f.begin(), f.end());
  const double kappa = w.kappa;
  w.Kx = map_profile(w.A, [kappa](double A) { return kappa / (A * A); }, "nls_phase_gradient");
  w.A.params = {{"kappa", w.kappa}, {"omega", w.omega}, {"period", T}, {"A_min", w.Amin},
                {"A_max", w.Amax}};
  w.Kx.params = w.A.params;
  return w;
}

}  // namespace floquet
