#include "floquet/hill.hpp"

#include <algorithm>
#include <cmath>

#include "floquet/parallel.hpp"

namespace floquet {

namespace {

cplx ipow(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// Matrix of a term list on modes -N..N at exponent mu.
CMat term_matrix(const HillData& d, const TermList& terms, double mu) {
  const int N = d.N, M = 2 * N + 1;
  const double w = 2 * kPi / d.symbol->period;
  CMat out = CMat::Zero(M, M);
  for (const Term& t : terms) {
    for (int r = 0; r < M; ++r) {
      const cplx kr(0.0, mu + w * (r - N));
      const cplx left = t.coef * ipow(kr, t.outer);
      if (t.profile < 0) {
        out(r, r) += left * ipow(kr, t.inner);
        continue;
      }
      const auto& c = d.coeffs[t.profile];
      for (int s = 0; s < M; ++s) {
        const int k = r - s;
        cplx q = c[k + 2 * N];
        if (t.profileDeriv) q *= ipow(cplx(0.0, w * k), t.profileDeriv);
        out(r, s) += left * q * ipow(cplx(0.0, mu + w * (s - N)), t.inner);
      }
    }
  }
  return out;
}

// Block operator over all components.
CMat block_matrix(const HillData& d, const std::vector<std::vector<TermList>>& blocks, double mu) {
  const int C = d.symbol->components, M = 2 * d.N + 1;
  CMat out = CMat::Zero(C * M, C * M);
  for (int i = 0; i < C; ++i)
    for (int j = 0; j < C; ++j)
      if (!blocks[i][j].empty()) out.block(i * M, j * M, M, M) = term_matrix(d, blocks[i][j], mu);
  return out;
}

CMat lhs_matrix(const HillData& d, int degree, double mu) {
  const int C = d.symbol->components, M = 2 * d.N + 1;
  CMat out = CMat::Zero(C * M, C * M);
  const TermList& t = d.symbol->lhs[degree];
  if (t.empty()) return out;
  const CMat one = term_matrix(d, t, mu);
  for (int i = 0; i < C; ++i) out.block(i * M, i * M, M, M) = one;
  return out;
}

// lhs terms are diagonal, so inversion is entrywise
CMat solve_diagonal(const CMat& D, const CMat& X) {
  CMat out = X;
  for (int i = 0; i < D.rows(); ++i) out.row(i) /= D(i, i);
  return out;
}

}  // namespace

HillData prepare_hill(const OperatorSymbol& symbol, int N) {
  if (N < 1) throw std::invalid_argument("prepare_hill: N must be >= 1");
  HillData d;
  d.symbol = &symbol;
  d.N = N;
  for (const auto& p : symbol.profiles) d.coeffs.push_back(fourier_coefficients(p, 2 * N));
  return d;
}

CMat build_hill_matrix(const HillData& d, double mu) {
  const int deg = d.symbol->lambdaDegree();
  const CMat R = block_matrix(d, d.symbol->rhs, mu);
  const CMat L0 = lhs_matrix(d, 0, mu);
  if (deg == 1) {
    const CMat L1 = lhs_matrix(d, 1, mu);
    return solve_diagonal(L1, R - L0);
  }
  if (deg == 2) {
    const CMat L2 = lhs_matrix(d, 2, mu), L1 = lhs_matrix(d, 1, mu);
    const int S = static_cast<int>(R.rows());
    CMat C = CMat::Zero(2 * S, 2 * S);
    C.topRightCorner(S, S).setIdentity();
    C.bottomLeftCorner(S, S) = solve_diagonal(L2, R - L0);
    C.bottomRightCorner(S, S) = -solve_diagonal(L2, L1);
    return C;
  }
  throw std::invalid_argument("build_hill_matrix: lambda degree must be 1 or 2");
}

std::vector<cplx> hill_eigenvalues(const HillData& d, double mu) {
  Eigen::ComplexEigenSolver<CMat> es(build_hill_matrix(d, mu), false);
  if (es.info() != Eigen::Success) throw std::runtime_error("hill: eigensolver did not converge");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    return a.imag() < b.imag() || (a.imag() == b.imag() && a.real() < b.real());
  });
  return ev;
}

std::vector<SpectrumPoint> hill_spectrum(const OperatorSymbol& symbol, const HillConfig& cfg) {
  if (cfg.exponents < 1) throw std::invalid_argument("hill_spectrum: empty exponent grid");
  const HillData d = prepare_hill(symbol, cfg.N);
  const double T = symbol.period;
  std::vector<std::vector<SpectrumPoint>> per(cfg.exponents);
  parallel_for(cfg.exponents, [&](std::size_t j) {
    const double frac = cfg.exponents > 1 ? static_cast<double>(j) / (cfg.exponents - 1) : 0.0;
    const double mu = -kPi / T + 2 * kPi / T * frac;
    std::vector<cplx> ev;
    try {
      ev = hill_eigenvalues(d, mu);
    } catch (const std::runtime_error&) {
      return;  // reported as a missing exponent
    }
    auto& out = per[j];
    for (size_t b = 0; b < ev.size(); ++b) out.push_back({ev[b], mu, static_cast<int>(b)});
  });
  std::vector<SpectrumPoint> all;
  for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
  return all;
}

std::vector<SpectrumPoint> hill_spectrum(const std::string& id, const Params& params,
                                         const HillConfig& cfg) {
  const Model m = make_model(id, params);
  return hill_spectrum(m.symbol, cfg);
}

double max_real_part(const std::vector<SpectrumPoint>& pts, double imBound) {
  double r = -INFINITY;
  for (const auto& p : pts)
    if (std::abs(p.lambda.imag()) <= imBound) r = std::max(r, p.lambda.real());
  return r;
}

CoverTable multiplicity_cover(const std::vector<SpectrumPoint>& pts, double lo, double hi,
                              double binWidth, double reTol) {
  CoverTable t;
  t.lo = lo;
  t.hi = hi;
  t.binWidth = binWidth;
  const int nb = std::max(1, static_cast<int>(std::floor((hi - lo) / binWidth)));
  for (int b = 0; b < nb; ++b) t.centers.push_back(lo + (b + 0.5) * binWidth);
  t.counts.assign(nb, 0);

  // points grouped by exponent (they arrive exponent-major)
  std::vector<std::vector<cplx>> groups;
  double cur = NAN;
  for (const auto& p : pts) {
    if (groups.empty() || p.exponent != cur) {
      groups.emplace_back();
      cur = p.exponent;
    }
    groups.back().push_back(p.lambda);
  }
  const size_t G = groups.size();
  if (G < 2) return t;
  std::vector<std::vector<double>> ims(G);
  for (size_t j = 0; j < G; ++j) {
    for (cplx z : groups[j]) ims[j].push_back(z.imag());
    std::sort(ims[j].begin(), ims[j].end());
  }
  // off-axis points paired with their nearest predecessor when that one is off the axis too;
  // their moves across a level are not axis crossings
  std::vector<std::vector<std::pair<double, double>>> offMoves(G);
  for (size_t j = 1; j < G; ++j)
    for (cplx z : groups[j]) {
      if (std::abs(z.real()) <= reTol) continue;
      const cplx* best = nullptr;
      for (const cplx& w : groups[j - 1])
        if (!best || std::abs(w - z) < std::abs(*best - z)) best = &w;
      if (best && std::abs(best->real()) > reTol) offMoves[j].push_back({best->imag(), z.imag()});
    }

  for (int b = 0; b < nb; ++b) {
    const double s = t.centers[b];
    auto below = [s](const std::vector<double>& g) {
      return static_cast<long>(std::lower_bound(g.begin(), g.end(), s) - g.begin());
    };
    // Open path over the closed exponent grid: the truncated mode sets at -pi/T and pi/T differ
    // by one wavenumber, so there is no wrap term.
    long total = 0;
    long prev = below(ims[0]);
    for (size_t j = 1; j < G; ++j) {
      const long now = below(ims[j]);
      long offNet = 0;  // change of the below-count caused by off-axis moves
      for (auto [y0, y1] : offMoves[j]) offNet += (y1 < s) - (y0 < s);
      total += std::labs(now - prev - offNet);
      prev = now;
    }
    t.counts[b] = static_cast<int>(total);
  }
  return t;
}

std::vector<SpectrumPoint> off_axis_points(const std::vector<SpectrumPoint>& pts, double lo,
                                           double hi, double reTol) {
  std::vector<SpectrumPoint> out;
  for (const auto& p : pts)
    if (std::abs(p.lambda.real()) > reTol && p.lambda.imag() >= lo && p.lambda.imag() <= hi)
      out.push_back(p);
  return out;
}

double refine_attachment(const OperatorSymbol& symbol, int N, const std::vector<SpectrumPoint>& pts,
                         double y0, double window, double reTol, int levels) {
  const double w = 2 * kPi / symbol.period;
  double mu = NAN, best = INFINITY, im = NAN;
  double lastMu = NAN;
  int distinct = 0;
  for (const auto& p : pts) {
    if (p.exponent != lastMu) ++distinct;
    lastMu = p.exponent;
    const double re = std::abs(p.lambda.real());
    if (re <= reTol || std::abs(p.lambda.imag() - y0) > window) continue;
    const double dist = std::abs(p.lambda - cplx(0.0, y0));
    if (dist < best) {
      best = dist;
      im = p.lambda.imag();
      mu = p.exponent;
    }
  }
  if (std::isnan(mu)) return NAN;
  const HillData d = prepare_hill(symbol, N);
  double h = 2 * w / std::max(1, distinct);
  for (int level = 0; level < levels; ++level) {
    const int K = 40;
    std::vector<std::vector<cplx>> ev(K + 1);
    parallel_for(K + 1, [&](std::size_t j) {
      try {
        ev[j] = hill_eigenvalues(d, mu - h + 2 * h * static_cast<double>(j) / K);
      } catch (const std::runtime_error&) {
      }
    });
    double center = mu;
    for (int j = 0; j <= K; ++j)
      for (cplx z : ev[j]) {
        if (std::abs(z.real()) <= reTol || std::abs(z.imag() - y0) > window) continue;
        const double dist = std::abs(z - cplx(0.0, y0));
        if (dist < best) {
          best = dist;
          im = z.imag();
          center = mu - h + 2 * h * j / K;
        }
      }
    mu = center;
    h /= 10;
  }
  return im;
}

double nearest_attachment(const std::vector<SpectrumPoint>& pts, double y0, double window,
                          double reTol, double reMax) {
  double best = INFINITY, im = NAN;
  for (const auto& p : pts) {
    const double re = std::abs(p.lambda.real());
    if (re <= reTol || re > reMax) continue;
    if (std::abs(p.lambda.imag() - y0) > window) continue;
    const double dist = std::abs(p.lambda - cplx(0.0, y0));
    if (dist < best) {
      best = dist;
      im = p.lambda.imag();
    }
  }
  return im;
}

double hausdorff_one_sided(const std::vector<cplx>& a, const std::vector<cplx>& b, double bound) {
  double worst = 0;
  for (auto z : a) {
    if (std::abs(z) > bound) continue;
    double best = INFINITY;
    for (auto w : b)
      if (std::abs(w) <= bound * 1.1 + 1) best = std::min(best, std::abs(z - w));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace floquet
