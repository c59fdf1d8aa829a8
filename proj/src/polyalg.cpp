#include "floquet/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace floquet {

namespace {

double max_abs(const CPoly& p) {
  double m = 0;
  for (auto c : p) m = std::max(m, std::abs(c));
  return m;
}

double max_abs(const RPoly& p) {
  double m = 0;
  for (auto c : p) m = std::max(m, std::abs(c));
  return m;
}

cplx det_lu(const CMat& A) {
  if (A.rows() == 0) return 1.0;
  if (A.rows() == 1) return A(0, 0);
  if (A.rows() == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  return Eigen::PartialPivLU<CMat>(A).determinant();
}

CMat principal(const CMat& M, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  CMat S(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) S(i, j) = M(idx[i], idx[j]);
  return S;
}

std::vector<int> bits(unsigned mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

// remainder of a / b, both real, b nonzero leading coefficient
RPoly poly_rem(RPoly a, const RPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int da = static_cast<int>(a.size()) - 1;
    const double q = a.back() / b.back();
    for (int i = 0; i <= db; ++i) a[da - db + i] -= q * b[i];
    a.pop_back();
  }
  return a;
}

RPoly rtrim(RPoly p, double abs_tol) {
  while (!p.empty() && std::abs(p.back()) <= abs_tol) p.pop_back();
  return p;
}

int sign_at(const RPoly& p, double x) {
  if (p.empty()) return 0;
  if (std::isinf(x)) {
    const int deg = static_cast<int>(p.size()) - 1;
    int s = p.back() > 0 ? 1 : -1;
    if (x < 0 && (deg % 2 == 1)) s = -s;
    return s;
  }
  const double v = poly_eval(p, x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int sign_changes(const std::vector<RPoly>& seq, double x) {
  int count = 0, prev = 0;
  for (const auto& p : seq) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

CPoly poly_trim(CPoly p, double rel) {
  const double tol = rel * max_abs(p);
  while (p.size() > 1 && std::abs(p.back()) <= tol) p.pop_back();
  return p;
}

CPoly poly_derivative(const CPoly& p) {
  if (p.size() <= 1) return {0.0};
  CPoly d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

RPoly poly_derivative(const RPoly& p) {
  if (p.size() <= 1) return {0.0};
  RPoly d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

cplx poly_eval(const CPoly& p, cplx x) {
  cplx v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

double poly_eval(const RPoly& p, double x) {
  double v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

CPoly poly_mul(const CPoly& a, const CPoly& b) {
  CPoly c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<cplx> poly_roots(const CPoly& p_in) {
  CPoly p = poly_trim(p_in, 0.0);
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 1) return {};
  CMat C = CMat::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -p[i] / p[n];
  Eigen::ComplexEigenSolver<CMat> es(C, false);
  std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return r;
}

std::vector<cplx> elementary_from_traces(const std::vector<cplx>& traces) {
  const int n = static_cast<int>(traces.size());
  std::vector<cplx> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    cplx s = 0;
    for (int j = 1; j <= k; ++j) s += ((j % 2 == 1) ? 1.0 : -1.0) * e[k - j] * traces[j - 1];
    e[k] = s / static_cast<double>(k);
  }
  return e;
}

std::vector<cplx> elementary_from_minors(const CMat& M) {
  const int n = static_cast<int>(M.rows());
  std::vector<cplx> e(n + 1, 0.0);
  e[0] = 1.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto idx = bits(mask, n);
    e[idx.size()] += det_lu(principal(M, idx));
  }
  return e;
}

std::vector<cplx> elementary_derivative(const CMat& M, const CMat& dM) {
  const int n = static_cast<int>(M.rows());
  std::vector<cplx> de(n + 1, 0.0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto idx = bits(mask, n);
    const int k = static_cast<int>(idx.size());
    CMat S = principal(M, idx);
    cplx d = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        CMat minor(k - 1, k - 1);
        for (int r = 0, rr = 0; r < k; ++r) {
          if (r == i) continue;
          for (int c = 0, cc = 0; c < k; ++c) {
            if (c == j) continue;
            minor(rr, cc++) = S(r, c);
          }
          ++rr;
        }
        const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        d += sgn * det_lu(minor) * dM(idx[i], idx[j]);
      }
    }
    de[k] += d;
  }
  return de;
}

CPoly charpoly_from_elementary(const std::vector<cplx>& e) {
  const int n = static_cast<int>(e.size()) - 1;
  CPoly p(n + 1);
  for (int k = 0; k <= n; ++k) p[k] = ((k % 2 == 0) ? 1.0 : -1.0) * e[n - k];
  return p;
}

CPoly charpoly_from_monodromy(const CMat& M) {
  const int n = static_cast<int>(M.rows());
  std::vector<cplx> traces(n);
  CMat P = M;
  for (int j = 0; j < n; ++j) {
    traces[j] = P.trace();
    P = P * M;
  }
  return charpoly_from_elementary(elementary_from_traces(traces));
}

CPoly charpoly_derivative(const std::vector<cplx>& de) { return charpoly_from_elementary(de); }

std::vector<double> floquet_discriminant(const std::vector<cplx>& e) {
  const int n = static_cast<int>(e.size()) - 1;
  std::vector<double> f;
  for (int k = 1; k <= n - 1; ++k) f.push_back(k % 2 ? e[(k + 1) / 2].real() : e[k / 2].imag());
  return f;
}

std::vector<cplx> elementary_from_discriminant(const std::vector<double>& f, int n) {
  std::vector<cplx> e(n + 1, 0.0);
  e[0] = 1.0;
  e[n] = 1.0;
  for (int j = 1; j < n; ++j) {
    if (j <= n - j) {
      const double re = f[2 * j - 2];
      const double im = (2 * j <= n - 1) ? f[2 * j - 1] : 0.0;
      e[j] = cplx(re, im);
    } else {
      e[j] = std::conj(e[n - j]);
    }
  }
  return e;
}

cplx resultant(const CPoly& p, const CPoly& q) {
  const int m = static_cast<int>(p.size()) - 1;
  const int n = static_cast<int>(q.size()) - 1;
  if (m < 0 || n < 0) throw std::invalid_argument("resultant: empty polynomial");
  if (m == 0) return std::pow(p[0], n);
  if (n == 0) return std::pow(q[0], m);
  const int N = m + n;
  CMat S = CMat::Zero(N, N);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) S(r, r + k) = p[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) S(n + r, r + k) = q[n - k];
  return det_lu(S);
}

cplx discriminant(const CPoly& p) {
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 2) throw std::invalid_argument("discriminant: degree < 2");
  const double sgn = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sgn * resultant(p, poly_derivative(p)) / p.back();
}

CayleyResult cayley_transform(const CPoly& p, double tol) {
  const int n = static_cast<int>(p.size()) - 1;
  CayleyResult out;
  out.complex.assign(n + 1, 0.0);
  // powers of (1 + i nu) and (1 - i nu)
  std::vector<CPoly> up(n + 1), dn(n + 1);
  up[0] = dn[0] = {1.0};
  for (int k = 1; k <= n; ++k) {
    up[k] = poly_mul(up[k - 1], {1.0, kI});
    dn[k] = poly_mul(dn[k - 1], {1.0, -kI});
  }
  for (int k = 0; k <= n; ++k) {
    CPoly term = poly_mul(up[k], dn[n - k]);
    for (int j = 0; j <= n; ++j) out.complex[j] += p[k] * term[j];
  }
  const double scale = max_abs(out.complex);
  if (scale == 0) throw SymmetryViolation("cayley_transform: zero polynomial");
  size_t big = 0;
  for (size_t j = 0; j < out.complex.size(); ++j)
    if (std::abs(out.complex[j]) > std::abs(out.complex[big])) big = j;
  out.phase = std::arg(out.complex[big]);
  const cplx rot = std::exp(-kI * out.phase);
  out.real.resize(n + 1);
  double resid = 0;
  for (int j = 0; j <= n; ++j) {
    const cplx c = out.complex[j] * rot;
    out.real[j] = c.real();
    resid = std::max(resid, std::abs(c.imag()));
  }
  out.imag_residual = resid / scale;
  if (out.imag_residual > tol)
    throw SymmetryViolation("cayley_transform: polynomial is not self-inversive (residual " +
                            std::to_string(out.imag_residual) + ")");
  while (out.real.size() > 1 && std::abs(out.real.back()) <= tol * scale) {
    out.real.pop_back();
    ++out.degree_drop;
  }
  return out;
}

RootCount sturm_count(const RPoly& p_in, double a, double b) {
  RootCount rc;
  RPoly p = rtrim(p_in, 0.0);
  if (p.size() <= 1) return rc;
  const double tiny = 1e-10;
  std::vector<RPoly> seq;
  auto normalize = [](RPoly q) {
    const double m = max_abs(q);
    if (m > 0)
      for (auto& c : q) c /= m;
    return q;
  };
  seq.push_back(normalize(p));
  seq.push_back(normalize(poly_derivative(p)));
  while (seq.back().size() > 1) {
    RPoly r = poly_rem(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    r = rtrim(r, tiny);
    if (r.empty()) {
      rc.degenerate = true;  // nontrivial gcd: repeated root
      break;
    }
    seq.push_back(normalize(r));
  }
  rc.count = sign_changes(seq, a) - sign_changes(seq, b);
  return rc;
}

RootCount unit_circle_root_count(const CPoly& p, double tol) {
  CayleyResult c = cayley_transform(p, tol);
  RootCount rc = sturm_count(c.real, -std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity());
  rc.count += c.degree_drop;
  if (c.degree_drop > 1) rc.degenerate = true;
  return rc;
}

}  // namespace floquet
