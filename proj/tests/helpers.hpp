#pragma once
#include <random>

#include "floquet/polyalg.hpp"

namespace testutil {

using floquet::cplx;
using floquet::CPoly;

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// coefficients of prod (mu - r)
inline CPoly from_roots(const std::vector<cplx>& roots) {
  CPoly p{1.0};
  for (cplx r : roots) p = floquet::poly_mul(p, {-r, 1.0});
  return p;
}

// random self-inversive polynomial: roots closed under mu -> 1/conj(mu)
inline CPoly random_self_inversive(int n, std::mt19937& g) {
  std::uniform_real_distribution<double> U(0, 2 * floquet::kPi), R(0.3, 1.8);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<cplx> roots;
  auto separated = [&roots] {
    for (size_t i = 0; i < roots.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (std::abs(roots[i] - roots[j]) < 0.05) return false;
    return true;
  };
  // near-double roots make the coefficients ill-conditioned; keep the gap bounded below
  do {
    roots.clear();
    while (static_cast<int>(roots.size()) < n) {
      if (static_cast<int>(roots.size()) + 2 <= n && coin(g)) {
        const cplx z = std::polar(R(g), U(g));
        roots.push_back(z);
        roots.push_back(1.0 / std::conj(z));
      } else {
        roots.push_back(std::polar(1.0, U(g)));
      }
    }
  } while (!separated());
  return from_roots(roots);
}

inline int count_on_circle(const std::vector<cplx>& roots, double tol) {
  int c = 0;
  for (cplx r : roots) c += std::abs(std::abs(r) - 1.0) < tol;
  return c;
}

}  // namespace testutil

namespace testutil {

// e_0..e_n of a random root set closed under mu -> 1/conj(mu), rotated so e_n = 1
inline std::vector<cplx> random_self_inversive_e(int n, std::mt19937& g) {
  const CPoly p = random_self_inversive(n, g);
  auto roots = floquet::poly_roots(p);
  cplx prod = 1;
  for (cplx r : roots) prod *= r;
  const cplx rot = std::polar(1.0, -std::arg(prod) / n);
  for (auto& r : roots) r *= rot;
  std::vector<cplx> e(n + 1, 0.0);
  e[0] = 1;
  for (cplx r : roots)
    for (int k = n; k >= 1; --k) e[k] += r * e[k - 1];
  return e;
}

}  // namespace testutil
