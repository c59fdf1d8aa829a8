#include <algorithm>
#include <random>

#include "doctest.h"
#include "floquet/polyalg.hpp"
#include "helpers.hpp"

using namespace floquet;
using namespace testutil;

namespace {

// det(M - mu I) coefficients by interpolation at n+1 points
CPoly charpoly_by_interpolation(const CMat& M) {
  const int n = static_cast<int>(M.rows());
  CMat V(n + 1, n + 1);
  CVec rhs(n + 1);
  for (int i = 0; i <= n; ++i) {
    const cplx mu = std::polar(1.3, 2 * kPi * i / (n + 1));
    for (int k = 0; k <= n; ++k) V(i, k) = std::pow(mu, k);
    rhs(i) = (M - mu * CMat::Identity(n, n)).determinant();
  }
  CVec c = V.partialPivLu().solve(rhs);
  return CPoly(c.data(), c.data() + n + 1);
}

cplx disc_from_roots(const CPoly& p) {
  auto r = poly_roots(p);
  cplx v = std::pow(p.back(), 2 * static_cast<int>(r.size()) - 2);
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = i + 1; j < r.size(); ++j) v *= (r[i] - r[j]) * (r[i] - r[j]);
  return v;
}

}  // namespace

TEST_SUITE("polyalg") {

TEST_CASE("newton identities from traces") {
  auto e = elementary_from_traces({3.0, 3.0, 3.0});
  REQUIRE(e.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(e[k] - cplx(k == 0 || k == 3 ? 1 : 3)) < 1e-14);

  // (mu^2 + 1)^2: traces 2(i^k + (-i)^k)
  std::vector<cplx> tr;
  for (int k = 1; k <= 4; ++k) tr.push_back(2.0 * (std::pow(kI, k) + std::pow(-kI, k)));
  e = elementary_from_traces(tr);
  const cplx want[] = {1, 0, 2, 0, 1};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(e[k] - want[k]) < 1e-13);
}

TEST_CASE("newton roundtrip and minors agree with the characteristic polynomial") {
  std::mt19937 g(7);
  std::normal_distribution<double> N01;
  for (int n = 2; n <= 5; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      CMat M(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = cplx(N01(g), N01(g));
      std::vector<cplx> tr;
      CMat P = CMat::Identity(n, n);
      for (int k = 1; k <= n; ++k) {
        P = P * M;
        tr.push_back(P.trace());
      }
      const CPoly want = charpoly_by_interpolation(M);
      const CPoly a = charpoly_from_elementary(elementary_from_traces(tr));
      const CPoly b = charpoly_from_monodromy(M);
      double scale = 0;
      for (cplx c : want) scale = std::max(scale, std::abs(c));
      for (int k = 0; k <= n; ++k) {
        CHECK(std::abs(a[k] - want[k]) < 1e-10 * scale);
        CHECK(std::abs(b[k] - want[k]) < 1e-10 * scale);
      }
    }
}

TEST_CASE("charpoly of simple matrices") {
  CPoly p = charpoly_from_monodromy(CMat::Identity(3, 3));
  const cplx cube[] = {1, -3, 3, -1};  // -(mu-1)^3
  for (int k = 0; k < 4; ++k) CHECK(std::abs(p[k] - cube[k]) < 1e-14);

  CMat D = CMat::Zero(2, 2);
  D(0, 0) = 2;
  D(1, 1) = 0.5;
  p = charpoly_from_monodromy(D);
  CHECK(std::abs(p[0] - 1.0) < 1e-14);
  CHECK(std::abs(p[1] + 2.5) < 1e-14);
  CHECK(std::abs(p[2] - 1.0) < 1e-14);
}

TEST_CASE("elementary derivative matches finite differences") {
  std::mt19937 g(11);
  std::normal_distribution<double> N01;
  const int n = 4;
  CMat M(n, n), dM(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M(i, j) = cplx(N01(g), N01(g));
      dM(i, j) = cplx(N01(g), N01(g));
    }
  const auto de = elementary_derivative(M, dM);
  const double h = 1e-6;
  const auto ep = elementary_from_minors(M + h * dM), em = elementary_from_minors(M - h * dM);
  for (int k = 0; k <= n; ++k) CHECK(std::abs(de[k] - (ep[k] - em[k]) / (2 * h)) < 1e-6 * (1 + std::abs(de[k])));
}

TEST_CASE("floquet discriminant roundtrip") {
  std::mt19937 g(3);
  std::normal_distribution<double> N01;
  for (int n = 2; n <= 5; ++n) {
    std::vector<double> f(n - 1);
    for (auto& x : f) x = N01(g);
    const auto e = elementary_from_discriminant(f, n);
    const auto back = floquet_discriminant(e);
    for (int k = 0; k < n - 1; ++k) CHECK(back[k] == doctest::Approx(f[k]).epsilon(1e-14));
    for (int k = 0; k <= n; ++k) CHECK(std::abs(e[k] - std::conj(e[n - k])) < 1e-14);
  }
}

TEST_CASE("resultant examples") {
  CHECK(std::abs(resultant({-1.0, 0.0, 1.0}, {-1.0, 1.0})) < 1e-14);
  CHECK(std::abs(resultant({1.0, 0.0, 1.0}, {-1.0, 1.0}) - 2.0) < 1e-14);
  CHECK_THROWS(resultant({}, {1.0}));
}

TEST_CASE("resultant vanishes exactly on shared roots") {
  std::mt19937 g(5);
  std::normal_distribution<double> N01;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> a(3), b(2);
    for (auto& z : a) z = cplx(N01(g), N01(g));
    for (auto& z : b) z = cplx(N01(g), N01(g));
    const bool shared = trial % 2 == 0;
    if (shared) b[0] = a[1];
    const cplx r = resultant(from_roots(a), from_roots(b));
    cplx prod = 1;
    for (cplx x : a)
      for (cplx y : b) prod *= (x - y);
    if (shared)
      CHECK(std::abs(r) < 1e-12);
    else
      CHECK(rel(r, prod) < 1e-9);  // monic case: res = prod (a_i - b_j)
  }
}

TEST_CASE("discriminant examples and root oracle") {
  CHECK(std::abs(discriminant({1.0, -2.0, 1.0})) < 1e-14);
  CHECK(std::abs(discriminant({-1.0, 0.0, 0.0, 1.0}) + 27.0) < 1e-12);
  // cubic p(mu) = -mu^3 + 0 mu^2 - 0 mu + 1 is the f = 0 cubic: disc -27
  CHECK(std::abs(discriminant({1.0, 0.0, 0.0, -1.0}) + 27.0) < 1e-12);
  CHECK_THROWS(discriminant({1.0, 1.0}));

  std::mt19937 g(9);
  std::normal_distribution<double> N01;
  for (int trial = 0; trial < 20; ++trial) {
    CPoly p(4);
    for (auto& c : p) c = cplx(N01(g), N01(g));
    CHECK(rel(discriminant(p), disc_from_roots(p)) < 1e-8);
  }
}

TEST_CASE("cayley transform examples") {
  // (mu - 1)^2 -> -4 nu^2
  auto c = cayley_transform({1.0, -2.0, 1.0});
  REQUIRE(c.complex.size() == 3);
  CHECK(std::abs(c.complex[0]) < 1e-14);
  CHECK(std::abs(c.complex[1]) < 1e-14);
  CHECK(std::abs(c.complex[2] + 4.0) < 1e-14);

  // p_sharp(0) = p(1)
  c = cayley_transform({1.0, -2.5, 1.0});
  CHECK(std::abs(c.complex[0] - cplx(-0.5)) < 1e-14);

  CHECK_THROWS_AS(cayley_transform({1.0, 2.0, 5.0}), SymmetryViolation);
}

TEST_CASE("cayley covariance of the discriminant") {
  std::mt19937 g(2024);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 3;
    const CPoly p = random_self_inversive(n, g);
    if (std::abs(poly_eval(p, -1.0)) < 1e-3) continue;
    const auto c = cayley_transform(p);
    const cplx want = std::pow(cplx(0, -2), n * (n - 1)) * discriminant(p);
    CHECK(rel(discriminant(c.complex), want) < 1e-9);
    ++checked;
  }
  CHECK(checked > 250);
}

TEST_CASE("self-inversive roots pair under reflection") {
  std::mt19937 g(77);
  for (int trial = 0; trial < 30; ++trial) {
    const CPoly p = random_self_inversive(5, g);
    const auto r = poly_roots(p);
    for (cplx z : r) {
      double best = 1e9;
      for (cplx w : r) best = std::min(best, std::abs(w - 1.0 / std::conj(z)));
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("sturm counts") {
  RPoly five{1.0};
  for (int k = 1; k <= 5; ++k) {
    RPoly next(five.size() + 1, 0.0);
    for (size_t i = 0; i < five.size(); ++i) {
      next[i] -= k * five[i];
      next[i + 1] += five[i];
    }
    five = next;
  }
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(sturm_count(five, -inf, inf).count == 5);
  CHECK(sturm_count(five, 1.5, 3.5).count == 2);
  CHECK(sturm_count({-1, 0, 0, 0, 0, 1}, -inf, inf).count == 1);
  // (x^2+1)(x-1)(x-2)(x-3) = x^5 - 6x^4 + 12x^3 - 12x^2 + 11x - 6
  CHECK(sturm_count({-6, 11, -12, 12, -6, 1}, -inf, inf).count == 3);
  CHECK(sturm_count({1, -2, 1}, -inf, inf).degenerate);
}

TEST_CASE("sturm count matches companion roots") {
  std::mt19937 g(31);
  std::normal_distribution<double> N01;
  const double inf = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    RPoly p(n + 1);
    for (auto& c : p) c = N01(g);
    CPoly pc(p.begin(), p.end());
    int real = 0;
    bool close = false;
    for (cplx r : poly_roots(pc)) {
      if (std::abs(r.imag()) < 1e-9) ++real;
      else if (std::abs(r.imag()) < 1e-5) close = true;
    }
    if (close) continue;
    CHECK(sturm_count(p, -inf, inf).count == real);
  }
}

TEST_CASE("unit circle counts") {
  CHECK(unit_circle_root_count({1.0, 0.0, 0.0, -1.0}).count == 3);
  // (mu^2 - 3 mu + 1)(mu^2 + mu + 1)
  CHECK(unit_circle_root_count(poly_mul({1.0, -3.0, 1.0}, {1.0, 1.0, 1.0})).count == 2);

  std::mt19937 g(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 3;
    const CPoly p = random_self_inversive(n, g);
    const auto r = poly_roots(p);
    bool borderline = false;
    for (cplx z : r) borderline |= std::abs(std::abs(z) - 1) > 1e-9 && std::abs(std::abs(z) - 1) < 1e-3;
    if (borderline) continue;
    CHECK(unit_circle_root_count(p).count == count_on_circle(r, 1e-9));
  }
}

}
