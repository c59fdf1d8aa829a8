#include "floquet/models.hpp"

#include <cmath>

namespace floquet {

namespace {

void require_period(const WaveProfile& a, const WaveProfile& b, const char* what) {
  if (std::abs(a.period - b.period) > 1e-12 * std::max(1.0, a.period))
    throw std::invalid_argument(std::string(what) + ": profiles must share one period");
}

Term term(int outer, int inner, cplx coef = 1.0, int profile = -1, int deriv = 0) {
  return Term{outer, inner, coef, profile, deriv};
}

WaveProfile mathieu_profile(double q0, double q1) {
  return trig_profile(q0, {q1}, {}, 2 * kPi, "trig");
}

}  // namespace

SpectralProblem model_schrodinger_hill(const WaveProfile& Q) {
  SpectralProblem p;
  p.name = "hill2";
  p.n = 2;
  p.T = Q.period;
  auto q = Q.eval;
  p.evalA = [q](double x, cplx l, CMat& A) {
    A << 0.0, l, l - q(x) / l, 0.0;
  };
  p.evalAlambda = [q](double x, cplx l, CMat& A) {
    A << 0.0, 1.0, 1.0 + q(x) / (l * l), 0.0;
  };
  p.evalB = [](cplx) {
    CMat B(2, 2);
    B << 0.0, 1.0, 1.0, 0.0;
    return B;
  };
  p.excluded = {0.0};
  return p;
}

SpectralProblem model_gkdv(const WaveProfile& Q) {
  SpectralProblem p;
  p.name = "gkdv";
  p.n = 3;
  p.T = Q.period;
  auto q = Q.eval;
  p.evalA = [q](double x, cplx l, CMat& A) {
    A << 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, l, -q(x), 0.0;
  };
  p.evalAlambda = [](double, cplx, CMat& A) {
    A.setZero();
    A(2, 0) = 1.0;
  };
  p.evalB = [](cplx l) {
    CMat B(3, 3);
    B << -l, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0;
    return B;
  };
  return p;
}

GbbmPair model_gbbm(const WaveProfile& Q, double c) {
  if (c == 0.0) throw std::invalid_argument("model_gbbm: wave speed must be nonzero");
  auto q = Q.eval;
  auto B = [](cplx l) {
    CMat M(3, 3);
    M << -l, 0.0, 1.0, 0.0, 1.0 / l, 0.0, -1.0, 0.0, 0.0;
    return M;
  };
  GbbmPair out;
  SpectralProblem& f = out.full;
  f.name = "gbbm";
  f.n = 3;
  f.T = Q.period;
  f.traceFree = false;
  f.evalA = [q, c](double x, cplx l, CMat& A) {
    A << l / c, 0.0, 1.0 / c, -l, 0.0, 0.0, -q(x), 1.0, 0.0;
  };
  f.evalAlambda = [c](double, cplx, CMat& A) {
    A.setZero();
    A(0, 0) = 1.0 / c;
    A(1, 0) = -1.0;
  };
  f.evalB = B;
  f.excluded = {0.0};

  SpectralProblem& r = out.rescaled;
  r = f;
  r.name = "gbbm-rescaled";
  r.traceFree = true;
  r.evalA = [q, c](double x, cplx l, CMat& A) {
    const cplx s = l / (3.0 * c);
    A << l / c - s, 0.0, 1.0 / c, -l, -s, 0.0, -q(x), 1.0, -s;
  };
  r.evalAlambda = [c](double, cplx, CMat& A) {
    const double s = 1.0 / (3.0 * c);
    A.setZero();
    A(0, 0) = 1.0 / c - s;
    A(1, 0) = -1.0;
    A(1, 1) = -s;
    A(2, 2) = -s;
  };
  return out;
}

SpectralProblem model_nls(const WaveProfile& Qplus, const WaveProfile& Qminus,
                          const WaveProfile* R, bool swapR2) {
  require_period(Qplus, Qminus, "model_nls");
  if (R) require_period(Qplus, *R, "model_nls");
  SpectralProblem p;
  p.name = "nls";
  p.n = 4;
  p.T = Qplus.period;
  auto qp = Qplus.eval, qm = Qminus.eval;
  std::function<double(double)> r = R ? R->eval : std::function<double(double)>();
  const double sq = swapR2 ? -1.0 : 1.0;
  p.evalA = [qp, qm, r, sq](double x, cplx l, CMat& A) {
    const double Rx = r ? r(x) : 0.0;
    const double h = 0.5 * Rx, q = 0.25 * Rx * Rx * sq;
    A << 0.0, h, 1.0, 0.0,
         -h, 0.0, 0.0, -1.0,
         -qm(x) - q, -l, 0.0, -h,
         -l, qp(x) + q, h, 0.0;
  };
  p.evalAlambda = [](double, cplx, CMat& A) {
    A.setZero();
    A(2, 1) = -1.0;
    A(3, 0) = -1.0;
  };
  p.evalB = [](cplx) {
    CMat B = CMat::Zero(4, 4);
    B(0, 2) = -1.0;
    B(1, 3) = 1.0;
    B(2, 0) = 1.0;
    B(3, 1) = -1.0;
    return B;
  };
  return p;
}

SpectralProblem model_boussinesq(const WaveProfile& Q, double c) {
  SpectralProblem p;
  p.name = "boussinesq";
  p.n = 4;
  p.T = Q.period;
  auto q = Q.eval;
  p.evalA = [q, c](double x, cplx l, CMat& A) {
    A << 0.0, 0.0, 1.0, 0.0,
         0.0, 0.0, 0.0, -l * l,
         q(x), 1.0, 0.0, 0.0,
         1.0, 0.0, -2.0 * c / l, 0.0;
  };
  p.evalAlambda = [c](double, cplx l, CMat& A) {
    A.setZero();
    A(1, 3) = -2.0 * l;
    A(3, 2) = 2.0 * c / (l * l);
  };
  p.evalB = [c](cplx l) {
    CMat B(4, 4);
    B << 8 * c * c * c, -2 * c, l, -4 * c * c * l,
         -2 * c, 0.0, 0.0, l,
         -l, 0.0, 0.0, 0.0,
         4 * c * c * l, -l, 0.0, -2 * c * l * l;
    return B;
  };
  p.excluded = {0.0};
  return p;
}

SpectralProblem model_kawahara(const WaveProfile& phi, double alpha) {
  SpectralProblem p;
  p.name = "kawahara";
  p.n = 5;
  p.T = phi.period;
  auto f = phi.eval;
  p.evalA = [f, alpha](double x, cplx l, CMat& A) {
    A.setZero();
    for (int i = 0; i < 4; ++i) A(i, i + 1) = 1.0;
    A(4, 0) = l;
    A(4, 1) = f(x);
    A(4, 3) = alpha;
  };
  p.evalAlambda = [](double, cplx, CMat& A) {
    A.setZero();
    A(4, 0) = 1.0;
  };
  return p;
}

// ---------------------------------------------------------------------------

std::vector<std::string> model_ids() {
  return {"hill2", "gkdv", "mathieu-kdv", "gbbm", "bbm", "mbbm", "nls-trivial",
          "nls-quintic-phase", "boussinesq", "kawahara"};
}

Params default_params(const std::string& id) {
  if (id == "hill2") return {{"q0", 1.0}, {"q1", 1.0}};
  if (id == "gkdv") return {{"k", 3}, {"c", 1}, {"a", 0.25}, {"E", 0}};
  if (id == "mathieu-kdv") return {{"q0", 4}, {"q1", 5}};
  if (id == "gbbm") return {{"q0", 4}, {"q1", 5}, {"c", 1}};
  if (id == "bbm") return {};
  if (id == "mbbm") return {{"m", 0.5 + std::sqrt(5.0) / 10.0}};
  if (id == "nls-trivial") return {{"r2_swap", 0}, {"qminus_cos", 3}};
  if (id == "nls-quintic-phase") return {{"r2_swap", 0}};
  if (id == "boussinesq") return {{"c", 1}, {"trig", 0}, {"q_sign", 1}};
  if (id == "kawahara") return {{"alpha", 0}, {"sigma", 0.25}};
  throw UnknownModel("unknown model id: " + id);
}

namespace {

Params merge(const std::string& id, const Params& given) {
  Params p = default_params(id);
  for (const auto& [k, v] : given) {
    if (!p.count(k)) throw std::invalid_argument("model " + id + " has no parameter '" + k + "'");
    p[k] = v;
  }
  return p;
}

OperatorSymbol scalar_symbol(double T, std::vector<WaveProfile> profiles) {
  OperatorSymbol s;
  s.components = 1;
  s.period = T;
  s.profiles = std::move(profiles);
  s.rhs.assign(1, std::vector<TermList>(1));
  return s;
}

// lambda v = D^3 v + D(Q v)
OperatorSymbol kdv_symbol(const WaveProfile& Q) {
  OperatorSymbol s = scalar_symbol(Q.period, {Q});
  s.lhs = {{}, {term(0, 0)}};
  s.rhs[0][0] = {term(3, 0), term(1, 0, 1.0, 0)};
  return s;
}

// lambda (1 - D^2) v = -(c D^3 v + D(Q v))
OperatorSymbol bbm_symbol(const WaveProfile& Q, double c) {
  OperatorSymbol s = scalar_symbol(Q.period, {Q});
  s.lhs = {{}, {term(0, 0), term(2, 0, -1.0)}};
  s.rhs[0][0] = {term(3, 0, -c), term(1, 0, -1.0, 0)};
  return s;
}

void finish_gkdv_like(Model& m, const WaveProfile& Q) {
  m.problem = model_gkdv(Q);
  m.symbol = kdv_symbol(Q);
  m.classifier = ClassifierKind::Cubic;
}

void finish_gbbm_like(Model& m, const WaveProfile& Q, double c) {
  auto pair = model_gbbm(Q, c);
  m.problem = pair.rescaled;
  m.full = pair.full;
  m.speed = c;
  m.symbol = bbm_symbol(Q, c);
  m.classifier = ClassifierKind::Cubic;
}

OperatorSymbol nls_symbol(const WaveProfile& Qp, const WaveProfile& Qm, const WaveProfile* R) {
  OperatorSymbol s;
  s.components = 2;
  s.period = Qp.period;
  s.profiles = {Qp, Qm};
  if (R) s.profiles.push_back(*R);
  s.lhs = {{}, {term(0, 0)}};
  s.rhs.assign(2, std::vector<TermList>(2));
  TermList K;
  if (R) K = {term(0, 0, 0.5, 2, 1), term(0, 1, 1.0, 2)};
  s.rhs[0][0] = K;
  s.rhs[1][1] = K;
  s.rhs[0][1] = {term(2, 0), term(0, 0, 1.0, 0)};
  s.rhs[1][0] = {term(2, 0, -1.0), term(0, 0, -1.0, 1)};
  return s;
}

}  // namespace

Model make_model(const std::string& id, const Params& given) {
  Model m;
  m.id = id;
  m.params = merge(id, given);
  const Params& P = m.params;

  if (id == "hill2") {
    WaveProfile Q = mathieu_profile(P.at("q0"), P.at("q1"));
    m.problem = model_schrodinger_hill(Q);
    OperatorSymbol s = scalar_symbol(Q.period, {Q});
    s.lhs = {{}, {}, {term(0, 0)}};
    s.rhs[0][0] = {term(2, 0), term(0, 0, 1.0, 0)};
    m.symbol = s;
    m.waves = {Q};
    m.classifier = ClassifierKind::Band2;
  } else if (id == "mathieu-kdv") {
    WaveProfile Q = mathieu_profile(P.at("q0"), P.at("q1"));
    finish_gkdv_like(m, Q);
    m.waves = {Q};
  } else if (id == "gkdv") {
    const int k = static_cast<int>(std::lround(P.at("k")));
    const double c = P.at("c");
    GkdvWave w = gkdv_wave(k, c, P.at("a"), P.at("E"));
    WaveProfile Q = map_profile(
        w.phi, [k, c](double phi) { return k * std::pow(phi, k - 1) - c; }, "gkdv_potential");
    finish_gkdv_like(m, Q);
    m.waves = {w.phi, Q};
    m.params["period"] = w.phi.period;
    m.params["real_roots"] = w.realRootCount;
    m.params["phi_min"] = w.phiMin;
    m.params["phi_max"] = w.phiMax;
    m.zeroInconclusive = true;
  } else if (id == "gbbm") {
    WaveProfile Q = mathieu_profile(P.at("q0"), P.at("q1"));
    finish_gbbm_like(m, Q, P.at("c"));
    m.waves = {Q};
  } else if (id == "bbm") {
    // g(u) = u^2/2 and c = 1, so Q = g'(phi) = phi
    WaveProfile phi = bbm_wave();
    WaveProfile Q = map_profile(phi, [](double u) { return u; }, "bbm_potential");
    finish_gbbm_like(m, Q, 1.0);
    m.waves = {phi};
    m.params["period"] = phi.period;
    m.zeroInconclusive = true;
  } else if (id == "mbbm") {
    // u_t - u_xxt + (u^3)_x = 0 has no u_x term: g(u) = u^3 - u, c = 1, Q = 3 phi^2 - 1
    WaveProfile phi = mbbm_wave(P.at("m"));
    WaveProfile Q = map_profile(phi, [](double u) { return 3 * u * u - 1; }, "mbbm_potential");
    finish_gbbm_like(m, Q, 1.0);
    m.waves = {phi};
    m.params["period"] = phi.period;
    m.zeroInconclusive = true;
  } else if (id == "nls-trivial") {
    WaveProfile Qp = trig_profile(6, {-1}, {0, 3}, 2 * kPi, "Q_plus");
    // qminus_cos = -3 gives the other relative sign of the cos terms
    WaveProfile Qm = trig_profile(4, {P.at("qminus_cos")}, {0, 2}, 2 * kPi, "Q_minus");
    m.problem = model_nls(Qp, Qm, nullptr, P.at("r2_swap") != 0);
    m.symbol = nls_symbol(Qp, Qm, nullptr);
    m.waves = {Qp, Qm};
    m.classifier = ClassifierKind::QuarticTrivial;
  } else if (id == "nls-quintic-phase") {
    NlsPhaseWave w = nls_quintic_phase_wave();
    const double om = w.omega, k2 = w.kappa * w.kappa, kap = w.kappa;
    WaveProfile Qp = map_profile(
        w.A, [om, k2](double A) { return om - k2 / std::pow(A, 4) + 3 * std::pow(A, 4); },
        "Q_plus");
    WaveProfile Qm = map_profile(
        w.A, [om, k2](double A) { return om - k2 / std::pow(A, 4) + 15 * std::pow(A, 4); },
        "Q_minus");
    WaveProfile R = map_profile(w.A, [kap](double A) { return 2 * kap / (A * A); }, "R");
    m.problem = model_nls(Qp, Qm, &R, P.at("r2_swap") != 0);
    m.symbol = nls_symbol(Qp, Qm, &R);
    m.waves = {w.A, w.Kx};
    m.params["period"] = w.A.period;
    m.params["kappa"] = w.kappa;
    m.params["omega"] = w.omega;
    m.params["A_min"] = w.Amin;
    m.params["A_max"] = w.Amax;
    m.classifier = ClassifierKind::Quartic;
    m.zeroInconclusive = true;
  } else if (id == "boussinesq") {
    const double c = P.at("c");
    WaveProfile Q;
    if (P.at("trig") != 0) {
      Q = trig_profile(0, {5}, {0, 1}, 2 * kPi, "Q");
    } else {
      WaveProfile phi = boussinesq_wave();
      const double s = P.at("q_sign");
      Q = map_profile(phi, [s, c](double u) { return s * (3 * u * u - 1) + 1 - c * c; }, "Q");
      m.waves = {phi};
      m.params["period"] = phi.period;
    }
    m.problem = model_boussinesq(Q, c);
    // lambda^2 v - 2 c lambda D v = -D^4 v + D^2 (Q v)
    OperatorSymbol s = scalar_symbol(Q.period, {Q});
    s.lhs = {{}, {term(1, 0, -2.0 * c)}, {term(0, 0)}};
    s.rhs[0][0] = {term(4, 0, -1.0), term(2, 0, 1.0, 0)};
    m.symbol = s;
    if (m.waves.empty()) m.waves = {Q};
    m.classifier = ClassifierKind::Quartic;
  } else if (id == "kawahara") {
    const double alpha = P.at("alpha"), sigma = P.at("sigma");
    WaveProfile phi = kawahara_wave(alpha, sigma);
    m.problem = model_kawahara(phi, alpha);
    // lambda v = D^5 v - alpha D^3 v - D(phi v)
    OperatorSymbol s = scalar_symbol(phi.period, {phi});
    s.lhs = {{}, {term(0, 0)}};
    s.rhs[0][0] = {term(5, 0), term(3, 0, -alpha), term(1, 0, -1.0, 0)};
    m.symbol = s;
    m.waves = {phi};
    for (const auto& [k, v] : phi.params) m.params[k] = v;
    m.classifier = ClassifierKind::Quintic;
    m.zeroInconclusive = true;
  } else {
    throw UnknownModel("unknown model id: " + id);
  }
  m.problem.name = id;
  return m;
}

OperatorSymbol operator_symbol(const std::string& id, const Params& params) {
  return make_model(id, params).symbol;
}

}  // namespace floquet
