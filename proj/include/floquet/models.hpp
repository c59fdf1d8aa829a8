#pragma once
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floquet/monodromy.hpp"
#include "floquet/waves.hpp"

namespace floquet {

struct UnknownModel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// One term D^outer ( q(x) D^inner v ), q = coef * (profile^(profileDeriv) or 1).
struct Term {
  int outer = 0;
  int inner = 0;
  cplx coef = 1.0;
  int profile = -1;  // index into OperatorSymbol::profiles, -1 for the constant 1
  int profileDeriv = 0;
};
using TermList = std::vector<Term>;

// sum_d lambda^d lhs[d] v = rhs v, for a 1- or 2-component unknown.
// lhs terms have constant coefficients and act on every component alike.
struct OperatorSymbol {
  int components = 1;
  double period = 0;
  std::vector<WaveProfile> profiles;
  std::vector<TermList> lhs;
  std::vector<std::vector<TermList>> rhs;  // rhs[row][col]
  int lambdaDegree() const { return static_cast<int>(lhs.size()) - 1; }
};

enum class ClassifierKind { Band2, Cubic, Quartic, QuarticTrivial, Quintic };

using Params = std::map<std::string, double>;

struct Model {
  std::string id;
  Params params;
  SpectralProblem problem;              // system used for classification (trace free)
  std::optional<SpectralProblem> full;  // gBBM system that still carries tr A = lambda/c
  OperatorSymbol symbol;
  std::vector<WaveProfile> waves;       // profiles worth exporting
  ClassifierKind classifier = ClassifierKind::Cubic;
  // lambda = 0 is a point where classification and the index are inconclusive
  bool zeroInconclusive = false;
  double speed = 0;  // gBBM frame speed, used with `full`
};

// --- first-order systems ---------------------------------------------------
SpectralProblem model_schrodinger_hill(const WaveProfile& Q);
SpectralProblem model_gkdv(const WaveProfile& Q);
struct GbbmPair {
  SpectralProblem full;
  SpectralProblem rescaled;
};
GbbmPair model_gbbm(const WaveProfile& Q, double c);
// L_pm = D^2 + Q_pm, K = R'/2 + R D. swapR2 flips the sign of the R^2/4 terms relative to
// the matrix obtained by eliminating w1, w2.
SpectralProblem model_nls(const WaveProfile& Qplus, const WaveProfile& Qminus,
                          const WaveProfile* R, bool swapR2 = false);
SpectralProblem model_boussinesq(const WaveProfile& Q, double c);
SpectralProblem model_kawahara(const WaveProfile& phi, double alpha);

// --- registry ----------------------------------------------------------------
std::vector<std::string> model_ids();
Params default_params(const std::string& id);
// Unknown keys are rejected; missing keys take defaults.
Model make_model(const std::string& id, const Params& params = {});
OperatorSymbol operator_symbol(const std::string& id, const Params& params = {});

}  // namespace floquet
