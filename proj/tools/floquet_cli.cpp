// floquet: command-line front end over the library.
//   floquet <spectrum|classify|bifurcation|wave|verify> --model ID [--param k=v ...] [--config run.json]
// Exit codes: 0 success, 2 usage, 3 numerical failure.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "floquet/analysis.hpp"
#include "floquet/hill.hpp"
#include "floquet/parallel.hpp"
#include "svg.hpp"

using namespace floquet;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- output formatting ---------------------------------------------------------

std::string num17(double v) {
  if (v == 0) v = 0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON with every float at 17 significant digits; non-finite values become null.
void dump(const json& j, std::ostream& os, int indent, int depth = 0) {
  const std::string pad(indent * (depth + 1), ' '), close(indent * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        dump(it.value(), os, indent, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::none_of(j.begin(), j.end(), [](const json& v) { return v.is_structured(); });
      os << (flat ? "[" : "[\n");
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << (flat ? ", " : ",\n");
        if (!flat) os << pad;
        dump(j[i], os, indent, depth + 1);
      }
      os << (flat ? "]" : "\n" + close + "]");
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? num17(v) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

std::string to_text(const json& j) {
  std::ostringstream os;
  dump(j, os, 2);
  os << "\n";
  return os.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

// RFC 4180: CRLF line ends, fields quoted when they contain separators or quotes.
class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row(header); }
  void row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << quote(fields[i]);
    }
    out_ << "\r\n";
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  std::ostringstream out_;
};

std::string cell(double v) { return std::isfinite(v) ? num17(v) : (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json jcplx(cplx z) { return json::array({jnum(z.real()), jnum(z.imag())}); }

// --- run configuration -----------------------------------------------------------

struct RunConfig {
  std::string command, model;
  Params params;
  std::string outDir = ".";
  double tol = 1e-11;  // integrator relative tolerance
  int hillN = 31;
  int exponents = 2000;
  int grid = 401;
  double lambdaMin = NAN, lambdaMax = NAN;  // imaginary parts; model defaults when unset
  bool svg = true;
  bool swapAxes = false;
  bool hillCheck = true;
  double attachWindow = 0.05, attachTol = 0.02, reTol = 1e-6;
  int samples = 512;  // wave profile points
  int modes = 16;     // exported Fourier modes
  std::vector<cplx> lambdas{cplx(0, 0.3)};
};

// imaginary-axis window per model, wide enough for the features of interest
double default_lambda_max(const std::string& id) {
  if (id == "hill2" || id == "boussinesq") return 3;
  if (id == "gkdv") return 10;
  if (id == "mathieu-kdv") return 0.5;
  if (id == "gbbm") return 2.5;
  if (id == "nls-trivial") return 6.5;
  if (id == "nls-quintic-phase") return 5;
  return 1;
}

json config_json(const RunConfig& c) {
  json p = json::object();
  for (const auto& [k, v] : c.params) p[k] = v;
  json ls = json::array();
  for (cplx z : c.lambdas) ls.push_back(jcplx(z));
  return {{"command", c.command},     {"model", c.model},
          {"params", p},              {"out_dir", c.outDir},
          {"tol", c.tol},             {"hill_n", c.hillN},
          {"exponents", c.exponents}, {"grid", c.grid},
          {"lambda_min", c.lambdaMin}, {"lambda_max", c.lambdaMax},
          {"svg", c.svg},             {"swap_axes", c.swapAxes},
          {"hill_check", c.hillCheck}, {"attach_window", c.attachWindow},
          {"attach_tol", c.attachTol}, {"re_tol", c.reTol},
          {"samples", c.samples},     {"modes", c.modes},
          {"lambdas", ls}};
}

cplx parse_lambda(const std::string& s) {
  // "re,im" or a bare imaginary part written as "0.3i"
  try {
    size_t used = 0;
    if (!s.empty() && s.back() == 'i' && s.find(',') == std::string::npos) {
      const double im = std::stod(s.substr(0, s.size() - 1), &used);
      if (used == s.size() - 1) return {0, im};
    } else if (const auto comma = s.find(','); comma != std::string::npos) {
      const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
      size_t ua = 0, ub = 0;
      const double re = std::stod(a, &ua), im = std::stod(b, &ub);
      if (ua == a.size() && ub == b.size()) return {re, im};
    }
  } catch (const std::exception&) {
  }
  throw UsageError("bad lambda '" + s + "': expected re,im or <im>i");
}

void apply_json(RunConfig& c, const json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "command") {
      if (v.get<std::string>() != c.command)
        throw UsageError("config is for command '" + v.get<std::string>() + "', not '" + c.command + "'");
    } else if (k == "model") c.model = v.get<std::string>();
    else if (k == "params") {
      for (auto p = v.begin(); p != v.end(); ++p) c.params[p.key()] = p.value().get<double>();
    } else if (k == "out_dir") c.outDir = v.get<std::string>();
    else if (k == "tol") c.tol = v.get<double>();
    else if (k == "hill_n") c.hillN = v.get<int>();
    else if (k == "exponents") c.exponents = v.get<int>();
    else if (k == "grid") c.grid = v.get<int>();
    else if (k == "lambda_min") c.lambdaMin = v.is_null() ? NAN : v.get<double>();
    else if (k == "lambda_max") c.lambdaMax = v.is_null() ? NAN : v.get<double>();
    else if (k == "svg") c.svg = v.get<bool>();
    else if (k == "swap_axes") c.swapAxes = v.get<bool>();
    else if (k == "hill_check") c.hillCheck = v.get<bool>();
    else if (k == "attach_window") c.attachWindow = v.get<double>();
    else if (k == "attach_tol") c.attachTol = v.get<double>();
    else if (k == "re_tol") c.reTol = v.get<double>();
    else if (k == "samples") c.samples = v.get<int>();
    else if (k == "modes") c.modes = v.get<int>();
    else if (k == "lambdas") {
      c.lambdas.clear();
      for (const auto& z : v) {
        if (z.is_string()) c.lambdas.push_back(parse_lambda(z.get<std::string>()));
        else if (z.is_array() && z.size() == 2) c.lambdas.emplace_back(z[0].get<double>(), z[1].get<double>());
        else throw UsageError("lambdas entries must be [re, im] or strings");
      }
    } else if (k == "comment") {
    } else throw UsageError("unknown config key '" + k + "'");
  }
}

void validate(RunConfig& c) {
  const auto ids = model_ids();
  if (c.model.empty()) throw UsageError("no model given (use --model or the config file)");
  if (std::find(ids.begin(), ids.end(), c.model) == ids.end()) {
    std::string all;
    for (const auto& i : ids) all += (all.empty() ? "" : ", ") + i;
    throw UsageError("unknown model id '" + c.model + "' (known: " + all + ")");
  }
  const Params known = default_params(c.model);
  for (const auto& [k, v] : c.params)
    if (!known.count(k)) throw UsageError("model " + c.model + " has no parameter '" + k + "'");
  if (std::isnan(c.lambdaMax)) c.lambdaMax = default_lambda_max(c.model);
  if (std::isnan(c.lambdaMin)) c.lambdaMin = -c.lambdaMax;
  if (!(c.lambdaMax > c.lambdaMin)) throw UsageError("empty lambda range");
  if (!(c.tol >= 1e-14 && c.tol <= 1e-4)) throw UsageError("tol must lie in [1e-14, 1e-4]");
  if (c.hillN < 1 || c.hillN > 256) throw UsageError("hill-n must lie in [1, 256]");
  if (c.exponents < 2 || c.exponents > 200000) throw UsageError("exponents must lie in [2, 200000]");
  if (c.grid < 3 || c.grid > 200000) throw UsageError("grid must lie in [3, 200000]");
  if (c.samples < 2 || c.modes < 0) throw UsageError("samples must be >= 2 and modes >= 0");
  if (!(c.attachWindow > 0 && c.attachTol > 0 && c.reTol > 0)) throw UsageError("attachment tolerances must be positive");
  if (c.lambdas.empty()) throw UsageError("no lambda values to verify");
}

MonodromyOptions mono_options(const RunConfig& c) {
  MonodromyOptions o;
  o.rtol = c.tol;
  o.atol = c.tol * 1e-2;
  return o;
}

SweepOptions sweep_options(const RunConfig& c) {
  SweepOptions o;
  o.ylo = c.lambdaMin;
  o.yhi = c.lambdaMax;
  o.grid = c.grid;
  o.mono = mono_options(c);
  return o;
}

json model_json(const Model& m) {
  json p = json::object();
  for (const auto& [k, v] : m.params) p[k] = v;
  return {{"id", m.id}, {"params", p}, {"period", m.problem.T}, {"system_size", m.problem.n}};
}

json header(const RunConfig& c, const Model& m) { return {{"config", config_json(c)}, {"model", model_json(m)}}; }

// plot coordinates: (Re, Im) unless the axes are swapped
std::pair<double, double> xy(const RunConfig& c, double re, double im) {
  return c.swapAxes ? std::make_pair(im, re) : std::make_pair(re, im);
}

SvgPlot spectral_frame(const RunConfig& c, double reMax, const std::string& title) {
  const double lo = c.lambdaMin, hi = c.lambdaMax;
  SvgPlot plot = c.swapAxes ? SvgPlot(lo, hi, -reMax, reMax, 720, 480) : SvgPlot(-reMax, reMax, lo, hi, 480, 720);
  plot.title(title);
  if (c.swapAxes) plot.labels("Im lambda", "Re lambda");
  else plot.labels("Re lambda", "Im lambda");
  return plot;
}

std::vector<SpectrumPoint> window_points(const std::vector<SpectrumPoint>& pts, const RunConfig& c) {
  std::vector<SpectrumPoint> out;
  for (const auto& p : pts)
    if (p.lambda.imag() >= c.lambdaMin && p.lambda.imag() <= c.lambdaMax) out.push_back(p);
  return out;
}

double re_extent(const std::vector<SpectrumPoint>& pts, const RunConfig& c) {
  double r = 0;
  for (const auto& p : pts) r = std::max(r, std::abs(p.lambda.real()));
  return std::max(1.1 * r, 1e-3 * (c.lambdaMax - c.lambdaMin));
}

// --- subcommands ------------------------------------------------------------------

void cmd_spectrum(const RunConfig& c) {
  const Model m = make_model(c.model, c.params);
  HillConfig hc;
  hc.N = c.hillN;
  hc.exponents = c.exponents;
  const auto all = hill_spectrum(m.symbol, hc);
  const auto pts = window_points(all, c);

  Csv csv({"mu", "re_lambda", "im_lambda", "branch"});
  for (const auto& p : pts) csv.row({cell(p.exponent), cell(p.lambda.real()), cell(p.lambda.imag()), cell(p.branch)});

  json out = header(c, m);
  out["points"] = pts.size();
  out["points_total"] = all.size();
  out["max_real_part"] = jnum(max_real_part(all));
  out["max_real_part_window"] = jnum(max_real_part(pts));

  // generalized Hamiltonian symmetry where the model carries B
  const SpectralProblem& sys = m.full ? *m.full : m.problem;
  json sym = nullptr;
  if (sys.evalB) {
    sym = json::array();
    const double s = std::max(std::abs(c.lambdaMin), std::abs(c.lambdaMax));
    for (cplx l : {cplx(0, 0.37 * s), cplx(0.05 * s, 0.61 * s), cplx(-0.03 * s, -0.83 * s)}) {
      if (is_excluded(sys, l) || is_excluded(sys, -l)) continue;
      const auto r = verify_generalized_hamiltonian_symmetry(sys, l, mono_options(c));
      sym.push_back({{"lambda", jcplx(l)}, {"residual_a2", r.residualA2}, {"residual_m", r.residualM}});
    }
  }
  out["symmetry_residuals"] = sym;

  const double bw = (c.lambdaMax - c.lambdaMin) / (c.grid - 1);
  const auto cover = multiplicity_cover(all, c.lambdaMin, c.lambdaMax, bw, c.reTol);
  out["cover"] = {{"lo", cover.lo}, {"hi", cover.hi}, {"bin_width", cover.binWidth},
                  {"centers", cover.centers}, {"counts", cover.counts}, {"re_tol", c.reTol}};
  out["files"] = {{"csv", "spectrum.csv"}, {"svg", c.svg ? json("spectrum.svg") : json(nullptr)}};

  const fs::path dir(c.outDir);
  write_file(dir / "spectrum.csv", csv.str());
  write_file(dir / "summary.json", to_text(out));
  if (c.svg) {
    SvgPlot plot = spectral_frame(c, re_extent(pts, c), "Hill spectrum: " + c.model);
    std::vector<std::pair<double, double>> xs;
    for (const auto& p : pts) xs.push_back(xy(c, p.lambda.real(), p.lambda.imag()));
    plot.points(xs, "#1f4fd1");
    plot.write((dir / "spectrum.svg").string());
  }
}

std::vector<std::string> quantity_names(const BifurcationReport& r) {
  std::set<std::string> names;
  for (const auto& s : r.samples)
    for (const auto& [k, v] : s.cls.quantities) names.insert(k);
  return {names.begin(), names.end()};
}

// classifier trace: tr M is e1; e_k for k <= n/2 determine the rest by self-inversion
std::string trace_csv(const BifurcationReport& r, int n) {
  const auto names = quantity_names(r);
  std::vector<std::string> head{"im_lambda"};
  for (int k = 1; k <= n / 2; ++k) {
    head.push_back("re_e" + std::to_string(k));
    head.push_back("im_e" + std::to_string(k));
  }
  head.insert(head.end(), names.begin(), names.end());
  for (const char* s : {"multiplicity", "boundary", "ok"}) head.push_back(s);
  Csv csv(head);
  for (const auto& s : r.samples) {
    std::vector<std::string> row{cell(s.y)};
    for (int k = 1; k <= n / 2; ++k) {
      const cplx e = k < static_cast<int>(s.e.size()) ? s.e[k] : cplx(NAN, NAN);
      row.push_back(cell(e.real()));
      row.push_back(cell(e.imag()));
    }
    for (const auto& q : names) {
      const auto it = s.cls.quantities.find(q);
      row.push_back(it == s.cls.quantities.end() ? "" : cell(it->second));
    }
    row.push_back(cell(s.cls.multiplicity));
    row.push_back(cell(s.cls.boundary));
    row.push_back(cell(s.ok));
    csv.row(row);
  }
  return csv.str();
}

json intervals_json(const BifurcationReport& r) {
  json iv = json::array();
  for (const auto& i : r.intervals)
    iv.push_back({{"lo_im", i.lo}, {"hi_im", i.hi}, {"multiplicity", i.multiplicity},
                  {"lo_clipped", i.loClipped}, {"hi_clipped", i.hiClipped}});
  return iv;
}

void check_samples(const BifurcationReport& r) {
  size_t bad = 0;
  std::string first;
  for (const auto& s : r.samples)
    if (!s.ok) {
      if (!bad++) first = s.error;
    }
  if (bad == r.samples.size()) throw std::runtime_error("every axis sample failed: " + first);
}

void cmd_classify(const RunConfig& c) {
  const Model m = make_model(c.model, c.params);
  SweepOptions o = sweep_options(c);
  o.findZeros = false;
  const auto r = sweep_axis(m, o);
  check_samples(r);
  json out = header(c, m);
  out["intervals"] = intervals_json(r);
  out["classifier_traces"] = "classify.csv";
  const fs::path dir(c.outDir);
  write_file(dir / "classify.csv", trace_csv(r, m.problem.n));
  write_file(dir / "intervals.json", to_text(out));
}

void cmd_bifurcation(const RunConfig& c) {
  const Model m = make_model(c.model, c.params);
  const auto r = sweep_axis(m, sweep_options(c));
  check_samples(r);

  std::vector<SpectrumPoint> pts;
  HillConfig hc;
  hc.N = c.hillN;
  hc.exponents = c.exponents;
  if (c.hillCheck || c.svg) pts = hill_spectrum(m.symbol, hc);

  json zs = json::array();
  for (const auto& z : r.zeros) {
    json j{{"im", z.y}, {"kind", z.kind}, {"sufficient", z.sufficient}, {"residual", z.residual},
           {"inconclusive", z.inconclusive}};
    if (z.criticalBranch) {
      j["critical_branch"] = z.criticalBranch > 0 ? "omega+" : "omega-";
      j["omega"] = jcplx(z.omega);
      j["omega_inside"] = z.omegaInside;
    }
    if (c.hillCheck) {
      const double a = refine_attachment(m.symbol, c.hillN, pts, z.y, c.attachWindow, c.reTol);
      j["hill_attachment"] = jnum(a);
      j["hill_bifurcating"] = !std::isnan(a) && std::abs(a - z.y) <= c.attachTol;
    }
    zs.push_back(j);
  }

  Csv phi({"im_lambda", "phi", "phi_imag", "signal", "noise", "multiplicity", "ok"});
  for (const auto& s : r.samples)
    phi.row({cell(s.y), cell(s.phi), cell(s.phiImag), cell(s.signal), cell(s.noise), cell(s.cls.multiplicity), cell(s.ok)});

  json out = header(c, m);
  out["intervals"] = intervals_json(r);
  out["phi_zeros"] = zs;
  out["unresolved"] = r.unresolved;
  out["classifier_traces"] = "classify.csv";
  out["phi_trace"] = "phi.csv";
  if (c.hillCheck) out["max_real_part"] = jnum(max_real_part(pts));

  const fs::path dir(c.outDir);
  write_file(dir / "classify.csv", trace_csv(r, m.problem.n));
  write_file(dir / "phi.csv", phi.str());
  write_file(dir / "report.json", to_text(out));
  if (!c.svg) return;

  // spectrum blue, on-axis intervals magenta, index dashed red
  const auto win = window_points(pts, c);
  const double reMax = re_extent(win, c);
  SvgPlot plot = spectral_frame(c, reMax, "spectrum, multiplicity and index: " + c.model);
  std::vector<std::pair<double, double>> xs;
  for (const auto& p : win) xs.push_back(xy(c, p.lambda.real(), p.lambda.imag()));
  plot.points(xs, "#1f4fd1");
  for (const auto& i : r.intervals) {
    if (i.multiplicity <= 0) continue;
    const auto a = xy(c, 0, i.lo), b = xy(c, 0, i.hi);
    plot.segment(a.first, a.second, b.first, b.second, "#d01fc0", 1.0 + 1.5 * i.multiplicity);
  }
  // the index spans many decades; plot asinh(phi / median|phi|), scaled into the frame
  std::vector<double> mags;
  for (const auto& s : r.samples)
    if (s.ok && std::isfinite(s.phi) && s.phi != 0) mags.push_back(std::abs(s.phi));
  if (!mags.empty()) {
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    const double scale = mags[mags.size() / 2];
    double top = 0;
    for (const auto& s : r.samples)
      if (s.ok && std::isfinite(s.phi)) top = std::max(top, std::abs(std::asinh(s.phi / scale)));
    std::vector<std::pair<double, double>> curve;
    for (const auto& s : r.samples) {
      const double v = s.ok && std::isfinite(s.phi) && top > 0 ? 0.9 * reMax * std::asinh(s.phi / scale) / top : NAN;
      curve.push_back(xy(c, v, s.y));
    }
    plot.polyline(curve, "#e0201b", 1.2, true);
  }
  plot.write((dir / "bifurcation.svg").string());
}

void cmd_wave(const RunConfig& c) {
  const Model m = make_model(c.model, c.params);
  const auto& waves = m.waves.empty() ? m.symbol.profiles : m.waves;
  const fs::path dir(c.outDir);
  json profs = json::array();
  for (size_t w = 0; w < waves.size(); ++w) {
    const WaveProfile& p = waves[w];
    const std::string name = p.name.empty() ? "profile" + std::to_string(w) : p.name;
    std::string file = "wave_" + name + ".csv";
    for (char& ch : file)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '.' && ch != '_' && ch != '-') ch = '_';
    Csv csv({"x", "value"});
    for (int j = 0; j < c.samples; ++j) {
      const double x = p.period * j / c.samples;
      csv.row({cell(x), cell(p(x))});
    }
    write_file(dir / file, csv.str());
    const auto fc = fourier_coefficients(p, c.modes);
    json re = json::array(), im = json::array();
    for (cplx z : fc) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    json prm = json::object();
    for (const auto& [k, v] : p.params) prm[k] = v;
    profs.push_back({{"name", name}, {"period", p.period}, {"params", prm}, {"csv", file},
                     {"fourier", {{"modes", c.modes}, {"k_min", -c.modes}, {"re", re}, {"im", im}}}});
  }
  json out = header(c, m);
  out["profiles"] = profs;
  write_file(dir / "wave.json", to_text(out));
}

void cmd_verify(const RunConfig& c) {
  const Model m = make_model(c.model, c.params);
  // gBBM: the full system carries B and the true determinant
  const SpectralProblem& sys = m.full ? *m.full : m.problem;
  const auto opt = mono_options(c);
  for (cplx l : c.lambdas)
    if (is_excluded(sys, l) || is_excluded(sys, -l)) {
      std::ostringstream s;
      s << "lambda = " << num17(l.real()) << (l.imag() < 0 ? "" : "+") << num17(l.imag()) << "i is excluded for "
        << sys.name;
      throw SingularParameterError(s.str());
    }
  std::vector<json> rows(c.lambdas.size());
  std::vector<std::string> errors(c.lambdas.size());
  parallel_for(c.lambdas.size(), [&](std::size_t i) {
    const cplx l = c.lambdas[i];
    try {
      const auto mono = integrate_monodromy(sys, l, opt);
      json j{{"lambda", jcplx(l)},
             {"det_residual", mono.detResidual},
             {"condition", mono.condition},
             {"low_confidence", mono.lowConfidence},
             {"steps", mono.steps}};
      if (sys.evalB) {
        const auto r = verify_generalized_hamiltonian_symmetry(sys, l, opt);
        j["residual_a2"] = r.residualA2;
        j["residual_m"] = r.residualM;
      } else {
        j["residual_a2"] = nullptr;
        j["residual_m"] = nullptr;
      }
      if (l.real() == 0) j["axis_imag_residual"] = floquet_sample(m.problem, l, opt).imagResidual;
      rows[i] = j;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  json out = header(c, m);
  out["system"] = sys.name;
  out["checks"] = rows;
  write_file(fs::path(c.outDir) / "verify.json", to_text(out));
}

// --- errors -----------------------------------------------------------------------

int fail(const std::string& kind, int code, const std::string& msg, const std::string& outDir) {
  const json e{{"status", "error"}, {"kind", kind}, {"exit_code", code}, {"message", msg}};
  std::cerr << e.dump() << "\n";
  if (!outDir.empty()) {
    std::error_code ec;
    fs::create_directories(outDir, ec);
    std::ofstream f(fs::path(outDir) / "error.json", std::ios::binary);
    if (f) f << to_text(e);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral stability of periodic waves: monodromy, classification, bifurcation index, Hill spectra"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string model, configPath, outDir;
  std::vector<std::string> paramArgs, lambdaArgs;
  double tol = 0, lambdaMin = 0, lambdaMax = 0, attachWindow = 0, attachTol = 0;
  int hillN = 0, exponents = 0, grid = 0, samples = 0, modes = 0;
  bool svg = false, noSvg = false, swapAxes = false, noHillCheck = false;

  auto* oModel = app.add_option("--model", model, "model id");
  app.add_option("--param", paramArgs, "model parameter override, key=value (repeatable)");
  app.add_option("--config", configPath, "JSON run configuration")->check(CLI::ExistingFile);
  auto* oOut = app.add_option("--out-dir", outDir, "output directory (default .)");
  auto* oTol = app.add_option("--tol", tol, "integrator relative tolerance");
  auto* oN = app.add_option("--hill-n", hillN, "Hill truncation: wavenumbers -N..N");
  auto* oExp = app.add_option("--exponents", exponents, "Floquet exponents for the Hill solver");
  auto* oLmin = app.add_option("--lambda-min", lambdaMin, "lower end of the Im lambda window");
  auto* oLmax = app.add_option("--lambda-max", lambdaMax, "upper end of the Im lambda window");
  auto* oGrid = app.add_option("--grid", grid, "axis samples (classify, bifurcation); cover bins (spectrum)");
  auto* oSvg = app.add_flag("--svg", svg, "write SVG plots (default)");
  auto* oNoSvg = app.add_flag("--no-svg", noSvg, "skip SVG plots");
  auto* oSwap = app.add_flag("--swap-axes", swapAxes, "plot Im lambda horizontally");
  auto* oNoHill = app.add_flag("--no-hill-check", noHillCheck, "bifurcation: skip the Hill cross-check");
  auto* oWin = app.add_option("--attach-window", attachWindow, "bifurcation: Hill search window around a zero");
  auto* oAtt = app.add_option("--attach-tol", attachTol, "bifurcation: max distance of a Hill attachment");
  auto* oSamples = app.add_option("--samples", samples, "wave: profile points per period");
  auto* oModes = app.add_option("--modes", modes, "wave: Fourier modes -K..K");
  app.add_option("--lambda", lambdaArgs, "verify: spectral parameter, re,im or <im>i (repeatable)");
  oSvg->excludes(oNoSvg);

  const char* commands[][2] = {{"spectrum", "Fourier-Floquet-Hill spectrum"},
                               {"classify", "multiplicity of the imaginary-axis spectrum"},
                               {"bifurcation", "bifurcation index zeros with a Hill cross-check"},
                               {"wave", "wave profiles and Fourier coefficients"},
                               {"verify", "symmetry and Liouville residuals"}};
  for (auto& cmd : commands) app.add_subcommand(cmd[0], cmd[1]);

  RunConfig cfg;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", 2, e.what(), "");
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!configPath.empty()) {
      std::ifstream f(configPath);
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
      }
      if (!j.is_object()) throw UsageError("config must be a JSON object");
      try {
        apply_json(cfg, j);
      } catch (const json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
      }
    }
    if (*oModel) cfg.model = model;
    for (const auto& kv : paramArgs) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
      try {
        size_t used = 0;
        const std::string v = kv.substr(eq + 1);
        cfg.params[kv.substr(0, eq)] = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        throw UsageError("--param value is not a number: '" + kv + "'");
      }
    }
    if (*oOut) cfg.outDir = outDir;
    if (*oTol) cfg.tol = tol;
    if (*oN) cfg.hillN = hillN;
    if (*oExp) cfg.exponents = exponents;
    if (*oLmin) cfg.lambdaMin = lambdaMin;
    if (*oLmax) cfg.lambdaMax = lambdaMax;
    if (*oGrid) cfg.grid = grid;
    if (*oSvg) cfg.svg = true;
    if (*oNoSvg) cfg.svg = false;
    if (*oSwap) cfg.swapAxes = true;
    if (*oNoHill) cfg.hillCheck = false;
    if (*oWin) cfg.attachWindow = attachWindow;
    if (*oAtt) cfg.attachTol = attachTol;
    if (*oSamples) cfg.samples = samples;
    if (*oModes) cfg.modes = modes;
    if (!lambdaArgs.empty()) {
      cfg.lambdas.clear();
      for (const auto& s : lambdaArgs) cfg.lambdas.push_back(parse_lambda(s));
    }
    validate(cfg);
    fs::create_directories(cfg.outDir);
  } catch (const UsageError& e) {
    return fail("usage", 2, e.what(), cfg.outDir);
  } catch (const std::exception& e) {
    return fail("usage", 2, e.what(), "");
  }

  try {
    if (cfg.command == "spectrum") cmd_spectrum(cfg);
    else if (cfg.command == "classify") cmd_classify(cfg);
    else if (cfg.command == "bifurcation") cmd_bifurcation(cfg);
    else if (cfg.command == "wave") cmd_wave(cfg);
    else cmd_verify(cfg);
  } catch (const SingularParameterError& e) {
    return fail("singular_parameter", 3, e.what(), cfg.outDir);
  } catch (const std::invalid_argument& e) {
    // parameter values the model rejects (no periodic orbit, out-of-range m, ...)
    return fail("invalid_parameter", 3, e.what(), cfg.outDir);
  } catch (const std::exception& e) {
    return fail("numerical", 3, e.what(), cfg.outDir);
  }
  return 0;
}
