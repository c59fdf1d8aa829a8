#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "floquet/analysis.hpp"
#include "floquet/hill.hpp"

namespace py = pybind11;
using namespace floquet;

namespace {

const char* classifier_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::Band2: return "band2";
    case ClassifierKind::Cubic: return "cubic";
    case ClassifierKind::Quartic: return "quartic";
    case ClassifierKind::QuarticTrivial: return "quartic-trivial";
    case ClassifierKind::Quintic: return "quintic";
  }
  return "?";
}

MonodromyOptions mono(double rtol, bool derivative) {
  MonodromyOptions o;
  o.rtol = rtol;
  o.atol = rtol * 1e-2;
  o.withDerivative = derivative;
  return o;
}

py::dict sample_dict(const AxisSample& s) {
  py::dict d;
  d["y"] = s.y;
  d["e"] = s.e;
  d["multiplicity"] = s.cls.multiplicity;
  d["boundary"] = s.cls.boundary;
  d["quantities"] = s.cls.quantities;
  d["phi"] = s.phi;
  d["ok"] = s.ok;
  d["error"] = s.error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monodromy, Floquet discriminants, multiplicity classification, bifurcation index and Hill spectra";

  py::register_exception<UnknownModel>(m, "UnknownModel", PyExc_KeyError);
  py::register_exception<SingularParameterError>(m, "SingularParameterError", PyExc_ArithmeticError);
  py::register_exception<NoPeriodicOrbit>(m, "NoPeriodicOrbit", PyExc_ValueError);

  py::class_<WaveProfile>(m, "WaveProfile")
      .def_readonly("name", &WaveProfile::name)
      .def_readonly("period", &WaveProfile::period)
      .def_readonly("params", &WaveProfile::params)
      .def("__call__", [](const WaveProfile& p, double x) { return p(x); }, py::arg("x"))
      .def(
          "__call__",
          [](const WaveProfile& p, py::array_t<double, py::array::c_style | py::array::forcecast> x) {
            py::array_t<double> out(x.request().shape);
            const double* in = x.data();
            double* o = out.mutable_data();
            for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = p(in[i]);
            return out;
          },
          py::arg("x"))
      .def("fourier", &fourier_coefficients, py::arg("modes"), "c_k for |k| <= modes, index k + modes");

  py::class_<Model>(m, "Model")
      .def_readonly("id", &Model::id)
      .def_readonly("params", &Model::params)
      .def_readonly("waves", &Model::waves)
      .def_property_readonly("period", [](const Model& md) { return md.problem.T; })
      .def_property_readonly("size", [](const Model& md) { return md.problem.n; })
      .def_property_readonly("classifier", [](const Model& md) { return classifier_name(md.classifier); })
      .def("__repr__", [](const Model& md) { return "<floquet.Model " + md.id + ">"; });

  m.def("model_ids", &model_ids);
  m.def("default_params", &default_params, py::arg("id"));
  m.def("make_model", &make_model, py::arg("id"), py::arg("params") = Params{});

  m.def(
      "monodromy",
      [](const Model& md, cplx lambda, double rtol, bool derivative) {
        MonodromyResult r;
        {
          py::gil_scoped_release nogil;
          r = integrate_monodromy(md.problem, lambda, mono(rtol, derivative));
        }
        py::dict d;
        d["M"] = r.M;
        d["e"] = r.e;
        if (r.Mlambda) {
          d["M_lambda"] = *r.Mlambda;
          d["de"] = r.de;
        }
        d["det_residual"] = r.detResidual;
        d["condition"] = r.condition;
        d["low_confidence"] = r.lowConfidence;
        return d;
      },
      py::arg("model"), py::arg("lambda_"), py::arg("rtol") = 1e-11, py::arg("derivative") = false,
      "Monodromy matrix over one period and its characteristic coefficients e_0..e_n");

  m.def(
      "symmetry_residuals",
      [](const Model& md, cplx lambda, double rtol) {
        const SpectralProblem& sys = md.full ? *md.full : md.problem;
        const auto r = verify_generalized_hamiltonian_symmetry(sys, lambda, mono(rtol, false));
        return std::make_pair(r.residualA2, r.residualM);
      },
      py::arg("model"), py::arg("lambda_"), py::arg("rtol") = 1e-11);

  m.def(
      "sample_axis",
      [](const Model& md, double y, bool index) {
        SweepOptions o;
        AxisSample s;
        {
          py::gil_scoped_release nogil;
          s = sample_axis(md, y, o, index);
        }
        return sample_dict(s);
      },
      py::arg("model"), py::arg("y"), py::arg("index") = true,
      "Classification (and index) at lambda = i y");

  m.def(
      "sweep",
      [](const Model& md, double ylo, double yhi, int grid, bool zeros) {
        SweepOptions o;
        o.ylo = ylo;
        o.yhi = yhi;
        o.grid = grid;
        o.findZeros = zeros;
        BifurcationReport r;
        {
          py::gil_scoped_release nogil;
          r = sweep_axis(md, o);
        }
        py::list iv, zs;
        for (const auto& i : r.intervals) {
          py::dict d;
          d["lo_im"] = i.lo;
          d["hi_im"] = i.hi;
          d["multiplicity"] = i.multiplicity;
          d["lo_clipped"] = i.loClipped;
          d["hi_clipped"] = i.hiClipped;
          iv.append(d);
        }
        for (const auto& z : r.zeros) {
          py::dict d;
          d["im"] = z.y;
          d["kind"] = z.kind;
          d["sufficient"] = z.sufficient;
          d["residual"] = z.residual;
          d["inconclusive"] = z.inconclusive;
          zs.append(d);
        }
        const size_t G = r.samples.size();
        py::array_t<double> y(G), phi(G);
        py::array_t<int> mult(G);
        for (size_t j = 0; j < G; ++j) {
          y.mutable_at(j) = r.samples[j].y;
          phi.mutable_at(j) = r.samples[j].phi;
          mult.mutable_at(j) = r.samples[j].cls.multiplicity;
        }
        py::dict d;
        d["intervals"] = iv;
        d["phi_zeros"] = zs;
        d["y"] = y;
        d["phi"] = phi;
        d["multiplicity"] = mult;
        return d;
      },
      py::arg("model"), py::arg("ylo"), py::arg("yhi"), py::arg("grid") = 401, py::arg("zeros") = true,
      "Multiplicity intervals and index zeros on lambda in i[ylo, yhi]");

  m.def(
      "hill_spectrum",
      [](const Model& md, int N, int exponents) {
        HillConfig c;
        c.N = N;
        c.exponents = exponents;
        std::vector<SpectrumPoint> pts;
        {
          py::gil_scoped_release nogil;
          pts = hill_spectrum(md.symbol, c);
        }
        const size_t P = pts.size();
        py::array_t<double> mu(P);
        py::array_t<cplx> lam(P);
        py::array_t<int> branch(P);
        for (size_t j = 0; j < P; ++j) {
          mu.mutable_at(j) = pts[j].exponent;
          lam.mutable_at(j) = pts[j].lambda;
          branch.mutable_at(j) = pts[j].branch;
        }
        return py::make_tuple(mu, lam, branch);
      },
      py::arg("model"), py::arg("N") = 31, py::arg("exponents") = 2000,
      "Fourier-Floquet-Hill spectrum: (exponent, lambda, branch) arrays");

  m.def("kawahara_mstar", &kawahara_mstar, py::arg("r"), py::arg("tol") = 1e-13);
  m.def("elliptic_K", &elliptic_K, py::arg("m"));
}
