#pragma once
#include <string>
#include <vector>

#include "floquet/models.hpp"

namespace floquet {

struct HillConfig {
  int N = 31;           // wavenumbers -N..N
  int exponents = 2000; // Floquet exponents on [-pi/T, pi/T], both ends included
};

struct SpectrumPoint {
  cplx lambda;
  double exponent = 0;
  int branch = 0;  // ordinal within one exponent
};

// Fourier data of the symbol's profiles, index k + 2N for |k| <= 2N.
struct HillData {
  const OperatorSymbol* symbol = nullptr;
  int N = 0;
  std::vector<std::vector<cplx>> coeffs;
};
HillData prepare_hill(const OperatorSymbol& symbol, int N);

// Standard eigenproblem matrix at exponent mu; lambda-quadratic symbols are
// returned in companion form of doubled size.
CMat build_hill_matrix(const HillData& data, double mu);

// Eigenvalues for one exponent, sorted by imaginary part.
std::vector<cplx> hill_eigenvalues(const HillData& data, double mu);

std::vector<SpectrumPoint> hill_spectrum(const OperatorSymbol& symbol, const HillConfig& cfg);
std::vector<SpectrumPoint> hill_spectrum(const std::string& id, const Params& params,
                                         const HillConfig& cfg);

double max_real_part(const std::vector<SpectrumPoint>& pts, double imBound = INFINITY);

// Number of times an on-axis eigenvalue passes each bin centre on [lo, hi] (imaginary parts) as
// the exponent runs over the grid. Points with |Re| > reTol count as off the axis and are
// followed to their nearest predecessor, so their own moves across a level are discounted.
struct CoverTable {
  double lo = 0, hi = 0, binWidth = 0;
  std::vector<double> centers;
  std::vector<int> counts;
};
CoverTable multiplicity_cover(const std::vector<SpectrumPoint>& pts, double lo, double hi,
                              double binWidth, double reTol = 1e-6);

// Off-axis points (|Re| > reTol) with imaginary part in [lo, hi].
std::vector<SpectrumPoint> off_axis_points(const std::vector<SpectrumPoint>& pts, double lo,
                                           double hi, double reTol);

// Imaginary part of the off-axis point closest to the axis within a window
// around y0; NaN when no such point exists.
double nearest_attachment(const std::vector<SpectrumPoint>& pts, double y0, double window,
                          double reTol, double reMax = INFINITY);

// nearest_attachment followed by zooming the exponent grid around the closest point; the branch
// meets the axis like a square root, so a uniform grid resolves the end point poorly.
double refine_attachment(const OperatorSymbol& symbol, int N, const std::vector<SpectrumPoint>& pts,
                         double y0, double window, double reTol, int levels = 4);

// Largest |p(lambda) - q| over p in a, for q the nearest point of b, both
// restricted to |lambda| <= bound.
double hausdorff_one_sided(const std::vector<cplx>& a, const std::vector<cplx>& b, double bound);

}  // namespace floquet
