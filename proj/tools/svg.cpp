#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// roughly five ticks at 1, 2 or 5 times a power of ten
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0)) return {lo};
  const double raw = span / 5, mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 5.0, 10.0})
    if (f * mag >= raw) {
      step = f * mag;
      break;
    }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

}  // namespace

SvgPlot::SvgPlot(double xmin, double xmax, double ymin, double ymax, int width, int height)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), w_(width), h_(height) {
  if (!(xmax > xmin)) {
    xmin_ = xmin - 1;
    xmax_ = xmax + 1;
  }
  if (!(ymax > ymin)) {
    ymin_ = ymin - 1;
    ymax_ = ymax + 1;
  }
}

double SvgPlot::px(double x) const { return left_ + (x - xmin_) / (xmax_ - xmin_) * (w_ - left_ - right_); }
double SvgPlot::py(double y) const { return h_ - bottom_ - (y - ymin_) / (ymax_ - ymin_) * (h_ - top_ - bottom_); }

void SvgPlot::points(const std::vector<std::pair<double, double>>& pts, const std::string& color, double r) {
  std::ostringstream s;
  s << "<g fill=\"" << color << "\">";
  for (auto [x, y] : pts) {
    if (x < xmin_ || x > xmax_ || y < ymin_ || y > ymax_ || !std::isfinite(x) || !std::isfinite(y)) continue;
    s << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"" << num(r) << "\"/>";
  }
  s << "</g>";
  body_.push_back(s.str());
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width,
                       bool dashed) {
  // split at non-finite values
  std::ostringstream s;
  bool open = false;
  auto close = [&] {
    if (open) s << "\"/>";
    open = false;
  };
  for (auto [x, y] : pts) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      close();
      continue;
    }
    if (!open) {
      s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << "\""
        << (dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
      open = true;
    }
    s << num(px(std::clamp(x, xmin_, xmax_))) << "," << num(py(std::clamp(y, ymin_, ymax_))) << " ";
  }
  close();
  body_.push_back(s.str());
}

void SvgPlot::segment(double x0, double y0, double x1, double y1, const std::string& color, double width,
                      bool dashed) {
  std::ostringstream s;
  s << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0)) << "\" x2=\"" << num(px(x1)) << "\" y2=\""
    << num(py(y1)) << "\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << "\""
    << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>";
  body_.push_back(s.str());
}

void SvgPlot::text(double x, double y, const std::string& t, const std::string& color, int size) {
  std::ostringstream s;
  s << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y)) << "\" fill=\"" << color << "\" font-size=\"" << size
    << "\">" << escape(t) << "</text>";
  body_.push_back(s.str());
}

std::string SvgPlot::str() const {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_ << "\" viewBox=\"0 0 "
    << w_ << " " << h_ << "\" font-family=\"sans-serif\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double x0 = left_, x1 = w_ - right_, y0 = top_, y1 = h_ - bottom_;
  s << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0 << "\" height=\"" << y1 - y0
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(xmin_, xmax_)) {
    s << "<line x1=\"" << num(px(t)) << "\" y1=\"" << y1 << "\" x2=\"" << num(px(t)) << "\" y2=\"" << y1 + 5
      << "\" stroke=\"black\"/>";
    s << "<text x=\"" << num(px(t)) << "\" y=\"" << y1 + 18 << "\" font-size=\"10\" text-anchor=\"middle\">"
      << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(ymin_, ymax_)) {
    s << "<line x1=\"" << x0 - 5 << "\" y1=\"" << num(py(t)) << "\" x2=\"" << x0 << "\" y2=\"" << num(py(t))
      << "\" stroke=\"black\"/>";
    s << "<text x=\"" << x0 - 8 << "\" y=\"" << num(py(t) + 3) << "\" font-size=\"10\" text-anchor=\"end\">"
      << tick_label(t) << "</text>\n";
  }
  if (!title_.empty())
    s << "<text x=\"" << w_ / 2 << "\" y=\"22\" font-size=\"13\" text-anchor=\"middle\">" << escape(title_)
      << "</text>\n";
  if (!xlabel_.empty())
    s << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << h_ - 12 << "\" font-size=\"12\" text-anchor=\"middle\">"
      << escape(xlabel_) << "</text>\n";
  if (!ylabel_.empty())
    s << "<text x=\"16\" y=\"" << (y0 + y1) / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (y0 + y1) / 2 << ")\">" << escape(ylabel_) << "</text>\n";
  s << "<svg x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0 << "\" height=\"" << y1 - y0
    << "\" viewBox=\"" << x0 << " " << y0 << " " << x1 - x0 << " " << y1 - y0 << "\" overflow=\"hidden\">\n";
  for (const auto& b : body_) s << b << "\n";
  s << "</svg>\n</svg>\n";
  return s.str();
}

void SvgPlot::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << str();
}
