#pragma once
#include <string>
#include <utility>
#include <vector>

// Minimal static SVG plot: one data frame with linear axes.
class SvgPlot {
 public:
  SvgPlot(double xmin, double xmax, double ymin, double ymax, int width = 640, int height = 640);

  void title(const std::string& t) { title_ = t; }
  void labels(const std::string& x, const std::string& y) {
    xlabel_ = x;
    ylabel_ = y;
  }
  void points(const std::vector<std::pair<double, double>>& pts, const std::string& color, double r = 1.2);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width = 1.0,
                bool dashed = false);
  void segment(double x0, double y0, double x1, double y1, const std::string& color, double width = 1.0,
               bool dashed = false);
  void text(double x, double y, const std::string& s, const std::string& color = "black", int size = 11);

  std::string str() const;
  void write(const std::string& path) const;

 private:
  double px(double x) const;
  double py(double y) const;

  double xmin_, xmax_, ymin_, ymax_;
  int w_, h_;
  int left_ = 70, right_ = 20, top_ = 36, bottom_ = 50;
  std::string title_, xlabel_, ylabel_;
  std::vector<std::string> body_;
};
