#pragma once

#include "riemann_accel/core.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace riemann_accel {

struct Curve {
  std::string label;
  std::vector<double> t;
  std::vector<double> gap;
};

struct PlotOptions {
  std::string title = "optimality gap";
  /// Exponents p of the dashed t^{-p} guide lines.
  std::vector<double> guides = {2.0, 6.0};
  int width = 720;
  int height = 480;
};

/// Curve from a result CSV: rows with a positive f_gap and t > 0.
Curve curve_from_csv(const std::filesystem::path &path);

/// Log-log SVG of gap against t, one polyline per curve, plus guides.
void render_svg(std::ostream &out, const std::vector<Curve> &curves, const PlotOptions &opts = {});

/// Reads every CSV (throws Error naming the first bad path) and writes `out`.
/// An empty input list is a ConfigError.
void emit_plot(const std::vector<std::filesystem::path> &csvs, const std::filesystem::path &out,
               const PlotOptions &opts = {});

}  // namespace riemann_accel
