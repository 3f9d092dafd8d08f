#include "riemann_accel/plot.hpp"

#include "riemann_accel/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace riemann_accel {

namespace {

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Curve curve_from_csv(const std::filesystem::path &path) {
  Curve c{.label = path.stem().string()};
  for (const auto &r : read_csv(path)) {
    if (r.f_gap && *r.f_gap > 0.0 && r.t > 0.0 && std::isfinite(*r.f_gap)) {
      c.t.push_back(r.t);
      c.gap.push_back(*r.f_gap);
    }
  }
  return c;
}

void render_svg(std::ostream &out, const std::vector<Curve> &curves, const PlotOptions &opts) {
  constexpr double left = 70, right = 160, top = 40, bottom = 50;
  const double w = opts.width, h = opts.height;
  const double pw = w - left - right, ph = h - top - bottom;

  double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
  double gmin = tmin, gmax = -tmin;
  for (const auto &c : curves)
    for (std::size_t i = 0; i < c.t.size(); ++i) {
      tmin = std::min(tmin, c.t[i]);
      tmax = std::max(tmax, c.t[i]);
      gmin = std::min(gmin, c.gap[i]);
      gmax = std::max(gmax, c.gap[i]);
    }
  if (!std::isfinite(tmin)) tmin = 1e-3, tmax = 1.0, gmin = 1e-8, gmax = 1.0;
  double lx0 = std::floor(std::log10(tmin)), lx1 = std::ceil(std::log10(tmax));
  double ly0 = std::floor(std::log10(gmin)), ly1 = std::ceil(std::log10(gmax));
  if (lx1 <= lx0) lx1 = lx0 + 1;
  if (ly1 <= ly0) ly1 = ly0 + 1;

  const auto sx = [&](double t) { return left + (std::log10(t) - lx0) / (lx1 - lx0) * pw; };
  const auto sy = [&](double g) { return top + (ly1 - std::log10(g)) / (ly1 - ly0) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
      << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(opts.title) << "</text>\n";

  // axes with decade ticks
  out << "<g stroke=\"#888\" stroke-width=\"1\">\n"
      << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\"/>\n";
  for (double e = lx0; e <= lx1; ++e)
    out << "<line x1=\"" << fmt(sx(std::pow(10, e))) << "\" y1=\"" << fmt(top + ph) << "\" x2=\""
        << fmt(sx(std::pow(10, e))) << "\" y2=\"" << fmt(top + ph + 5) << "\"/>\n";
  for (double e = ly0; e <= ly1; ++e)
    out << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(sy(std::pow(10, e))) << "\" x2=\"" << fmt(left)
        << "\" y2=\"" << fmt(sy(std::pow(10, e))) << "\"/>\n";
  out << "</g>\n<g fill=\"#333\">\n";
  for (double e = lx0; e <= lx1; ++e)
    out << "<text x=\"" << fmt(sx(std::pow(10, e))) << "\" y=\"" << fmt(top + ph + 18)
        << "\" text-anchor=\"middle\">1e" << static_cast<int>(e) << "</text>\n";
  for (double e = ly0; e <= ly1; ++e)
    out << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(sy(std::pow(10, e)) + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
  out << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(h - 10) << "\" text-anchor=\"middle\">t</text>\n"
      << "<text x=\"16\" y=\"" << fmt(top + ph / 2) << "\" transform=\"rotate(-90 16 " << fmt(top + ph / 2)
      << ")\" text-anchor=\"middle\">f - f*</text>\n</g>\n";

  out << "<defs><clipPath id=\"plot\"><rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\"/></clipPath></defs>\n<g clip-path=\"url(#plot)\">\n";

  // guides anchored at the first point of the first curve (or the top-left corner)
  const double t_anchor = curves.empty() || curves[0].t.empty() ? std::pow(10, lx0) : curves[0].t.front();
  const double g_anchor = curves.empty() || curves[0].t.empty() ? std::pow(10, ly1) : curves[0].gap.front();
  const double ta = std::pow(10, lx0), tb = std::pow(10, lx1);
  for (double p : opts.guides) {
    const auto g = [&](double t) { return g_anchor * std::pow(t / t_anchor, -p); };
    out << "<line class=\"guide\" x1=\"" << fmt(sx(ta)) << "\" y1=\"" << fmt(sy(g(ta))) << "\" x2=\"" << fmt(sx(tb))
        << "\" y2=\"" << fmt(sy(g(tb))) << "\" stroke=\"#999\" stroke-dasharray=\"6,4\"/>\n";
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto &c = curves[i];
    out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kPalette[i % std::size(kPalette)]
        << "\" points=\"";
    for (std::size_t j = 0; j < c.t.size(); ++j) out << (j ? " " : "") << fmt(sx(c.t[j])) << ',' << fmt(sy(c.gap[j]));
    out << "\"/>\n";
  }
  out << "</g>\n";

  // legend
  double ly = top + 10;
  for (std::size_t i = 0; i < curves.size(); ++i, ly += 18)
    out << "<line x1=\"" << fmt(left + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(left + pw + 36)
        << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << kPalette[i % std::size(kPalette)] << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << fmt(left + pw + 42) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(curves[i].label)
        << "</text>\n";
  for (double p : opts.guides) {
    out << "<line x1=\"" << fmt(left + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(left + pw + 36)
        << "\" y2=\"" << fmt(ly) << "\" stroke=\"#999\" stroke-dasharray=\"6,4\"/>"
        << "<text x=\"" << fmt(left + pw + 42) << "\" y=\"" << fmt(ly + 4) << "\">t^-" << p << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
}

void emit_plot(const std::vector<std::filesystem::path> &csvs, const std::filesystem::path &out,
               const PlotOptions &opts) {
  if (csvs.empty()) throw ConfigError("plot: no input CSV files given");
  std::vector<Curve> curves;
  for (const auto &p : csvs) {
    if (!std::filesystem::is_regular_file(p)) throw Error("plot: cannot read '" + p.string() + "'");
    curves.push_back(curve_from_csv(p));
  }
  std::ofstream f(out);
  if (!f) throw Error("plot: cannot write '" + out.string() + "'");
  render_svg(f, curves, opts);
}

}  // namespace riemann_accel
