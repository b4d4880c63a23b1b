#include "arnold/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace arnold::io {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void open_svg(std::ostringstream& out, const Frame& f, const std::string& title,
              const std::string& x_label, const std::string& y_label) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
      << "\" height=\"" << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double ybase = kHeight - kBottom;
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out << "<text x=\"" << svg_number(f.px(xv)) << "\" y=\"" << svg_number(ybase + 16)
        << "\" text-anchor=\"middle\">" << format_number(xv) << "</text>\n";
    out << "<text x=\"" << svg_number(kLeft - 6) << "\" y=\"" << svg_number(f.py(yv) + 4)
        << "\" text-anchor=\"end\">" << format_number(yv) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << escape(y_label) << "</text>\n";
}

// Polyline pieces inside the frame; points outside [y0, y1] or NaN break the line.
void emit_polyline(std::ostringstream& out, const Frame& f, const std::vector<double>& xs,
                   const std::vector<double>& ys, const std::string& color, double width) {
  std::string points;
  auto flush = [&] {
    if (points.find(' ') != std::string::npos) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
          << "\" points=\"" << points << "\"/>\n";
    }
    points.clear();
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i]) || ys[i] < f.y0 || ys[i] > f.y1) {
      flush();
      continue;
    }
    if (!points.empty()) points += ' ';
    points += svg_number(f.px(xs[i])) + "," + svg_number(f.py(ys[i]));
  }
  flush();
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string spectrum_csv(const spectral::SpectralResult& result) {
  std::ostringstream out;
  out << "n,E,parity,splitting_partner";
  for (std::size_t r = 0; r < result.regions.size(); ++r) out << ",weight_region_" << r;
  out << '\n';
  for (std::size_t n = 0; n < result.energies.size(); ++n) {
    int partner = -1;
    for (const auto& s : result.splittings) {
      if (s.lower == static_cast<int>(n)) partner = s.upper;
      if (s.upper == static_cast<int>(n)) partner = s.lower;
    }
    out << n << ',' << format_number(result.energies[n]) << ','
        << spectral::to_string(result.parities[n]) << ',' << partner;
    for (double w : result.localization[n]) out << ',' << format_number(w);
    out << '\n';
  }
  return out.str();
}

std::string wavefunction_csv(const spectral::SpectralResult& result) {
  std::ostringstream out;
  out << 'x';
  for (std::size_t n = 0; n < result.wavefunctions.size(); ++n) out << ",psi_" << n;
  out << '\n';
  for (std::size_t i = 0; i < result.x.size(); ++i) {
    out << format_number(result.x[i]);
    for (const auto& psi : result.wavefunctions) out << ',' << format_number(psi[i]);
    out << '\n';
  }
  return out.str();
}

std::string locus_csv(const std::vector<catastrophe::LocusPoint>& points) {
  std::ostringstream out;
  out << "fixed_value,branch,critical_value,delta_residual\n";
  for (const auto& p : points) {
    out << format_number(p.fixed_value) << ',' << p.branch << ',';
    if (p.found) out << format_number(p.critical_value) << ',' << format_number(p.delta_residual);
    else out << ',';
    out << '\n';
  }
  return out.str();
}

std::string scan_csv(const catastrophe::ScanResult& scan) {
  std::ostringstream out;
  out << "value,ground_energy,ground_parity,inner_weight,outer_weight,dominant,lowest_outer_state\n";
  for (const auto& s : scan.samples) {
    out << format_number(s.value) << ',' << format_number(s.ground_energy) << ','
        << spectral::to_string(s.ground_parity) << ',' << format_number(s.inner_weight) << ','
        << format_number(s.outer_weight) << ',' << s.dominant << ',' << s.lowest_outer_state << '\n';
  }
  return out.str();
}

std::string extrema_csv(const std::vector<ExtremumRecord>& records) {
  std::ostringstream out;
  out << "position,value,kind,ring_index,degenerate\n";
  for (const auto& r : records) {
    out << format_number(r.position) << ',' << format_number(r.value) << ',' << to_string(r.kind) << ','
        << r.ring_index << ',' << (r.degenerate ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string estimate_csv(const std::vector<perturbation::WellModel>& wells, int n_max,
                         const std::vector<std::optional<double>>& numeric) {
  std::ostringstream out;
  out << "well,x_min,depth,omega";
  for (int n = 0; n <= n_max; ++n) out << ",E_" << n;
  if (!numeric.empty()) out << ",E_numeric";
  out << '\n';
  for (std::size_t w = 0; w < wells.size(); ++w) {
    const auto& well = wells[w];
    out << well.ring_index << ',' << format_number(well.x_min) << ',' << format_number(well.depth) << ','
        << format_number(std::sqrt(std::max(0.0, well.omega_sq)));
    if (well.omega_sq > 0.0) {
      for (double e : perturbation::harmonic_levels(well, n_max)) out << ',' << format_number(e);
    } else {
      for (int n = 0; n <= n_max; ++n) out << ',';
    }
    if (!numeric.empty()) {
      out << ',';
      if (w < numeric.size() && numeric[w]) out << format_number(*numeric[w]);
    }
    out << '\n';
  }
  return out.str();
}

std::string curve_csv(const std::function<double(double)>& f, double lo, double hi, int samples,
                      const std::string& y_name) {
  if (samples < 2) throw DomainError("curve needs at least two samples");
  std::ostringstream out;
  out << "x," << y_name << '\n';
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    out << format_number(x) << ',' << format_number(f(x)) << '\n';
  }
  return out.str();
}

std::string potential_svg(const std::function<double(double)>& v, double lo, double hi,
                          const std::vector<double>& levels, const std::string& title) {
  const int samples = 1201;
  std::vector<double> xs(samples), ys(samples);
  double vmin = std::numeric_limits<double>::infinity();
  double local_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    xs[i] = lo + (hi - lo) * i / (samples - 1);
    ys[i] = v(xs[i]);
    vmin = std::min(vmin, ys[i]);
  }
  for (int i = 1; i + 1 < samples; ++i) {
    if (ys[i] >= ys[i - 1] && ys[i] >= ys[i + 1]) local_max = std::max(local_max, ys[i]);
  }
  double top = levels.empty() ? local_max : *std::max_element(levels.begin(), levels.end());
  if (!std::isfinite(top) || top <= vmin) top = vmin + 1.0;
  const double span = top - vmin;
  Frame f{lo, hi, vmin - 0.05 * span, top + 0.3 * span};

  std::ostringstream out;
  open_svg(out, f, title, "x", "V(x)");
  if (f.y0 < 0.0 && f.y1 > 0.0) {
    out << "<line x1=\"" << svg_number(f.px(lo)) << "\" y1=\"" << svg_number(f.py(0)) << "\" x2=\""
        << svg_number(f.px(hi)) << "\" y2=\"" << svg_number(f.py(0))
        << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
  }
  emit_polyline(out, f, xs, ys, "black", 1.6);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const double e = levels[k];
    const char* color = kPalette[k % 6];
    // Classically allowed intervals, endpoints by linear interpolation.
    bool inside = false;
    double start = 0.0;
    for (int i = 0; i < samples; ++i) {
      const bool allowed = ys[i] <= e;
      if (allowed && !inside) {
        start = i == 0 ? xs[0] : xs[i - 1] + (xs[i] - xs[i - 1]) * (ys[i - 1] - e) / (ys[i - 1] - ys[i]);
        inside = true;
      } else if (!allowed && inside) {
        const double stop = xs[i - 1] + (xs[i] - xs[i - 1]) * (e - ys[i - 1]) / (ys[i] - ys[i - 1]);
        out << "<line x1=\"" << svg_number(f.px(start)) << "\" y1=\"" << svg_number(f.py(e)) << "\" x2=\""
            << svg_number(f.px(stop)) << "\" y2=\"" << svg_number(f.py(e)) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.2\"/>\n";
        inside = false;
      }
    }
    if (inside) {
      out << "<line x1=\"" << svg_number(f.px(start)) << "\" y1=\"" << svg_number(f.py(e)) << "\" x2=\""
          << svg_number(f.px(hi)) << "\" y2=\"" << svg_number(f.py(e)) << "\" stroke=\"" << color
          << "\" stroke-width=\"1.2\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string curves_svg(const std::vector<Series>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0.0;
    x1 = 1.0;
    y0 = 0.0;
    y1 = 1.0;
  }
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  Frame f{x0, x1, y0 - pad, y1 + pad};
  std::ostringstream out;
  open_svg(out, f, title, x_label, y_label);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % 6];
    emit_polyline(out, f, series[k].x, series[k].y, color, 1.6);
    out << "<text x=\"" << svg_number(kWidth - kRight - 8) << "\" y=\"" << svg_number(kTop + 16 + 16 * k)
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(series[k].label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace arnold::io
