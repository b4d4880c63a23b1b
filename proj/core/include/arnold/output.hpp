#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arnold/catastrophe.hpp"
#include "arnold/perturbation.hpp"
#include "arnold/spectral.hpp"

namespace arnold::io {

class IoError : public Error {
 public:
  using Error::Error;
};

/// 12 significant digits, "%.12g"; the only float format used in CSV output.
std::string format_number(double value);

/// Writes atomically enough for a single owner; failures name the path.
void write_file(const std::string& path, const std::string& content);

/// n,E,parity,splitting_partner,weight_region_0..K (-1 when unpaired).
std::string spectrum_csv(const spectral::SpectralResult& result);
/// x,psi_0..psi_{n-1}
std::string wavefunction_csv(const spectral::SpectralResult& result);
/// fixed_value,branch,critical_value,delta_residual (empty fields for gaps)
std::string locus_csv(const std::vector<catastrophe::LocusPoint>& points);
std::string scan_csv(const catastrophe::ScanResult& scan);
std::string extrema_csv(const std::vector<ExtremumRecord>& records);
/// well,x_min,depth,omega,E_0..E_nmax[,E_numeric]
std::string estimate_csv(const std::vector<perturbation::WellModel>& wells, int n_max,
                         const std::vector<std::optional<double>>& numeric = {});
/// x,V on `samples` uniform points of [lo, hi].
std::string curve_csv(const std::function<double(double)>& f, double lo, double hi, int samples,
                      const std::string& y_name = "V");

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Potential curve with energy levels drawn only where V(x) <= E.
std::string potential_svg(const std::function<double(double)>& v, double lo, double hi,
                          const std::vector<double>& levels, const std::string& title);

/// Line plot of several series on shared axes; NaN values break a line.
std::string curves_svg(const std::vector<Series>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label);

}  // namespace arnold::io
