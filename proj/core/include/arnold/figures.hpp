#pragma once

#include <string>
#include <vector>

#include "arnold/config.hpp"

namespace arnold::io {

/// fig1 .. fig6
std::vector<std::string> figure_names();

/// The bundled run configuration of a figure (schema 1 JSON).
std::string figure_config(const std::string& name);

struct FigureOutput {
  std::vector<std::string> files;
  std::vector<std::string> notes;  // one-line findings for the terminal
};

/// Runs the bundled configuration and writes <name>*.csv / <name>.svg into
/// out_dir (created when missing).
FigureOutput reproduce(const std::string& name, const std::string& out_dir);

/// Symmetric plotting window: 1.15 times the outermost stationary shell.
double plot_half_width(const ArnoldPotential& pot);

}  // namespace arnold::io
