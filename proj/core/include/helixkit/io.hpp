#pragma once

#include <string>
#include <utility>
#include <vector>

#include "helixkit/curve.hpp"

namespace helixkit {

/// Lossless decimal form (17 significant digits), locale-independent.
std::string fmt17(double value);

/// Writes via a temp file in the same directory, then renames into place.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// Points CSV: '#' JSON header line, then t,x_1..x_n rows at 17 digits.
std::string points_csv(const CurveSpec& sampled_spec);

/// Ingests a points CSV (as written by points_csv) into a sampled spec.
CurveSpec parse_points_csv(const std::string& text, const std::string& name);

}  // namespace helixkit
