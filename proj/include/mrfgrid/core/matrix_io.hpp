#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mrfgrid/core/enumeration.hpp"
#include "mrfgrid/core/model.hpp"

namespace mrfgrid {

/// Plain-text numeric matrix: one row per line, entries separated by commas
/// and/or whitespace, no header.
struct NumericMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // row-major
};

NumericMatrix read_matrix(std::istream& in);
NumericMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const NumericMatrix& m);
void write_matrix(const std::filesystem::path& path, const NumericMatrix& m);

/// Label field from a matrix; throws MismatchError on wrong dimensions and
/// UsageError on non-integer or out-of-range labels.
LabelField labels_from_matrix(const ModelSpec& model, const NumericMatrix& m);
NumericMatrix to_matrix(const LabelField& z);

/// CSV with header `beta_1[,beta_2],density`.
void write_density_csv(std::ostream& out, const DensityTable& table);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

}  // namespace mrfgrid
