#include "mrfgrid/core/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "mrfgrid/core/errors.hpp"

namespace mrfgrid {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

NumericMatrix read_matrix(std::istream& in) {
  NumericMatrix m;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    for (char& ch : line) {
      if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
    }
    std::istringstream row(line);
    std::string token;
    int cols = 0;
    while (row >> token) {
      double value = 0.0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw UsageError("line " + std::to_string(line_no) + ": not a number: '" + token + "'");
      }
      m.values.push_back(value);
      ++cols;
    }
    if (cols == 0) continue;
    if (m.rows > 0 && cols != m.cols) {
      throw UsageError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(m.cols) + " entries, got " + std::to_string(cols));
    }
    m.cols = cols;
    ++m.rows;
  }
  if (m.rows == 0) throw UsageError("matrix file is empty");
  return m;
}

NumericMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const NumericMatrix& m) {
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (c > 0) out << ' ';
      out << format_double(m.values[static_cast<std::size_t>(r) * m.cols + c]);
    }
    out << '\n';
  }
}

void write_matrix(const std::filesystem::path& path, const NumericMatrix& m) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  write_matrix(out, m);
}

LabelField labels_from_matrix(const ModelSpec& model, const NumericMatrix& m) {
  if (m.rows != model.height() || m.cols != model.width()) {
    throw MismatchError("data is " + std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                        ", model expects " + std::to_string(model.height()) + "x" +
                        std::to_string(model.width()));
  }
  std::vector<int> labels;
  labels.reserve(m.values.size());
  for (double v : m.values) {
    if (v != std::round(v)) throw UsageError("label values must be integers");
    labels.push_back(static_cast<int>(v));
  }
  return LabelField(model, std::move(labels));
}

NumericMatrix to_matrix(const LabelField& z) {
  NumericMatrix m;
  m.rows = z.model().height();
  m.cols = z.model().width();
  m.values.assign(z.labels().begin(), z.labels().end());
  return m;
}

void write_density_csv(std::ostream& out, const DensityTable& table) {
  const std::size_t d = table.axes.size();
  out << "beta_1";
  if (d == 2) out << ",beta_2";
  out << ",density\n";
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) out << format_double(table.points[i][j]) << ',';
    out << format_double(table.density[i]) << '\n';
  }
}

}  // namespace mrfgrid
