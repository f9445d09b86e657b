#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/core/matrix_io.hpp"
#include "mrfgrid/mcmc/mcmc.hpp"

namespace mrfgrid {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

double parse_cell(const std::string& cell) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("malformed number in chain file: " + cell);
  return v;
}

}  // namespace

void write_chain_csv(std::ostream& out, const Chain& chain, bool include_burn_in) {
  if (chain.records.empty()) return;
  const ChainRecord& first = chain.records.front();
  const auto dim = first.beta.size();
  const auto k = first.mu.size();
  out << "iter";
  for (Eigen::Index j = 1; j <= dim; ++j) out << ",beta_" << j;
  for (Eigen::Index j = 1; j <= first.stat.size(); ++j) out << ",stat_" << j;
  out << ",accepted";
  for (std::size_t j = 1; j <= k; ++j) out << ",mu_" << j;
  for (std::size_t j = 1; j <= k; ++j) out << ",sigma2_" << j;
  out << '\n';
  for (const auto& rec : chain.records) {
    if (!include_burn_in && rec.iter <= chain.burn_in) continue;
    out << rec.iter;
    for (Eigen::Index j = 0; j < rec.beta.size(); ++j) out << ',' << format_double(rec.beta[j]);
    for (Eigen::Index j = 0; j < rec.stat.size(); ++j) out << ',' << format_double(rec.stat[j]);
    out << ',' << (rec.accepted ? 1 : 0);
    for (double v : rec.mu) out << ',' << format_double(v);
    for (double v : rec.sigma2) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_chain_csv(const std::filesystem::path& path, const Chain& chain,
                     bool include_burn_in) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  write_chain_csv(out, chain, include_burn_in);
}

Chain read_chain_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("chain file is empty");
  const auto header = split_commas(line);
  int dim = 0, stats = 0, k = 0;
  for (const auto& name : header) {
    if (name.rfind("beta_", 0) == 0) ++dim;
    else if (name.rfind("stat_", 0) == 0) ++stats;
    else if (name.rfind("mu_", 0) == 0) ++k;
  }
  if (header.empty() || header[0] != "iter" || dim < 1 || dim > 2 || stats > 2) {
    throw UsageError("unrecognised chain header");
  }
  const std::size_t expected = 2 + dim + stats + 2 * static_cast<std::size_t>(k);

  Chain chain;
  long accepted = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_commas(line);
    if (cells.size() != expected) throw UsageError("chain row has the wrong number of fields");
    ChainRecord rec;
    std::size_t c = 0;
    rec.iter = static_cast<int>(parse_cell(cells[c++]));
    rec.beta = Vec(dim);
    for (int j = 0; j < dim; ++j) rec.beta[j] = parse_cell(cells[c++]);
    rec.stat = Vec(stats);
    for (int j = 0; j < stats; ++j) rec.stat[j] = parse_cell(cells[c++]);
    rec.accepted = parse_cell(cells[c++]) != 0.0;
    for (int j = 0; j < k; ++j) rec.mu.push_back(parse_cell(cells[c++]));
    for (int j = 0; j < k; ++j) rec.sigma2.push_back(parse_cell(cells[c++]));
    accepted += rec.accepted ? 1 : 0;
    chain.records.push_back(std::move(rec));
  }
  if (!chain.records.empty()) {
    chain.acceptance_rate = static_cast<double>(accepted) / chain.records.size();
  }
  return chain;
}

Chain read_chain_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  return read_chain_csv(in);
}

}  // namespace mrfgrid
