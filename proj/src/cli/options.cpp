#include "options.hpp"

#include <charconv>
#include <fstream>

#include "mrfgrid/core/errors.hpp"
#include "mrfgrid/core/matrix_io.hpp"

namespace mrfgrid::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
  }
  return value;
}

}  // namespace

void ModelFlags::add_to(CLI::App& app) {
  app.add_option("--model", family, "potts or autologistic")->capture_default_str();
  app.add_option("--k", k, "number of labels (Potts)")->capture_default_str();
  app.add_option("--size", size, "lattice size HxW")->required();
  app.add_option("--bounds", bounds,
                 "parameter space lo:hi[,lo:hi]; default 0:2.5 (Potts) or "
                 "-0.05:0.05,0.5:1.2 (autologistic)");
}

ModelSpec ModelFlags::model() const {
  const Family fam = parse_family(family);
  const auto [h, w] = parse_size(size);
  const auto box = parse_bounds(bounds.empty() ? default_bounds(fam) : bounds);
  return ModelSpec(fam, fam == Family::Potts ? k : 2, h, w, box);
}

std::pair<int, int> parse_size(const std::string& text) {
  const auto parts = split(text, 'x');
  if (parts.size() != 2) throw UsageError("size must look like HxW, got '" + text + "'");
  return {parse_number<int>(parts[0], "size"), parse_number<int>(parts[1], "size")};
}

std::vector<Interval> parse_bounds(const std::string& text) {
  std::vector<Interval> out;
  for (const auto& part : split(text, ',')) {
    const auto ends = split(part, ':');
    if (ends.size() != 2) throw UsageError("bounds must look like lo:hi[,lo:hi], got '" + text + "'");
    out.push_back({parse_number<double>(ends[0], "bound"), parse_number<double>(ends[1], "bound")});
  }
  return out;
}

ParamPoint parse_point(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() > 2) throw UsageError("beta has at most two components");
  ParamPoint beta(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t j = 0; j < parts.size(); ++j) {
    beta[static_cast<Eigen::Index>(j)] = parse_number<double>(parts[j], "beta");
  }
  return beta;
}

std::vector<int> parse_counts(const std::string& text, int dim) {
  std::vector<int> counts;
  for (const auto& part : split(text, 'x')) counts.push_back(parse_number<int>(part, "point count"));
  if (counts.size() == 1 && dim == 2) counts.push_back(counts.front());
  if (static_cast<int>(counts.size()) != dim) {
    throw UsageError("point count '" + text + "' does not match the parameter dimension");
  }
  return counts;
}

std::string default_bounds(Family family) {
  return family == Family::Potts ? "0:2.5" : "-0.05:0.05,0.5:1.2";
}

std::string format_point(const ParamPoint& beta) {
  std::string out;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (j > 0) out += ',';
    out += format_double(beta[j]);
  }
  return out;
}

nlohmann::ordered_json flags_json(const CLI::App& sub) {
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front().starts_with("help")) continue;
    const std::string name = opt->get_lnames().front();
    if (opt->get_expected_min() == 0) {
      flags[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      flags[name] = opt->results().front();
    } else if (!opt->get_default_str().empty()) {
      flags[name] = opt->get_default_str();
    }
  }
  return flags;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace mrfgrid::cli
