#pragma once

#include <chrono>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrfgrid/core/model.hpp"

namespace mrfgrid::cli {

struct ModelFlags {
  std::string family = "potts";
  int k = 2;
  std::string size;
  std::string bounds;

  void add_to(CLI::App& app);
  ModelSpec model() const;
};

/// "HxW"
std::pair<int, int> parse_size(const std::string& text);
/// "lo:hi[,lo:hi]"
std::vector<Interval> parse_bounds(const std::string& text);
/// "a[,b]"
ParamPoint parse_point(const std::string& text);
/// "n" or "n1xn2"
std::vector<int> parse_counts(const std::string& text, int dim);
std::string default_bounds(Family family);
std::string format_point(const ParamPoint& beta);

class Command {
 public:
  virtual ~Command() = default;
  virtual void setup(CLI::App& sub) = 0;
  virtual void run(std::ostream& out) = 0;
};

std::unique_ptr<Command> make_precompute();
std::unique_ptr<Command> make_simulate();
std::unique_ptr<Command> make_run();
std::unique_ptr<Command> make_oracle();
std::unique_ptr<Command> make_diagnose();

/// Flags of the invoked subcommand, as recorded in manifests.
nlohmann::ordered_json flags_json(const CLI::App& sub);

void write_json(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace mrfgrid::cli
