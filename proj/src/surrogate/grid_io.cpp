#include "mrfgrid/surrogate/grid_io.hpp"

#include <fstream>
#include <json.hpp>

#include "mrfgrid/core/errors.hpp"

namespace mrfgrid {

using nlohmann::json;

namespace {

json to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vec vec_from_json(const json& j, int d, const char* what) {
  const auto values = j.get<std::vector<double>>();
  if (static_cast<int>(values.size()) != d) {
    throw UsageError(std::string("grid file: '") + what + "' has the wrong length");
  }
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = values[i];
  return v;
}

json model_to_json(const ModelSpec& model) {
  json bounds = json::array();
  for (const auto& b : model.bounds()) bounds.push_back({b.lo, b.hi});
  return {{"family", to_string(model.family())},
          {"k", model.k()},
          {"height", model.height()},
          {"width", model.width()},
          {"bounds", bounds}};
}

ModelSpec model_from_json(const json& j) {
  std::vector<Interval> bounds;
  for (const auto& b : j.at("bounds")) {
    const auto pair = b.get<std::vector<double>>();
    if (pair.size() != 2) throw UsageError("grid file: bounds entries must be [lo, hi]");
    bounds.push_back({pair[0], pair[1]});
  }
  return ModelSpec(parse_family(j.at("family").get<std::string>()), j.at("k").get<int>(),
                   j.at("height").get<int>(), j.at("width").get<int>(), std::move(bounds));
}

}  // namespace

void write_grid(std::ostream& out, const SurrogateGrid& grid) {
  const int d = grid.dim();
  json directions = json::array();
  for (const auto& dir : grid.directions()) directions.push_back(to_json(dir));
  json knots = json::array();
  for (const auto& knot : grid.knots()) {
    std::vector<double> grad;
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) grad.push_back(knot.grad(r, c));
    }
    json entry = {{"beta", to_json(knot.beta)},
                  {"mean", to_json(knot.mean)},
                  {"grad", grad},
                  {"n_samples", knot.n_samples},
                  {"std_error", to_json(knot.std_error)}};
    if (d == 2) {
      entry["spine_index"] = knot.spine_index;
      entry["trail_index"] = knot.trail_index;
    }
    knots.push_back(std::move(entry));
  }
  const auto& s = grid.sampling();
  json doc = {{"format_version", kGridFormatVersion},
              {"model", model_to_json(grid.model())},
              {"kind", to_string(grid.kind())},
              {"beta_crit", to_json(grid.origin())},
              {"kappa", grid.kappa()},
              {"directions", directions},
              {"grad_ref", grid.grad_ref()},
              {"sampler_budget",
               {{"burn_in", s.budget.burn_in},
                {"n_samples", s.budget.n_samples},
                {"thin", s.budget.thin},
                {"seed", s.seed},
                {"exact", s.exact}}},
              {"knots", knots}};
  out << doc.dump(1) << '\n';
}

void write_grid(const std::filesystem::path& path, const SurrogateGrid& grid) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  write_grid(out, grid);
}

SurrogateGrid read_grid(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("grid file is not valid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kGridFormatVersion) {
      throw UsageError("unsupported grid format_version " + std::to_string(version));
    }
    ModelSpec model = model_from_json(doc.at("model"));
    const int d = model.dim();
    std::vector<Vec> directions;
    for (const auto& dir : doc.at("directions")) directions.push_back(vec_from_json(dir, d, "directions"));

    std::vector<GridKnot> knots;
    for (const auto& entry : doc.at("knots")) {
      GridKnot knot;
      knot.beta = vec_from_json(entry.at("beta"), d, "beta");
      knot.mean = vec_from_json(entry.at("mean"), d, "mean");
      const auto grad = entry.at("grad").get<std::vector<double>>();
      if (static_cast<int>(grad.size()) != d * d) throw UsageError("grid file: 'grad' must have D*D entries");
      knot.grad = Mat(d, d);
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) knot.grad(r, c) = grad[r * d + c];
      }
      knot.n_samples = entry.at("n_samples").get<int>();
      knot.std_error = vec_from_json(entry.at("std_error"), d, "std_error");
      if (d == 2) {
        knot.spine_index = entry.at("spine_index").get<int>();
        knot.trail_index = entry.at("trail_index").get<int>();
      }
      knots.push_back(std::move(knot));
    }
    const auto& budget = doc.at("sampler_budget");
    GridSampling sampling;
    sampling.budget.burn_in = budget.at("burn_in").get<int>();
    sampling.budget.n_samples = budget.at("n_samples").get<int>();
    sampling.budget.thin = budget.at("thin").get<int>();
    sampling.seed = budget.at("seed").get<std::uint64_t>();
    sampling.exact = budget.value("exact", false);
    return SurrogateGrid(std::move(model), parse_grid_kind(doc.at("kind").get<std::string>()),
                         vec_from_json(doc.at("beta_crit"), d, "beta_crit"), std::move(directions),
                         doc.at("kappa").get<double>(), doc.at("grad_ref").get<double>(),
                         std::move(knots), sampling);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed grid file: ") + e.what());
  }
}

SurrogateGrid read_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  return read_grid(in);
}

}  // namespace mrfgrid
