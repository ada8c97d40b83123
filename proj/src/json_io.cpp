#include "sparsepip/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace sparsepip {

namespace {

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& err) {
    throw InputError(path + ": " + err.what());
  }
}

template <typename T>
T field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& err) {
    throw InputError(std::string("field \"") + name + "\": " + err.what());
  }
}

}  // namespace

nlohmann::json instance_to_json(const PipInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.num_items();
  j["m"] = inst.num_constraints();
  j["weights"] = inst.weights();
  j["capacities"] = inst.capacities();
  nlohmann::json entries = nlohmann::json::array();
  for (const Triplet& e : inst.entries())
    entries.push_back(nlohmann::json::array({e.item, e.constraint, e.size}));
  j["entries"] = std::move(entries);
  const auto& ub = inst.upper_bounds();
  if (std::any_of(ub.begin(), ub.end(), [](int u) { return u != 1; })) j["upper_bounds"] = ub;
  return j;
}

PipInstance instance_from_json(const nlohmann::json& j) {
  const int n = field<int>(j, "n");
  const int m = field<int>(j, "m");
  auto weights = field<std::vector<double>>(j, "weights");
  auto capacities = field<std::vector<double>>(j, "capacities");

  if (!j.contains("entries") || !j.at("entries").is_array())
    throw InputError("missing field \"entries\"");
  std::vector<Triplet> entries;
  entries.reserve(j.at("entries").size());
  for (std::size_t t = 0; t < j.at("entries").size(); ++t) {
    const auto& e = j.at("entries")[t];
    if (!e.is_array() || e.size() != 3)
      throw InputError("entry " + std::to_string(t) + " must be [item, constraint, size]");
    try {
      entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    } catch (const nlohmann::json::exception& err) {
      throw InputError("entry " + std::to_string(t) + ": " + err.what());
    }
  }

  std::vector<int> upper_bounds;
  if (j.contains("upper_bounds")) upper_bounds = field<std::vector<int>>(j, "upper_bounds");
  return PipInstance(n, m, std::move(weights), std::move(capacities), entries,
                     std::move(upper_bounds));
}

PipInstance load_instance_file(const std::string& path) {
  return instance_from_json(parse_file(path));
}

void save_instance_file(const PipInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

std::unique_ptr<SubmodularOracle> oracle_from_json(const nlohmann::json& j) {
  const auto family = field<std::string>(j, "family");
  if (family == "linear")
    return std::make_unique<LinearOracle>(field<std::vector<double>>(j, "weights"));
  if (family == "coverage")
    return std::make_unique<CoverageOracle>(field<std::vector<double>>(j, "universe_weights"),
                                            field<std::vector<std::vector<int>>>(j, "covers"));
  if (family == "concave_cardinality")
    return std::make_unique<ConcaveCardinalityOracle>(field<std::vector<double>>(j, "g"));
  throw InputError("unknown oracle family \"" + family + "\"");
}

std::unique_ptr<SubmodularOracle> load_oracle_file(const std::string& path) {
  return oracle_from_json(parse_file(path));
}

namespace {

const char* reason_name(DeletionReason reason) {
  switch (reason) {
    case DeletionReason::BigNeighbor: return "big_neighbor";
    case DeletionReason::SmallOverflow: return "small_overflow";
    case DeletionReason::PrefixOverflow: return "prefix_overflow";
    case DeletionReason::ViolatedConstraint: return "violated_constraint";
  }
  return "unknown";
}

}  // namespace

nlohmann::json report_to_json(const RoundingReport& report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["alpha"] = report.alpha;
  j["scale"] = report.scale;
  j["sampled"] = report.sampled.members();
  j["final"] = report.final_set.members();
  nlohmann::json deletions = nlohmann::json::array();
  for (const DeletionCause& cause : report.deletions)
    deletions.push_back({{"item", cause.item},
                         {"constraint", cause.constraint},
                         {"reason", reason_name(cause.reason)}});
  j["deletions"] = std::move(deletions);
  j["value"] = report.final_value;
  return j;
}

}  // namespace sparsepip
