#include "batchbai/json_io.hpp"

#include <fstream>
#include <string>

#include "batchbai/errors.hpp"

namespace batchbai {
namespace {

template <typename V>
Json keyed(const std::map<ArmId, V>& values) {
  Json out = Json::object();
  for (const auto& [arm, v] : values) out[std::to_string(arm)] = v;
  return out;
}

template <typename V>
std::map<ArmId, V> unkeyed(const Json& doc) {
  std::map<ArmId, V> out;
  for (const auto& [key, v] : doc.items()) out.emplace(std::stoull(key), v.template get<V>());
  return out;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Json require(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidArgument(std::string("instance JSON lacks \"") + key + "\"");
  return doc.at(key);
}

}  // namespace

Json instance_to_json(const Instance& instance) {
  return std::visit(
      [](const auto& inst) -> Json {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, MabInstance>) {
          return {{"kind", "mab"}, {"means", inst.means()}, {"noise_sd", inst.noise_sd()}};
        } else if constexpr (std::is_same_v<T, LinearInstance>) {
          Json arms = Json::array();
          for (Eigen::Index i = 0; i < inst.arms().rows(); ++i) {
            arms.push_back(to_vector(inst.arms().row(i).transpose()));
          }
          return {{"kind", "linear"},
                  {"arms", std::move(arms)},
                  {"theta_star", to_vector(inst.theta_star())},
                  {"noise_sd", inst.noise_sd()}};
        } else {
          return {{"kind", "empirical"}, {"pools", inst.pools()}};
        }
      },
      instance);
}

Instance instance_from_json(const Json& doc) {
  const std::string kind = require(doc, "kind").get<std::string>();
  const double noise_sd = doc.value("noise_sd", 1.0);
  if (kind == "mab") {
    return MabInstance(require(doc, "means").get<std::vector<double>>(), noise_sd);
  }
  if (kind == "linear") {
    const auto rows = require(doc, "arms").get<std::vector<std::vector<double>>>();
    const auto theta = require(doc, "theta_star").get<std::vector<double>>();
    if (rows.empty()) throw InvalidArgument("linear instance has no arms");
    Eigen::MatrixXd arms(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(theta.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != theta.size()) {
        throw InvalidArgument("arm " + std::to_string(i) + " has the wrong dimension");
      }
      for (std::size_t j = 0; j < theta.size(); ++j) {
        arms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
    return LinearInstance(std::move(arms),
                          Eigen::Map<const Eigen::VectorXd>(theta.data(),
                                                            static_cast<Eigen::Index>(theta.size())),
                          noise_sd);
  }
  if (kind == "empirical") {
    return EmpiricalInstance(require(doc, "pools").get<std::vector<std::vector<double>>>());
  }
  throw InvalidArgument("unknown instance kind '" + kind + "'");
}

Json trace_to_json(const RunTrace& trace) {
  Json batches = Json::array();
  for (const auto& b : trace.batches) {
    Json jb = {{"index", b.index},
               {"budget", b.budget},
               {"next_budget", b.next_budget ? Json(*b.next_budget) : Json(nullptr)},
               {"pulls_per_arm", keyed(b.pulls_per_arm)},
               {"empirical_means", keyed(b.empirical_means)},
               {"gap_estimates", keyed(b.gap_estimates)},
               {"eliminated", b.eliminated},
               {"survivors", b.survivors}};
    if (b.linear) {
      jb["linear"] = {{"N_r", b.linear->design_budget},
                      {"rho", b.linear->rho},
                      {"design", b.linear->design},
                      {"theta_hat", b.linear->theta_hat}};
    }
    batches.push_back(std::move(jb));
  }
  return {{"seed", trace.seed},
          {"returned_arm", trace.returned_arm},
          {"total_samples", trace.total_samples},
          {"total_batches", trace.total_batches},
          {"success", trace.success ? Json(*trace.success) : Json(nullptr)},
          {"batches", std::move(batches)}};
}

RunTrace trace_from_json(const Json& doc) {
  RunTrace trace;
  trace.seed = doc.at("seed").get<std::uint64_t>();
  trace.returned_arm = doc.at("returned_arm").get<ArmId>();
  trace.total_samples = doc.at("total_samples").get<std::uint64_t>();
  trace.total_batches = doc.at("total_batches").get<std::size_t>();
  if (!doc.at("success").is_null()) trace.success = doc.at("success").get<bool>();
  for (const auto& jb : doc.at("batches")) {
    BatchRecord b;
    b.index = jb.at("index").get<std::size_t>();
    b.budget = jb.at("budget").get<double>();
    if (!jb.at("next_budget").is_null()) b.next_budget = jb.at("next_budget").get<double>();
    b.pulls_per_arm = unkeyed<std::uint64_t>(jb.at("pulls_per_arm"));
    b.empirical_means = unkeyed<double>(jb.at("empirical_means"));
    b.gap_estimates = unkeyed<double>(jb.at("gap_estimates"));
    b.eliminated = jb.at("eliminated").get<std::vector<ArmId>>();
    b.survivors = jb.at("survivors").get<std::vector<ArmId>>();
    if (jb.contains("linear")) {
      const auto& jl = jb.at("linear");
      b.linear = LinearBatchInfo{jl.at("N_r").get<std::uint64_t>(), jl.at("rho").get<double>(),
                                 jl.at("design").get<std::vector<double>>(),
                                 jl.at("theta_hat").get<std::vector<double>>()};
    }
    trace.batches.push_back(std::move(b));
  }
  return trace;
}

Json report_to_json(const ComplexityReport& report, bool with_trace) {
  Json out = {{"kind", "mab"},
              {"h_instance", report.h_instance},
              {"r_instance", report.r_instance},
              {"alpha", report.alpha},
              {"bound_value", report.bound_value},
              {"grid_bound", report.grid_bound}};
  if (with_trace) {
    out["lbar_sequence"] = report.lbar;
    out["u_sequence"] = report.u_sets;
  }
  return out;
}

Json report_to_json(const LinearComplexityReport& report, bool with_trace) {
  Json out = {{"kind", "linear"},
              {"r_instance", report.r_instance},
              {"alpha", report.alpha},
              {"bound_value", report.bound_value},
              {"psi_star", report.psi_star},
              {"rho_starred", report.rho_starred},
              {"min_gap", report.min_gap}};
  if (with_trace) {
    Json lbar = Json::array();
    for (int t : report.exponents) lbar.push_back(std::ldexp(1.0, 2 * t));
    out["lbar_sequence"] = std::move(lbar);
    out["u_sequence"] = report.u_sets;
    out["potentials"] = report.potentials;
  }
  return out;
}

Json design_to_json(const Design& design) {
  return {{"lambda", design.lambda},
          {"rho", design.rho},
          {"iterations", design.iterations},
          {"gap_certificate", design.gap_certificate}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace batchbai
