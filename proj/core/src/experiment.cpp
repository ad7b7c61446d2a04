#include "batchbai/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <thread>

#include "batchbai/errors.hpp"
#include "batchbai/generators.hpp"
#include "batchbai/linbandit.hpp"
#include "batchbai/mab.hpp"
#include "batchbai/rng.hpp"

namespace batchbai {
namespace {

std::string fmt(double v) { return format_double(v); }

bool is_linear_algo(Algorithm a) { return a == Algorithm::kRage || a == Algorithm::kIsRage; }
bool is_plain_algo(Algorithm a) { return a == Algorithm::kSe || a == Algorithm::kRage; }

std::size_t instance_size(const Instance& instance) {
  return std::visit([](const auto& i) { return i.size(); }, instance);
}

RunTrace run_one(const ExperimentSpec& spec, const GridPoint& point, std::uint64_t seed) {
  if (is_linear_algo(spec.algorithm)) {
    RageConfig config;
    config.beta_conf = point.beta_conf;
    config.beta_sample = point.beta_sample;
    config.beta_grid = point.beta_grid;
    config.delta = point.delta;
    config.max_batches = spec.max_batches;
    config.design = spec.design;
    if (const auto* lin = std::get_if<LinearInstance>(&spec.instance)) {
      return run_is_rage(*lin, config, seed);
    }
    if (const auto* mab = std::get_if<MabInstance>(&spec.instance)) {
      return run_is_rage(as_basis_linear(*mab), config, seed);
    }
    throw InvalidArgument("linear algorithms cannot run on empirical instances");
  }
  SeConfig config;
  config.beta_conf = point.beta_conf;
  config.beta_sample = point.beta_sample;
  config.beta_grid = point.beta_grid;
  config.delta = point.delta;
  config.max_batches = spec.max_batches;
  if (const auto* mab = std::get_if<MabInstance>(&spec.instance)) {
    return run_is_se(MabEnvironment(*mab), config, seed);
  }
  if (const auto* emp = std::get_if<EmpiricalInstance>(&spec.instance)) {
    return run_is_se(MabEnvironment(*emp), config, seed);
  }
  throw InvalidArgument("successive elimination needs independent arms, not a linear instance");
}

std::vector<double> grid_values(const Json& grid, const char* key, std::vector<double> fallback) {
  if (!grid.contains(key)) return fallback;
  const auto& v = grid.at(key);
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();
}

Json point_to_json(const GridPoint& p) {
  return {{"beta_conf", p.beta_conf},
          {"beta_sample", p.beta_sample},
          {"beta_grid", p.beta_grid},
          {"delta", p.delta}};
}

GridPoint point_from_json(const Json& doc) {
  return {doc.at("beta_conf").get<double>(), doc.at("beta_sample").get<double>(),
          doc.at("beta_grid").get<double>(), doc.at("delta").get<double>()};
}

std::string run_id(std::size_t grid_index, std::size_t rep) {
  return "g" + std::to_string(grid_index) + "_r" + std::to_string(rep);
}

}  // namespace

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSe: return "se";
    case Algorithm::kIsSe: return "is-se";
    case Algorithm::kRage: return "rage";
    case Algorithm::kIsRage: return "is-rage";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "se") return Algorithm::kSe;
  if (name == "is-se") return Algorithm::kIsSe;
  if (name == "rage") return Algorithm::kRage;
  if (name == "is-rage") return Algorithm::kIsRage;
  throw InvalidArgument("unknown algorithm '" + name + "' (expected se, is-se, rage, is-rage)");
}

void ExperimentSpec::validate() const {
  if (replications == 0) throw InvalidArgument("replications must be at least 1");
  if (grid.beta_conf.empty() || grid.beta_grid.empty() || grid.delta.empty() ||
      (!is_plain_algo(algorithm) && grid.beta_sample.empty())) {
    throw InvalidArgument("parameter grid has an empty axis");
  }
  if (max_batches == 0) throw InvalidArgument("max_batches must be positive");
}

std::vector<GridPoint> expand_grid(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<double> samples =
      is_plain_algo(spec.algorithm) ? std::vector<double>{0.0} : spec.grid.beta_sample;
  std::vector<GridPoint> points;
  for (double conf : spec.grid.beta_conf) {
    for (double sample : samples) {
      for (double grid : spec.grid.beta_grid) {
        for (double delta : spec.grid.delta) points.push_back({conf, sample, grid, delta});
      }
    }
  }
  return points;
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t rep) {
  return derive_seed(base_seed, rep);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  ExperimentResult result;
  result.points = expand_grid(spec);
  const std::size_t reps = spec.replications;
  const std::size_t tasks = result.points.size() * reps;
  result.runs.resize(tasks);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      RunOutcome& out = result.runs[task];
      out.grid_index = task / reps;
      out.replication = task % reps;
      out.seed = replication_seed(spec.seed, out.replication);
      try {
        out.trace = run_one(spec, result.points[out.grid_index], out.seed);
      } catch (const Error& e) {
        out.error = e.what();
      }
    }
  };

  std::size_t threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(tasks, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  const std::string algo = to_string(spec.algorithm);
  const std::size_t n = instance_size(spec.instance);
  for (std::size_t g = 0; g < result.points.size(); ++g) {
    result.rows.push_back(aggregate(algo, result.points[g], n,
                                    std::span<const RunOutcome>(result.runs).subspan(g * reps, reps)));
  }
  return result;
}

AggregateRow aggregate(const std::string& algo, const GridPoint& point, std::size_t n,
                       std::span<const RunOutcome> runs) {
  AggregateRow row;
  row.algo = algo;
  row.point = point;
  row.n = n;
  row.replications = runs.size();

  std::vector<double> samples;
  std::vector<double> batches;
  std::size_t wins = 0;
  for (const auto& run : runs) {
    if (!run.trace) {
      ++row.failures;
      continue;
    }
    samples.push_back(static_cast<double>(run.trace->total_samples));
    batches.push_back(static_cast<double>(run.trace->total_batches));
    if (run.trace->success.value_or(false)) ++wins;
  }
  const auto moments = [](const std::vector<double>& v, double& mean, double& var) {
    mean = var = 0.0;
    if (v.empty()) return;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (v.size() < 2) return;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size() - 1);
  };
  moments(samples, row.mean_samples, row.var_samples);
  moments(batches, row.mean_batches, row.var_batches);
  row.success_rate = runs.empty() ? 0.0 : static_cast<double>(wins) / static_cast<double>(runs.size());
  return row;
}

std::string aggregate_csv_header() {
  return "algo,beta_conf,beta_sample,beta_grid,delta,n,mean_samples,var_samples,mean_batches,"
         "var_batches,success_rate,replications";
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << aggregate_csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.algo << ',' << fmt(r.point.beta_conf) << ',' << fmt(r.point.beta_sample) << ','
        << fmt(r.point.beta_grid) << ',' << fmt(r.point.delta) << ',' << r.n << ','
        << fmt(r.mean_samples) << ',' << fmt(r.var_samples) << ',' << fmt(r.mean_batches) << ','
        << fmt(r.var_batches) << ',' << fmt(r.success_rate) << ',' << r.replications << '\n';
  }
}

ExperimentSpec experiment_spec_from_json(const Json& doc, const std::filesystem::path& base_dir) {
  ExperimentSpec spec;
  const Json& source = doc.at("instance");
  if (source.contains("generator")) {
    const Json& g = source.at("generator");
    const int which = g.at("example").get<int>();
    const auto n = g.at("n").get<std::size_t>();
    const double noise = g.value("noise_sd", 1.0);
    if (g.value("linear", false)) {
      spec.instance = gen_basis_linear(which, n, noise);
    } else {
      spec.instance = gen_example(which, n, noise);
    }
  } else if (source.contains("path")) {
    std::filesystem::path p = source.at("path").get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    spec.instance = instance_from_json(read_json_file(p));
  } else {
    spec.instance = instance_from_json(source);
  }

  spec.algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
  const Json grid = doc.value("grid", Json::object());
  const bool linear = is_linear_algo(spec.algorithm);
  spec.grid.beta_conf = grid_values(grid, "beta_conf", {linear ? 5.0 : 5.0 * std::sqrt(2.0)});
  spec.grid.beta_sample = grid_values(grid, "beta_sample", {linear ? 5.0 / 3.0 : 25.0 / 9.0});
  spec.grid.beta_grid = grid_values(grid, "beta_grid", {4.0});
  spec.grid.delta = grid_values(grid, "delta", {0.1});
  spec.replications = doc.value("replications", std::size_t{10});
  spec.seed = doc.value("seed", std::uint64_t{0});
  spec.max_batches = doc.value("max_batches", std::size_t{64});
  spec.threads = doc.value("threads", std::size_t{0});
  if (doc.contains("design")) {
    spec.design.tol = doc.at("design").value("tol", spec.design.tol);
    spec.design.max_iters = doc.at("design").value("max_iters", spec.design.max_iters);
  }
  spec.validate();
  return spec;
}

void write_experiment(const ExperimentResult& result, const ExperimentSpec& spec,
                      const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "traces");
  const bool linear = is_linear_algo(spec.algorithm);
  const std::string algo = to_string(spec.algorithm);
  const std::size_t n = instance_size(spec.instance);

  std::ofstream traces_csv(out_dir / "traces.csv");
  traces_csv << trace_csv_header(linear) << '\n';
  for (const auto& run : result.runs) {
    const std::string id = run_id(run.grid_index, run.replication);
    Json doc = {{"algo", algo},
                {"grid_index", run.grid_index},
                {"grid_point", point_to_json(result.points[run.grid_index])},
                {"n", n},
                {"replication", run.replication},
                {"seed", run.seed}};
    if (run.trace) {
      doc["trace"] = trace_to_json(*run.trace);
      write_trace_csv(traces_csv, id, *run.trace, linear);
    } else {
      doc["error"] = run.error;
    }
    write_json_file(out_dir / "traces" / (id + ".json"), doc);
  }

  std::ofstream agg(out_dir / "aggregate.csv");
  write_aggregate_csv(agg, result.rows);
  if (!agg) throw InvalidArgument("cannot write " + (out_dir / "aggregate.csv").string());
}

std::vector<AggregateRow> summarize_directory(const std::filesystem::path& in_dir) {
  namespace fs = std::filesystem;
  const fs::path dir = in_dir / "traces";
  if (!fs::is_directory(dir)) throw InvalidArgument("no traces/ directory under " + in_dir.string());

  struct Group {
    std::string algo;
    GridPoint point;
    std::size_t n = 0;
    std::map<std::size_t, RunOutcome> runs;  // by replication
  };
  std::map<std::size_t, Group> groups;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    const Json doc = read_json_file(entry.path());
    const auto g = doc.at("grid_index").get<std::size_t>();
    Group& group = groups[g];
    group.algo = doc.at("algo").get<std::string>();
    group.point = point_from_json(doc.at("grid_point"));
    group.n = doc.at("n").get<std::size_t>();
    RunOutcome run;
    run.grid_index = g;
    run.replication = doc.at("replication").get<std::size_t>();
    run.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("trace")) {
      run.trace = trace_from_json(doc.at("trace"));
    } else {
      run.error = doc.value("error", std::string());
    }
    group.runs.emplace(run.replication, std::move(run));
  }

  std::vector<AggregateRow> rows;
  for (auto& [g, group] : groups) {
    std::vector<RunOutcome> runs;
    for (auto& [rep, run] : group.runs) runs.push_back(std::move(run));
    rows.push_back(aggregate(group.algo, group.point, group.n, runs));
  }
  return rows;
}

}  // namespace batchbai
