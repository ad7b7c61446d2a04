#include <algorithm>
#include <charconv>
#include <functional>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "batchbai/complexity.hpp"
#include "batchbai/errors.hpp"
#include "batchbai/experiment.hpp"
#include "batchbai/generators.hpp"
#include "batchbai/json_io.hpp"
#include "batchbai/linbandit.hpp"
#include "batchbai/optdesign.hpp"
#include "batchbai/ratings.hpp"

namespace bb = batchbai;

namespace {

// MAB instances are embedded as the standard basis when a linear view is needed.
bb::LinearInstance as_linear(const bb::Instance& instance) {
  if (const auto* lin = std::get_if<bb::LinearInstance>(&instance)) return *lin;
  if (const auto* mab = std::get_if<bb::MabInstance>(&instance)) return bb::as_basis_linear(*mab);
  throw bb::InvalidArgument("empirical instances have no linear structure");
}

std::vector<bb::ArmId> parse_subset(const std::string& text, std::size_t arms) {
  std::vector<bb::ArmId> ids;
  if (text == "all") {
    for (std::size_t i = 0; i < arms; ++i) ids.push_back(i);
    return ids;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    bb::ArmId id = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    const auto [ptr, ec] = std::from_chars(first, last, id);
    if (ec != std::errc() || ptr != last) {
      throw bb::InvalidArgument("bad arm id '" + std::string(first, last) + "' in --subset");
    }
    if (id >= arms) throw bb::InvalidArm("arm " + std::to_string(id) + " out of range");
    ids.push_back(id);
    pos = comma + 1;
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2) throw bb::InvalidArgument("--subset needs at least two distinct arms");
  return ids;
}

void write_text(const std::string& path, const std::string& what,
                const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw bb::InvalidArgument("cannot write " + what + " to " + path);
  body(out);
}

void emit_json(const std::string& path, const bb::Json& doc) {
  if (path == "-") {
    std::cout << doc.dump(2) << '\n';
  } else {
    bb::write_json_file(path, doc);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batched best-arm identification: instances, complexity, designs, experiments"};
  app.require_subcommand(1);

  int example = 1;
  std::size_t n = 0;
  bool linear = false;
  bool trace = false;
  double noise_sd = 1.0;
  std::string instance_path, out_path, subset = "all", spec_path, out_dir, in_dir, csv_path;
  std::size_t top_k = 1000, cap = 50;
  double tol = bb::DesignOptions{}.tol;
  std::size_t max_iters = bb::DesignOptions{}.max_iters;

  auto* gen = app.add_subcommand("gen", "Generate a benchmark instance");
  gen->add_option("--example", example, "Example family")->required()->check(CLI::Range(1, 3));
  gen->add_option("--n", n, "Number of arms")->required()->check(CLI::Range(2, 1 << 30));
  gen->add_flag("--linear", linear, "Embed as a linear instance on the standard basis");
  gen->add_option("--noise-sd", noise_sd, "Gaussian noise standard deviation")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "Output JSON ('-' for stdout)")->required();

  auto* cx = app.add_subcommand("complexity", "Instance batch complexity");
  cx->add_option("--instance", instance_path, "Instance JSON")->required();
  cx->add_flag("--linear", linear, "Use the linear recursion (implied for linear instances)");
  cx->add_flag("--trace", trace, "Include the per-step sequences");
  cx->add_option("--tol", tol, "Design solver tolerance")->check(CLI::PositiveNumber);
  cx->add_option("--out", out_path, "Output JSON ('-' for stdout)")->required();

  auto* design = app.add_subcommand("design", "G-optimal design over pairwise differences");
  design->add_option("--instance", instance_path, "Instance JSON")->required();
  design->add_option("--subset", subset, "'all' or comma-separated arm ids");
  design->add_option("--tol", tol, "Solver tolerance")->check(CLI::PositiveNumber);
  design->add_option("--max-iters", max_iters, "Solver iteration cap");
  design->add_option("--out", out_path, "Output JSON ('-' for stdout)")->required();

  auto* run = app.add_subcommand("run", "Run a replicated parameter sweep");
  run->add_option("--spec", spec_path, "Experiment spec JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir, "Results directory")->required();

  auto* ingest = app.add_subcommand("ingest-ratings", "Build an empirical instance from ratings");
  ingest->add_option("--csv", csv_path, "ratings.csv")->required()->check(CLI::ExistingFile);
  ingest->add_option("--top-k", top_k, "Number of most-rated movies");
  ingest->add_option("--cap", cap, "Ratings kept per movie");
  ingest->add_option("--out", out_path, "Output JSON ('-' for stdout)")->required();

  auto* report = app.add_subcommand("report", "Re-aggregate a results directory");
  report->add_option("--in-dir", in_dir, "Results directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--out", out_path, "Output CSV ('-' for stdout)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const bb::Instance inst = linear ? bb::Instance(bb::gen_basis_linear(example, n, noise_sd))
                                       : bb::Instance(bb::gen_example(example, n, noise_sd));
      emit_json(out_path, bb::instance_to_json(inst));
    } else if (*cx) {
      const bb::Instance inst = bb::instance_from_json(bb::read_json_file(instance_path));
      if (linear || std::holds_alternative<bb::LinearInstance>(inst)) {
        bb::DesignOptions options;
        options.tol = tol;
        emit_json(out_path, bb::report_to_json(bb::batch_complexity_linear(as_linear(inst), options), trace));
      } else {
        const auto* mab = std::get_if<bb::MabInstance>(&inst);
        if (!mab) throw bb::InvalidArgument("complexity needs known means; empirical instances have none");
        emit_json(out_path, bb::report_to_json(bb::batch_complexity_mab(bb::gap_profile(*mab)), trace));
      }
    } else if (*design) {
      const bb::LinearInstance inst = as_linear(bb::instance_from_json(bb::read_json_file(instance_path)));
      const auto ids = parse_subset(subset, inst.size());
      const bb::VectorSet tests = bb::pairwise_differences(bb::select_rows(inst.arms(), ids));
      const bb::Design d = bb::solve_design(inst.arms(), tests, {tol, max_iters});
      bb::Json doc = bb::design_to_json(d);
      doc["subset"] = ids;
      emit_json(out_path, doc);
    } else if (*run) {
      const bb::ExperimentSpec spec = bb::experiment_spec_from_json(
          bb::read_json_file(spec_path), std::filesystem::path(spec_path).parent_path());
      const bb::ExperimentResult result = bb::run_experiment(spec);
      bb::write_experiment(result, spec, out_dir);
      std::size_t failures = 0;
      for (const auto& row : result.rows) failures += row.failures;
      if (failures) std::cerr << failures << " run(s) failed; see traces/ for errors\n";
      bb::write_aggregate_csv(std::cout, result.rows);
    } else if (*ingest) {
      const bb::RatingsArms arms = bb::load_ratings_csv(csv_path, top_k, cap);
      bb::Json doc = bb::instance_to_json(arms.instance);
      doc["movie_ids"] = arms.movie_ids;
      emit_json(out_path, doc);
    } else if (*report) {
      const auto rows = bb::summarize_directory(in_dir);
      write_text(out_path, "summary", [&](std::ostream& out) { bb::write_aggregate_csv(out, rows); });
    }
  } catch (const bb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
