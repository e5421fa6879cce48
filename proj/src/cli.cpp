#include "cohesion/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohesion/cohesion.hpp"
#include "cohesion/generators.hpp"
#include "cohesion/io.hpp"
#include "cohesion/structure.hpp"
#include "cohesion/triplet_space.hpp"
#include "cohesion/verify.hpp"

namespace cohesion {

namespace {

struct InputOptions {
  std::string matrix, coords, triplets, synth;
  std::string mass;
  std::string metric = "euclidean";
  std::string tie_policy = "strict";
  double epsilon = 0.0;
  unsigned threads = 0;

  // generator parameters
  std::uint64_t seed = 0;
  std::size_t n = 5;
  double chain_epsilon = 0.1;
  std::vector<std::size_t> sizes{20, 30, 50};
  std::vector<double> intra_scales;
  double inter_scale = 25.0;
  std::size_t n_ball = 90, n_out = 10;
  double radius = 1.0;
  double outlier_distance = 10.0;
  double far_mass = 0.5;
};

struct LoadedInput {
  TripletComparisonSpace T;
  std::optional<DissimilaritySpace> space;
  std::vector<std::size_t> outliers;  // known outlier indices of a synthetic space
};

void add_input_options(CLI::App& cmd, InputOptions& opt, bool with_generators = true) {
  auto* matrix = cmd.add_option("--matrix", opt.matrix, "distance matrix CSV");
  auto* coords = cmd.add_option("--coords", opt.coords, "coordinate CSV");
  auto* triplets = cmd.add_option("--triplets", opt.triplets, "triplet response/assignment file");
  matrix->excludes(coords)->excludes(triplets);
  coords->excludes(triplets);

  cmd.add_option("--mass", opt.mass, "mass file: lines 'label p'");
  cmd.add_option("--metric", opt.metric, "metric for coordinate input")
      ->check(CLI::IsMember({"euclidean", "manhattan"}))
      ->needs(coords);
  cmd.add_option("--tie-policy", opt.tie_policy, "handling of tied comparisons")
      ->check(CLI::IsMember({"strict", "uniform-split"}));
  cmd.add_option("--epsilon", opt.epsilon, "tolerance below which distances count as tied")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--threads", opt.threads, "kernel threads (0 = hardware)");

  if (with_generators) {
    auto* synth = cmd.add_option(
        "--synth", opt.synth,
        "generate the input: geometric_chain | separated_blocks | ball_with_outliers | "
        "ordering_example | four_group_outlier");
    synth->check(CLI::IsMember({"geometric_chain", "separated_blocks", "ball_with_outliers",
                                "ordering_example", "four_group_outlier"}));
    synth->excludes(matrix)->excludes(coords)->excludes(triplets);
    cmd.add_option("--seed", opt.seed, "generator seed");
    cmd.add_option("--n", opt.n, "chain length");
    cmd.add_option("--chain-epsilon", opt.chain_epsilon, "chain spacing parameter");
    cmd.add_option("--sizes", opt.sizes, "block sizes")->delimiter(',');
    cmd.add_option("--intra-scales", opt.intra_scales, "within-block radii")->delimiter(',');
    cmd.add_option("--inter-scale", opt.inter_scale, "between-block scale");
    cmd.add_option("--n-ball", opt.n_ball, "points in the ball");
    cmd.add_option("--n-out", opt.n_out, "outlier count");
    cmd.add_option("--radius", opt.radius, "ball radius");
    cmd.add_option("--outlier-distance", opt.outlier_distance, "outlier placement distance");
    cmd.add_option("--p", opt.far_mass, "mass of the far point in the ordering example");
  }
}

TiePolicy tie_policy_of(const InputOptions& opt) {
  TiePolicy policy;
  policy.mode = opt.tie_policy == "strict" ? TieMode::Strict : TieMode::UniformSplit;
  policy.epsilon = opt.epsilon;
  return policy;
}

GeneratorSpec generator_spec(const InputOptions& opt) {
  GeneratorSpec spec;
  spec.seed = opt.seed;
  if (opt.synth == "geometric_chain")
    spec.kind = GeometricChain{opt.n, opt.chain_epsilon};
  else if (opt.synth == "separated_blocks")
    spec.kind = SeparatedBlocks{opt.sizes, opt.intra_scales, opt.inter_scale};
  else if (opt.synth == "ball_with_outliers")
    spec.kind = BallWithOutliers{opt.n_ball, opt.n_out, opt.radius, opt.outlier_distance};
  else if (opt.synth == "ordering_example")
    spec.kind = OrderingExample{opt.far_mass};
  else
    spec.kind = FourGroupOutlier{};
  return spec;
}

LoadedInput load_input(const InputOptions& opt) {
  const TiePolicy policy = tie_policy_of(opt);
  const std::optional<std::string> mass =
      opt.mass.empty() ? std::nullopt : std::make_optional(opt.mass);

  if (!opt.synth.empty()) {
    DissimilaritySpace space = generate(generator_spec(opt));
    if (!mass) {
      // generated masses stand unless the user overrides them
    } else {
      space.p = io::read_mass_file(*mass, space.labels);
    }
    LoadedInput in{induced_triplet(space, policy), std::move(space), {}};
    if (opt.synth == "ball_with_outliers")
      in.outliers = generated_outliers(BallWithOutliers{opt.n_ball, opt.n_out, 0, 0});
    return in;
  }
  if (!opt.matrix.empty()) {
    DissimilaritySpace space = io::read_distance_csv(opt.matrix, mass);
    return {induced_triplet(space, policy), std::move(space), {}};
  }
  if (!opt.coords.empty()) {
    const Metric metric = opt.metric == "manhattan" ? Metric::Manhattan : Metric::Euclidean;
    DissimilaritySpace space = io::read_coords_csv(opt.coords, metric, mass);
    return {induced_triplet(space, policy), std::move(space), {}};
  }
  if (!opt.triplets.empty()) return {io::read_triplet_file(opt.triplets, mass), std::nullopt, {}};
  throw CLI::ValidationError("input", "one of --matrix, --coords, --triplets or --synth is required");
}

// Writes to the given path, "-" meaning standard output.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  fn(out);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"cohesion: relative proximity and community structure from triplet comparisons"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- compute ----
  auto compute_opt = std::make_shared<InputOptions>();
  auto compute_out = std::make_shared<std::string>("-");
  auto compute_format = std::make_shared<std::string>("csv");
  auto* compute = app.add_subcommand("compute", "cohesion matrix of the input space");
  add_input_options(*compute, *compute_opt);
  compute->add_option("--output", *compute_out, "output path ('-' = stdout)");
  compute->add_option("--format", *compute_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  compute->callback([compute_opt, compute_out, compute_format] {
    const LoadedInput in = load_input(*compute_opt);
    const CohesionMatrix C = cohesion_matrix(in.T, compute_opt->threads);
    with_output(*compute_out, [&](std::ostream& out) {
      if (*compute_format == "json")
        out << io::cohesion_json(C, in.T.masses()) << '\n';
      else
        io::write_matrix_csv(out, C.labels, C.values);
    });
  });

  // ---- pointlike ----
  auto pl_opt = std::make_shared<InputOptions>();
  auto pl_out = std::make_shared<std::string>("-");
  auto pl_cap = std::make_shared<std::size_t>(16);
  auto pl_partitions = std::make_shared<bool>(false);
  auto* pointlike =
      app.add_subcommand("pointlike", "enumerate point-like sets (and optionally partitions)");
  add_input_options(*pointlike, *pl_opt);
  pointlike->add_option("--output", *pl_out, "output path ('-' = stdout)");
  pointlike->add_option("--cap", *pl_cap, "subset-enumeration cap for weighted spaces");
  pointlike->add_flag("--partitions", *pl_partitions, "also list every point-like partition");
  pointlike->callback([pl_opt, pl_out, pl_cap, pl_partitions] {
    const LoadedInput in = load_input(*pl_opt);
    const PointLikeFamily family = enumerate_point_like(in.T, *pl_cap);
    std::string payload;
    if (*pl_partitions) {
      auto merged = nlohmann::json::parse(io::family_json(family, in.T.labels()));
      const auto partitions = point_like_partitions(family);
      merged.update(
          nlohmann::json::parse(io::partitions_json(partitions, in.T.labels())));
      payload = merged.dump(2);
    } else {
      payload = io::family_json(family, in.T.labels());
    }
    with_output(*pl_out, [&](std::ostream& out) { out << payload << '\n'; });
  });

  // ---- quotient ----
  auto q_opt = std::make_shared<InputOptions>();
  auto q_out = std::make_shared<std::string>("-");
  auto q_partition = std::make_shared<std::string>();
  auto q_format = std::make_shared<std::string>("json");
  auto* quot = app.add_subcommand("quotient", "collapse a point-like partition to weighted points");
  add_input_options(*quot, *q_opt);
  quot->add_option("--partition", *q_partition, "partition file: lines 'label block_id'")
      ->required();
  quot->add_option("--output", *q_out, "output path ('-' = stdout)");
  quot->add_option("--format", *q_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  quot->callback([q_opt, q_out, q_partition, q_format] {
    const LoadedInput in = load_input(*q_opt);
    const PointLikePartition partition = io::read_partition_file(*q_partition, in.T.labels());
    const QuotientSpace q = quotient(in.T, partition);
    const CohesionMatrix C = cohesion_matrix(q.space, q_opt->threads);
    with_output(*q_out, [&](std::ostream& out) {
      if (*q_format == "csv")
        io::write_matrix_csv(out, C.labels, C.values);
      else
        out << io::quotient_json(q, in.T.labels(), C) << '\n';
    });
  });

  // ---- communities ----
  auto c_opt = std::make_shared<InputOptions>();
  auto c_out = std::make_shared<std::string>("-");
  auto c_format = std::make_shared<std::string>("dot");
  auto c_threshold = std::make_shared<double>(-1.0);
  auto* communities = app.add_subcommand("communities", "thresholded strong/weak tie graph");
  add_input_options(*communities, *c_opt);
  communities->add_option("--output", *c_out, "output path ('-' = stdout)");
  communities->add_option("--format", *c_format, "dot | csv")
      ->check(CLI::IsMember({"dot", "csv"}));
  auto* thr = communities->add_option("--threshold", *c_threshold,
                                      "strong-tie threshold (default: half the mass-weighted "
                                      "mean self-cohesion)");
  communities->callback([c_opt, c_out, c_format, c_threshold, thr] {
    const LoadedInput in = load_input(*c_opt);
    const CohesionMatrix C = cohesion_matrix(in.T, c_opt->threads);
    const std::optional<double> threshold =
        thr->count() > 0 ? std::make_optional(*c_threshold) : std::nullopt;
    const CommunityGraph g = community_graph(C, in.T.masses(), threshold);
    with_output(*c_out, [&](std::ostream& out) {
      if (*c_format == "csv")
        io::write_communities_csv(out, g);
      else
        io::write_communities_dot(out, g);
    });
  });

  // ---- verify ----
  auto v_opt = std::make_shared<InputOptions>();
  auto v_out = std::make_shared<std::string>("-");
  auto v_oracle_cap = std::make_shared<std::size_t>(200);
  auto* verify = app.add_subcommand("verify", "run every structural check on the input space");
  add_input_options(*verify, *v_opt);
  verify->add_option("--output", *v_out, "output path for the JSON report ('-' = stdout)");
  verify->add_option("--oracle-cap", *v_oracle_cap,
                     "largest n for the kernel-vs-definition comparison");
  verify->callback([v_opt, v_out, v_oracle_cap, &exit_code] {
    const LoadedInput in = load_input(*v_opt);
    VerifyOptions options;
    options.oracle_cap = *v_oracle_cap;
    options.threads = v_opt->threads;
    const std::vector<CheckResult> results =
        in.space ? run_standard_checks(*in.space, tie_policy_of(*v_opt), options, in.outliers)
                 : run_standard_checks(in.T, options);
    for (const CheckResult& r : results)
      std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.name
                << " (max residual " << r.max_residual << ")\n";
    with_output(*v_out, [&](std::ostream& out) { out << io::check_results_json(results) << '\n'; });
    for (const CheckResult& r : results)
      if (!r.passed) exit_code = 1;
  });

  // ---- synth ----
  auto s_opt = std::make_shared<InputOptions>();
  auto s_out = std::make_shared<std::string>("-");
  auto s_mass_out = std::make_shared<std::string>();
  auto* synth = app.add_subcommand("synth", "write a generated configuration as coordinate CSV");
  add_input_options(*synth, *s_opt);
  synth->get_option("--synth")->required();
  synth->add_option("--output", *s_out, "coordinate CSV path ('-' = stdout)");
  synth->add_option("--mass-out", *s_mass_out, "also write the mass file");
  synth->callback([s_opt, s_out, s_mass_out] {
    const DissimilaritySpace space = generate(generator_spec(*s_opt));
    bool uniform = true;
    for (double v : space.p)
      if (std::abs(v - space.p.front()) > 1e-15) uniform = false;
    if (!uniform && s_mass_out->empty())
      throw std::runtime_error(
          "this configuration has non-uniform masses; pass --mass-out to keep them");
    with_output(*s_out, [&](std::ostream& out) { io::write_coords_csv(out, space); });
    if (!s_mass_out->empty())
      with_output(*s_mass_out, [&](std::ostream& out) { io::write_mass_file(out, space); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

}  // namespace cohesion
