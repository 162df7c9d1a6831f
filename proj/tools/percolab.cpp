// Command-line front end: graph generation, certification, percolation runs,
// lemma checks, threshold sweeps and theorem trials.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "percolab/certifier.hpp"
#include "percolab/edge_list.hpp"
#include "percolab/error.hpp"
#include "percolab/experiment.hpp"
#include "percolab/format.hpp"
#include "percolab/generators.hpp"
#include "percolab/lemma_lab.hpp"
#include "percolab/percolator.hpp"
#include "percolab/rng.hpp"
#include "percolab/serialize.hpp"

using namespace percolab;
using nlohmann::json;

namespace {

struct GraphArgs {
  std::string graph;
  std::string gen;
  std::size_t max_edges = GenerateLimits{}.max_edges;
};

struct ProfileArgs {
  double p = 0;
  std::optional<double> a;
  std::optional<double> b;
  bool sample_codegree = false;
};

void add_graph_options(CLI::App& cmd, GraphArgs& args) {
  auto* file = cmd.add_option("--graph", args.graph, "Edge-list file");
  auto* gen = cmd.add_option("--gen", args.gen, "Generator spec, e.g. gnp:n=30000,p=0.03,seed=1");
  file->excludes(gen);
  cmd.add_option("--max-edges", args.max_edges, "Refuse to generate more edges than this");
}

void add_profile_options(CLI::App& cmd, ProfileArgs& args) {
  cmd.add_option("--p", args.p, "Target density")->required();
  cmd.add_option("--a", args.a, "Degree slack a_n (tightest certifying value when omitted)");
  cmd.add_option("--b", args.b, "Co-degree slack b_n (tightest certifying value when omitted)");
  cmd.add_flag("--sample-codegree", args.sample_codegree, "Estimate the co-degree maximum by sampling");
}

Graph load_graph(const GraphArgs& args, std::string* description = nullptr) {
  if (!args.graph.empty()) {
    if (description) *description = "file:" + args.graph;
    return load_edge_list(args.graph);
  }
  if (args.gen.empty()) throw Error(Errc::invalid_argument, "one of --graph or --gen is required");
  const auto spec = parse_generator_spec(args.gen);
  if (description) *description = describe(spec);
  return generate(spec, GenerateLimits{args.max_edges});
}

PseudoRandomProfile build_profile(const Graph& g, const ProfileArgs& args) {
  CoDegreeOptions options;
  if (args.sample_codegree) options.bitset_max_n = 0, options.exact_work_cap = 0;
  if (args.a && args.b) return certify(g, args.p, *args.a, *args.b, options);
  auto profile = args.sample_codegree ? certify(g, args.p, 0, 0, options) : tight_profile(g, args.p, options);
  if (args.sample_codegree) {
    const double np = static_cast<double>(g.num_vertices()) * args.p;
    const auto range = degree_range(g);
    const double a = std::max(np - static_cast<double>(range.min), static_cast<double>(range.max) - np) + 1;
    const double b = static_cast<double>(profile.max_codegree) - np * args.p + 1;
    profile = with_slacks(profile, std::max(a, 0.0), std::max(b, 0.0));
  }
  if (args.a || args.b) profile = with_slacks(profile, args.a.value_or(profile.a_n), args.b.value_or(profile.b_n));
  return profile;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(Errc::io_error, "write to " + path + " failed");
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream item(token);
    long long v = -1;
    if (!(item >> v) || v < 0) throw Error(Errc::parse_error, "bad vertex '" + token + "'");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<Vertex> read_vertex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  std::vector<Vertex> out;
  long long v;
  while (in >> v) {
    if (v < 0) throw Error(Errc::parse_error, "negative vertex in " + path);
    out.push_back(static_cast<Vertex>(v));
  }
  if (!in.eof()) throw Error(Errc::parse_error, "non-numeric entry in " + path);
  return out;
}

std::vector<Vertex> random_subset(std::size_t n, std::size_t size, std::uint64_t seed) {
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "bad multiplier '" + token + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Site percolation on pseudo-random graphs"};
  app.require_subcommand(1);

  // generate
  GraphArgs gen_graph;
  std::string gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a graph and write it as an edge list");
  generate_cmd->add_option("--gen", gen_graph.gen, "Generator spec")->required();
  generate_cmd->add_option("--max-edges", gen_graph.max_edges, "Refuse to generate more edges than this");
  generate_cmd->add_option("--out", gen_out, "Output path (stdout when omitted)");

  // certify
  GraphArgs cert_graph;
  ProfileArgs cert_profile;
  std::string cert_out;
  auto* certify_cmd = app.add_subcommand("certify", "Measure degree and co-degree statistics against A1-A3");
  add_graph_options(*certify_cmd, cert_graph);
  add_profile_options(*certify_cmd, cert_profile);
  double hd_beta = -1;
  std::size_t hd_trials = HdOptions{}.trials;
  certify_cmd->add_option("--hd-beta", hd_beta, "Also run the hereditary degree check at this beta");
  certify_cmd->add_option("--hd-trials", hd_trials, "Uniform subsets for the hereditary degree check");
  certify_cmd->add_option("--out", cert_out, "JSON output path");

  // percolate
  GraphArgs perc_graph;
  double perc_rho = 0;
  std::uint64_t perc_seed = 0;
  std::string perc_out;
  bool perc_summary = false;
  auto* percolate_cmd = app.add_subcommand("percolate", "Run one DFS site-percolation exploration");
  add_graph_options(*percolate_cmd, perc_graph);
  percolate_cmd->add_option("--rho", perc_rho, "Retention probability")->required();
  percolate_cmd->add_option("--seed", perc_seed, "Seed of the per-vertex uniforms");
  percolate_cmd->add_option("--emit,--out", perc_out, "Components JSON path (stdout when omitted)");
  percolate_cmd->add_flag("--summary", perc_summary, "Print a one-line summary instead of the JSON");

  // lemma
  GraphArgs lemma_graph;
  ProfileArgs lemma_profile;
  std::string which;
  std::string set_text, set_file;
  double u_fraction = -1;
  std::uint64_t u_seed = 0;
  std::size_t m = 2;
  double alpha0 = 0.5, alpha = 0.5, epsilon = 0.3, c_low = 0.027;
  std::string mode = "exhaustive";
  std::size_t samples = ExpansionOptions{}.sampled_sets;
  long long root = -1;
  std::size_t stream_n = 0, trials = 1000;
  double stream_rho = 0;
  std::uint64_t lemma_seed = 0;
  std::string lemma_out;
  auto* lemma_cmd = app.add_subcommand("lemma", "Check one bound numerically");
  lemma_cmd->add_option("--which", which, "Bound to check")
      ->required()
      ->check(CLI::IsMember({"expansion", "variance", "xi", "outer", "incl-excl", "binomial"}));
  add_graph_options(*lemma_cmd, lemma_graph);
  lemma_cmd->add_option("--p", lemma_profile.p, "Target density");
  lemma_cmd->add_option("--a", lemma_profile.a, "Degree slack a_n");
  lemma_cmd->add_option("--b", lemma_profile.b, "Co-degree slack b_n");
  lemma_cmd->add_flag("--sample-codegree", lemma_profile.sample_codegree, "Estimate the co-degree maximum by sampling");
  lemma_cmd->add_option("--set", set_text, "Comma-separated vertex set");
  lemma_cmd->add_option("--set-file", set_file, "File of whitespace-separated vertices");
  lemma_cmd->add_option("--u-fraction", u_fraction, "Random set of floor(fraction * n) vertices");
  lemma_cmd->add_option("--u-seed", u_seed, "Seed of the random set");
  lemma_cmd->add_option("--root", root, "Outer complement: grow C by BFS from this vertex");
  lemma_cmd->add_option("--m", m, "Expansion: set size");
  lemma_cmd->add_option("--alpha0", alpha0, "Expansion: alpha_0");
  lemma_cmd->add_option("--c", c_low, "Expansion: lower end of the m p window");
  lemma_cmd->add_option("--mode", mode, "Expansion: exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  lemma_cmd->add_option("--samples", samples, "Expansion: random sets in sampled mode");
  lemma_cmd->add_option("--alpha", alpha, "Xi: alpha");
  lemma_cmd->add_option("--epsilon", epsilon, "Outer complement and binomial tails: epsilon");
  lemma_cmd->add_option("--n", stream_n, "Binomial tails: stream length");
  lemma_cmd->add_option("--rho", stream_rho, "Binomial tails: success probability");
  lemma_cmd->add_option("--trials", trials, "Binomial tails: number of streams");
  lemma_cmd->add_option("--seed", lemma_seed, "Seed for sampled checks");
  lemma_cmd->add_option("--out", lemma_out, "JSON output path");

  // sweep
  GraphArgs sweep_graph;
  ProfileArgs sweep_profile;
  std::string grid_text = "0.5,0.7,0.9,1.1,1.3,1.5";
  std::size_t sweep_seeds = 200;
  std::uint64_t sweep_base = 0;
  double sweep_eps = 0.3;
  std::optional<double> sweep_k;
  bool clip = false;
  std::string sweep_csv, sweep_json;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep rho = c / (n p) over a grid of multipliers");
  add_graph_options(*sweep_cmd, sweep_graph);
  add_profile_options(*sweep_cmd, sweep_profile);
  sweep_cmd->add_option("--grid", grid_text, "Comma-separated multipliers c");
  sweep_cmd->add_option("--seeds", sweep_seeds, "Number of seeds");
  sweep_cmd->add_option("--base-seed", sweep_base, "First seed");
  sweep_cmd->add_option("--epsilon", sweep_eps, "epsilon for the giant threshold");
  sweep_cmd->add_option("--k", sweep_k, "Constant K in L2 <= K (ln n)^2 (default 4 / eps^2)");
  sweep_cmd->add_flag("--clip-rho", clip, "Clip rho >= 1 to 1");
  sweep_cmd->add_option("--out", sweep_csv, "CSV output path (stdout when omitted)");
  sweep_cmd->add_option("--json", sweep_json, "JSON aggregate output path");

  // trial
  GraphArgs trial_graph;
  ProfileArgs trial_profile;
  std::string trial_kind;
  std::size_t trial_seeds = 200;
  std::uint64_t trial_base = 0;
  double trial_eps = 0.3;
  std::optional<double> trial_k, trial_beta;
  bool no_uniqueness = false, no_outer = false;
  std::string trial_out;
  auto* trial_cmd = app.add_subcommand("trial", "Theorem trial at rho = (1 +/- eps) / (n p)");
  trial_cmd->add_option("kind", trial_kind, "super, sub or hd")->required()->check(CLI::IsMember({"super", "sub", "hd"}));
  add_graph_options(*trial_cmd, trial_graph);
  add_profile_options(*trial_cmd, trial_profile);
  trial_cmd->add_option("--seeds", trial_seeds, "Number of seeds");
  trial_cmd->add_option("--base-seed", trial_base, "First seed");
  trial_cmd->add_option("--epsilon", trial_eps, "epsilon");
  trial_cmd->add_option("--k", trial_k, "Constant K in the (ln n)^2 bounds (default 4 / eps^2)");
  trial_cmd->add_option("--beta", trial_beta, "HD trial: beta (default eps^5)");
  trial_cmd->add_flag("--no-uniqueness", no_uniqueness, "Supercritical: do not require A3");
  trial_cmd->add_flag("--no-outer", no_outer, "Skip the per-run outer-complement check");
  trial_cmd->add_option("--out", trial_out, "JSON output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate_cmd) {
      const auto spec = parse_generator_spec(gen_graph.gen);
      const auto g = generate(spec, GenerateLimits{gen_graph.max_edges});
      std::ostringstream text;
      write_edge_list(g, text, {describe(spec)});
      write_output(gen_out, text.str());
      if (!gen_out.empty())
        std::cerr << "n=" << g.num_vertices() << " m=" << g.num_edges() << " -> " << gen_out << '\n';
      return 0;
    }

    if (*certify_cmd) {
      const auto g = load_graph(cert_graph);
      const auto profile = build_profile(g, cert_profile);
      json out = to_json(profile);
      if (hd_beta >= 0) {
        HdOptions hd;
        hd.beta = hd_beta;
        hd.trials = hd_trials;
        out["hd"] = to_json(hd_check(g, cert_profile.p, hd));
      }
      write_output(cert_out, document(std::move(out)).dump(2) + "\n");
      return 0;
    }

    if (*percolate_cmd) {
      const auto g = load_graph(perc_graph);
      const auto outcome = dfs_percolate(g, BernoulliStream::uniform(perc_rho, perc_seed));
      if (!perc_summary) {
        write_output(perc_out, document(to_json(outcome)).dump(2) + "\n");
      } else {
        const auto top = largest_two(outcome);
        std::ostringstream text;
        text << "retained=" << outcome.retained.size() << " components=" << outcome.components.size()
             << " L1=" << top.first << " L2=" << top.second << '\n';
        write_output(perc_out, text.str());
      }
      return 0;
    }

    if (*lemma_cmd) {
      LemmaReport report;
      if (which == "binomial") {
        BinomialTailOptions options;
        options.trials = trials;
        options.seed = lemma_seed;
        report = binomial_stream_check(stream_n, stream_rho, epsilon, options);
      } else {
        const auto g = load_graph(lemma_graph);
        std::vector<Vertex> set;
        if (!set_text.empty()) set = parse_vertex_list(set_text);
        if (!set_file.empty()) set = read_vertex_file(set_file);
        if (u_fraction >= 0) set = random_subset(g.num_vertices(), floor_count(u_fraction * g.num_vertices()), u_seed);

        if (which == "incl-excl") {
          report = inclusion_exclusion_check(g, set);
        } else {
          if (!(lemma_profile.p > 0)) throw Error(Errc::invalid_argument, "--p is required for this check");
          const auto profile = build_profile(g, lemma_profile);
          if (which == "expansion") {
            ExpansionOptions options;
            options.m = m;
            options.alpha0 = alpha0;
            options.c = c_low;
            options.mode = mode == "sampled" ? ExpansionMode::sampled : ExpansionMode::exhaustive;
            options.sampled_sets = samples;
            options.seed = lemma_seed;
            report = expansion_check(g, profile, options);
          } else if (which == "variance") {
            report = variance_bound_check(g, set, profile);
          } else if (which == "xi") {
            report = xi_count_check(g, set, profile, alpha);
          } else {
            if (root >= 0)
              set = grow_connected_set(g, static_cast<Vertex>(root), ceil_count(epsilon / profile.p));
            report = outer_complement_check(g, set, profile, epsilon);
          }
        }
      }
      write_output(lemma_out, document(to_json(report)).dump(2) + "\n");
      return report.passed ? 0 : 1;
    }

    if (*sweep_cmd) {
      std::string description;
      const auto g = load_graph(sweep_graph, &description);
      const auto profile = build_profile(g, sweep_profile);
      SweepConfig config;
      config.p = sweep_profile.p;
      config.multipliers = parse_grid(grid_text);
      config.seeds = seed_range(sweep_base, sweep_seeds);
      config.epsilon = sweep_eps;
      config.clip_rho = clip;
      config.log_constant = sweep_k;
      const auto result = run_sweep(g, profile, config, description);
      if (sweep_csv.empty() || sweep_csv == "-")
        emit_csv(result, std::cout);
      else
        emit_csv(result, std::filesystem::path(sweep_csv));
      if (!sweep_json.empty()) emit_json(result, std::filesystem::path(sweep_json));
      return 0;
    }

    if (*trial_cmd) {
      const auto g = load_graph(trial_graph);
      const auto profile = build_profile(g, trial_profile);
      TrialOptions options;
      options.epsilon = trial_eps;
      options.seeds = seed_range(trial_base, trial_seeds);
      options.log_constant = trial_k;
      options.beta = trial_beta;
      options.assert_uniqueness = !no_uniqueness;
      options.check_outer_complement = !no_outer;
      TrialSummary summary;
      if (trial_kind == "super")
        summary = supercritical_trial(g, profile, options);
      else if (trial_kind == "sub")
        summary = subcritical_trial(g, profile, options);
      else
        summary = hd_uniqueness_trial(g, profile, options);
      write_output(trial_out, document(to_json(summary)).dump(2) + "\n");
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
