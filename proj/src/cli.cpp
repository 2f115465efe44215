#include "edgex/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgex/combinatorics.hpp"
#include "edgex/diagnostics.hpp"
#include "edgex/error.hpp"
#include "edgex/io.hpp"
#include "edgex/models.hpp"
#include "edgex/weights.hpp"

namespace edgex::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelOptions {
  std::string family = "single-edge";
  Step steps = 100;
  std::optional<double> poisson_steps;
  double alpha = 1.0;
  double sigma = 0.5;
  double tau = 1.0;
  double trunc_eps = 0.0;
  double dust_rate = 0.0;
  double baseline_p = 0.5;
  std::uint64_t seed = 0;
  bool clip_q = false;
  double q_floor = 1e-12;
  std::vector<double> weights;

  ModelSpec spec() const {
    ModelSpec s;
    s.family = parse_model_family(family);
    s.ggp = GGPParams{alpha, sigma, tau};
    s.num_steps = steps;
    s.dust_rate = dust_rate;
    s.baseline_edge_prob = baseline_p;
    s.seed = seed;
    s.trunc_eps = trunc_eps;
    s.q_floor = q_floor;
    s.clip_q = clip_q;
    return s;
  }
};

const std::vector<std::string> kFamilies = {"single-edge", "bernoulli", "poisson-trait", "egpf",
                                            "dense"};

void add_model_options(CLI::App& sub, ModelOptions& o) {
  sub.add_option("--family", o.family, "Model family")
      ->check(CLI::IsMember(kFamilies))
      ->capture_default_str();
  sub.add_option("--steps", o.steps, "Number of steps N")->capture_default_str();
  sub.add_option("--poisson-steps", o.poisson_steps,
                 "Draw N ~ Poisson(rate) instead of using --steps");
  sub.add_option("--alpha", o.alpha, "GGP mass parameter")->capture_default_str();
  sub.add_option("--sigma", o.sigma, "GGP discount in [0,1)")->capture_default_str();
  sub.add_option("--tau", o.tau, "GGP exponential tilt")->capture_default_str();
  sub.add_option("--trunc-eps", o.trunc_eps,
                 "Atom truncation threshold (0: relative discarded mass 1e-4)")
      ->capture_default_str();
  sub.add_option("--dust-rate", o.dust_rate, "Never-repeating edges per step (egpf)")
      ->capture_default_str();
  sub.add_option("--baseline-p", o.baseline_p, "Pair probability (dense)")
      ->capture_default_str();
  sub.add_option("--seed", o.seed, "Base seed")->envname("EDGEX_SEED")->capture_default_str();
  sub.add_flag("--clip-q", o.clip_q, "Cap inclusion probabilities above 1 instead of failing");
  sub.add_option("--q-floor", o.q_floor, "Skip pairs with inclusion probability below this")
      ->capture_default_str();
  sub.add_option("--weights", o.weights, "Fixed atom weights instead of a GGP draw")
      ->delimiter(',');
}

json model_config(const ModelSpec& spec, const ModelOptions& o) {
  json j;
  j["family"] = std::string(to_string(spec.family));
  j["steps"] = spec.num_steps;
  if (o.poisson_steps) j["poisson_steps"] = *o.poisson_steps;
  j["seed"] = spec.seed;
  switch (spec.family) {
    case ModelFamily::DenseBaseline:
      j["baseline_p"] = spec.baseline_edge_prob;
      return j;
    case ModelFamily::EGPFConstruction:
      j["dust_rate"] = spec.dust_rate;
      [[fallthrough]];
    case ModelFamily::BernoulliFrequency:
      j["q_floor"] = spec.q_floor;
      j["clip_q"] = spec.clip_q;
      break;
    default:
      break;
  }
  if (o.weights.empty()) {
    j["alpha"] = spec.ggp.alpha;
    j["sigma"] = spec.ggp.sigma;
    j["tau"] = spec.ggp.tau;
    j["trunc_eps"] = spec.resolved_trunc_eps();
  } else {
    j["weights"] = o.weights;
  }
  return j;
}

WeightMeasure resolve_weights(const ModelSpec& spec, const ModelOptions& o) {
  if (spec.family == ModelFamily::DenseBaseline) return {};
  if (!o.weights.empty()) return WeightMeasure::fixed(o.weights);
  return sample_weights(spec);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot open '" + path + "' for writing");
  return os;
}

json provenance(const json& config) {
  return json{{"version", std::string(kVersion)}, {"config", config}};
}

void write_csv_preamble(std::ostream& os, const json& config) {
  os << "# " << kVersion << "\n# config: " << config.dump() << '\n';
}

int do_sample(const ModelOptions& o, const std::string& out_path,
              const std::string& weights_path, std::ostream& err) {
  ModelSpec spec = o.spec();
  spec.validate();
  if (o.poisson_steps) spec.num_steps = sample_poisson_steps(*o.poisson_steps, spec.seed);
  const auto w = resolve_weights(spec, o);
  const json config = model_config(spec, o);
  json header;
  header["generator"] = provenance(config);
  if (spec.family != ModelFamily::DenseBaseline) {
    header["weights"] = json{{"atoms", w.size()},
                             {"total_mass", w.total_mass()},
                             {"truncation_threshold", w.truncation_threshold()},
                             {"estimated_truncated_mass", w.estimated_truncated_mass()}};
  }
  if (spec.family == ModelFamily::BernoulliFrequency ||
      spec.family == ModelFamily::EGPFConstruction) {
    const double missed =
        bernoulli_missed_edge_rate(spec, w) * static_cast<double>(spec.num_steps);
    header["expected_missed_edges"] = missed;
    if (spec.clip_q && !w.empty()) {
      const auto& ws = w.weights();
      const double qmax = std::max(ws[0] * ws[0], ws.size() > 1 ? 2.0 * ws[0] * ws[1] : 0.0);
      if (qmax > 1.0) {
        err << "warning: inclusion probabilities up to " << qmax
            << " clipped below 1; the sampled law is not the frequency model\n";
      }
    }
  }
  const auto g = sample(spec, w);
  auto os = open_output(out_path);
  write_jsonl(os, g, header);
  if (!weights_path.empty()) {
    auto ws = open_output(weights_path);
    write_csv_preamble(ws, config);
    write_weights_csv(ws, w);
  }
  return kOk;
}

json fit_json(const GrowthTrace& t, EdgeCount count, Count min_nodes) {
  try {
    const auto est = fit_exponent(t, count, min_nodes);
    return json{{"slope", est.slope},
                {"stderr", est.stderr_slope},
                {"r2", est.r_squared},
                {"fit_range", {est.fit_range.first, est.fit_range.second}},
                {"rows_used", est.rows_used}};
  } catch (const CapacityError& e) {
    return json{{"error", e.what()}};
  }
}

int do_diagnose(const std::string& in_path, const std::string& csv_path,
                const std::string& report_path, Count min_nodes, std::ostream& out) {
  std::ifstream is(in_path, std::ios::binary);
  if (!is) throw UsageError("cannot open '" + in_path + "'");
  json source_header;
  const auto g = read_jsonl(is, &source_header);
  const auto trace = growth_trace(g);
  const json config{{"min_nodes", min_nodes},
                    {"source", source_header.value("generator", json(nullptr))}};
  json report = fit_json(trace, EdgeCount::Multiplicity, min_nodes);
  if (report.contains("error")) throw ParameterError(report["error"].get<std::string>());
  report["edge_count"] = "multiplicity";
  report["distinct"] = fit_json(trace, EdgeCount::Distinct, min_nodes);
  const auto degrees = degree_summary(g);
  report["num_steps"] = g.num_steps();
  report["active_nodes"] = trace.rows.empty() ? 0 : trace.rows.back().active_nodes;
  report["max_degree"] = degrees.max_degree;
  report["generator"] = provenance(config);
  if (!csv_path.empty()) {
    auto os = open_output(csv_path);
    write_csv_preamble(os, config);
    write_growth_csv(os, trace);
  }
  if (!report_path.empty()) {
    auto os = open_output(report_path);
    os << report.dump(2) << '\n';
  } else {
    out << report.dump(2) << '\n';
  }
  return kOk;
}

std::string format_image(const StepPermutation& pi) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < pi.image().size(); ++i) os << (i ? "," : "") << pi.image()[i];
  os << ']';
  return os.str();
}

int do_verify(const ModelOptions& o, const std::string& suite, std::size_t samples,
              const std::vector<Step>& perm, std::ostream& out) {
  const ModelSpec spec = o.spec();
  spec.validate();
  bool all_passed = true;

  if (suite == "exchangeability" || suite == "all") {
    ModelOptions fixture = o;
    if (fixture.weights.empty()) fixture.weights = {0.7, 0.3};
    const auto w = WeightMeasure::fixed(fixture.weights);
    std::vector<StepPermutation> perms{StepPermutation::identity(spec.num_steps)};
    if (!perm.empty()) {
      perms.emplace_back(perm);
    } else if (spec.num_steps >= 2) {
      perms.push_back(StepPermutation::transposition(spec.num_steps, 1, spec.num_steps));
    }
    for (const auto& pi : perms) {
      const auto r = exchangeability_test(spec, w, samples, pi);
      all_passed = all_passed && r.passed;
      out << (r.passed ? "PASS" : "FAIL") << " exchangeability family=" << o.family
          << " steps=" << spec.num_steps << " pi=" << format_image(pi)
          << " chi2=" << r.statistic << " dof=" << r.dof << " p=" << r.p_value;
      if (r.exact_max_discrepancy) out << " exact_max_discrepancy=" << *r.exact_max_discrepancy;
      out << " distinct=" << r.distinct_collections << '\n';
    }
  }
  if (suite == "projectivity" || suite == "all") {
    const auto w = resolve_weights(spec, o);
    const auto r = projectivity_test(spec, w);
    all_passed = all_passed && r.passed();
    out << (r.passed() ? "PASS" : "FAIL") << " projectivity family=" << o.family
        << " steps=" << spec.num_steps << " mismatched_prefixes=" << r.mismatches.size()
        << '\n';
  }
  return all_passed ? kOk : kVerificationFailed;
}

int do_enumerate(Step n, const std::string& kind_name, std::size_t max_blocks, Count max_mult,
                 const std::string& out_path, std::ostream& out) {
  const auto kind = parse_structure_kind(kind_name);
  const auto collections = enumerate_step_collections(n, kind, max_blocks, max_mult);
  const json config{{"n", n}, {"kind", kind_name}, {"max_blocks", max_blocks},
                    {"max_mult", max_mult}};
  json doc = provenance(config);
  doc["count"] = collections.size();
  doc["collections"] = json::array();
  for (const auto& c : collections) doc["collections"].push_back(to_json(c));
  if (out_path.empty()) {
    out << doc.dump() << '\n';
  } else {
    auto os = open_output(out_path);
    os << doc.dump() << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge-exchangeable random graph sampler and diagnostics", "edgex"};
  app.set_config("--config", "", "TOML config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ModelOptions sample_opts;
  std::string sample_out;
  std::string weights_out;
  auto* sample_cmd = app.add_subcommand("sample", "Sample a step-augmented graph to JSONL");
  add_model_options(*sample_cmd, sample_opts);
  sample_cmd->add_option("--out", sample_out, "Output JSONL path")->required();
  sample_cmd->add_option("--weights-out", weights_out, "Optional atom weight CSV");

  std::string diag_in;
  std::string diag_csv;
  std::string diag_report;
  Count min_nodes = kMinFitNodes;
  auto* diag_cmd = app.add_subcommand("diagnose", "Growth trace and exponent fit of a graph");
  diag_cmd->add_option("--in", diag_in, "Input JSONL graph")->required();
  diag_cmd->add_option("--out", diag_csv, "Growth trace CSV");
  diag_cmd->add_option("--report", diag_report, "JSON report (stdout when omitted)");
  diag_cmd->add_option("--min-nodes", min_nodes, "Fit only rows with this many active nodes")
      ->capture_default_str();

  ModelOptions verify_opts;
  verify_opts.steps = 3;
  std::string suite = "all";
  std::size_t samples = 100000;
  std::vector<Step> perm;
  auto* verify_cmd = app.add_subcommand("verify", "Exchangeability and projectivity checks");
  add_model_options(*verify_cmd, verify_opts);
  verify_cmd->add_option("--suite", suite, "exchangeability | projectivity | all")
      ->check(CLI::IsMember({"exchangeability", "projectivity", "all"}))
      ->capture_default_str();
  verify_cmd->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  verify_cmd->add_option("--permutation", perm, "Step permutation image, e.g. 2,1,3")
      ->delimiter(',');

  Step enum_n = 3;
  std::string enum_kind = "partition";
  std::size_t max_blocks = 6;
  Count max_mult = 2;
  std::string enum_out;
  auto* enum_cmd = app.add_subcommand("enumerate", "List all step collections of [n]");
  enum_cmd->add_option("--n", enum_n, "Number of steps (<= 6)")->capture_default_str();
  enum_cmd->add_option("--kind", enum_kind, "partition | feature | trait")
      ->check(CLI::IsMember({"partition", "feature", "trait"}))
      ->capture_default_str();
  enum_cmd->add_option("--max-blocks", max_blocks, "Maximum number of blocks")
      ->capture_default_str();
  enum_cmd->add_option("--max-mult", max_mult, "Per-step multiplicity cap (trait)")
      ->capture_default_str();
  enum_cmd->add_option("--out", enum_out, "Output JSON path (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sample_cmd) return do_sample(sample_opts, sample_out, weights_out, err);
    if (*diag_cmd) return do_diagnose(diag_in, diag_csv, diag_report, min_nodes, out);
    if (*verify_cmd) return do_verify(verify_opts, suite, samples, perm, out);
    if (*enum_cmd) return do_enumerate(enum_n, enum_kind, max_blocks, max_mult, enum_out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParameter;
  }
  return kUsage;
}

}  // namespace edgex::cli
