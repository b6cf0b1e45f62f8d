// Command-line front end: information measures on ensemble files, zero-error
// capacity profiles, estimation feasibility verdicts, closed-loop simulation
// traces, and packing witnesses.
//
// Exit codes: 0 success; 1 run finished but the success predicate failed;
// 2 user error (bad file, bad flag value, unknown variable); 3 internal
// invariant violation; 4 search budget exceeded (partial results emitted);
// 5 infeasible configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nonstoch/channel.hpp>
#include <nonstoch/ensemble.hpp>
#include <nonstoch/errors.hpp>
#include <nonstoch/estimation.hpp>
#include <nonstoch/info.hpp>
#include <nonstoch/json_io.hpp>

using nlohmann::json;
using namespace nonstoch;

namespace {

constexpr unsigned kProfileDepth = 3;   // estimate-check analysis depth
constexpr unsigned kCoderTauMax = 8;

std::string hex16(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json file_stamp(const std::string& path) {
  return json{{"path", path}, {"fnv1a64", hex16(fnv1a64_file(path))}};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

json blocks_to_json(const Partition& partition) {
  json blocks = json::array();
  for (const AbstractSet& block : partition.blocks) {
    json b = json::array();
    for (const Value& v : std::get<ValueSet>(block)) b.push_back(v.str());
    blocks.push_back(std::move(b));
  }
  return blocks;
}

TransmitPolicy parse_policy(const std::string& name, std::uint64_t seed) {
  if (name == "first") return FirstPolicy{};
  if (name == "adversarial") return max_output_policy();
  if (name == "uniform") return SeededUniformPolicy{seed};
  throw InvalidArgument("unknown policy '" + name +
                        "' (expected first|adversarial|uniform)");
}

NoisePolicy parse_noise_policy(const std::string& name, std::uint64_t seed) {
  if (name == "zero") return ZeroNoise{};
  if (name == "adversarial") return MaxNoise{};
  if (name == "uniform") return SeededUniformNoise{seed};
  throw InvalidArgument("unknown noise policy '" + name +
                        "' (expected zero|adversarial|uniform)");
}

bool graph_is_complete(const Graph& g) {
  const std::size_t n = g.vertex_count();
  return g.edge_count() == n * (n - 1) / 2;
}

int cmd_info(const std::string& ensemble_path, const std::string& x,
             const std::string& y, bool all_measures,
             const std::string& out_path) {
  const Ensemble e = ensemble_from_json(read_file(ensemble_path));
  const Partition overlap =
      overlap_partition(RangeFamily::from(conditional_family(e, x, {y})));
  const Partition taxicab = taxicab_partition(joint_range(e, {x, y}));
  const Bits istar = maximin_info(e, x, y);

  json report;
  report["Istar"] = istar.value();
  report["overlap_blocks"] = blocks_to_json(overlap);
  report["taxicab_blocks"] = blocks_to_json(taxicab);
  json provenance = json::object();
  for (const auto& [label, index] : overlap.provenance)
    provenance[label.str()] = index;
  report["provenance"] = std::move(provenance);
  if (all_measures) {
    report["H0_x"] = hartley(marginal_range(e, x)).value();
    report["H0_y"] = hartley(marginal_range(e, y)).value();
    report["I0_xy"] = zero_info(AbstractSet(marginal_range(e, x)),
                                RangeFamily::from(conditional_family(e, x, {y})))
                          .value();
    report["I0_yx"] = zero_info(AbstractSet(marginal_range(e, y)),
                                RangeFamily::from(conditional_family(e, y, {x})))
                          .value();
    report["T_klir"] = klir_transmission(e, x, y).value();
  }
  report["input_hashes"] = {{"ensemble", file_stamp(ensemble_path)}};
  emit(report.dump(2) + "\n", out_path);
  return 0;
}

int cmd_channel(const std::string& channel_path, unsigned t_max, bool csv,
                bool witness, const std::string& graph_export,
                const std::string& out_path) {
  const Channel channel = channel_from_json(read_file(channel_path));
  if (!graph_export.empty())
    write_file(graph_export, graph_to_adjacency_text(confusability_graph(channel)));

  CapacityProfile profile;
  bool budget_hit = false;
  std::string budget_note;
  try {
    profile = c0_lower_profile(channel, t_max);
  } catch (const ProfileBudgetExceeded& e) {
    profile = e.partial();
    budget_hit = true;
    budget_note = e.what();
  }

  if (csv) {
    emit(profile_to_csv(profile), out_path);
    return budget_hit ? 4 : 0;
  }

  json report;
  json rows = json::array();
  for (const auto& record : profile.records) {
    rows.push_back({{"tau", record.tau},
                    {"alpha", record.alpha},
                    {"rate_bits", record.rate_bits}});
  }
  report["rows"] = std::move(rows);
  report["best_rate_bits"] = profile.best_rate_bits;
  if (budget_hit) report["budget_exceeded"] = budget_note;
  if (witness && !profile.records.empty()) {
    unsigned best_tau = profile.records.front().tau;
    for (const auto& record : profile.records) {
      if (record.rate_bits == profile.best_rate_bits) {
        best_tau = record.tau;
        break;
      }
    }
    const CodebookWitness cw = codebook_witness(channel, best_tau);
    json codebook = json::array();
    for (const Value& f : cw.codebook) codebook.push_back(f.str());
    report["witness"] = {{"tau", cw.tau},
                         {"codebook", std::move(codebook)},
                         {"maximin_bits", cw.maximin_bits.value()}};
  }
  report["input_hashes"] = {{"channel", file_stamp(channel_path)}};
  emit(report.dump(2) + "\n", out_path);
  return budget_hit ? 4 : 0;
}

int cmd_estimate_check(const std::string& plant_path,
                       const std::string& channel_path, double rho,
                       const std::string& out_path) {
  const PlantModel plant = plant_from_json(read_file(plant_path));
  const Channel channel = channel_from_json(read_file(channel_path));

  CapacityProfile profile;
  try {
    profile = c0_lower_profile(channel, kProfileDepth);
  } catch (const ProfileBudgetExceeded& e) {
    profile = e.partial();  // best-effort lower bound
  }
  // A complete confusability graph stays complete under strong powers, so
  // the zero-error capacity is exactly zero.
  std::optional<double> c0_known;
  if (graph_is_complete(confusability_graph(channel))) c0_known = 0.0;

  const FeasibilityVerdict verdict =
      feasibility_check(plant, rho, profile.best_rate_bits, c0_known);

  json report;
  report["verdict"] = to_string(verdict.kind);
  report["H_rho_bits"] = verdict.h_rho_bits;
  report["c0_lower_bits"] = profile.best_rate_bits;
  if (c0_known) report["c0_known_bits"] = *c0_known;
  report["tau"] = nullptr;
  report["codebook_size"] = nullptr;
  if (verdict.kind == Feasibility::kAchievable) {
    try {
      const CoderEstimator coder =
          build_coder_estimator(plant, channel, rho, kCoderTauMax);
      report["tau"] = coder.tau;
      report["codebook_size"] = coder.codebook.size();
    } catch (const InfeasibleError&) {
      // Achievable in principle; no block length within the search depth.
    }
  }
  report["input_hashes"] = {{"plant", file_stamp(plant_path)},
                            {"channel", file_stamp(channel_path)}};
  emit(report.dump(2) + "\n", out_path);
  return 0;
}

int cmd_estimate_run(const std::string& plant_path,
                     const std::string& channel_path, double rho,
                     const std::string& x0_csv, unsigned t_end,
                     const std::string& policy_name,
                     std::optional<double> noise,
                     const std::string& noise_policy_name, std::uint64_t seed,
                     const std::string& out_path) {
  PlantModel plant = plant_from_json(read_file(plant_path));
  const Channel channel = channel_from_json(read_file(channel_path));

  std::vector<double> coords;
  std::stringstream ss(x0_csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      coords.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw InvalidArgument("bad x0 component '" + token + "'");
    }
  }
  if (static_cast<int>(coords.size()) != plant.dimension())
    throw InvalidArgument("x0 needs one component per state dimension");
  Eigen::VectorXd x0(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) x0[i] = coords[i];

  const TransmitPolicy policy = parse_policy(policy_name, seed);
  const CoderEstimator coder =
      build_coder_estimator(plant, channel, rho, kCoderTauMax);

  Trace trace;
  if (noise) {
    plant.disturbance_bound = *noise;
    trace = simulate_disturbed(plant, coder, channel, policy, x0,
                               parse_noise_policy(noise_policy_name, seed),
                               t_end);
  } else {
    trace = simulate_noiseless(plant, coder, channel, policy, x0, t_end);
  }

  std::ostringstream os;
  os << "# plant " << plant_path << " fnv1a64=" << hex16(fnv1a64_file(plant_path))
     << "\n# channel " << channel_path
     << " fnv1a64=" << hex16(fnv1a64_file(channel_path)) << "\n";
  os << trace_to_csv(trace);
  emit(os.str(), out_path);

  const double initial = trace.rows.front().scaled_error;
  const double final_err = trace.rows.back().scaled_error;
  return final_err < initial ? 0 : 1;
}

int cmd_witness(const std::string& eigs_csv, double rho, double eps,
                unsigned tau, double radius, const std::string& out_path) {
  std::vector<std::complex<double>> eigs;
  std::stringstream ss(eigs_csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      eigs.emplace_back(std::stod(token), 0.0);
    } catch (const std::exception&) {
      throw InvalidArgument("bad eigenvalue '" + token + "'");
    }
  }
  if (eigs.empty()) throw InvalidArgument("need at least one eigenvalue");

  const WitnessPacking packing = necessity_witness(eigs, rho, eps, tau, radius);
  json report;
  report["k"] = packing.cell_counts;
  report["count"] = packing.total;
  report["bound_bits"] = packing.bound_bits;
  report["epsilon"] = packing.epsilon;
  report["tau"] = packing.tau;
  report["l"] = packing.radius;
  emit(report.dump(2) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonstochastic information, zero-error coding, and quantized "
               "state estimation"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized policies")
      ->capture_default_str();

  // info
  auto* info = app.add_subcommand("info", "information measures of an ensemble");
  std::string info_file, info_x, info_y, info_out;
  bool all_measures = false;
  info->add_option("ensemble", info_file, "ensemble JSON file")->required();
  info->add_option("--x", info_x, "first variable")->required();
  info->add_option("--y", info_y, "second variable")->required();
  info->add_flag("--all-measures", all_measures,
                 "include Hartley, zero-information, and transmission fields");
  info->add_option("--out", info_out, "write the report here instead of stdout");

  // channel
  auto* channel = app.add_subcommand("channel", "zero-error capacity profile");
  std::string channel_file, channel_out, graph_export;
  unsigned t_max = 1;
  bool csv = false, witness_dump = false;
  channel->add_option("channel", channel_file, "channel JSON file")->required();
  channel->add_option("--tmax", t_max, "largest block length")
      ->required()
      ->check(CLI::PositiveNumber);
  channel->add_flag("--csv", csv, "emit the profile as CSV");
  channel->add_flag("--witness", witness_dump,
                    "include the best codebook witness");
  channel->add_option("--graph-export", graph_export,
                      "write the confusability graph as adjacency text");
  channel->add_option("--out", channel_out, "output path");

  // estimate-check
  auto* check = app.add_subcommand("estimate-check",
                                   "feasibility verdict for a plant/channel pair");
  std::string check_plant, check_channel, check_out;
  double check_rho = 1.0;
  check->add_option("plant", check_plant, "plant JSON file")->required();
  check->add_option("channel", check_channel, "channel JSON file")->required();
  check->add_option("--rho", check_rho, "convergence parameter")->required();
  check->add_option("--out", check_out, "output path");

  // estimate-run
  auto* run = app.add_subcommand("estimate-run",
                                 "simulate the constructed coder-estimator");
  std::string run_plant, run_channel, run_x0, run_policy = "first";
  std::string run_noise_policy = "adversarial", run_out;
  double run_rho = 1.0;
  unsigned run_t = 0;
  std::optional<double> run_noise;
  run->add_option("plant", run_plant, "plant JSON file")->required();
  run->add_option("channel", run_channel, "channel JSON file")->required();
  run->add_option("--rho", run_rho, "convergence parameter")->required();
  run->add_option("--x0", run_x0, "initial state (comma separated)")->required();
  run->add_option("--T", run_t, "number of steps")->required();
  run->add_option("--policy", run_policy,
                  "channel policy: first|adversarial|uniform")
      ->capture_default_str();
  run->add_option("--noise", run_noise,
                  "disturbance bound c (enables the disturbed simulation)");
  run->add_option("--noise-policy", run_noise_policy,
                  "noise policy: zero|adversarial|uniform")
      ->capture_default_str();
  run->add_option("--out", run_out, "output path");

  // witness
  auto* witness = app.add_subcommand("witness", "necessity packing witness");
  std::string witness_eigs, witness_out;
  double witness_rho = 1.0, witness_eps = 0.1, witness_l = 1.0;
  unsigned witness_tau = 1;
  witness->add_option("--eigs", witness_eigs, "eigenvalues (comma separated)")
      ->required();
  witness->add_option("--rho", witness_rho, "convergence parameter")->required();
  witness->add_option("--eps", witness_eps, "packing margin")->required();
  witness->add_option("--tau", witness_tau, "horizon")->required();
  witness->add_option("--l", witness_l, "initial-state ball radius")
      ->capture_default_str();
  witness->add_option("--out", witness_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*info)
      return cmd_info(info_file, info_x, info_y, all_measures, info_out);
    if (*channel)
      return cmd_channel(channel_file, t_max, csv, witness_dump, graph_export,
                         channel_out);
    if (*check)
      return cmd_estimate_check(check_plant, check_channel, check_rho,
                                check_out);
    if (*run)
      return cmd_estimate_run(run_plant, run_channel, run_rho, run_x0, run_t,
                              run_policy, run_noise, run_noise_policy, seed,
                              run_out);
    if (*witness)
      return cmd_witness(witness_eigs, witness_rho, witness_eps, witness_tau,
                         witness_l, witness_out);
  } catch (const SearchBudgetExceeded& e) {
    std::cerr << "search budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 5;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
