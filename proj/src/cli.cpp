#include "rcrt/cli.hpp"

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcrt/report.hpp"

namespace rcrt {

namespace {

std::vector<Integer> parse_all(const std::vector<std::string>& items) {
  std::vector<Integer> out;
  for (const auto& item : items) {
    // Accept "1,2,3" as well as separate arguments.
    std::size_t start = 0;
    while (start <= item.size()) {
      const std::size_t comma = item.find(',', start);
      const std::string piece =
          item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!piece.empty()) out.push_back(parse_integer(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

struct Common {
  std::vector<std::string> moduli;
  std::string grouping;

  ModuliSet moduli_set() const { return ModuliSet(parse_all(moduli)); }
  std::optional<GroupTree> tree(const ModuliSet& ms) const {
    if (grouping.empty()) return std::nullopt;
    GroupTree t = GroupTree::parse(grouping);
    t.validate(ms);
    return t;
  }
};

void add_moduli(CLI::App* cmd, Common& c) {
  cmd->add_option("moduli", c.moduli, "Moduli (distinct positive integers)")->required();
}

void add_grouping(CLI::App* cmd, Common& c) {
  cmd->add_option("--grouping", c.grouping,
                  "Grouping plan as nested JSON index lists, e.g. [[0,1],[2,3]]");
}

int cmd_bounds(const Common& c, std::optional<std::size_t> reference, std::ostream& out) {
  const ModuliSet ms = c.moduli_set();
  Json j{{"moduli", to_json(ms)}, {"lcm", to_json(ms.lcm())}};
  if (auto tree = c.tree(ms)) {
    j["grouping"] = Json::parse(tree->to_json());
    if (ms.size() >= 2) j["theta"] = to_json(theta_bound(ms));
    j["stage_bounds"] = to_json(stage_bounds(*tree, ms));
    if (tree->depth() == 2) j["reference_group"] = to_json(per_group_reference_bounds(*tree, ms));
  } else {
    const std::size_t k = reference ? *reference : select_reference(ms);
    const Json report = to_json(per_remainder_bounds(ms, k));
    for (const auto& [key, value] : report.items()) j[key] = value;
    j["redundant_free"] = ms.divisor_free();
  }
  out << j.dump(2) << '\n';
  return exit_ok;
}

int cmd_reconstruct(const Common& c, const std::vector<std::string>& remainder_args,
                    std::optional<std::size_t> reference, std::ostream& out) {
  const ModuliSet ms = c.moduli_set();
  const std::vector<Integer> rt = parse_all(remainder_args);
  if (rt.size() != ms.size()) {
    throw std::invalid_argument("expected " + std::to_string(ms.size()) + " remainders, got " +
                                std::to_string(rt.size()));
  }
  Json j;
  bool consistent = true;
  if (auto tree = c.tree(ms)) {
    if (reference) throw std::invalid_argument("--reference applies to single-stage solves only");
    auto res = reconstruct_tree(ms, rt, *tree);
    consistent = res.ok();
    j = consistent ? to_json(res.value()) : to_json(res.error());
  } else {
    if (ms.size() < 2) throw std::invalid_argument("need at least two moduli");
    const std::size_t k = reference ? *reference : select_reference(ms);
    if (k >= ms.size()) throw std::invalid_argument("reference index out of range");
    auto res = solve_folding(ms, rt, k);
    consistent = res.ok();
    j = consistent ? to_json(res.value()) : to_json(res.error());
  }
  Json wrapped{{"consistent", consistent}};
  for (const auto& [key, value] : j.items()) wrapped[key] = value;
  out << wrapped.dump(2) << '\n';
  return consistent ? exit_ok : exit_inconsistent;
}

int cmd_group(const Common& c, const GroupingOptions& opts, std::ostream& out) {
  const ModuliSet ms = c.moduli_set();
  const GroupingProposal p = propose_grouping(ms, opts);
  Json j{{"moduli", to_json(ms)}};
  const Json report = to_json(p, ms);
  for (const auto& [key, value] : report.items()) j[key] = value;
  out << j.dump(2) << '\n';
  return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust Chinese remainder reconstruction from erroneous remainders", "rcrt"};
  app.require_subcommand(1);

  Common common;
  std::optional<std::size_t> reference;

  auto* bounds = app.add_subcommand("bounds", "Remainder error bounds of a moduli set or plan");
  add_moduli(bounds, common);
  add_grouping(bounds, common);
  bounds->add_option("--reference", reference, "Reference modulus index (must attain theta)");

  std::vector<std::string> remainders;
  auto* recon = app.add_subcommand("reconstruct", "Estimate N from erroneous remainders");
  add_moduli(recon, common);
  recon->add_option("--remainders", remainders, "Erroneous remainders, one per modulus")
      ->required();
  add_grouping(recon, common);
  recon->add_option("--reference", reference, "Reference modulus index");

  GroupingOptions group_opts;
  auto* group = app.add_subcommand("group", "Search for a two-stage grouping");
  add_moduli(group, common);
  group->add_flag("--share-reference", group_opts.share_reference,
                  "On failure, retry with the reference modulus added to one-modulus groups");
  group->add_option("--cover-cap", group_opts.cover_cap, "Maximum number of candidate sets")
      ->capture_default_str();

  unsigned long tau_max = 0;
  unsigned long tau_min = 0;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  std::string error_model = "one-sided";
  bool clamp = false;
  unsigned threads = 1;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo sweep over error levels (CSV)");
  add_moduli(sim, common);
  sim->add_option("--tau-max", tau_max, "Largest error level")->required();
  sim->add_option("--tau-min", tau_min, "Smallest error level")->capture_default_str();
  sim->add_option("--trials", trials, "Trials per error level")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim->add_option("--seed", seed, "Random seed")->capture_default_str();
  add_grouping(sim, common);
  sim->add_option("--error-model", error_model, "one-sided or symmetric")
      ->check(CLI::IsMember({"one-sided", "symmetric"}))
      ->capture_default_str();
  sim->add_flag("--clamp", clamp, "Clamp erroneous remainders into [0, M-1]");
  sim->add_option("--threads", threads, "Worker threads")->capture_default_str();

  long window = 4;
  std::string cap_text = "100000000";
  auto* verify = app.add_subcommand(
      "verify", "Exhaustively compare the recovery condition with the solver");
  add_moduli(verify, common);
  verify->add_option("--window", window, "Deltas range over [-window, window]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--cap", cap_text, "Maximum number of cases")->capture_default_str();
  verify->add_option("--reference", reference, "Reference modulus index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_input;
  }

  try {
    if (*bounds) return cmd_bounds(common, reference, out);
    if (*recon) return cmd_reconstruct(common, remainders, reference, out);
    if (*group) return cmd_group(common, group_opts, out);
    if (*sim) {
      if (tau_min > tau_max) throw std::invalid_argument("--tau-min exceeds --tau-max");
      const ModuliSet ms = common.moduli_set();
      TrialConfig cfg{ms, common.tree(ms)};
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.error_model = parse_error_model(error_model);
      cfg.clamp_remainders = clamp;
      cfg.threads = threads;
      std::vector<unsigned long> taus;
      for (unsigned long t = tau_min; t <= tau_max; ++t) taus.push_back(t);
      write_csv(out, sweep(cfg, taus));
      return exit_ok;
    }
    if (*verify) {
      const ModuliSet ms = common.moduli_set();
      VerifyOptions opts;
      opts.window = window;
      opts.reference = reference;
      const VerificationReport r = verify_recovery_condition(ms, parse_integer(cap_text), opts);
      out << to_json(r).dump(2) << '\n';
      return r.clean() ? exit_ok : exit_inconsistent;
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return exit_cap_exceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_input;
  }
  return exit_invalid_input;
}

}  // namespace rcrt
