// bnctl: attractors and target control of asynchronous Boolean networks.

#include "bnctl/control.hpp"
#include "bnctl/model.hpp"
#include "bnctl/oracle.hpp"
#include "bnctl/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace {

using bnctl::report::Report;

std::string model_name(const std::string &path) {
  return std::filesystem::path(path).stem().string();
}

void emit(const Report &r, const std::string &format) {
  if (format == "json")
    std::cout << bnctl::report::to_json(r).dump(2) << '\n';
  else
    std::cout << bnctl::report::render_text(r);
}

template <typename Fn> Report timed(Fn &&fn) {
  const auto start = std::chrono::steady_clock::now();
  Report r = fn();
  const auto end = std::chrono::steady_clock::now();
  r.timing_ms = std::chrono::duration<double, std::milli>(end - start).count();
  return r;
}

void warn_oscillating(const bnctl::NetworkAnalysis &na) {
  for (auto i : na.inputs().oscillating)
    std::cerr << "warning: input node '" << na.network().name(i)
              << "' negates itself; treated as a non-input node\n";
}

int run_oracle(const std::string &file, const std::string &mode_text,
               const std::string &target, std::size_t k_max) {
  namespace oracle = bnctl::oracle;
  const auto bn = bnctl::load_network(file);
  const auto graph = oracle::build_graph(bn);
  const auto atts = oracle::attractors(graph);
  const std::size_t n = bn.size();
  std::cout << atts.size() << " attractor(s)\n";
  for (std::size_t i = 0; i < atts.size(); ++i) {
    std::cout << "  #" << i << " {";
    for (std::size_t j = 0; j < atts[i].size(); ++j)
      std::cout << (j ? " " : "") << oracle::decode(atts[i][j], n).to_string();
    std::cout << "}  weak " << oracle::weak_basin(graph, atts[i]).size() << "  strong "
              << oracle::strong_basin(graph, atts[i]).size() << '\n';
  }
  if (target.empty())
    return 0;
  const bnctl::NetworkAnalysis na(bn);
  const auto sym = na.attractors();
  const std::size_t idx = bnctl::report::select_target(na, sym, target);
  const auto explicit_target = oracle::to_explicit(sym[idx].states.to_states(1u << n));
  const auto mode = bnctl::parse_control_mode(mode_text);
  const auto best = oracle::brute_force_min_controls(bn, mode, explicit_target, k_max);
  std::cout << "minimum " << mode_text << " controls (k <= " << k_max << "): " << best.size()
            << '\n';
  for (const auto &c : best)
    std::cout << "  " << bnctl::format_control(bn, c) << '\n';
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Target control of asynchronous Boolean networks"};
  app.require_subcommand(1);

  std::string format = "text";
  auto add_format = [&](CLI::App *sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  std::string file;
  auto *attractors = app.add_subcommand("attractors", "List attractors and basin sizes");
  attractors->add_option("file", file, "Model file (BoolNet format)")->required();
  add_format(attractors);

  bnctl::report::ControlRequest req;
  std::string mode_text;
  long long threshold = -1;
  auto *control = app.add_subcommand("control", "Compute target controls");
  control->add_option("file", file, "Model file (BoolNet format)")->required();
  control->add_option("--mode", mode_text, "itc, ttc or ptc")
      ->required()
      ->check(CLI::IsMember({"itc", "ttc", "ptc"}));
  auto *target_opt =
      control->add_option("--target", req.target, "Attractor selector: #k, pattern or literals");
  control->add_option("--threshold", threshold, "Maximum number of perturbations");
  auto *all_flag = control->add_flag("--all-targets", req.all_targets,
                                     "Run the chosen mode for every attractor");
  control->add_option("--jobs", req.jobs, "Parallel workers for --all-targets")
      ->check(CLI::PositiveNumber);
  target_opt->excludes(all_flag);
  add_format(control);

  std::string verify_target, literals;
  auto *verify = app.add_subcommand("verify", "Check a given control against a target");
  verify->add_option("file", file, "Model file (BoolNet format)")->required();
  verify->add_option("--mode", mode_text, "itc, ttc or ptc")
      ->required()
      ->check(CLI::IsMember({"itc", "ttc", "ptc"}));
  verify->add_option("--target", verify_target, "Attractor selector")->required();
  verify->add_option("--set", literals, "Control literals, e.g. \"x1=0,x2=1\"")->required();
  add_format(verify);

  std::size_t k_max = 2;
  std::string oracle_target;
  auto *oracle_cmd = app.add_subcommand("oracle", "Explicit-state reference results");
  oracle_cmd->group("");
  oracle_cmd->add_option("file", file)->required();
  oracle_cmd->add_option("--mode", mode_text)->default_val("ttc");
  oracle_cmd->add_option("--target", oracle_target);
  oracle_cmd->add_option("--k-max", k_max)->default_val(2);

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle_cmd->parsed())
      return run_oracle(file, mode_text, oracle_target, k_max);

    const bnctl::NetworkAnalysis na(bnctl::load_network(file));
    warn_oscillating(na);
    const std::string name = model_name(file);

    if (attractors->parsed()) {
      emit(timed([&] { return bnctl::report::attractors_report(name, na); }), format);
    } else if (control->parsed()) {
      if (!req.all_targets && req.target.empty())
        throw std::invalid_argument("either --target or --all-targets is required");
      if (control->count("--threshold") > 0) {
        if (threshold < 0)
          throw std::invalid_argument("threshold must be non-negative");
        req.threshold = static_cast<std::size_t>(threshold);
      }
      req.mode = bnctl::parse_control_mode(mode_text);
      emit(timed([&] { return bnctl::report::control_report(name, na, req); }), format);
    } else if (verify->parsed()) {
      const auto mode = bnctl::parse_control_mode(mode_text);
      emit(timed([&] {
             return bnctl::report::verify_report(name, na, mode, verify_target, literals);
           }),
           format);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
