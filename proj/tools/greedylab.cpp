#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glab/cli.hpp"

namespace {

// Overlay --opt key=value pairs (and the dedicated flags) onto a config file.
glab::cli::Options gather(const std::string& config,
                          const std::vector<std::string>& extra) {
  glab::cli::Options opt;
  if (!config.empty()) opt = glab::cli::load_config(config);
  for (const std::string& kv : extra) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      opt.set(kv, "1");
    else
      opt.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedylab: basis constructions and greedy-approximation "
               "parameters at finite truncation"};
  app.require_subcommand(1);

  std::string config, target, out, in, xcol, ycol;
  std::vector<std::string> extra;
  double p = 0.0, q = 0.0;
  long long m_max = 0, k_max = 0, trials = 0;
  unsigned long long seed = 0;
  std::string basis;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "key=value configuration file");
    sub->add_option("--opt", extra, "extra key=value options (repeatable)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run a named check suite");
  verify->add_option("suite", target, "suite name")->required();
  add_common(verify);

  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep to CSV");
  sweep->add_option("experiment", target, "experiment name")->required();
  sweep->add_option("--out", out, "output CSV path (default: stdout)");
  sweep->add_option("--m-max", m_max, "largest m in the sweep");
  sweep->add_option("--k-max", k_max, "largest block index in the sweep");
  sweep->add_option("--p", p, "ambient exponent p");
  sweep->add_option("--q", q, "secondary exponent q");
  sweep->add_option("--seed", seed, "global search seed");
  sweep->add_option("--trials", trials, "random search trials");
  sweep->add_option("--basis", basis, "basis selector for parameter sweeps");
  add_common(sweep);

  CLI::App* construct = app.add_subcommand("construct", "emit construction tables");
  construct->add_option("what", target, "construction name")->required();
  construct->add_option("--out", out, "output CSV path (default: stdout)");
  construct->add_option("--m-max", m_max, "largest block index");
  construct->add_option("--k-max", k_max, "largest block index");
  construct->add_option("--p", p, "ambient exponent p");
  construct->add_option("--q", q, "secondary exponent q");
  add_common(construct);

  CLI::App* fit = app.add_subcommand("fit", "log-log least squares on CSV columns");
  fit->add_option("--in", in, "input CSV path")->required();
  fit->add_option("--x", xcol, "x column name")->required();
  fit->add_option("--y", ycol, "y column name")->required();
  add_common(fit);

  CLI11_PARSE(app, argc, argv);

  try {
    glab::cli::Options opt = gather(config, extra);
    if (sweep->parsed() || construct->parsed()) {
      if (!out.empty()) opt.set("out", out);
      if (m_max > 0) opt.set("m-max", std::to_string(m_max));
      if (k_max > 0) opt.set("k-max", std::to_string(k_max));
      if (p > 0.0) opt.set("p", std::to_string(p));
      if (q > 0.0) opt.set("q", std::to_string(q));
      if (sweep->count("--seed") > 0) opt.set("seed", std::to_string(seed));
      if (trials > 0) opt.set("trials", std::to_string(trials));
      if (!basis.empty()) opt.set("basis", basis);
    }
    if (verify->parsed()) return glab::cli::run_verify(target, opt, std::cout);
    if (sweep->parsed()) return glab::cli::run_sweep(target, opt, std::cout);
    if (construct->parsed()) return glab::cli::run_construct(target, opt, std::cout);
    if (fit->parsed()) {
      opt.set("in", in);
      opt.set("x", xcol);
      opt.set("y", ycol);
      return glab::cli::run_fit(opt, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
