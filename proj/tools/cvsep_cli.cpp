// cvsep: entanglement of a two-mode squeezed state in squeezed thermal reservoirs.
//
//   cvsep sweep    --sc 1 --nbar 1 --se1 0.5 --out sweep.csv
//   cvsep lifetime --sc 1 --nbar 1
//   cvsep check    --sc 1 --nbar 1 --r 0.5
//   cvsep figure1  --out fig1.csv
//
// Exit codes: 0 success, 1 invalid arguments, 2 computation-domain error,
// 3 I/O error.

#include "cvsep/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

enum ExitCode { kOk = 0, kInvalidArguments = 1, kDomainError = 2, kIoError = 3 };

struct Options {
  double sc = 0.0;
  double nbar = 0.0;
  double se1 = 0.0;
  double se2 = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double r = 0.0;
  std::optional<double> gamma;
  std::optional<double> tau;
  std::size_t points = 401;
  std::string out;
  std::string format = "csv";
  std::string config;
};

// Option name (without dashes) -> option object and a setter for file values.
struct Binding {
  const CLI::App* owner;
  CLI::Option* option;
  std::function<void(const std::string&)> assign;
};
using Bindings = std::multimap<std::string, Binding>;

template <typename T>
void bind_option(CLI::App& cmd, Bindings& bindings, const std::string& name, T& target,
          const std::string& help) {
  CLI::Option* opt = cmd.add_option("--" + name, target, help)->capture_default_str();
  bindings.emplace(name, Binding{&cmd, opt, [&target, name](const std::string& text) {
                                   if (!CLI::detail::lexical_cast(text, target)) {
                                     throw std::invalid_argument("bad value '" + text +
                                                                 "' for key '" + name + "'");
                                   }
                                 }});
}

void add_scenario_options(CLI::App& cmd, Bindings& bindings, Options& o) {
  bind_option(cmd, bindings, "sc", o.sc, "two-mode squeezing s_c of the system");
  bind_option(cmd, bindings, "nbar", o.nbar, "thermal photon number of both reservoir modes");
  bind_option(cmd, bindings, "se1", o.se1, "squeezing of the reservoir of mode a");
  bind_option(cmd, bindings, "se2", o.se2, "squeezing of the reservoir of mode b");
  bind_option(cmd, bindings, "phi1", o.phi1, "squeezing phase of the reservoir of mode a");
  bind_option(cmd, bindings, "phi2", o.phi2, "squeezing phase of the reservoir of mode b");
  cmd.add_option("--config", o.config, "key=value scenario file; flags override its values");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Applies a key=value file to every option of `cmd` not given on the command line.
void apply_config(const std::string& path, const CLI::App* cmd, const Bindings& bindings) {
  std::ifstream in(path);
  if (!in) throw cvsep::IoError("cannot read scenario file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = false;
    auto [lo, hi] = bindings.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      if (it->second.owner != cmd) continue;
      known = true;
      if (it->second.option->count() == 0) it->second.assign(value);
    }
    if (!known) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

cvsep::ChannelScenario<double> make_scenario(const Options& o) {
  return {cvsep::TwoModeSqueezedSpec<double>(o.sc),
          cvsep::EnvironmentModeSpec<double>(o.nbar, o.se1, o.phi1),
          cvsep::EnvironmentModeSpec<double>(o.nbar, o.se2, o.phi2)};
}

int run(int argc, char** argv) {
  CLI::App app{"Entanglement of two-mode squeezed states in squeezed thermal reservoirs"};
  app.require_subcommand(1);
  Options o;
  Bindings bindings;

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate delta, verdict and PPT eigenvalue over r");
  add_scenario_options(*sweep, bindings, o);
  bind_option(*sweep, bindings, "points", o.points, "number of uniform r values on [0, 1]");
  bind_option(*sweep, bindings, "out", o.out, "output file");
  bind_option(*sweep, bindings, "format", o.format, "csv or tsv");

  CLI::App* lifetime = app.add_subcommand("lifetime", "normalized time r* at which entanglement is lost");
  add_scenario_options(*lifetime, bindings, o);

  CLI::App* check = app.add_subcommand("check", "separability of the evolved state at one time");
  add_scenario_options(*check, bindings, o);
  bind_option(*check, bindings, "r", o.r, "normalized time in [0, 1]");
  bind_option(*check, bindings, "gamma", o.gamma, "coupling rate (with --tau, replaces --r)");
  bind_option(*check, bindings, "tau", o.tau, "interaction time (with --gamma, replaces --r)");

  CLI::App* figure1 = app.add_subcommand("figure1", "thermal vs one-mode-squeezed reservoir curves");
  bind_option(*figure1, bindings, "points", o.points, "number of uniform r values on [0, 1]");
  bind_option(*figure1, bindings, "out", o.out, "output file");
  bind_option(*figure1, bindings, "format", o.format, "csv or tsv");
  figure1->add_option("--config", o.config, "key=value file; flags override its values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidArguments;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  if (!o.config.empty()) apply_config(o.config, cmd, bindings);

  if (cmd == sweep) {
    if (o.out.empty()) throw std::invalid_argument("sweep requires --out");
    cvsep::SweepRequest request{make_scenario(o), cvsep::uniform_grid(o.points), o.out,
                                cvsep::parse_table_format(o.format)};
    const auto result = cvsep::run_sweep_to_file(request);
    std::cout << "wrote " << result.rows.size() << " rows to " << o.out << '\n';
  } else if (cmd == lifetime) {
    const auto t = cvsep::separation_time(make_scenario(o));
    switch (t.outcome) {
      case cvsep::SeparationOutcome::separates:
        std::cout << cvsep::format_number(t.r) << '\n';
        break;
      case cvsep::SeparationOutcome::never_separable:
        std::cout << "never-separable\n";
        break;
      case cvsep::SeparationOutcome::initially_separable:
        std::cout << "initially-separable\n";
        break;
    }
  } else if (cmd == check) {
    const bool from_rate = o.gamma || o.tau;
    if (from_rate && !(o.gamma && o.tau)) {
      throw std::invalid_argument("--gamma and --tau must be given together");
    }
    const auto time = from_rate ? cvsep::normalized_time(*o.gamma, *o.tau)
                                : cvsep::ChannelTime<double>::from_r(o.r);
    const auto v = cvsep::verdict(cvsep::evolve(make_scenario(o), time));
    std::cout << "r          " << cvsep::format_number(time.r()) << '\n'
              << "delta      " << cvsep::format_number(v.delta) << '\n'
              << "verdict    " << (v.separable ? "separable" : "entangled") << '\n'
              << "oracle_nu  " << cvsep::format_number(v.oracle_nu) << '\n';
  } else if (cmd == figure1) {
    if (o.out.empty()) throw std::invalid_argument("figure1 requires --out");
    const auto format = cvsep::parse_table_format(o.format);
    const auto rows = cvsep::figure1_curves(o.points);
    cvsep::write_figure1(rows, std::filesystem::path(o.out), format);
    std::cout << "wrote " << rows.size() << " rows to " << o.out << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cvsep::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  }
}
