// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// usage: cvsep_acceptance <path-to-cvsep-executable>

#include "cvsep/sweep.hpp"
#include "support/test_support.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace cvsep;
using cvsep::testing::rel_diff;
using cvsep::testing::Sampler;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ChannelScenario<double> scenario(double sc, EnvironmentModeSpec<double> a, EnvironmentModeSpec<double> b) {
  return {TwoModeSqueezedSpec<double>(sc), a, b};
}

// 1. delta of the pure two-mode squeezed state equals -4 sinh^2 2s_c.
Outcome initial_entanglement_anchor() {
  double worst = 0.0;
  for (double sc : {0.3, 1.0, 2.0}) {
    const double delta = simon_delta(tmss_variance(TwoModeSqueezedSpec<double>(sc)));
    const double expected = -4.0 * std::pow(std::sinh(2.0 * sc), 2);
    worst = std::max(worst, std::abs(delta - expected) / std::abs(expected));
  }
  return {worst <= 1e-8, "max relative error " + sci(worst) + " (tol 1e-8)"};
}

// 2. Thermal death time by bisection against the closed form.
Outcome thermal_death_time() {
  const auto t = separation_time(scenario(1.0, EnvironmentModeSpec<double>::thermal(1.0),
                                          EnvironmentModeSpec<double>::thermal(1.0)));
  const double em2 = std::exp(-2.0);
  const double closed = std::sqrt((1.0 - em2) / (3.0 - em2));
  const double vs_closed = std::abs(t.r - closed);
  const double vs_quoted = std::abs(t.r - 0.549398);
  const bool pass = t.outcome == SeparationOutcome::separates && vs_closed <= 1e-9 && vs_quoted <= 1e-6;
  return {pass, "r* = " + format_number(t.r) + ", |bisection - closed form| = " + sci(vs_closed) +
                    " (tol 1e-9), |r* - 0.549398| = " + sci(vs_quoted) + " (tol 1e-6)"};
}

// 3. Thermal vs one-mode-squeezed reservoir curves on the 401-point grid.
Outcome figure1_reproduction() {
  const auto rows = figure1_curves(401);
  const auto crossing = [&](auto member) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i - 1].*member < 0.0 && rows[i].*member >= 0.0) return rows[i].r;
    }
    return 2.0;
  };
  const double grid_th = crossing(&Figure1Row::delta_thermal);
  const double grid_sq = crossing(&Figure1Row::delta_squeezed);
  const auto root_th = separation_time(figure1_thermal_scenario());
  const auto root_sq = separation_time(figure1_squeezed_scenario());
  const bool earlier = root_sq.r < root_th.r && grid_sq <= grid_th;

  bool dominated = true;
  std::vector<double> equal_at;
  for (const auto& row : rows) {
    const double scale = std::max({std::abs(row.delta_thermal), std::abs(row.delta_squeezed), 1.0});
    if (row.delta_squeezed < row.delta_thermal - 1e-9 * scale) dominated = false;
    // Strictness is read off the closed-form gap; subtracting the two deltas
    // loses it to cancellation near r = 0.
    const double gap = monotonicity_gap(figure1_squeezed_scenario(), ChannelTime<double>::from_r(row.r)).gap;
    if (!(gap > 0.0)) equal_at.push_back(row.r);
  }
  const bool equality_only_at_zero = equal_at.size() == 1 && equal_at.front() == 0.0;

  std::string eq;
  for (double r : equal_at) eq += (eq.empty() ? "" : ", ") + format_number(r);
  return {earlier && dominated && equality_only_at_zero,
          "crossing r*_sq = " + format_number(root_sq.r) + " < r*_th = " + format_number(root_th.r) +
              (earlier ? " ok" : " VIOLATED") + "; delta_sq >= delta_th on grid " +
              (dominated ? "ok" : "VIOLATED") + "; equality at r = {" + eq + "}" +
              (equality_only_at_zero ? " ok" : " (expected only r = 0)")};
}

// 4. Vacuum reservoirs: delta < 0 on [0, 1).
Outcome vacuum_persistence() {
  double worst = -std::numeric_limits<double>::infinity();
  for (double sc : {0.1, 1.0, 2.0}) {
    const auto s = scenario(sc, EnvironmentModeSpec<double>::vacuum(), EnvironmentModeSpec<double>::vacuum());
    for (int k = 0; k < 1000; ++k) {
      worst = std::max(worst, simon_delta(evolve(s, ChannelTime<double>::from_r(k / 1000.0))));
    }
  }
  return {worst < 0.0, "max delta over 3 x 1000 grid points = " + sci(worst) + " (must be < 0)"};
}

// 5. E >= 0 over r^2 in [0, 1], s_c in [0, 2], n_bar in [0, 3].
Outcome e_positivity() {
  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const double r2 = i / 99.0;
    for (int j = 0; j < 100; ++j) {
      const double mu = std::cosh(2.0 * (2.0 * j / 99.0));
      for (int k = 0; k < 100; ++k) {
        const double nt = 2.0 * (3.0 * k / 99.0) + 1.0;
        lowest = std::min(lowest, e_factor(mu, nt, r2));
      }
    }
  }
  return {lowest >= -1e-12, "min E over 10^6 grid points = " + sci(lowest) + " (tol -1e-12)"};
}

// 6a. Product condition vs full criterion on A = B, C diagonal.
Outcome lemma1_equivalence() {
  Sampler sampler(6001);
  int checked = 0;
  int mismatches = 0;
  int separable = 0;
  while (checked < 10000) {
    const double n = sampler.uniform(1.0, 4.0);
    const double k = std::exp(sampler.uniform(-1.0, 1.0));
    const double c1 = sampler.uniform(-n * k, n * k);
    const double c2 = sampler.uniform(-n / k, n / k);
    const DiagonalBlockForm<double> f{n * k, n / k, n * k, n / k, c1, c2};
    const auto v = f.assemble();
    if (!is_physical(v)) continue;
    ++checked;
    const bool lemma = lemma1_separable(f.n1, f.n2, c1, c2);
    separable += lemma;
    mismatches += lemma != separable_from_delta(simon_delta(v));
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(checked) +
                               " matrices (" + std::to_string(separable) + " separable)"};
}

// 6b. Diagonal-block closed form vs full criterion.
Outcome block_delta_equivalence() {
  Sampler sampler(6002);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double nbar = sampler.uniform(0, 3);
    const auto s = scenario(sampler.uniform(0, 2), {nbar, sampler.uniform(0, 1), 0.0},
                            {nbar, sampler.uniform(0, 1), 0.0});
    const auto time = ChannelTime<double>::from_r2(sampler.uniform(0, 1));
    const auto form = diagonal_block_form(s, time);
    worst = std::max(worst, rel_diff(block_delta(form), simon_delta(form.assemble())));
  }
  return {worst <= 1e-8, "max relative difference " + sci(worst) + " over 10^4 instances (tol 1e-8)"};
}

// 6c. Identical-reservoir sides vs full criterion.
Outcome symmetric_sides_equivalence() {
  Sampler sampler(6003);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const TwoModeSqueezedSpec<double> spec(sampler.uniform(0, 2));
    const auto env = sampler.random_environment();
    const auto time = ChannelTime<double>::from_r(sampler.uniform(0, 1));
    const double full = simon_delta(evolve(ChannelScenario<double>{spec, env, env}, time));
    worst = std::max(worst, rel_diff(symmetric_lhs_rhs(spec, env, time).delta(), full));
  }
  return {worst <= 1e-9, "max relative difference " + sci(worst) + " over 10^3 scenarios (tol 1e-9)"};
}

// 7. Simon functional vs partial-transpose eigenvalue.
Outcome oracle_agreement() {
  Sampler sampler(7001);
  int disagreements = 0;
  int banded = 0;
  int entangled = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto s = scenario(sampler.uniform(0, 2), sampler.random_environment(), sampler.random_environment());
    const auto v = verdict(evolve(s, ChannelTime<double>::from_r(sampler.uniform(0, 1))));
    if (std::abs(v.delta) <= 1e-7 || std::abs(v.oracle_nu - 1.0) <= 1e-7) {
      ++banded;
      continue;
    }
    entangled += v.delta < 0.0;
    disagreements += (v.delta < 0.0) != (v.oracle_nu < 1.0);
  }
  return {disagreements == 0, std::to_string(disagreements) + " disagreements; " + std::to_string(entangled) +
                                  " entangled, " + std::to_string(banded) + " inside the 1e-7 band"};
}

// 8. rhs is largest at zero reservoir phase.
Outcome phase_optimality() {
  Sampler sampler(8001);
  int violations = 0;
  for (int i = 0; i < 100; ++i) {
    const TwoModeSqueezedSpec<double> spec(sampler.uniform(0, 2));
    const double nbar = sampler.uniform(0, 3);
    const double se = sampler.uniform(0, 1);
    const auto time = ChannelTime<double>::from_r(sampler.uniform(0, 1));
    const double at_zero = symmetric_lhs_rhs(spec, {nbar, se, 0.0}, time).rhs;
    for (int k = 0; k < 64; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / 64.0;
      violations += at_zero < symmetric_lhs_rhs(spec, {nbar, se, phi}, time).rhs;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over 100 x 64 (draw, phase) pairs"};
}

// 9. Characteristic function of the evolved state factorizes.
Outcome channel_factorization() {
  Sampler sampler(9001);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto system = sampler.random_physical();
    const auto env = environment_variance(sampler.random_environment(), sampler.random_environment());
    const auto time = ChannelTime<double>::from_r(sampler.uniform(0, 1));
    Eigen::Vector4d z;
    for (int k = 0; k < 4; ++k) z(k) = sampler.uniform(-1, 1);
    const double joint = eval_characteristic(evolve(system, env, time), z);
    const double product = eval_characteristic(system, Eigen::Vector4d(time.t() * z)) *
                           eval_characteristic(env, Eigen::Vector4d(time.r() * z));
    worst = std::max(worst, std::abs(joint - product) / std::abs(product));
  }
  return {worst <= 1e-9, "max relative error " + sci(worst) + " over 100 triples (tol 1e-9)"};
}

// 10. Two figure1 runs of the CLI produce byte-identical files.
Outcome determinism(const std::string& cli) {
  const auto dir = std::filesystem::temp_directory_path() / "cvsep_acceptance";
  std::filesystem::create_directories(dir);
  const auto a = dir / "fig1_a.csv";
  const auto b = dir / "fig1_b.csv";
  const auto invoke = [&](const std::filesystem::path& out) {
    const std::string cmd = "'" + cli + "' figure1 --out '" + out.string() + "' > /dev/null";
    return std::system(cmd.c_str());
  };
  const int rc_a = invoke(a);
  const int rc_b = invoke(b);
  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string ca = slurp(a);
  const std::string cb = slurp(b);
  std::filesystem::remove_all(dir);
  const bool pass = rc_a == 0 && rc_b == 0 && !ca.empty() && ca == cb;
  return {pass, "exit codes " + std::to_string(rc_a) + "/" + std::to_string(rc_b) + ", " +
                    std::to_string(ca.size()) + " bytes, " + (ca == cb ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <path-to-cvsep>\n";
    return 2;
  }
  const std::string cli = argv[1];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1  initial entanglement anchor", initial_entanglement_anchor},
      {"2  thermal death time", thermal_death_time},
      {"3  thermal vs squeezed reservoir curves", figure1_reproduction},
      {"4  vacuum-reservoir persistence", vacuum_persistence},
      {"5  E positivity", e_positivity},
      {"6a product condition equivalence", lemma1_equivalence},
      {"6b diagonal-block delta equivalence", block_delta_equivalence},
      {"6c identical-reservoir sides equivalence", symmetric_sides_equivalence},
      {"7  PPT oracle agreement", oracle_agreement},
      {"8  phase optimality", phase_optimality},
      {"9  channel factorization", channel_factorization},
      {"10 figure1 determinism", [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
