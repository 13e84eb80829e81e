#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ddent/config.hpp"
#include "ddent/entanglement.hpp"
#include "ddent/errors.hpp"
#include "ddent/filters.hpp"
#include "ddent/oracles.hpp"
#include "ddent/scenario.hpp"

namespace fs = std::filesystem;
using namespace ddent;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kNonConvergence = 3, kIntegrity = 4 };

struct Globals {
  std::optional<double> rel_tol;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

std::vector<ScenarioConfig> load(const std::string& path, const Globals& g) {
  auto curves = load_config(path);
  if (g.rel_tol) {
    for (auto& c : curves) {
      c.quad.rel_tol = *g.rel_tol;
      c.validate();
    }
  }
  return curves;
}

// "a:b:count" -> count evenly spaced values on [a, b].
std::vector<double> parse_grid(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n)) {
    throw ConfigError("grid must look like min:max:count, got '" + text + "'");
  }
  try {
    const long count = std::stol(n);
    if (count < 1) throw ConfigError("grid count must be positive");
    return linspace(std::stod(a), std::stod(b), static_cast<std::size_t>(count));
  } catch (const std::logic_error&) {
    throw ConfigError("grid must look like min:max:count, got '" + text + "'");
  }
}

std::ostream& with_precision(std::ostream& os) { return os << std::setprecision(12); }

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  return os;
}

void emit_curves(const std::vector<ScenarioConfig>& curves, const std::string& out_dir, bool kernels_only,
                 unsigned threads) {
  if (!out_dir.empty()) fs::create_directories(out_dir);
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const CurveResult r = run_scenario(curves[k], threads);
    if (out_dir.empty()) {
      if (curves.size() > 1) std::cout << "# " << curves[k].name << '\n';
      if (kernels_only) {
        write_kernels_csv(std::cout, r.kernels);
      } else {
        write_curve_csv(std::cout, r);
      }
    } else {
      const std::string stem = std::to_string(k + 1) + "_" + (kernels_only ? "kernels" : "curve");
      auto os = open_out(fs::path(out_dir) / (stem + ".csv"));
      if (kernels_only) {
        write_kernels_csv(os, r.kernels);
      } else {
        write_curve_csv(os, r);
      }
      std::cerr << "wrote " << (fs::path(out_dir) / (stem + ".csv")).string() << '\n';
    }
  }
}

PulseSequence make_seq(const std::string& kind, int n, double t) {
  SequenceSpec spec;
  spec.kind = parse_sequence_kind(kind);
  spec.n = n;
  spec.validate();
  return spec.instantiate(t);
}

int run(int argc, char** argv) {
  CLI::App app{"Two-qubit entanglement in a common bosonic bath under pi-pulse sequences"};
  app.require_subcommand(1);
  Globals g;
  double rel_tol = 0.0;
  app.add_option("--rel-tol", rel_tol, "Override the relative quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for Monte-Carlo oracles");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  std::string fig_id, out_dir = "out";
  auto* figure = app.add_subcommand("figure", "Reproduce one of the figure scenarios");
  figure->add_option("id", fig_id, "fig1, fig2, fig3 or fig4")->required();
  figure->add_option("--out", out_dir, "Output directory");

  std::string config, run_out;
  auto* run_cmd = app.add_subcommand("run", "Concurrence time series for every curve of a config");
  run_cmd->add_option("--config", config)->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_out, "Write CSV files into this directory instead of stdout");

  double alpha_min = 0.0, alpha_max = 0.02;
  int steps = 11;
  auto* sweep = app.add_subcommand("sweep-alpha", "Peak concurrence as a function of the time shift");
  sweep->add_option("--config", config)->required()->check(CLI::ExistingFile);
  sweep->add_option("--alpha-min", alpha_min);
  sweep->add_option("--alpha-max", alpha_max);
  sweep->add_option("--steps", steps)->check(CLI::PositiveNumber);

  auto* kernels_cmd = app.add_subcommand("kernels", "Kernel table for every curve of a config");
  kernels_cmd->add_option("--config", config)->required()->check(CLI::ExistingFile);
  kernels_cmd->add_option("--out", run_out, "Write CSV files into this directory instead of stdout");

  std::string seq = "pdd", omega_grid = "0.1:100:200";
  int n = 4;
  double t = 1.0;
  auto* filter = app.add_subcommand("filter", "Filter function F(omega t) on a frequency grid");
  filter->add_option("--seq", seq);
  filter->add_option("--n", n);
  filter->add_option("--t", t)->check(CLI::PositiveNumber);
  filter->add_option("--omega-grid", omega_grid, "min:max:count");

  double state_t = 1.0;
  auto* state = app.add_subcommand("state", "Evolved |+,+> state of the first curve at one time");
  state->add_option("--config", config)->required()->check(CLI::ExistingFile);
  state->add_option("--t", state_t)->check(CLI::NonNegativeNumber);
  bool state_csv = false;
  state->add_flag("--csv", state_csv, "Print the 16 entries as CSV");

  auto* oracle = app.add_subcommand("oracle", "Compare closed forms against independent oracles");
  oracle->require_subcommand(1);

  double mode_omega = 1.0, mode_g = 0.1, beta = 1.0, omega0 = 1.0;
  std::size_t levels = 40;
  auto* single = oracle->add_subcommand("single-mode", "Exact propagation with one bosonic mode");
  single->add_option("--seq", seq);
  single->add_option("--n", n);
  single->add_option("--t", t)->check(CLI::PositiveNumber);
  single->add_option("--omega", mode_omega)->check(CLI::PositiveNumber);
  single->add_option("--g", mode_g);
  single->add_option("--beta", beta)->check(CLI::PositiveNumber);
  single->add_option("--omega0", omega0);
  single->add_option("--levels", levels);

  std::string times = "1,2,5";
  std::size_t realizations = 10000;
  auto* mc = oracle->add_subcommand("mc-noise", "Monte-Carlo variance of the noise phase against mu");
  mc->add_option("--config", config)->required()->check(CLI::ExistingFile);
  mc->add_option("--times", times, "Comma-separated evaluation times");
  mc->add_option("--realizations", realizations);
  std::size_t modes = kDefaultSynthesisModes;
  mc->add_option("--modes", modes, "Spectral synthesis modes")->check(CLI::PositiveNumber);

  auto* dn = oracle->add_subcommand("dn", "Closed-form dn against the exact cell sum");
  dn->add_option("--seq", seq);
  dn->add_option("--n", n);
  dn->add_option("--t", t)->check(CLI::PositiveNumber);
  dn->add_option("--omega-grid", omega_grid, "min:max:count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  if (rel_tol > 0.0) g.rel_tol = rel_tol;

  if (*figure) {
    auto fig = figure_scenario(fig_id);
    if (g.rel_tol) {
      for (auto& c : fig.curves) c.quad.rel_tol = *g.rel_tol;
    }
    const auto out = run_figure(fig, out_dir, g.threads);
    for (std::size_t k = 0; k < out.curves.size(); ++k) {
      const Peak p = grid_peak(out.curves[k]);
      std::cout << out.curves[k].config.name << ": peak C = " << std::setprecision(6) << p.C << " at t = " << p.t
                << '\n';
    }
    for (const auto& f : out.files) std::cout << "wrote " << f << '\n';
  } else if (*run_cmd) {
    emit_curves(load(config, g), run_out, false, g.threads);
  } else if (*kernels_cmd) {
    emit_curves(load(config, g), run_out, true, g.threads);
  } else if (*sweep) {
    const auto base = load(config, g).front();
    const auto alphas = linspace(alpha_min, alpha_max, static_cast<std::size_t>(steps));
    const auto rows = sweep_alpha(base, alphas, 1e-4, g.threads);
    with_precision(std::cout) << "alpha,peak_C,peak_t\n";
    for (const auto& r : rows) std::cout << r.alpha << ',' << r.peak_C << ',' << r.peak_t << '\n';
  } else if (*filter) {
    const auto s = make_seq(seq, n, t);
    const auto omegas = parse_grid(omega_grid);
    with_precision(std::cout) << "omega,F\n";
    for (double w : omegas) std::cout << w << ',' << filter_F(s, w, t) << '\n';
  } else if (*state) {
    const auto cfg = load(config, g).front();
    const KernelSet k = compute_kernels(cfg, state_t);
    const TwoQubitState s = evolve_state(plus_plus_state(), k, cfg.mode, cfg.omega0);
    if (state_csv) {
      write_state_csv_header(std::cout);
      write_state_csv_row(std::cout, s);
    } else {
      std::cout << "t = " << state_t << ", concurrence = " << std::setprecision(10) << concurrence(s) << '\n';
      pretty_print(std::cout, s);
    }
  } else if (*single) {
    const auto s = make_seq(seq, n, t);
    DiscreteModeBath bath{{{mode_omega, mode_g}}, levels, beta};
    const auto rho0 = plus_plus_state();
    const auto exact = single_mode_evolve(bath, s.pattern(), s.pattern(), omega0, t, rho0);
    const auto formula =
        evolve_state(rho0, discrete_mode_kernels(bath, s.pattern(), s.pattern(), t), DynamicsMode::CommonBathOnly, omega0);
    with_precision(std::cout) << "row,col,formula_re,formula_im,oracle_re,oracle_im,abs_residual,rel_residual\n";
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const Complex a = formula(i, j);
        const Complex b = exact(i, j);
        const double res = std::abs(a - b);
        std::cout << kBasisLabels[i] << ',' << kBasisLabels[j] << ',' << a.real() << ',' << a.imag() << ','
                  << b.real() << ',' << b.imag() << ',' << res << ',' << (std::abs(b) > 0 ? res / std::abs(b) : 0.0)
                  << '\n';
      }
  } else if (*mc) {
    const auto cfg = load(config, g).front();
    McOptions opt;
    opt.realizations = realizations;
    opt.modes = modes;
    opt.seed = g.seed;
    opt.threads = g.threads;
    with_precision(std::cout) << "t,mu,mc_variance,variance_se,z_score,mean,mean_se,kurtosis\n";
    std::stringstream ss(times);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const double tt = std::stod(item);
      const double mu = mu_kernel(cfg, tt);
      const auto st = mc_gamma_variance(cfg, tt, opt);
      std::cout << tt << ',' << mu << ',' << st.variance << ',' << st.variance_se << ','
                << (st.variance - mu) / st.variance_se << ',' << st.mean << ',' << st.mean_se << ',' << st.kurtosis
                << '\n';
    }
  } else if (*dn) {
    const auto s = make_seq(seq, n, t);
    const auto omegas = parse_grid(omega_grid);
    with_precision(std::cout) << "omega,dn_closed,dn_direct,abs_residual,rel_residual\n";
    for (double w : omegas) {
      const double a = dn_closed(s, s, w, t);
      const double b = dn_direct(s, s, w, t);
      std::cout << w << ',' << a << ',' << b << ',' << std::abs(a - b) << ','
                << (b != 0.0 ? std::abs(a - b) / std::abs(b) : 0.0) << '\n';
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity violation: " << e.what() << '\n';
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
