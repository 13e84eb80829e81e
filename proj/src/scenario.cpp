#include "ddent/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "ddent/entanglement.hpp"
#include "ddent/errors.hpp"
#include "ddent/svg.hpp"

namespace ddent {

namespace {

TwoQubitState evolve_plus_plus(const ScenarioConfig& cfg, const KernelSet& k) {
  return evolve_state(plus_plus_state(), k, cfg.mode, cfg.omega0);
}

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "curve" : out;
}

}  // namespace

CurveResult run_scenario(const ScenarioConfig& cfg, unsigned threads) {
  CurveResult out;
  out.config = cfg;
  out.kernels = compute_kernels_grid(cfg, cfg.time_grid, threads);
  out.concurrence.resize(out.kernels.size());
  out.min_eigenvalue.resize(out.kernels.size());
  for (std::size_t i = 0; i < out.kernels.size(); ++i) {
    try {
      const TwoQubitState s = evolve_plus_plus(cfg, out.kernels[i]);
      out.concurrence[i] = concurrence(s);
      out.min_eigenvalue[i] = s.min_eigenvalue();
    } catch (const IntegrityError& e) {
      throw IntegrityError(std::string(e.what()) + " at t=" + std::to_string(out.kernels[i].t));
    }
  }
  return out;
}

double concurrence_at(const ScenarioConfig& cfg, double t) {
  return concurrence(evolve_plus_plus(cfg, compute_kernels(cfg, t)));
}

void write_curve_csv(std::ostream& os, const CurveResult& curve) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(12);
  os << "t,C,gamma,D,mu,R,r,Phi\n";
  for (std::size_t i = 0; i < curve.kernels.size(); ++i) {
    const KernelSet& k = curve.kernels[i];
    os << k.t << ',' << curve.concurrence[i] << ',' << k.gamma << ',' << k.D << ',' << k.mu << ',' << k.R() << ','
       << k.r << ',' << k.Phi << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

void write_kernels_csv(std::ostream& os, const std::vector<KernelSet>& kernels) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::setprecision(12);
  os << "t,Z,gamma,D,h,mu,p,q,r,Phi\n";
  for (const KernelSet& k : kernels) {
    os << k.t << ',' << k.Z << ',' << k.gamma << ',' << k.D << ',' << k.h << ',' << k.mu << ',' << k.p << ',' << k.q
       << ',' << k.r << ',' << k.Phi << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

Peak grid_peak(const CurveResult& curve) {
  Peak p;
  for (std::size_t i = 0; i < curve.concurrence.size(); ++i) {
    if (i == 0 || curve.concurrence[i] > p.C) p = {curve.kernels[i].t, curve.concurrence[i]};
  }
  return p;
}

Peak first_grid_peak(const CurveResult& curve, double floor) {
  const auto& c = curve.concurrence;
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (c[i] > floor && c[i] >= c[i - 1] && c[i] > c[i + 1]) return {curve.kernels[i].t, c[i]};
  }
  return grid_peak(curve);
}

Peak refine_peak(const ScenarioConfig& cfg, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = concurrence_at(cfg, x1);
  double f2 = concurrence_at(cfg, x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = concurrence_at(cfg, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = concurrence_at(cfg, x1);
    }
  }
  return f1 >= f2 ? Peak{x1, f1} : Peak{x2, f2};
}

std::vector<AlphaSweepRow> sweep_alpha(const ScenarioConfig& base, const std::vector<double>& alphas, double tol,
                                       unsigned threads) {
  std::vector<AlphaSweepRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    ScenarioConfig cfg = base;
    cfg.sequence.alpha = alpha;
    const CurveResult curve = run_scenario(cfg, threads);
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.concurrence.size(); ++i) {
      if (curve.concurrence[i] > curve.concurrence[best]) best = i;
    }
    Peak peak{curve.kernels.empty() ? 0.0 : curve.kernels[best].t,
              curve.concurrence.empty() ? 0.0 : curve.concurrence[best]};
    if (curve.kernels.size() > 1) {
      const double a = curve.kernels[best == 0 ? 0 : best - 1].t;
      const double b = curve.kernels[std::min(best + 1, curve.kernels.size() - 1)].t;
      const Peak refined = refine_peak(cfg, std::max(a, 1e-12), b, tol);
      if (refined.C > peak.C) peak = refined;
    }
    rows.push_back({alpha, peak.C, peak.t});
  }
  return rows;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1", "fig2", "fig3", "fig4"};
  return ids;
}

FigureScenario figure_scenario(const std::string& id) {
  ScenarioConfig base;
  base.bath = BathSpectrum{0.1, 1.0, 20.0, CutoffKind::Exponential};
  base.beta = 1.0;
  base.omega0 = 1.0;
  base.time_grid = linspace(0.0, 10.0, 400);

  auto curve = [&](std::string name, SequenceKind kind, int n) {
    ScenarioConfig c = base;
    c.name = std::move(name);
    c.sequence.kind = kind;
    c.sequence.n = n;
    return c;
  };
  auto noisy = [](ScenarioConfig c, double alpha) {
    c.mode = DynamicsMode::WithInteractionNoise;
    c.noise = NoiseSpectrum{10.0, 1.0, 2.0 * std::numbers::pi, kDefaultUvOverIr * 2.0 * std::numbers::pi};
    c.lambda0 = 0.1;
    c.sequence.alpha = alpha;
    return c;
  };

  FigureScenario fig;
  fig.id = id;
  if (id == "fig1") {
    fig.title = "Concurrence without pulses and with PDD (n = 256)";
    fig.curves = {curve("no pulses", SequenceKind::Free, 0), curve("PDD n=256", SequenceKind::PDD, 256)};
  } else if (id == "fig2") {
    fig.title = "Concurrence for PDD, CPMG and UDD (n = 256)";
    fig.curves = {curve("PDD n=256", SequenceKind::PDD, 256), curve("CPMG n=256", SequenceKind::CPMG, 256),
                  curve("UDD n=256", SequenceKind::UDD, 256)};
  } else if (id == "fig3") {
    fig.title = "Concurrence with interaction noise: no pulses and PDD (n = 371)";
    fig.curves = {noisy(curve("no pulses", SequenceKind::Free, 0), 0.0),
                  noisy(curve("PDD n=371 alpha=0", SequenceKind::PDD, 371), 0.0),
                  noisy(curve("PDD n=371 alpha=0.0139", SequenceKind::PDD, 371), 0.0139)};
  } else if (id == "fig4") {
    fig.title = "Concurrence with interaction noise for PDD, CPMG and UDD (n = 64)";
    fig.curves = {noisy(curve("PDD n=64", SequenceKind::PDD, 64), 0.0139),
                  noisy(curve("CPMG n=64", SequenceKind::CPMG, 64), 0.0139),
                  noisy(curve("UDD n=64", SequenceKind::UDD, 64), 0.0139)};
  } else {
    throw ConfigError("unknown figure '" + id + "' (expected fig1, fig2, fig3 or fig4)");
  }
  for (const auto& c : fig.curves) c.validate();
  return fig;
}

FigureOutput run_figure(const FigureScenario& fig, const std::string& out_dir, unsigned threads) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  FigureOutput out;
  std::vector<Series> series;
  for (std::size_t k = 0; k < fig.curves.size(); ++k) {
    out.curves.push_back(run_scenario(fig.curves[k], threads));
    const CurveResult& c = out.curves.back();
    const std::string base = fig.id + "_" + std::to_string(k + 1) + "_" + slug(c.config.name);
    const fs::path curve_path = fs::path(out_dir) / (base + ".csv");
    const fs::path kernel_path = fs::path(out_dir) / (base + "_kernels.csv");
    {
      std::ofstream os(curve_path, std::ios::binary);
      if (!os) throw IoError("cannot write '" + curve_path.string() + "'");
      write_curve_csv(os, c);
    }
    {
      std::ofstream os(kernel_path, std::ios::binary);
      if (!os) throw IoError("cannot write '" + kernel_path.string() + "'");
      write_kernels_csv(os, c.kernels);
    }
    out.files.push_back(curve_path.string());
    out.files.push_back(kernel_path.string());
    Series s{c.config.name, {}, c.concurrence};
    for (const auto& kk : c.kernels) s.x.push_back(kk.t);
    series.push_back(std::move(s));
  }
  AxesSpec axes;
  axes.title = fig.title;
  axes.y_label = "C(t)";
  axes.y_min = 0.0;
  axes.y_max = 1.0;
  const fs::path svg_path = fs::path(out_dir) / (fig.id + ".svg");
  emit_svg(series, axes, svg_path.string());
  out.files.push_back(svg_path.string());
  return out;
}

}  // namespace ddent
