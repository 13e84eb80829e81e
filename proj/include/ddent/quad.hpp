#pragma once

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "ddent/errors.hpp"

namespace ddent {

struct QuadSpec {
  double a = 0.0;
  double b = 1.0;
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::size_t max_panels = 200000;
  // Shortest oscillation period of the integrand; initial panels are no
  // wider than half of it.
  std::optional<double> oscillation_period_hint;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels_used = 0;
  bool converged = false;
};

template <std::size_t K>
using QuadVec = std::array<double, K>;

template <std::size_t K>
struct QuadResultN {
  QuadVec<K> value{};
  QuadVec<K> error_estimate{};
  std::size_t panels_used = 0;
  bool converged = false;
};

namespace gk15 {

inline constexpr std::size_t kNodes = 15;

// Kronrod abscissae on [0, 1], ascending; odd indices are the 7 Gauss nodes.
inline constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Node positions as fractions of a panel, in the fixed order used by every
// evaluation: left nodes (outermost first), centre, right nodes.
inline std::array<double, kNodes> unit_offsets() {
  std::array<double, kNodes> out{};
  for (std::size_t i = 0; i < 7; ++i) {
    out[i] = 0.5 * (1.0 - kXk[i]);
    out[14 - i] = 0.5 * (1.0 + kXk[i]);
  }
  out[7] = 0.5;
  return out;
}

inline double kronrod_weight(std::size_t node) {
  const std::size_t i = node <= 7 ? node : 14 - node;
  return kWk[i];
}

// Gauss weight of a node, zero for Kronrod-only nodes.
inline double gauss_weight(std::size_t node) {
  const std::size_t i = node <= 7 ? node : 14 - node;
  return (i % 2 == 1 || i == 7) ? kWg[i / 2] : 0.0;
}

}  // namespace gk15

// Uniform panelization handed to batch integrands: node j of panel p sits at
// a + p*h + offsets[j]. Values are expected in panel-major order.
struct PanelGrid {
  double a = 0.0;
  double h = 0.0;
  std::size_t panels = 0;
  std::array<double, gk15::kNodes> offsets{};
};

template <class F, std::size_t K>
concept GridIntegrand = requires(const F& f, const PanelGrid& grid, std::span<QuadVec<K>> out) {
  f.eval_grid(grid, out);
};

namespace detail {

template <std::size_t K>
struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  QuadVec<K> value{};
  QuadVec<K> error{};
};

template <std::size_t K>
Panel<K> reduce_panel(double lo, double hi, std::span<const QuadVec<K>> values) {
  Panel<K> panel{lo, hi, {}, {}};
  const double half = 0.5 * (hi - lo);
  for (std::size_t k = 0; k < K; ++k) {
    double kron = 0.0;
    double gauss = 0.0;
    double absolute = 0.0;
    for (std::size_t j = 0; j < gk15::kNodes; ++j) {
      const double v = values[j][k];
      kron += gk15::kronrod_weight(j) * v;
      gauss += gk15::gauss_weight(j) * v;
      absolute += gk15::kronrod_weight(j) * std::abs(v);
    }
    panel.value[k] = kron * half;
    panel.error[k] = std::max(std::abs((kron - gauss) * half), 50.0 * DBL_EPSILON * absolute * half);
  }
  return panel;
}

template <std::size_t K>
void check_finite(double lo, double hi, std::span<const QuadVec<K>> values) {
  const auto offsets = gk15::unit_offsets();
  for (std::size_t j = 0; j < values.size(); ++j) {
    for (double v : values[j]) {
      if (!std::isfinite(v)) {
        const double x = lo + offsets[j] * (hi - lo);
        throw ConvergenceError("integrand returned a non-finite value at x=" + std::to_string(x));
      }
    }
  }
}

template <std::size_t K, class F>
Panel<K> evaluate_panel(const F& f, double lo, double hi) {
  const auto offsets = gk15::unit_offsets();
  std::array<QuadVec<K>, gk15::kNodes> values{};
  for (std::size_t j = 0; j < gk15::kNodes; ++j) values[j] = f(lo + offsets[j] * (hi - lo));
  check_finite<K>(lo, hi, values);
  return reduce_panel<K>(lo, hi, values);
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) integration of a K-component
// integrand. The first pass uses uniform panels no wider than half the
// oscillation hint; afterwards the panel with the largest tolerance-scaled
// error is bisected until every component meets
// error <= max(abs_tol, rel_tol * |value|) or max_panels is reached.
template <std::size_t K, class F>
QuadResultN<K> integrate_n(const F& f, const QuadSpec& spec) {
  spec.validate();
  const double span = spec.b - spec.a;
  std::size_t initial = 1;
  bool capped = false;
  if (spec.oscillation_period_hint) {
    const double width = 0.5 * *spec.oscillation_period_hint;
    const double count = std::ceil(span / width);
    if (count > static_cast<double>(spec.max_panels)) {
      initial = spec.max_panels;
      capped = true;
    } else {
      initial = std::max<std::size_t>(1, static_cast<std::size_t>(count));
    }
  }
  const double h = span / static_cast<double>(initial);

  std::vector<detail::Panel<K>> panels;
  panels.reserve(initial);
  if constexpr (GridIntegrand<F, K>) {
    PanelGrid grid;
    grid.a = spec.a;
    grid.h = h;
    grid.panels = initial;
    const auto unit = gk15::unit_offsets();
    for (std::size_t j = 0; j < gk15::kNodes; ++j) grid.offsets[j] = unit[j] * h;
    std::vector<QuadVec<K>> values(initial * gk15::kNodes);
    f.eval_grid(grid, std::span<QuadVec<K>>(values));
    for (std::size_t p = 0; p < initial; ++p) {
      const double lo = spec.a + static_cast<double>(p) * h;
      const double hi = (p + 1 == initial) ? spec.b : lo + h;
      std::span<const QuadVec<K>> chunk(values.data() + p * gk15::kNodes, gk15::kNodes);
      detail::check_finite<K>(lo, hi, chunk);
      panels.push_back(detail::reduce_panel<K>(lo, hi, chunk));
    }
  } else {
    for (std::size_t p = 0; p < initial; ++p) {
      const double lo = spec.a + static_cast<double>(p) * h;
      const double hi = (p + 1 == initial) ? spec.b : lo + h;
      panels.push_back(detail::evaluate_panel<K>(f, lo, hi));
    }
  }

  QuadVec<K> total{};
  QuadVec<K> error{};
  for (const auto& panel : panels) {
    for (std::size_t k = 0; k < K; ++k) {
      total[k] += panel.value[k];
      error[k] += panel.error[k];
    }
  }
  auto tolerance = [&](std::size_t k) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total[k])); };
  auto converged = [&] {
    for (std::size_t k = 0; k < K; ++k) {
      if (error[k] > tolerance(k)) return false;
    }
    return true;
  };

  QuadVec<K> scale{};
  for (std::size_t k = 0; k < K; ++k) scale[k] = 1.0 / tolerance(k);
  auto score = [&](const detail::Panel<K>& panel) {
    double s = 0.0;
    for (std::size_t k = 0; k < K; ++k) s = std::max(s, panel.error[k] * scale[k]);
    return s;
  };
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> queue;
  if (!converged()) {
    for (std::size_t i = 0; i < panels.size(); ++i) queue.emplace(score(panels[i]), i);
  }
  while (!converged() && panels.size() < spec.max_panels && !queue.empty()) {
    const std::size_t idx = queue.top().second;
    queue.pop();
    const detail::Panel<K> parent = panels[idx];
    const double mid = 0.5 * (parent.lo + parent.hi);
    if (!(mid > parent.lo && mid < parent.hi)) break;
    auto left = detail::evaluate_panel<K>(f, parent.lo, mid);
    auto right = detail::evaluate_panel<K>(f, mid, parent.hi);
    for (std::size_t k = 0; k < K; ++k) {
      total[k] += left.value[k] + right.value[k] - parent.value[k];
      error[k] += left.error[k] + right.error[k] - parent.error[k];
    }
    panels[idx] = left;
    panels.push_back(right);
    queue.emplace(score(left), idx);
    queue.emplace(score(right), panels.size() - 1);
  }

  QuadResultN<K> result;
  result.value = {};
  result.error_estimate = {};
  for (const auto& panel : panels) {
    for (std::size_t k = 0; k < K; ++k) {
      result.value[k] += panel.value[k];
      result.error_estimate[k] += panel.error[k];
    }
  }
  result.panels_used = panels.size();
  total = result.value;
  error = result.error_estimate;
  result.converged = !capped && converged();
  return result;
}

QuadResult integrate(const std::function<double(double)>& f, const QuadSpec& spec);

}  // namespace ddent
