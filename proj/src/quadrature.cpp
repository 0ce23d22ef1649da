#include "yule/quadrature.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "yule/errors.hpp"
#include "yule/parallel.hpp"

namespace yule {

namespace {

constexpr int kPoints = 8;

struct Rule {
  std::array<double, kPoints> x{};  // on [0, 1]
  std::array<double, kPoints> w{};
};

const Rule& gauss_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kPoints>;
    Rule r;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    int k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x[k] = 0.5 - 0.5 * a[i];
      r.w[k++] = 0.5 * w[i];
      r.x[k] = 0.5 + 0.5 * a[i];
      r.w[k++] = 0.5 * w[i];
    }
    return r;
  }();
  return rule;
}

struct Rect {
  double x0, x1, y0, y1;
};

struct Leaf {
  Rect r;
  double value;
  double err;
};

using UnitIntegrand = std::function<double(double, double)>;

double panel_value(const UnitIntegrand& g, const Rect& r) {
  const Rule& R = gauss_rule();
  const double hx = r.x1 - r.x0, hy = r.y1 - r.y0;
  double sum = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = r.x0 + hx * R.x[i];
    double row = 0.0;
    for (int j = 0; j < kPoints; ++j) row += R.w[j] * g(x, r.y0 + hy * R.x[j]);
    sum += R.w[i] * row;
  }
  return sum * hx * hy;
}

// Split point along one axis; panels touching u = 0 are split at a quarter.
double cut_point(double lo, double hi) { return lo == 0.0 ? hi / 4.0 : 0.5 * (lo + hi); }

std::array<Rect, 2> split_x(const Rect& r) {
  const double c = cut_point(r.x0, r.x1);
  return {Rect{r.x0, c, r.y0, r.y1}, Rect{c, r.x1, r.y0, r.y1}};
}

std::array<Rect, 2> split_y(const Rect& r) {
  const double c = cut_point(r.y0, r.y1);
  return {Rect{r.x0, r.x1, r.y0, c}, Rect{r.x0, r.x1, c, r.y1}};
}

// Cuts at a u = 0 edge are exact, so such panels may shrink much further.
bool axis_refinable(double lo, double hi) { return lo == 0.0 ? hi > 1e-200 : hi - lo > 1e-13; }

bool refinable(const Rect& r) { return axis_refinable(r.x0, r.x1) || axis_refinable(r.y0, r.y1); }

double neumaier_sum(const std::vector<Leaf>& leaves, bool errors) {
  double s = 0.0, c = 0.0;
  for (const Leaf& l : leaves) {
    const double v = errors ? l.err : l.value;
    const double t = s + v;
    c += std::fabs(s) >= std::fabs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  return s + c;
}

QuadResult adaptive_unit_square(const UnitIntegrand& g, double tol_rel, double tol_abs, long max_nodes,
                                int threads) {
  if (!(tol_rel > 0.0) || !(tol_abs > 0.0)) throw ContractError("tolerances must be positive");
  const long per_panel = static_cast<long>(kPoints) * kPoints;

  std::vector<double> cuts{0.0};
  for (int k = 8; k >= 1; --k) cuts.push_back(std::pow(4.0, -k));
  for (double c : {0.5, 0.75, 1.0}) cuts.push_back(c);

  std::vector<Rect> parents;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) parents.push_back({cuts[i], cuts[i + 1], cuts[j], cuts[j + 1]});

  QuadResult res;
  std::vector<double> parent_values(parents.size());
  parallel_for(parents.size(), threads, [&](std::size_t i) { parent_values[i] = panel_value(g, parents[i]); });
  res.nodes_used += per_panel * static_cast<long>(parents.size());

  // Each parent is bisected along both axes; the pair along the axis with the
  // larger discrepancy replaces it, and both discrepancies are charged to it.
  auto refine = [&](const std::vector<Rect>& ps, const std::vector<double>& pv) {
    std::vector<Rect> flat;
    flat.reserve(4 * ps.size());
    for (const Rect& r : ps) {
      const auto xs = split_x(r), ys = split_y(r);
      flat.insert(flat.end(), {xs[0], xs[1], ys[0], ys[1]});
    }
    std::vector<double> vals(flat.size());
    parallel_for(flat.size(), threads, [&](std::size_t i) { vals[i] = panel_value(g, flat[i]); });
    res.nodes_used += per_panel * static_cast<long>(flat.size());

    std::vector<std::array<Leaf, 2>> out(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::size_t k = 4 * i;
      const double ex = std::fabs(pv[i] - (vals[k] + vals[k + 1]));
      const double ey = std::fabs(pv[i] - (vals[k + 2] + vals[k + 3]));
      const bool can_x = axis_refinable(ps[i].x0, ps[i].x1), can_y = axis_refinable(ps[i].y0, ps[i].y1);
      const bool along_x = can_x && (ex >= ey || !can_y);
      const double share = 0.5 * (ex + ey);
      const std::size_t b = along_x ? k : k + 2;
      out[i] = {Leaf{flat[b], vals[b], share}, Leaf{flat[b + 1], vals[b + 1], share}};
    }
    return out;
  };

  std::vector<Leaf> leaves;
  for (auto& group : refine(parents, parent_values)) leaves.insert(leaves.end(), group.begin(), group.end());

  while (true) {
    const double value = neumaier_sum(leaves, false);
    const double err = neumaier_sum(leaves, true);
    res.value = value;
    res.error_estimate = err;
    const double target = std::max(tol_abs, tol_rel * std::fabs(value));
    if (err <= target) {
      res.converged = true;
      break;
    }
    if (res.nodes_used >= max_nodes) break;

    std::vector<std::size_t> order(leaves.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return leaves[a].err > leaves[b].err; });
    const long budget = (max_nodes - res.nodes_used) / (4 * per_panel) + 1;
    std::vector<char> selected(leaves.size(), 0);
    double acc = 0.0;
    long count = 0;
    for (std::size_t idx : order) {
      if (acc >= 0.5 * (err - target) || count >= budget) break;
      if (!refinable(leaves[idx].r) || leaves[idx].err == 0.0) continue;
      selected[idx] = 1;
      acc += leaves[idx].err;
      ++count;
    }
    if (count == 0) break;

    std::vector<Rect> ps;
    std::vector<double> pv;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (selected[i]) {
        ps.push_back(leaves[i].r);
        pv.push_back(leaves[i].value);
      }
    }
    auto groups = refine(ps, pv);
    std::vector<Leaf> next;
    next.reserve(leaves.size() + ps.size());
    std::size_t gi = 0;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (selected[i]) {
        next.insert(next.end(), groups[gi].begin(), groups[gi].end());
        ++gi;
      } else {
        next.push_back(leaves[i]);
      }
    }
    leaves.swap(next);
  }
  return res;
}

[[noreturn]] void bad_node(double s1, double s2, double v) {
  std::ostringstream os;
  os.precision(17);
  os << "integrand returned " << v << " at node (" << s1 << ", " << s2 << ")";
  throw NumericError(os.str());
}

}  // namespace

QuadResult integrate_quadrant(const Integrand& f, double tol_rel, double tol_abs, long max_nodes, int threads) {
  auto g = [&f](double u1, double u2) {
    const double w1 = 1.0 / (1.0 - u1), w2 = 1.0 / (1.0 - u2);
    const double s1 = u1 * w1, s2 = u2 * w2;
    const double v = f(s1, s2);
    if (!std::isfinite(v)) bad_node(s1, s2, v);
    return v * w1 * w1 * w2 * w2;
  };
  return adaptive_unit_square(g, tol_rel, tol_abs, max_nodes, threads);
}

QuadResult integrate_triangle_symmetric(const Integrand& f, double tol_rel, double tol_abs, long max_nodes,
                                        int threads) {
  auto g = [&f](double u, double v) {
    const double w = 1.0 / (1.0 - u);
    const double s = u * w;
    const double val = f(s, s * v);
    if (!std::isfinite(val)) bad_node(s, s * v, val);
    return 2.0 * val * s * w * w;
  };
  return adaptive_unit_square(g, tol_rel, tol_abs, max_nodes, threads);
}

}  // namespace yule
