#include "svl/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace svl {

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead_minimize: empty starting point");
  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opts.initial_step;
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point_along = [&](double coeff, std::vector<double>& out) {
    // centroid + coeff * (centroid - worst)
    const auto& worst = simplex[order[n]];
    for (std::size_t d = 0; d < n; ++d) out[d] = centroid[d] + coeff * (centroid[d] - worst[d]);
  };

  NelderMeadResult result;
  int iter = 0;
  for (;; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) diameter = std::max(diameter, distance(simplex[order[i]], simplex[order[0]]));
    if (diameter < opts.tol) {
      result.converged = true;
      break;
    }
    if (iter >= opts.max_iter) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[order[i]][d];
    for (double& c : centroid) c /= dn;

    const double best = values[order[0]];
    const double second_worst = values[order[n - 1]];
    const double worst = values[order[n]];

    point_along(reflect, trial);
    const double f_reflect = f(trial);
    if (f_reflect < best) {
      point_along(expand, trial2);
      const double f_expand = f(trial2);
      if (f_expand < f_reflect) {
        simplex[order[n]] = trial2;
        values[order[n]] = f_expand;
      } else {
        simplex[order[n]] = trial;
        values[order[n]] = f_reflect;
      }
      continue;
    }
    if (f_reflect < second_worst) {
      simplex[order[n]] = trial;
      values[order[n]] = f_reflect;
      continue;
    }
    if (f_reflect < worst) {
      point_along(reflect * contract, trial2);  // outside contraction
      const double f_c = f(trial2);
      if (f_c <= f_reflect) {
        simplex[order[n]] = trial2;
        values[order[n]] = f_c;
        continue;
      }
    } else {
      point_along(-contract, trial2);  // inside contraction
      const double f_c = f(trial2);
      if (f_c < worst) {
        simplex[order[n]] = trial2;
        values[order[n]] = f_c;
        continue;
      }
    }
    const auto& anchor = simplex[order[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      auto& v = simplex[order[i]];
      for (std::size_t d = 0; d < n; ++d) v[d] = anchor[d] + shrink * (v[d] - anchor[d]);
      values[order[i]] = f(v);
    }
  }

  result.x = simplex[order[0]];
  result.fx = values[order[0]];
  result.iterations = iter;
  return result;
}

}  // namespace svl
