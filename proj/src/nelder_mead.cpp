#include "diskineq/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace diskineq {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& opts) {
  const std::size_t dim = start.size();
  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double f = objective(x);
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
  };

  if (dim == 0) {
    result.value = eval(start);
    result.x = std::move(start);
    result.converged = true;
    return result;
  }

  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back({start, eval(start)});
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> x = start;
    x[i] += x[i] != 0.0 ? opts.initial_step * std::max(1.0, std::abs(x[i])) : opts.initial_step;
    const double f = eval(x);
    simplex.push_back({std::move(x), f});
  }

  std::vector<double> centroid(dim);
  auto along = [&](double t, const std::vector<double>& worst) {
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = centroid[i] + t * (worst[i] - centroid[i]);
    return x;
  };

  while (result.evaluations < opts.max_evaluations) {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const Vertex& best = simplex.front();
    const Vertex& worst = simplex.back();

    double diameter = 0.0;
    for (std::size_t k = 1; k <= dim; ++k) {
      for (std::size_t i = 0; i < dim; ++i) diameter = std::max(diameter, std::abs(simplex[k].x[i] - best.x[i]));
    }
    const double spread = worst.f - best.f;
    if (std::isfinite(spread) && spread <= opts.f_tol * (1.0 + std::abs(best.f)) && diameter <= opts.x_tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k].x[i];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    std::vector<double> xr = along(-1.0, worst.x);
    const double fr = eval(xr);
    if (fr < best.f) {
      std::vector<double> xe = along(-2.0, worst.x);
      const double fe = eval(xe);
      simplex.back() = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
      continue;
    }
    if (fr < simplex[dim - 1].f) {
      simplex.back() = {std::move(xr), fr};
      continue;
    }
    const bool outside = fr < worst.f;
    std::vector<double> xc = along(outside ? -0.5 : 0.5, worst.x);
    const double fc = eval(xc);
    if (fc < std::min(fr, worst.f)) {
      simplex.back() = {std::move(xc), fc};
      continue;
    }
    for (std::size_t k = 1; k <= dim; ++k) {
      for (std::size_t i = 0; i < dim; ++i) simplex[k].x[i] = best.x[i] + 0.5 * (simplex[k].x[i] - best.x[i]);
      simplex[k].f = eval(simplex[k].x);
    }
  }

  const auto it = std::min_element(simplex.begin(), simplex.end(),
                                   [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  result.x = it->x;
  result.value = it->f;
  return result;
}

}  // namespace diskineq
