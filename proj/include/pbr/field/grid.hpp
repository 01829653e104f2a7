#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>

#include "pbr/field/domain.hpp"

namespace pbr::field {

/// Cap on worker threads used by grid sweeps (0 = hardware concurrency).
/// Results never depend on this value.
void set_thread_count(int threads);
int thread_count();

/// Runs body(k) for k in [0, count) over contiguous static chunks.
void parallel_for(int count, const std::function<void(int)>& body);

/// Pairwise (tree) summation; the association order depends only on n.
double pairwise_sum(const double* x, std::size_t n);

/// Sum of all entries: pairwise per column, then pairwise over columns.
double grid_sum(const Eigen::ArrayXXd& a);

/// Integral over the domain by the rectangle rule.  On the torus this is the
/// trapezoid rule; on a rectangle it is exact up to the boundary terms, which
/// vanish for compactly supported integrands.
double integrate(const Eigen::ArrayXXd& a, const Domain2& d);

struct Extrema {
  double max = 0, min = 0;
  int imax = 0, jmax = 0, imin = 0, jmin = 0;
  double osc() const { return max - min; }
  double norm() const { return max > -min ? max : -min; }
};

/// Node extrema; ties resolve to the first node in column-major order.
Extrema extrema(const Eigen::ArrayXXd& a);

}  // namespace pbr::field
