#include "pbr/field/grid.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace pbr::field {

namespace {

std::atomic<int> g_threads{0};

}  // namespace

void set_thread_count(int threads) { g_threads = threads < 0 ? 0 : threads; }

int thread_count() {
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int cap = g_threads.load();
  return cap == 0 ? hw : cap;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(static_cast<long>(count) * w / workers);
    const int end = static_cast<int>(static_cast<long>(count) * (w + 1) / workers);
    pool.emplace_back([&, w, begin, end] {
      try {
        for (int k = begin; k < end; ++k) body(k);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t k = 0; k < n; ++k) s += x[k];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double grid_sum(const Eigen::ArrayXXd& a) {
  std::vector<double> cols(static_cast<std::size_t>(a.cols()));
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    cols[static_cast<std::size_t>(j)] = pairwise_sum(a.col(j).data(), static_cast<std::size_t>(a.rows()));
  return pairwise_sum(cols.data(), cols.size());
}

double integrate(const Eigen::ArrayXXd& a, const Domain2& d) { return grid_sum(a) * d.cell_area(); }

Extrema extrema(const Eigen::ArrayXXd& a) {
  Extrema e;
  Eigen::Index imax, jmax, imin, jmin;
  e.max = a.maxCoeff(&imax, &jmax);
  e.min = a.minCoeff(&imin, &jmin);
  e.imax = static_cast<int>(imax);
  e.jmax = static_cast<int>(jmax);
  e.imin = static_cast<int>(imin);
  e.jmin = static_cast<int>(jmin);
  return e;
}

}  // namespace pbr::field
