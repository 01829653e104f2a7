#include "pbr/field/jet_field.hpp"

#include <cmath>
#include <memory>

#include "pbr/errors.hpp"
#include "pbr/field/grid.hpp"

namespace pbr::field {

JetField::JetField(Domain2 domain, Eval eval, Provenance provenance, int max_order)
    : domain_(domain), eval_(std::move(eval)), provenance_(provenance), max_order_(max_order) {}

Jet JetField::jet(double p, double q, int order) const {
  if (order < 0 || order > max_order_) {
    throw BoundsError("jet order " + std::to_string(order) + " exceeds the field's available order " +
                      std::to_string(max_order_));
  }
  return eval_(p, q, order);
}

void require_same_domain(const JetField& a, const JetField& b) {
  if (!(a.domain() == b.domain())) throw DomainMismatch("fields live on different domains");
}

namespace {

Provenance combine(const JetField& a, const JetField& b) {
  return a.analytic() && b.analytic() ? Provenance::analytic : Provenance::sampled;
}

int min_order(const JetField& a, const JetField& b) { return std::min(a.max_order(), b.max_order()); }

}  // namespace

JetField constant(const Domain2& d, double c) {
  return JetField(d, [c](double, double, int k) { return Jet::constant(c, k); });
}

JetField coord_p(const Domain2& d) {
  return JetField(d, [](double p, double, int k) { return Jet::variable_p(p, k); });
}

JetField coord_q(const Domain2& d) {
  return JetField(d, [](double, double q, int k) { return Jet::variable_q(q, k); });
}

JetField of_p(const Domain2& d, Univariate f) {
  return JetField(d, [f = std::move(f)](double p, double, int k) {
    return compose(f(p), Jet::variable_p(p, k));
  });
}

JetField of_q(const Domain2& d, Univariate f) {
  return JetField(d, [f = std::move(f)](double, double q, int k) {
    return compose(f(q), Jet::variable_q(q, k));
  });
}

JetField apply(Univariate f, const JetField& x) {
  return JetField(
      x.domain(),
      [f = std::move(f), x](double p, double q, int k) {
        const Jet j = x.jet(p, q, k);
        return compose(f(j.value()), j);
      },
      x.provenance(), x.max_order());
}

Derivs sin_derivs(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return {s, c, -s, -c, s};
}

Derivs cos_derivs(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return {c, -s, -c, s, c};
}

JetField sin(const JetField& x) { return field::apply(sin_derivs, x); }
JetField cos(const JetField& x) { return field::apply(cos_derivs, x); }

JetField operator+(const JetField& a, const JetField& b) {
  require_same_domain(a, b);
  return JetField(
      a.domain(), [a, b](double p, double q, int k) { return a.jet(p, q, k) + b.jet(p, q, k); },
      combine(a, b), min_order(a, b));
}

JetField operator-(const JetField& a, const JetField& b) {
  require_same_domain(a, b);
  return JetField(
      a.domain(), [a, b](double p, double q, int k) { return a.jet(p, q, k) - b.jet(p, q, k); },
      combine(a, b), min_order(a, b));
}

JetField operator*(const JetField& a, const JetField& b) {
  require_same_domain(a, b);
  return JetField(
      a.domain(), [a, b](double p, double q, int k) { return a.jet(p, q, k) * b.jet(p, q, k); },
      combine(a, b), min_order(a, b));
}

JetField operator*(double s, const JetField& a) {
  return JetField(
      a.domain(), [s, a](double p, double q, int k) { return s * a.jet(p, q, k); },
      a.provenance(), a.max_order());
}

JetField operator-(const JetField& a) { return -1.0 * a; }

Eigen::ArrayXXd sample(const JetField& f) {
  const Domain2& d = f.domain();
  Eigen::ArrayXXd out(d.n, d.n);
  parallel_for(d.n, [&](int j) {
    const double q = d.q(j);
    for (int i = 0; i < d.n; ++i) out(i, j) = f.jet(d.p(i), q, 0).value();
  });
  return out;
}

std::vector<double> central_weights(int m) {
  if (m < 1 || m > 4) throw BoundsError("finite-difference order must lie in [1, 4]");
  const int r = m <= 2 ? 2 : 3;
  const int npts = 2 * r + 1;
  // Fornberg's recursion for weights at x0 = 0 on nodes -r..r.
  std::vector<double> x(static_cast<std::size_t>(npts));
  for (int k = 0; k < npts; ++k) x[static_cast<std::size_t>(k)] = k - r;
  std::vector<std::vector<double>> c(static_cast<std::size_t>(npts),
                                     std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1, c4 = x[0];
  c[0][0] = 1;
  for (int i = 1; i < npts; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1;
    const double c5 = c4;
    c4 = x[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(npts));
  for (int k = 0; k < npts; ++k) w[static_cast<std::size_t>(k)] = c[k][m];
  return w;
}

namespace {

// Applies the m-th difference operator along one axis (0 = p, 1 = q).
Eigen::ArrayXXd difference(const Eigen::ArrayXXd& a, int m, int axis, const Domain2& d) {
  if (m == 0) return a;
  const std::vector<double> w = central_weights(m);
  const int r = static_cast<int>(w.size() / 2);
  const double h = axis == 0 ? d.hp() : d.hq();
  const double scale = 1.0 / std::pow(h, m);
  const int n = d.n;
  Eigen::ArrayXXd out = Eigen::ArrayXXd::Zero(n, n);
  parallel_for(n, [&](int j) {
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int k = -r; k <= r; ++k) {
        int ii = i, jj = j;
        (axis == 0 ? ii : jj) += k;
        int& idx = axis == 0 ? ii : jj;
        if (d.periodic()) {
          idx = ((idx % n) + n) % n;
        } else if (idx < 0 || idx >= n) {
          continue;
        }
        s += w[static_cast<std::size_t>(k + r)] * a(ii, jj);
      }
      out(i, j) = s * scale;
    }
  });
  return out;
}

struct SampledData {
  Domain2 domain;
  std::array<Eigen::ArrayXXd, Jet::kSize> deriv;  // normalized Taylor coefficients

  double at(int k, int i, int j) const {
    const int n = domain.n;
    if (domain.periodic()) {
      i = ((i % n) + n) % n;
      j = ((j % n) + n) % n;
    } else if (i < 0 || j < 0 || i >= n || j >= n) {
      return 0.0;
    }
    return deriv[static_cast<std::size_t>(k)](i, j);
  }
};

// Cubic Lagrange weights for the nodes -1, 0, 1, 2 at offset t in [0, 1).
std::array<double, 4> lagrange4(double t) {
  return {-t * (t - 1) * (t - 2) / 6, (t + 1) * (t - 1) * (t - 2) / 2, -(t + 1) * t * (t - 2) / 2,
          (t + 1) * t * (t - 1) / 6};
}

}  // namespace

JetField sampled_field(const Domain2& d, const Eigen::ArrayXXd& values) {
  if (values.rows() != d.n || values.cols() != d.n) {
    throw DomainMismatch("sample array is not n x n for the given domain");
  }
  auto data = std::make_shared<SampledData>();
  data->domain = d;
  static constexpr double kFact[] = {1, 1, 2, 6, 24};
  for (int i = 0; i <= Jet::kMaxOrder; ++i) {
    const Eigen::ArrayXXd dp = difference(values, i, 0, d);
    for (int j = 0; i + j <= Jet::kMaxOrder; ++j) {
      data->deriv[static_cast<std::size_t>(Jet::index(i, j))] = difference(dp, j, 1, d) / (kFact[i] * kFact[j]);
    }
  }
  auto eval = [data](double p, double q, int order) {
    const Domain2& dom = data->domain;
    const double x = (p - dom.p0) / dom.hp();
    const double y = (q - dom.q0) / dom.hq();
    const double xi = std::floor(x), yj = std::floor(y);
    const double tx = x - xi, ty = y - yj;
    const int i0 = static_cast<int>(xi), j0 = static_cast<int>(yj);
    Jet out(order);
    constexpr double kNodeTol = 1e-9;
    const bool on_x = tx < kNodeTol || tx > 1 - kNodeTol;
    const bool on_y = ty < kNodeTol || ty > 1 - kNodeTol;
    if (on_x && on_y) {
      const int i = static_cast<int>(std::lround(x)), j = static_cast<int>(std::lround(y));
      for (int d1 = 0; d1 <= order; ++d1)
        for (int b = 0; b <= d1; ++b) out.coeff(d1 - b, b) = data->at(Jet::index(d1 - b, b), i, j);
      return out;
    }
    const auto wx = lagrange4(tx), wy = lagrange4(ty);
    for (int d1 = 0; d1 <= order; ++d1) {
      for (int b = 0; b <= d1; ++b) {
        const int k = Jet::index(d1 - b, b);
        double s = 0;
        for (int a = 0; a < 4; ++a)
          for (int c = 0; c < 4; ++c) s += wx[a] * wy[c] * data->at(k, i0 - 1 + a, j0 - 1 + c);
        out.coeff(d1 - b, b) = s;
      }
    }
    return out;
  };
  return JetField(d, eval, Provenance::sampled, Jet::kMaxOrder);
}

}  // namespace pbr::field
