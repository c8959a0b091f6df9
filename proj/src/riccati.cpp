#include "sl2flow/riccati.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace sl2flow {

WeiNormanPath wei_norman_path(const ControlSpec& controls, const ZSeries& z, int steps,
                              const CascadeOptions& options) {
  const GridPath g = sweep_evaluate(controls, {&z.Za, &z.S, &z.Zc, &z.E}, steps, options);
  WeiNormanPath path;
  path.degree = z.degree;
  path.times = g.times;
  path.xi_a = g.values[0];
  path.xi_b = g.values[1];
  path.xi_c = g.values[2];
  path.exp_series = g.values[3];
  return path;
}

std::vector<double> xi_c_direct(const ControlSpec& controls, const std::vector<double>& times,
                                const std::vector<double>& xi_b) {
  std::vector<double> f(xi_b.size());
  for (std::size_t i = 0; i < xi_b.size(); ++i) f[i] = std::exp(2.0 * xi_b[i]);
  return integrate_weighted(controls, Letter::C, times, f);
}

FiniteEscapeError::FiniteEscapeError(double t)
    : std::runtime_error("finite escape time near t = " + std::to_string(t)), escape_time(t) {}

ScalarPath riccati_series(const ControlSpec& controls, const ZSeries& z, double y0, int steps,
                          const CascadeOptions& options) {
  // The denominator quadrature runs over the recorded rows, so they must stay
  // dense no matter how few instants the caller asked for: evaluate on the
  // union with a uniform grid, filter the requested rows at the end.
  const double T = controls.horizon();
  CascadeOptions dense = options;
  if (!options.store_times.empty()) {
    const int n = std::max(options.max_stored_points, 1024);
    for (int i = 0; i <= n; ++i)
      dense.store_times.push_back(T * static_cast<double>(i) / static_cast<double>(n));
    std::sort(dense.store_times.begin(), dense.store_times.end());
  }

  const GridPath g = sweep_evaluate(controls, {&z.Za, &z.S}, steps, dense);
  const std::vector<double>& xi_a = g.values[0];
  const std::vector<double>& xi_b = g.values[1];
  const std::vector<double> ic = xi_c_direct(controls, g.times, xi_b);

  ScalarPath out;
  out.times = g.times;
  out.y.resize(g.times.size());
  for (std::size_t i = 0; i < g.times.size(); ++i) {
    const double den = 1.0 + y0 * ic[i];
    if (den <= 0.0) {
      // linear root of the denominator inside the offending cell (den(0) = 1)
      const double t1 = out.times[i];
      double t = t1;
      if (i > 0) {
        const double t0 = out.times[i - 1];
        const double d0 = 1.0 + y0 * ic[i - 1];
        if (d0 != den) t = t0 + (t1 - t0) * d0 / (d0 - den);
      }
      throw FiniteEscapeError(t);
    }
    out.y[i] = xi_a[i] + y0 * std::exp(2.0 * xi_b[i]) / den;
  }

  if (!options.store_times.empty()) {
    const double eps = 1e-9 * std::max(1.0, T);
    std::vector<double> want = options.store_times;
    for (double& t : want) t = std::clamp(t, 0.0, T);
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end(),
                           [&](double x, double y) { return std::abs(x - y) <= eps; }),
               want.end());
    ScalarPath sel;
    std::size_t j = 0;
    for (std::size_t i = 0; i < out.times.size() && j < want.size(); ++i) {
      while (j < want.size() && want[j] <= out.times[i] + eps) {
        if (std::abs(want[j] - out.times[i]) <= eps) {
          sel.times.push_back(out.times[i]);
          sel.y.push_back(out.y[i]);
        }
        ++j;
      }
    }
    return sel;
  }
  return out;
}

ScalarPath riccati_series(const ControlSpec& controls, double y0, int degree, int steps,
                          const CascadeOptions& options) {
  return riccati_series(controls, z_series(degree), y0, steps, options);
}

ScalarPath riccati_rk4(const ControlSpec& controls, double y0, int steps,
                       const CascadeOptions& options) {
  const TimeGrid grid = build_time_grid(controls, steps, options);
  constexpr double kEscapeBound = 1e9;

  ScalarPath out;
  double y = y0;
  std::size_t next = 0;
  auto maybe_store = [&](std::size_t node, double t) {
    if (next < grid.stored.size() && grid.stored[next] == node) {
      out.times.push_back(t);
      out.y.push_back(y);
      ++next;
    }
  };
  maybe_store(0, grid.nodes[0]);
  for (std::size_t s = 0; s + 1 < grid.nodes.size(); ++s) {
    const double t0 = grid.nodes[s], t1 = grid.nodes[s + 1];
    const double h = t1 - t0, tm = 0.5 * (t0 + t1);
    auto u = [&](double t) {
      return std::array<double, 3>{controls.eval_in_interval(Letter::A, t0, t1, t),
                                   controls.eval_in_interval(Letter::B, t0, t1, t),
                                   controls.eval_in_interval(Letter::C, t0, t1, t)};
    };
    const auto u0 = u(t0), um = u(tm), u1 = u(t1);
    auto f = [](const std::array<double, 3>& uu, double yy) {
      return uu[0] + 2.0 * uu[1] * yy - uu[2] * yy * yy;
    };
    const double k1 = f(u0, y);
    const double k2 = f(um, y + 0.5 * h * k1);
    const double k3 = f(um, y + 0.5 * h * k2);
    const double k4 = f(u1, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
    if (!std::isfinite(y) || std::abs(y) > kEscapeBound) throw FiniteEscapeError(t1);
    maybe_store(s + 1, t1);
  }
  return out;
}

DerivativeResidual wei_norman_derivative_residual(const WeiNormanPath& path,
                                                  const ControlSpec& controls) {
  const std::vector<double> kinks = controls.kink_times();
  auto kink_inside = [&](double lo, double hi) {
    auto it = std::upper_bound(kinks.begin(), kinks.end(), lo);
    return it != kinks.end() && *it < hi;
  };

  DerivativeResidual res;
  const auto& t = path.times;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (kink_inside(t[i - 1], t[i + 1])) continue;
    const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
    auto ddt = [&](const std::vector<double>& f) {
      // second-order three-point derivative on a non-uniform stencil
      return (f[i + 1] * h0 * h0 - f[i - 1] * h1 * h1 + f[i] * (h1 * h1 - h0 * h0)) /
             (h0 * h1 * (h0 + h1));
    };
    const double ua = controls.eval(Letter::A, t[i]);
    const double ub = controls.eval(Letter::B, t[i]);
    const double uc = controls.eval(Letter::C, t[i]);
    const double xa = path.xi_a[i];
    res.max_residual_a =
        std::max(res.max_residual_a, std::abs(ddt(path.xi_a) - (ua + 2.0 * ub * xa - uc * xa * xa)));
    res.max_residual_b = std::max(res.max_residual_b, std::abs(ddt(path.xi_b) - (ub - uc * xa)));
    ++res.windows_checked;
  }
  return res;
}

// --- 2x2 matrix flows -------------------------------------------------------

Mat2 Mat2::identity() {
  Mat2 r;
  r.m[0][0] = r.m[1][1] = 1.0;
  return r;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
  return r;
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][j] - y.m[i][j];
  return r;
}

double Mat2::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += m[i][j] * m[i][j];
  return std::sqrt(s);
}

Mat2 Sl2Rep::mat(Letter d) const {
  const int(*src)[2] = d == Letter::A ? a : d == Letter::B ? b : c;
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = static_cast<double>(src[i][j]);
  return r;
}

namespace {

struct IMat {
  int m[2][2];
};

IMat imul(const IMat& x, const IMat& y) {
  IMat r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
  return r;
}

IMat icomm(const IMat& x, const IMat& y) {
  const IMat xy = imul(x, y), yx = imul(y, x);
  IMat r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = xy.m[i][j] - yx.m[i][j];
  return r;
}

bool ieq_scaled(const IMat& x, int k, const IMat& y) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (x.m[i][j] != k * y.m[i][j]) return false;
  return true;
}

}  // namespace

Sl2Rep make_sl2_rep() {
  // Deterministic sign search over the standard candidates; the bracket
  // relations are checked exactly in integers, so a wrong pick cannot slip
  // through.
  for (int sa : {1, -1})
    for (int sb : {1, -1})
      for (int sc : {1, -1}) {
        const IMat ma = {{{0, sa}, {0, 0}}};
        const IMat mb = {{{sb, 0}, {0, -sb}}};
        const IMat mc = {{{0, 0}, {sc, 0}}};
        if (!ieq_scaled(icomm(ma, mb), 2, ma)) continue;
        if (!ieq_scaled(icomm(ma, mc), -1, mb)) continue;
        if (!ieq_scaled(icomm(mb, mc), 2, mc)) continue;
        Sl2Rep rep;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            rep.a[i][j] = ma.m[i][j];
            rep.b[i][j] = mb.m[i][j];
            rep.c[i][j] = mc.m[i][j];
          }
        return rep;
      }
  throw std::logic_error("no 2x2 sign assignment satisfies the bracket relations");
}

Mat2 exp_a(double xi) {
  Mat2 r = Mat2::identity();
  r.m[0][1] = xi;  // nilpotent: I + xi Ma
  return r;
}

Mat2 exp_b(double xi) {
  Mat2 r;
  r.m[0][0] = std::exp(-xi);  // Mb = diag(-1, 1)
  r.m[1][1] = std::exp(xi);
  return r;
}

Mat2 exp_c(double xi) {
  Mat2 r = Mat2::identity();
  r.m[1][0] = xi;  // nilpotent: I + xi Mc
  return r;
}

const char* to_string(FlowConvention c) { return c == FlowConvention::kLeft ? "left" : "right"; }

FlowCheck flow_factorization_check(const ControlSpec& controls, const ZSeries& z,
                                   int cascade_steps, double oracle_step,
                                   const CascadeOptions& options) {
  const WeiNormanPath path = wei_norman_path(controls, z, cascade_steps, options);

  const Sl2Rep rep = make_sl2_rep();
  const Mat2 ma = rep.mat(Letter::A), mb = rep.mat(Letter::B), mc = rep.mat(Letter::C);

  // matrix oracle on the same recorded instants
  CascadeOptions oracle_options;
  oracle_options.store_times = path.times;
  const int oracle_steps =
      std::max(1, static_cast<int>(std::ceil(controls.horizon() / oracle_step)));
  const TimeGrid grid = build_time_grid(controls, oracle_steps, oracle_options);

  std::vector<Mat2> left_states, right_states;
  Mat2 xl = Mat2::identity(), xr = Mat2::identity();
  std::size_t next = 0;
  auto maybe_store = [&](std::size_t node) {
    if (next < grid.stored.size() && grid.stored[next] == node) {
      left_states.push_back(xl);
      right_states.push_back(xr);
      ++next;
    }
  };
  auto m_at = [&](double lo, double hi, double t) {
    const double ua = controls.eval_in_interval(Letter::A, lo, hi, t);
    const double ub = controls.eval_in_interval(Letter::B, lo, hi, t);
    const double uc = controls.eval_in_interval(Letter::C, lo, hi, t);
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.m[i][j] = ua * ma.m[i][j] + ub * mb.m[i][j] + uc * mc.m[i][j];
    return r;
  };
  auto rk4_step = [](Mat2& x, const Mat2& m0, const Mat2& mm, const Mat2& m1, double h,
                     bool left) {
    auto mul = [&](const Mat2& coeff, const Mat2& state) { return left ? coeff * state : state * coeff; };
    auto axpy = [&](const Mat2& x0, double a, const Mat2& k) {
      Mat2 r;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = x0.m[i][j] + a * k.m[i][j];
      return r;
    };
    const Mat2 k1 = mul(m0, x);
    const Mat2 k2 = mul(mm, axpy(x, 0.5 * h, k1));
    const Mat2 k3 = mul(mm, axpy(x, 0.5 * h, k2));
    const Mat2 k4 = mul(m1, axpy(x, h, k3));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        x.m[i][j] += h / 6.0 * (k1.m[i][j] + 2.0 * (k2.m[i][j] + k3.m[i][j]) + k4.m[i][j]);
  };

  maybe_store(0);
  for (std::size_t s = 0; s + 1 < grid.nodes.size(); ++s) {
    const double t0 = grid.nodes[s], t1 = grid.nodes[s + 1], h = t1 - t0;
    const Mat2 m0 = m_at(t0, t1, t0), mm = m_at(t0, t1, 0.5 * (t0 + t1)), m1 = m_at(t0, t1, t1);
    rk4_step(xl, m0, mm, m1, h, /*left=*/true);
    rk4_step(xr, m0, mm, m1, h, /*left=*/false);
    maybe_store(s + 1);
  }

  FlowCheck check;
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const Mat2 ea = exp_a(path.xi_a[i]), eb = exp_b(path.xi_b[i]), ec = exp_c(path.xi_c[i]);
    // left candidate: X' = M X factored in ascending letter order;
    // right candidate: X' = X M factored in descending order, matching the
    // cascade convention of appending letters on the right
    check.err_left = std::max(check.err_left, (left_states[i] - ea * eb * ec).frobenius());
    check.err_right = std::max(check.err_right, (right_states[i] - ec * eb * ea).frobenius());
  }
  check.matched = check.err_left <= check.err_right ? FlowConvention::kLeft : FlowConvention::kRight;
  check.matched_err = std::min(check.err_left, check.err_right);
  check.other_err = std::max(check.err_left, check.err_right);
  return check;
}

}  // namespace sl2flow
