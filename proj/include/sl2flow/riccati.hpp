#pragma once

#include <stdexcept>

#include "sl2flow/cascade.hpp"
#include "sl2flow/hall.hpp"

namespace sl2flow {

// Evaluated coordinate paths: xi_a = <Za, sig(t)>, xi_b = <S, sig(t)>,
// xi_c = <Zc, sig(t)> on a shared recorded grid.
struct WeiNormanPath {
  int degree = 0;
  std::vector<double> times;
  std::vector<double> xi_a, xi_b, xi_c;
  std::vector<double> exp_series;  // <exp_sh(2S), sig(t)>, populated through degree-1
};

WeiNormanPath wei_norman_path(const ControlSpec& controls, const ZSeries& z, int steps,
                              const CascadeOptions& options = {});

// Direct quadrature route to xi_c: the integral of u_c(s) e^{2 f(s)} where f
// is the evaluated main series; agreement with <Zc, sig> is a two-route check.
std::vector<double> xi_c_direct(const ControlSpec& controls, const std::vector<double>& times,
                                const std::vector<double>& xi_b);

// The scalar Riccati equation y' = u_a + 2 u_b y - u_c y^2 blows up in finite
// time when the denominator 1 + y0 * integral(u_c e^{2 xi_b}) reaches zero.
class FiniteEscapeError : public std::runtime_error {
public:
  explicit FiniteEscapeError(double t);
  double escape_time;
};

struct ScalarPath {
  std::vector<double> times;
  std::vector<double> y;
};

// Closed-form solution along the recorded grid,
//   y(t) = xi_a(t) + y0 e^{2 xi_b(t)} / (1 + y0 * int_0^t u_c e^{2 xi_b}).
// Throws FiniteEscapeError at the first grid time where the denominator
// vanishes or changes sign.
ScalarPath riccati_series(const ControlSpec& controls, const ZSeries& z, double y0, int steps,
                          const CascadeOptions& options = {});
ScalarPath riccati_series(const ControlSpec& controls, double y0, int degree, int steps,
                          const CascadeOptions& options = {});

// Reference RK4 integration of the same equation, recorded on the same kind
// of grid. Throws FiniteEscapeError when |y| leaves a generous bound.
ScalarPath riccati_rk4(const ControlSpec& controls, double y0, int steps,
                       const CascadeOptions& options = {});

// Wei-Norman consistency of an evaluated path by central differences
// (non-uniform three-point stencils), skipping windows containing channel
// kinks:  xi_a' = u_a + 2 u_b xi_a - u_c xi_a^2,  xi_b' = u_b - u_c xi_a.
struct DerivativeResidual {
  double max_residual_a = 0.0;
  double max_residual_b = 0.0;
  int windows_checked = 0;
};
DerivativeResidual wei_norman_derivative_residual(const WeiNormanPath& path,
                                                  const ControlSpec& controls);

// --- 2x2 matrix flows -------------------------------------------------------

struct Mat2 {
  double m[2][2]{};
  static Mat2 identity();
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend Mat2 operator-(const Mat2& x, const Mat2& y);
  double frobenius() const;
};

// Generators solving [Ma,Mb] = 2Ma, [Ma,Mc] = -Mb, [Mb,Mc] = 2Mc: found by a
// deterministic sign search over the standard nilpotent/diagonal candidates
// and validated in exact integer arithmetic.
struct Sl2Rep {
  int a[2][2], b[2][2], c[2][2];
  Mat2 mat(Letter d) const;
};
Sl2Rep make_sl2_rep();

// One-parameter flows of the generators (closed forms; rep-specific).
Mat2 exp_a(double xi);
Mat2 exp_b(double xi);
Mat2 exp_c(double xi);

enum class FlowConvention { kLeft, kRight };
const char* to_string(FlowConvention c);

// Factorization check at one control draw. The left convention integrates
// X' = M(t) X and compares against exp_a * exp_b * exp_c of the evaluated
// coordinates; the right convention integrates X' = X M(t) and compares
// against exp_c * exp_b * exp_a. Errors are maxima of Frobenius norms over
// the recorded grid.
struct FlowCheck {
  double err_left = 0.0;
  double err_right = 0.0;
  FlowConvention matched = FlowConvention::kLeft;  // the smaller error
  double matched_err = 0.0;
  double other_err = 0.0;
  bool decisive(double tol) const { return matched_err <= tol && other_err > tol; }
};
FlowCheck flow_factorization_check(const ControlSpec& controls, const ZSeries& z,
                                   int cascade_steps, double oracle_step,
                                   const CascadeOptions& options = {});

}  // namespace sl2flow
