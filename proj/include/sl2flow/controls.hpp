#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "sl2flow/word.hpp"

namespace sl2flow {

// One control channel on [0, horizon].

struct PiecewiseConstant {
  std::vector<double> breakpoints;  // strictly increasing, within [0, horizon]
  std::vector<double> values;       // breakpoints.size()+1 pieces, right-open intervals
};

struct Polynomial {
  std::vector<double> coeffs;  // c0 + c1 t + c2 t^2 + ...
};

struct Sampled {
  double dt = 0.0;             // uniform spacing from t = 0
  std::vector<double> values;  // linear interpolation between samples
};

using Channel = std::variant<PiecewiseConstant, Polynomial, Sampled>;

// The three input channels u_a, u_b, u_c on a common horizon. Validated on
// construction (finite values, ordered breakpoints, sampled range covering
// the horizon).
class ControlSpec {
public:
  ControlSpec(double horizon, Channel ua, Channel ub, Channel uc);

  static ControlSpec constant(double horizon, double ua, double ub, double uc);

  double horizon() const { return horizon_; }
  const Channel& channel(Letter d) const { return channels_[static_cast<int>(d)]; }

  double eval(Letter d, double t) const;

  // Channel value for integrator stages inside a kink-free interval
  // [lo, hi]: piecewise-constant channels answer with the midpoint piece so a
  // stage landing exactly on a seam cannot read the wrong side.
  double eval_in_interval(Letter d, double lo, double hi, double t) const;

  // Interior times where any channel is non-smooth (breakpoints, sample
  // nodes); sorted, deduplicated, strictly inside (0, horizon).
  std::vector<double> kink_times() const;

private:
  double horizon_;
  std::array<Channel, 3> channels_;
};

// Platform-stable uniforms (the standard distributions are not bit-stable
// across library implementations, and seeded runs must be reproducible).
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

// Random piecewise-constant controls: each channel independently gets
// 1..max_pieces pieces with values in [-amplitude, amplitude].
ControlSpec random_piecewise(std::mt19937_64& rng, double horizon, int max_pieces,
                             double amplitude);

}  // namespace sl2flow
