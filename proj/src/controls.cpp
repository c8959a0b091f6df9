#include "sl2flow/controls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sl2flow {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void validate_channel(const Channel& ch, double horizon) {
  if (const auto* pc = std::get_if<PiecewiseConstant>(&ch)) {
    require(pc->values.size() == pc->breakpoints.size() + 1,
            "piecewise_constant: need one more value than breakpoints");
    double prev = -1.0;
    for (double b : pc->breakpoints) {
      require(std::isfinite(b) && b >= 0.0 && b <= horizon,
              "piecewise_constant: breakpoint outside [0, horizon]");
      require(b > prev, "piecewise_constant: breakpoints must increase strictly");
      prev = b;
    }
    for (double v : pc->values) require(std::isfinite(v), "piecewise_constant: non-finite value");
  } else if (const auto* po = std::get_if<Polynomial>(&ch)) {
    require(!po->coeffs.empty(), "polynomial: empty coefficient list");
    for (double v : po->coeffs) require(std::isfinite(v), "polynomial: non-finite coefficient");
  } else {
    const auto& sa = std::get<Sampled>(ch);
    require(sa.dt > 0.0 && std::isfinite(sa.dt), "sampled: dt must be positive");
    require(sa.values.size() >= 2, "sampled: need at least two samples");
    require(sa.dt * static_cast<double>(sa.values.size() - 1) >= horizon - 1e-12 * horizon,
            "sampled: samples do not cover the horizon");
    for (double v : sa.values) require(std::isfinite(v), "sampled: non-finite sample");
  }
}

double eval_channel(const Channel& ch, double t) {
  if (const auto* pc = std::get_if<PiecewiseConstant>(&ch)) {
    const auto it = std::upper_bound(pc->breakpoints.begin(), pc->breakpoints.end(), t);
    return pc->values[static_cast<std::size_t>(it - pc->breakpoints.begin())];
  }
  if (const auto* po = std::get_if<Polynomial>(&ch)) {
    double v = 0.0;
    for (auto it = po->coeffs.rbegin(); it != po->coeffs.rend(); ++it) v = v * t + *it;
    return v;
  }
  const auto& sa = std::get<Sampled>(ch);
  const auto n = sa.values.size();
  double x = t / sa.dt;
  if (x <= 0.0) return sa.values.front();
  if (x >= static_cast<double>(n - 1)) return sa.values.back();
  const auto i = static_cast<std::size_t>(x);
  const double frac = x - static_cast<double>(i);
  return sa.values[i] + frac * (sa.values[i + 1] - sa.values[i]);
}

}  // namespace

ControlSpec::ControlSpec(double horizon, Channel ua, Channel ub, Channel uc)
    : horizon_(horizon), channels_{std::move(ua), std::move(ub), std::move(uc)} {
  require(std::isfinite(horizon) && horizon > 0.0, "controls: horizon must be positive");
  for (const auto& ch : channels_) validate_channel(ch, horizon_);
}

ControlSpec ControlSpec::constant(double horizon, double ua, double ub, double uc) {
  return ControlSpec(horizon, PiecewiseConstant{{}, {ua}}, PiecewiseConstant{{}, {ub}},
                     PiecewiseConstant{{}, {uc}});
}

double ControlSpec::eval(Letter d, double t) const { return eval_channel(channel(d), t); }

double ControlSpec::eval_in_interval(Letter d, double lo, double hi, double t) const {
  const Channel& ch = channel(d);
  if (std::holds_alternative<PiecewiseConstant>(ch)) return eval_channel(ch, 0.5 * (lo + hi));
  return eval_channel(ch, t);
}

std::vector<double> ControlSpec::kink_times() const {
  std::vector<double> out;
  for (const auto& ch : channels_) {
    if (const auto* pc = std::get_if<PiecewiseConstant>(&ch)) {
      for (double b : pc->breakpoints)
        if (b > 0.0 && b < horizon_) out.push_back(b);
    } else if (const auto* sa = std::get_if<Sampled>(&ch)) {
      for (std::size_t i = 1; sa->dt * static_cast<double>(i) < horizon_; ++i)
        out.push_back(sa->dt * static_cast<double>(i));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  // rejection sampling keeps it unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

ControlSpec random_piecewise(std::mt19937_64& rng, double horizon, int max_pieces,
                             double amplitude) {
  auto make_channel = [&]() {
    const auto pieces = 1 + uniform_below(rng, static_cast<std::uint64_t>(max_pieces));
    PiecewiseConstant pc;
    while (pc.breakpoints.size() + 1 < pieces) {
      pc.breakpoints.clear();
      for (std::uint64_t i = 0; i + 1 < pieces; ++i)
        pc.breakpoints.push_back(uniform(rng, 0.0, horizon));
      std::sort(pc.breakpoints.begin(), pc.breakpoints.end());
      pc.breakpoints.erase(std::unique(pc.breakpoints.begin(), pc.breakpoints.end()),
                           pc.breakpoints.end());
    }
    for (std::uint64_t i = 0; i < pieces; ++i)
      pc.values.push_back(uniform(rng, -amplitude, amplitude));
    return pc;
  };
  Channel ua = make_channel(), ub = make_channel(), uc = make_channel();
  return ControlSpec(horizon, std::move(ua), std::move(ub), std::move(uc));
}

}  // namespace sl2flow
