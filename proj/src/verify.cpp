#include "sl2flow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sl2flow {

namespace {

Word random_word(std::mt19937_64& rng, int max_len) {
  const int len = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_len)));
  Word w;
  for (int i = 0; i < len; ++i) w = w.append(static_cast<Letter>(uniform_below(rng, 3)));
  return w;
}

double rel_err(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// max relative violation of <u sh v> = <u><v> over random word pairs, all
// recorded instants
double shuffle_homomorphism_error(const ControlSpec& controls, int steps, int pairs,
                                  std::mt19937_64& rng) {
  std::vector<std::pair<Word, Word>> ps;
  std::vector<Word> support;
  std::vector<std::vector<std::pair<Word, long>>> products;
  for (int i = 0; i < pairs; ++i) {
    const Word u = random_word(rng, 4), v = random_word(rng, 4);
    ps.emplace_back(u, v);
    products.push_back(shuffle_words(u, v));
    support.push_back(u);
    support.push_back(v);
    for (const auto& [w, m] : products.back()) support.push_back(w);
  }
  const IteratedIntegralTable table =
      integrate_cascade(controls, WordSet::closure(support), steps);

  double err = 0.0;
  for (std::size_t p = 0; p < ps.size(); ++p) {
    const auto iu = static_cast<std::size_t>(table.words.index_of(ps[p].first));
    const auto iv = static_cast<std::size_t>(table.words.index_of(ps[p].second));
    for (std::size_t row = 0; row < table.times.size(); ++row) {
      double prod = 0.0;
      for (const auto& [w, m] : products[p])
        prod += static_cast<double>(m) *
                table.value_at(static_cast<std::size_t>(table.words.index_of(w)), row);
      err = std::max(err, rel_err(table.value_at(iu, row) * table.value_at(iv, row), prod));
    }
  }
  return err;
}

}  // namespace

VerificationReport run_verification(const VerifyConfig& config) {
  if (config.draws == 0 && !config.controls)
    throw std::invalid_argument("verification needs controls or a positive draw count");

  VerificationReport report;
  report.degree = config.degree;
  report.steps = config.steps;
  report.draws = config.draws;
  report.seed = config.seed;

  const ZSeries z = z_series(config.degree);
  const NcSeries b = NcSeries::monomial(letters::b).with_truncation(config.degree);
  const NcSeries mono_a = NcSeries::monomial(letters::a);
  const NcSeries mono_c = NcSeries::monomial(letters::c);

  auto push = [&](const std::string& name, double err, double tol) {
    report.checks.push_back({name, err, tol, err <= tol});
  };

  // exact symbolic identities (max |coefficient| of the residual series)
  push("fixed_point_residual",
       (z.S - (b - concat_mul(mono_a, concat_mul(z.E, mono_c)))).max_abs_coeff(),
       tolerances::kExact);
  push("triple_identity",
       std::max((b - concat_mul(mono_a, z.Zc) - z.S).max_abs_coeff(),
                (b - concat_mul(z.Za, mono_c) - z.S).max_abs_coeff()),
       tolerances::kExact);
  push("sigma_phi_symmetry",
       std::max({(antipode(flip(z.S)) - z.S).max_abs_coeff(),
                 (antipode(flip(z.Za)) - z.Zc).max_abs_coeff(),
                 (antipode(flip(z.Zc)) - z.Za).max_abs_coeff()}),
       tolerances::kExact);

  std::mt19937_64 rng(config.seed);
  std::vector<ControlSpec> draws;
  if (config.draws > 0) {
    for (int i = 0; i < config.draws; ++i) draws.push_back(random_piecewise(rng, 0.5, 4, 1.0));
  } else {
    draws.push_back(*config.controls);
  }

  double hom_err = 0, xic_err = 0, exp_err = 0, flow_err = 0, ricc_err = 0, deriv_err = 0;
  std::vector<FlowConvention> conventions;

  for (const ControlSpec& controls : draws) {
    hom_err = std::max(
        hom_err, shuffle_homomorphism_error(controls, config.steps, config.shuffle_pairs, rng));

    const WeiNormanPath path = wei_norman_path(controls, z, config.steps);
    const std::vector<double> ic = xi_c_direct(controls, path.times, path.xi_b);

    for (std::size_t i = 0; i < path.times.size(); ++i) {
      xic_err = std::max(xic_err, std::abs(path.xi_c[i] - ic[i]));
      exp_err = std::max(exp_err, std::abs(std::exp(2.0 * path.xi_b[i]) - path.exp_series[i]));
    }

    const FlowCheck fc =
        flow_factorization_check(controls, z, config.steps, tolerances::kFlowOracleStep);
    flow_err = std::max(flow_err, fc.matched_err);
    conventions.push_back(fc.matched);

    for (double y0 : {0.0, 0.5, -0.5}) {
      bool series_escaped = false, oracle_escaped = false;
      std::vector<double> ys, yo;
      try {
        ys.resize(path.times.size());
        for (std::size_t i = 0; i < path.times.size(); ++i) {
          const double den = 1.0 + y0 * ic[i];
          if (den <= 0.0) throw FiniteEscapeError(path.times[i]);
          ys[i] = path.xi_a[i] + y0 * std::exp(2.0 * path.xi_b[i]) / den;
        }
      } catch (const FiniteEscapeError&) {
        series_escaped = true;
      }
      try {
        yo = riccati_rk4(controls, y0, config.steps).y;
      } catch (const FiniteEscapeError&) {
        oracle_escaped = true;
      }
      if (series_escaped != oracle_escaped) {
        ricc_err = std::numeric_limits<double>::infinity();
      } else if (!series_escaped) {
        for (std::size_t i = 0; i < ys.size(); ++i)
          ricc_err = std::max(ricc_err, std::abs(ys[i] - yo[i]));
      }
    }

    const DerivativeResidual dr = wei_norman_derivative_residual(path, controls);
    deriv_err = std::max({deriv_err, dr.max_residual_a, dr.max_residual_b});
  }

  push("shuffle_homomorphism", hom_err, tolerances::kShuffleHom);
  push("xi_c_two_route", xic_err, tolerances::kTwoRoute);
  push("exp_identity", exp_err, tolerances::kTwoRoute);
  push("flow_factorization", flow_err, tolerances::kFlow);
  push("riccati_oracle", ricc_err, tolerances::kRiccati);
  push("derivative_residual", deriv_err, tolerances::kDerivative);

  const bool uniform =
      std::all_of(conventions.begin(), conventions.end(),
                  [&](FlowConvention c) { return c == conventions.front(); });
  report.convention = conventions.empty() ? "" : (uniform ? to_string(conventions.front()) : "mixed");

  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const CheckResult& c) { return c.pass; });
  return report;
}

std::string report_to_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "degree=" << report.degree << " steps=" << report.steps;
  if (report.draws > 0) os << " draws=" << report.draws << " seed=" << report.seed;
  if (!report.convention.empty()) os << " convention=" << report.convention;
  os << "\n";
  for (const auto& c : report.checks) {
    os.setf(std::ios::scientific);
    os.precision(3);
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  max_error=" << c.max_error
       << "  tolerance=" << c.tolerance << "\n";
  }
  os << (report.all_pass ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return os.str();
}

}  // namespace sl2flow
