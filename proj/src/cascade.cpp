#include "sl2flow/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sl2flow {

TimeGrid build_time_grid(const ControlSpec& controls, int steps, const CascadeOptions& options) {
  if (steps < 1) throw std::invalid_argument("integration needs at least one step");
  const double T = controls.horizon();
  const double eps = T * 1e-13;

  std::vector<double> extra = controls.kink_times();
  for (double t : options.store_times) {
    if (t < -eps || t > T + eps)
      throw std::invalid_argument("store time outside [0, horizon]");
    extra.push_back(std::clamp(t, 0.0, T));
  }
  std::sort(extra.begin(), extra.end());

  TimeGrid grid;
  grid.nodes.reserve(static_cast<std::size_t>(steps) + extra.size() + 1);
  std::size_t e = 0;
  for (int i = 0; i <= steps; ++i) {
    const double t = T * static_cast<double>(i) / static_cast<double>(steps);
    while (e < extra.size() && extra[e] < t - eps) {
      if (grid.nodes.empty() || extra[e] > grid.nodes.back() + eps) grid.nodes.push_back(extra[e]);
      ++e;
    }
    while (e < extra.size() && extra[e] <= t + eps) ++e;  // coincides with a node
    grid.nodes.push_back(t);
  }

  const std::size_t n = grid.nodes.size();
  std::vector<char> keep(n, 0);
  if (!options.store_times.empty()) {
    for (double t : options.store_times) {
      const auto it = std::lower_bound(grid.nodes.begin(), grid.nodes.end(), t - eps);
      const auto idx = std::min(static_cast<std::size_t>(it - grid.nodes.begin()), n - 1);
      keep[idx] = 1;
    }
  } else {
    const auto target = static_cast<std::size_t>(std::max(2, options.max_stored_points));
    const std::size_t stride = std::max<std::size_t>(1, n / target);
    for (std::size_t i = 0; i < n; i += stride) keep[i] = 1;
    if (n > 0) keep[n - 1] = 1;  // the horizon is always recorded
    for (double t : controls.kink_times()) {
      const auto it = std::lower_bound(grid.nodes.begin(), grid.nodes.end(), t - eps);
      if (it != grid.nodes.end() && std::abs(*it - t) <= eps)
        keep[static_cast<std::size_t>(it - grid.nodes.begin())] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) grid.stored.push_back(i);
  return grid;
}

namespace {

// Classic RK4 over the triangular word cascade. on_store(row, t, state) fires
// at each recorded node in time order, including t = 0.
template <class F>
void run_cascade(const ControlSpec& controls, const WordSet& words, int steps,
                 const CascadeOptions& options, F&& on_store) {
  const TimeGrid grid = build_time_grid(controls, steps, options);
  const std::size_t n = words.size();

  std::vector<std::int32_t> parent(n);
  std::vector<std::uint8_t> last(n);
  for (std::size_t i = 0; i < n; ++i) {
    parent[i] = words.parent(i);
    last[i] = static_cast<std::uint8_t>(words.last(i));
  }

  std::vector<double> y(n, 0.0), k1(n), k2(n), k3(n), k4(n);
  y[0] = 1.0;  // empty word

  std::size_t row = 0, next = 0;
  auto maybe_store = [&](std::size_t node_idx, double t) {
    if (next < grid.stored.size() && grid.stored[next] == node_idx) {
      on_store(row++, t, y);
      ++next;
    }
  };
  maybe_store(0, grid.nodes[0]);

  for (std::size_t s = 0; s + 1 < grid.nodes.size(); ++s) {
    const double t0 = grid.nodes[s], t1 = grid.nodes[s + 1];
    const double h = t1 - t0, h2 = 0.5 * h, tm = 0.5 * (t0 + t1);
    double u0[3], um[3], u1[3];
    for (int d = 0; d < 3; ++d) {
      const auto l = static_cast<Letter>(d);
      u0[d] = controls.eval_in_interval(l, t0, t1, t0);
      um[d] = controls.eval_in_interval(l, t0, t1, tm);
      u1[d] = controls.eval_in_interval(l, t0, t1, t1);
    }
    k1[0] = k2[0] = k3[0] = k4[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) k1[i] = u0[last[i]] * y[parent[i]];
    for (std::size_t i = 1; i < n; ++i) {
      const auto p = parent[i];
      k2[i] = um[last[i]] * (y[p] + h2 * k1[p]);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const auto p = parent[i];
      k3[i] = um[last[i]] * (y[p] + h2 * k2[p]);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const auto p = parent[i];
      k4[i] = u1[last[i]] * (y[p] + h * k3[p]);
    }
    const double h6 = h / 6.0;
    for (std::size_t i = 1; i < n; ++i)
      y[i] += h6 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    maybe_store(s + 1, t1);
  }
}

}  // namespace

void WordSet::finish(std::vector<Word> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  words_ = std::move(words);
  if (words_.empty() || !words_[0].empty())
    throw std::logic_error("WordSet: missing the empty word");
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i)
    index_.emplace(words_[i], static_cast<std::int32_t>(i));
  parent_.resize(words_.size());
  last_.resize(words_.size());
  parent_[0] = -1;
  last_[0] = Letter::A;
  for (std::size_t i = 1; i < words_.size(); ++i) {
    const auto it = index_.find(words_[i].prefix());
    if (it == index_.end()) throw std::logic_error("WordSet: not prefix-closed");
    parent_[i] = it->second;
    last_[i] = words_[i].back();
  }
}

WordSet WordSet::all_up_to(int degree) {
  if (degree < 0 || degree > Word::kMaxLength)
    throw std::domain_error("WordSet: degree out of range");
  std::vector<Word> words = {Word()};
  std::size_t lo = 0;
  for (int len = 1; len <= degree; ++len) {
    const std::size_t hi = words.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (Letter l : {Letter::A, Letter::B, Letter::C}) words.push_back(words[i].append(l));
    lo = hi;
  }
  WordSet set;
  set.finish(std::move(words));
  return set;
}

WordSet WordSet::closure(const std::vector<Word>& words) {
  std::unordered_map<Word, char, WordHash> seen;
  std::vector<Word> all;
  auto add = [&](Word w) {
    while (seen.emplace(w, 1).second) {
      all.push_back(w);
      if (w.empty()) break;
      w = w.prefix();
    }
  };
  add(Word());
  for (Word w : words) add(w);
  WordSet set;
  set.finish(std::move(all));
  return set;
}

std::int32_t WordSet::index_of(Word w) const {
  const auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

std::size_t IteratedIntegralTable::time_index(double t) const {
  const double eps = 1e-9 * std::max(1.0, std::abs(times.back()));
  const auto it = std::lower_bound(times.begin(), times.end(), t - eps);
  if (it == times.end() || std::abs(*it - t) > eps)
    throw std::invalid_argument("time not on the recorded grid");
  return static_cast<std::size_t>(it - times.begin());
}

double IteratedIntegralTable::value(Word w, double t) const {
  const auto idx = words.index_of(w);
  if (idx < 0) throw std::invalid_argument("word not in the table: '" + w.str() + "'");
  return value_at(static_cast<std::size_t>(idx), time_index(t));
}

double IteratedIntegralTable::evaluate(const NcSeries& s, double t) const {
  const std::size_t row = time_index(t);
  double acc = 0.0;
  for (int n = 0; n <= s.truncation_degree(); ++n)
    for (const auto& [w, cv] : s.grade(n)) {
      const auto idx = words.index_of(w);
      if (idx < 0) throw std::invalid_argument("series word not in the table: '" + w.str() + "'");
      acc += cv.to_double() * value_at(static_cast<std::size_t>(idx), row);
    }
  return acc;
}

std::vector<double> IteratedIntegralTable::evaluate_path(const NcSeries& s) const {
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out[i] = evaluate(s, times[i]);
  return out;
}

IteratedIntegralTable integrate_cascade(const ControlSpec& controls, const WordSet& words,
                                        int steps, const CascadeOptions& options) {
  IteratedIntegralTable table;
  table.words = words;
  run_cascade(controls, table.words, steps, options,
              [&](std::size_t, double t, const std::vector<double>& y) {
                table.times.push_back(t);
                table.values.insert(table.values.end(), y.begin(), y.end());
              });
  return table;
}

IteratedIntegralTable integrate_cascade(const ControlSpec& controls, int degree, int steps,
                                        const CascadeOptions& options) {
  return integrate_cascade(controls, WordSet::all_up_to(degree), steps, options);
}

GridPath sweep_evaluate(const ControlSpec& controls, const std::vector<const NcSeries*>& series,
                        int steps, const CascadeOptions& options) {
  std::vector<Word> support;
  for (const NcSeries* s : series)
    for (int n = 0; n <= s->truncation_degree(); ++n)
      for (const auto& [w, cv] : s->grade(n)) support.push_back(w);
  const WordSet words = WordSet::closure(support);

  // resolve coefficients once; the hot loop is then flat dot products
  std::vector<std::vector<std::pair<std::int32_t, double>>> resolved(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    for (int n = 0; n <= series[k]->truncation_degree(); ++n)
      for (const auto& [w, cv] : series[k]->grade(n))
        resolved[k].emplace_back(words.index_of(w), cv.to_double());
    std::sort(resolved[k].begin(), resolved[k].end());
  }

  GridPath path;
  path.values.resize(series.size());
  run_cascade(controls, words, steps, options,
              [&](std::size_t, double t, const std::vector<double>& y) {
                path.times.push_back(t);
                for (std::size_t k = 0; k < resolved.size(); ++k) {
                  double acc = 0.0;
                  for (const auto& [idx, coeff] : resolved[k]) acc += coeff * y[idx];
                  path.values[k].push_back(acc);
                }
              });
  return path;
}

std::vector<double> integrate_weighted(const ControlSpec& controls, Letter d,
                                       const std::vector<double>& times,
                                       const std::vector<double>& f) {
  if (times.size() != f.size()) throw std::invalid_argument("integrate_weighted: size mismatch");
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double lo = times[i], hi = times[i + 1];
    const double ulo = controls.eval_in_interval(d, lo, hi, lo);
    const double uhi = controls.eval_in_interval(d, lo, hi, hi);
    out[i + 1] = out[i] + 0.5 * (hi - lo) * (ulo * f[i] + uhi * f[i + 1]);
  }
  return out;
}

}  // namespace sl2flow
