#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sl2flow/controls.hpp"
#include "sl2flow/series.hpp"

namespace sl2flow {

// A prefix-closed set of words sorted by (length, lex). Prefix closure is
// what lets the iterated integrals integrate as one triangular cascade:
// d/dt Y(w.d) = u_d(t) Y(w), so every word only needs its parent (the word
// minus its last letter), which sorts strictly earlier.
class WordSet {
public:
  static WordSet all_up_to(int degree);
  static WordSet closure(const std::vector<Word>& words);

  std::size_t size() const { return words_.size(); }
  Word word(std::size_t i) const { return words_[i]; }
  std::int32_t index_of(Word w) const;          // -1 when absent
  std::int32_t parent(std::size_t i) const { return parent_[i]; }  // -1 only for the empty word
  Letter last(std::size_t i) const { return last_[i]; }

private:
  void finish(std::vector<Word> words);  // sorts, indexes, links parents

  std::vector<Word> words_;
  std::vector<std::int32_t> parent_;
  std::vector<Letter> last_;
  std::unordered_map<Word, std::int32_t, WordHash> index_;
};

struct CascadeOptions {
  // Non-empty: record exactly these instants (must lie in [0, horizon]).
  // Empty: record about max_stored_points nodes, always including 0, the
  // horizon and every channel kink.
  std::vector<double> store_times;
  int max_stored_points = 1025;
};

// Integration grid: uniform nodes refined by every channel kink (no step may
// straddle a discontinuity) and by every requested store time. All
// integrators share this builder so their recorded instants coincide.
struct TimeGrid {
  std::vector<double> nodes;
  std::vector<std::size_t> stored;  // indices into nodes, ascending
};
TimeGrid build_time_grid(const ControlSpec& controls, int steps, const CascadeOptions& options);

// Iterated integrals of every word in a set, recorded on a grid.
struct IteratedIntegralTable {
  WordSet words;
  std::vector<double> times;
  std::vector<double> values;  // row per time, column per word

  double value_at(std::size_t word_idx, std::size_t time_idx) const {
    return values[time_idx * words.size() + word_idx];
  }
  std::size_t time_index(double t) const;  // throws when t is not on the grid
  double value(Word w, double t) const;

  // <series, signature(t)>: sum of coefficient * integral over the terms.
  double evaluate(const NcSeries& s, double t) const;
  std::vector<double> evaluate_path(const NcSeries& s) const;
};

IteratedIntegralTable integrate_cascade(const ControlSpec& controls, const WordSet& words,
                                        int steps, const CascadeOptions& options = {});
IteratedIntegralTable integrate_cascade(const ControlSpec& controls, int degree, int steps,
                                        const CascadeOptions& options = {});

// Evaluations of whole series along the flow without materializing the
// per-word table: one row per series, indexed like `times`. The word state
// lives only inside the integrator, so degree-12 closures stay affordable.
struct GridPath {
  std::vector<double> times;
  std::vector<std::vector<double>> values;
};
GridPath sweep_evaluate(const ControlSpec& controls, const std::vector<const NcSeries*>& series,
                        int steps, const CascadeOptions& options = {});

// Cumulative integral of u_d(s) f(s) on a recorded grid: composite trapezoid
// with one-sided channel evaluation on each cell (kinks are grid nodes in
// every default grid, so the cells are smooth).
std::vector<double> integrate_weighted(const ControlSpec& controls, Letter d,
                                       const std::vector<double>& times,
                                       const std::vector<double>& f);

}  // namespace sl2flow
