#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "sl2flow/hall.hpp"
#include "sl2flow/json_io.hpp"
#include "sl2flow/riccati.hpp"
#include "sl2flow/verify.hpp"

namespace py = pybind11;
using namespace sl2flow;

namespace {

ControlSpec parse_controls(const std::string& text) {
  return controls_from_json(Json::parse(text));
}

const NcSeries& pick_series(const ZSeries& z, const std::string& which) {
  if (which == "S") return z.S;
  if (which == "Za") return z.Za;
  if (which == "Zb") return z.Zb;
  if (which == "Zc") return z.Zc;
  if (which == "E") return z.E;
  throw std::invalid_argument("unknown series '" + which + "' (want S, Za, Zb, Zc or E)");
}

long long gamma_as_int(const Rational& g) {
  // gamma values are signed powers of two; they stay far inside 64 bits for
  // any legal word length
  return std::stoll(g.num_str());
}

CascadeOptions options_for(const std::vector<double>& times) {
  CascadeOptions opt;
  opt.store_times = times;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact coordinate series and numeric flows of the rank-one Lie-Scheffers system";
  m.attr("__version__") = "1.0.0";

  py::register_exception<FiniteEscapeError>(m, "FiniteEscapeError", PyExc_RuntimeError);

  m.def(
      "hall_words",
      [](const std::string& kind, int max_length) {
        const HallTable table = gen_hall(max_length);
        std::vector<std::vector<std::string>> out;
        for (int n = 1; n <= max_length; ++n) {
          std::vector<std::string> level;
          if (kind == "b") {
            for (Word w : table.b_words[static_cast<std::size_t>(n)]) level.push_back(w.str());
          } else if (kind == "c") {
            for (Word w : table.c_words[static_cast<std::size_t>(n)]) level.push_back(w.str());
          } else if (kind == "a") {
            for (Word w : table.a_words(n)) level.push_back(w.str());
          } else {
            throw std::invalid_argument("kind must be 'a', 'b' or 'c'");
          }
          out.push_back(std::move(level));
        }
        return out;
      },
      py::arg("kind"), py::arg("max_length"),
      "Hall words per length (index 0 = length 1), each level in descending Hall order.");

  m.def(
      "gamma_b",
      [](const std::string& word) {
        const Word w = Word::parse(word);
        return gamma_as_int(gamma_b(gen_hall(w.length()), w));
      },
      py::arg("word"));
  m.def(
      "gamma_c",
      [](const std::string& word) {
        const Word w = Word::parse(word);
        return gamma_as_int(gamma_c(gen_hall(w.length()), w));
      },
      py::arg("word"));
  m.def(
      "gamma_a",
      [](const std::vector<std::string>& parts) {
        std::vector<Word> ps;
        int len = 1;
        for (const auto& p : parts) {
          ps.push_back(Word::parse(p));
          len += ps.back().length();
        }
        return gamma_as_int(gamma_a(gen_hall(len), ps));
      },
      py::arg("parts"), "Coefficient of an a-type tuple; the empty tuple is the bare letter a.");

  m.def(
      "series",
      [](const std::string& which, int degree) {
        const ZSeries z = z_series(degree);
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& [w, cv] : pick_series(z, which).sorted_terms())
          out.emplace_back(w.str(), cv.num_str(), cv.den_str());
        return out;
      },
      py::arg("which"), py::arg("degree"),
      "Exact terms of S, Za, Zb, Zc or E as (word, numerator, denominator) strings.");

  m.def(
      "series_json",
      [](const std::string& which, int degree) {
        return series_to_json(pick_series(z_series(degree), which)).dump(2);
      },
      py::arg("which"), py::arg("degree"));

  m.def(
      "upsilon",
      [](const std::string& controls_json, const std::vector<std::string>& words, int steps,
         const std::vector<double>& times) {
        const ControlSpec controls = parse_controls(controls_json);
        std::vector<Word> ws;
        for (const auto& s : words) ws.push_back(Word::parse(s));
        const IteratedIntegralTable table =
            integrate_cascade(controls, WordSet::closure(ws), steps, options_for(times));
        py::dict values;
        for (const auto& s : words) {
          const auto idx = static_cast<std::size_t>(table.words.index_of(Word::parse(s)));
          std::vector<double> path(table.times.size());
          for (std::size_t row = 0; row < table.times.size(); ++row)
            path[row] = table.value_at(idx, row);
          values[py::str(s)] = path;
        }
        return py::make_tuple(table.times, values);
      },
      py::arg("controls_json"), py::arg("words"), py::arg("steps") = 10000,
      py::arg("times") = std::vector<double>{},
      "Iterated integrals of the given words: (times, {word: values}).");

  m.def(
      "wei_norman",
      [](const std::string& controls_json, int degree, int steps) {
        const WeiNormanPath path =
            wei_norman_path(parse_controls(controls_json), z_series(degree), steps);
        py::dict out;
        out["times"] = path.times;
        out["xi_a"] = path.xi_a;
        out["xi_b"] = path.xi_b;
        out["xi_c"] = path.xi_c;
        return out;
      },
      py::arg("controls_json"), py::arg("degree") = 8, py::arg("steps") = 10000,
      "Evaluated coordinate paths xi_a, xi_b, xi_c on the recorded grid.");

  m.def(
      "riccati",
      [](const std::string& controls_json, double y0, int degree, int steps,
         const std::vector<double>& times) {
        const ScalarPath p =
            riccati_series(parse_controls(controls_json), y0, degree, steps, options_for(times));
        return py::make_tuple(p.times, p.y);
      },
      py::arg("controls_json"), py::arg("y0"), py::arg("degree") = 8, py::arg("steps") = 10000,
      py::arg("times") = std::vector<double>{},
      "General solution evaluated from the coordinate series: (times, y).");

  m.def(
      "riccati_reference",
      [](const std::string& controls_json, double y0, int steps, const std::vector<double>& times) {
        const ScalarPath p = riccati_rk4(parse_controls(controls_json), y0, steps, options_for(times));
        return py::make_tuple(p.times, p.y);
      },
      py::arg("controls_json"), py::arg("y0"), py::arg("steps") = 10000,
      py::arg("times") = std::vector<double>{},
      "Direct reference integration of the same scalar equation: (times, y).");

  m.def(
      "verify",
      [](std::optional<std::string> controls_json, int draws, std::uint64_t seed, int degree,
         int steps) {
        VerifyConfig cfg;
        cfg.degree = degree;
        cfg.steps = steps;
        cfg.draws = draws;
        cfg.seed = seed;
        if (controls_json) cfg.controls = parse_controls(*controls_json);
        return report_to_json(run_verification(cfg)).dump(2);
      },
      py::arg("controls_json") = std::nullopt, py::arg("draws") = 0, py::arg("seed") = 1,
      py::arg("degree") = 8, py::arg("steps") = 4000,
      "Self-verification battery; returns the JSON report.");
}
