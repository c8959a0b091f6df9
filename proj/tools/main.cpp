#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "sl2flow/hall.hpp"
#include "sl2flow/json_io.hpp"
#include "sl2flow/riccati.hpp"
#include "sl2flow/verify.hpp"

using namespace sl2flow;

namespace {

// Degrees past this are refused unless --allow-large-degree is given: the
// exact expansions grow roughly threefold per degree and degree 12 is already
// hundreds of thousands of terms.
constexpr int kDegreeCap = 12;

void check_degree(int degree, bool allow_large) {
  if (degree < 1 || degree > Word::kMaxLength)
    throw std::invalid_argument("degree must be in [1, " + std::to_string(Word::kMaxLength) + "]");
  if (degree > kDegreeCap && !allow_large)
    throw std::invalid_argument("degree " + std::to_string(degree) + " exceeds the cap of " +
                                std::to_string(kDegreeCap) +
                                "; pass --allow-large-degree to proceed");
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonState {
  int exit_code = 0;
};

void add_series(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand("series", "print a coordinate series expansion");
  auto which = std::make_shared<std::string>();
  auto degree = std::make_shared<int>(8);
  auto output = std::make_shared<std::string>("text");
  auto allow_large = std::make_shared<bool>(false);
  cmd->add_option("which", *which, "one of S, Za, Zb, Zc")
      ->required()
      ->check(CLI::IsMember({"S", "Za", "Zb", "Zc"}));
  cmd->add_option("--degree", *degree, "truncation degree")->capture_default_str();
  cmd->add_option("--output", *output)->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--allow-large-degree", *allow_large, "lift the degree cap");
  cmd->callback([&state, which, degree, output, allow_large] {
    check_degree(*degree, *allow_large);
    NcSeries s = NcSeries::zero(0);
    if (*which == "S" || *which == "Zb") {
      s = main_series_fixpoint(*degree);
    } else {
      const ZSeries z = z_series(*degree);
      s = (*which == "Za") ? z.Za : z.Zc;
    }
    if (*output == "json") emit(series_to_json(s));
    else std::cout << to_text(s) << "\n";
    (void)state;
  });
}

void add_hall(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand("hall", "list Hall words of one family");
  auto kind = std::make_shared<std::string>();
  auto degree = std::make_shared<int>(8);
  auto output = std::make_shared<std::string>("text");
  auto allow_large = std::make_shared<bool>(false);
  cmd->add_option("kind", *kind, "word family: a, b or c")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c"}));
  cmd->add_option("--degree", *degree, "maximum word length")->capture_default_str();
  cmd->add_option("--output", *output)->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--allow-large-degree", *allow_large, "lift the degree cap");
  cmd->callback([&state, kind, degree, output, allow_large] {
    check_degree(*degree, *allow_large);
    const HallTable table = gen_hall(*degree);
    std::vector<std::vector<Word>> lists(static_cast<std::size_t>(*degree) + 1);
    for (int n = 1; n <= *degree; ++n)
      lists[n] = (*kind == "a") ? table.a_words(n)
                                : (*kind == "b" ? table.b_words[n] : table.c_words[n]);
    if (*output == "json") {
      Json j;
      j["kind"] = *kind;
      j["max_length"] = *degree;
      j["words"] = Json::array();
      for (int n = 1; n <= *degree; ++n) {
        Json row = Json::array();
        for (Word w : lists[n]) row.push_back(w.str());
        j["words"].push_back(row);
      }
      emit(j);
    } else {
      for (int n = 1; n <= *degree; ++n) {
        std::cout << "length " << n << ":";
        for (Word w : lists[n]) std::cout << " " << w.str();
        std::cout << "\n";
      }
    }
    (void)state;
  });
}

void add_upsilon(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand("upsilon", "iterated integrals of words along controls");
  auto controls_path = std::make_shared<std::string>();
  auto words_raw = std::make_shared<std::vector<std::string>>();
  auto steps = std::make_shared<int>(10000);
  auto times = std::make_shared<std::vector<double>>();
  auto output = std::make_shared<std::string>("text");
  cmd->add_option("--controls", *controls_path, "controls json file")->required();
  cmd->add_option("--word", *words_raw, "word over {a,b,c}; repeatable")->required();
  cmd->add_option("--steps", *steps, "RK4 steps")->capture_default_str();
  cmd->add_option("--t", *times, "evaluation times (default: the horizon)");
  cmd->add_option("--output", *output)->check(CLI::IsMember({"text", "json"}));
  cmd->callback([&state, controls_path, words_raw, steps, times, output] {
    const ControlSpec controls = controls_from_json(load_json(*controls_path));
    std::vector<Word> words;
    for (const auto& s : *words_raw) words.push_back(Word::parse(s));
    CascadeOptions options;
    options.store_times = times->empty() ? std::vector<double>{controls.horizon()} : *times;
    const IteratedIntegralTable table =
        integrate_cascade(controls, WordSet::closure(words), *steps, options);
    if (*output == "json") {
      Json j;
      j["times"] = table.times;
      j["values"] = Json::object();
      for (const auto& s : *words_raw) {
        const Word w = Word::parse(s);
        std::vector<double> col(table.times.size());
        for (std::size_t i = 0; i < table.times.size(); ++i)
          col[i] = table.value_at(static_cast<std::size_t>(table.words.index_of(w)), i);
        j["values"][s] = col;
      }
      emit(j);
    } else {
      std::cout << std::setprecision(15);
      for (std::size_t i = 0; i < table.times.size(); ++i)
        for (const auto& s : *words_raw)
          std::cout << table.times[i] << " " << s << " " << table.value(Word::parse(s), table.times[i])
                    << "\n";
    }
    (void)state;
  });
}

void add_riccati(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand("riccati", "closed-form scalar Riccati solution");
  auto controls_path = std::make_shared<std::string>();
  auto y0 = std::make_shared<double>(0.0);
  auto degree = std::make_shared<int>(8);
  auto steps = std::make_shared<int>(10000);
  auto times = std::make_shared<std::vector<double>>();
  auto output = std::make_shared<std::string>("text");
  auto with_oracle = std::make_shared<bool>(false);
  auto allow_large = std::make_shared<bool>(false);
  cmd->add_option("--controls", *controls_path, "controls json file")->required();
  cmd->add_option("--y0", *y0, "initial value")->capture_default_str();
  cmd->add_option("--degree", *degree, "series truncation degree")->capture_default_str();
  cmd->add_option("--steps", *steps, "RK4 steps")->capture_default_str();
  cmd->add_option("--t", *times, "evaluation times (default: the horizon)");
  cmd->add_flag("--oracle", *with_oracle, "also integrate the equation directly and compare");
  cmd->add_option("--output", *output)->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--allow-large-degree", *allow_large, "lift the degree cap");
  cmd->callback([&state, controls_path, y0, degree, steps, times, output, with_oracle,
                 allow_large] {
    check_degree(*degree, *allow_large);
    const ControlSpec controls = controls_from_json(load_json(*controls_path));
    CascadeOptions options;
    options.store_times = times->empty() ? std::vector<double>{controls.horizon()} : *times;
    const ScalarPath sp = riccati_series(controls, *y0, *degree, *steps, options);
    ScalarPath op;
    if (*with_oracle) op = riccati_rk4(controls, *y0, *steps, options);
    if (*output == "json") {
      Json j;
      j["times"] = sp.times;
      j["y"] = sp.y;
      if (*with_oracle) j["y_ref"] = op.y;
      emit(j);
    } else {
      std::cout << std::setprecision(15);
      for (std::size_t i = 0; i < sp.times.size(); ++i) {
        std::cout << sp.times[i] << " " << sp.y[i];
        if (*with_oracle) std::cout << " " << op.y[i] << " " << std::abs(sp.y[i] - op.y[i]);
        std::cout << "\n";
      }
    }
    (void)state;
  });
}

void add_verify(CLI::App& app, CommonState& state) {
  auto* cmd = app.add_subcommand("verify", "run the self-verification battery");
  auto controls_path = std::make_shared<std::string>();
  auto draws = std::make_shared<int>(0);
  auto seed = std::make_shared<std::uint64_t>(1);
  auto degree = std::make_shared<int>(8);
  auto steps = std::make_shared<int>(4000);
  auto output = std::make_shared<std::string>("text");
  auto allow_large = std::make_shared<bool>(false);
  auto* copt = cmd->add_option("--controls", *controls_path, "controls json file");
  auto* ropt = cmd->add_option("--random", *draws, "number of random control draws");
  copt->excludes(ropt);
  cmd->add_option("--seed", *seed, "rng seed for --random")->capture_default_str();
  cmd->add_option("--degree", *degree, "series truncation degree")->capture_default_str();
  cmd->add_option("--steps", *steps, "RK4 steps")->capture_default_str();
  cmd->add_option("--output", *output)->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--allow-large-degree", *allow_large, "lift the degree cap");
  cmd->callback([&state, controls_path, draws, seed, degree, steps, output, allow_large] {
    check_degree(*degree, *allow_large);
    VerifyConfig cfg;
    cfg.degree = *degree;
    cfg.steps = *steps;
    cfg.seed = *seed;
    if (*draws > 0) cfg.draws = *draws;
    else if (!controls_path->empty()) cfg.controls = controls_from_json(load_json(*controls_path));
    else throw std::invalid_argument("verify needs --controls FILE or --random N");
    const VerificationReport report = run_verification(cfg);
    if (*output == "json") emit(report_to_json(report));
    else std::cout << report_to_text(report);
    state.exit_code = report.all_pass ? 0 : 1;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact coordinate series and flows of the rank-one Lie-Scheffers system"};
  app.require_subcommand(1);
  CommonState state;
  add_series(app, state);
  add_hall(app, state);
  add_upsilon(app, state);
  add_riccati(app, state);
  add_verify(app, state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const FiniteEscapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return state.exit_code;
}
