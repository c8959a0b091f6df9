#include "sl2flow/json_io.hpp"

#include <stdexcept>

namespace sl2flow {

Json series_to_json(const NcSeries& s) {
  Json j;
  j["truncation_degree"] = s.truncation_degree();
  j["terms"] = Json::array();
  for (const auto& [w, cv] : s.sorted_terms()) {
    j["terms"].push_back(Json{{"word", w.str()}, {"num", cv.num_str()}, {"den", cv.den_str()}});
  }
  return j;
}

NcSeries series_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("truncation_degree") || !j.contains("terms"))
    throw std::invalid_argument("series json: need truncation_degree and terms");
  NcSeries s(j.at("truncation_degree").get<int>());
  for (const auto& t : j.at("terms")) {
    const Word w = Word::parse(t.at("word").get<std::string>());
    if (w.length() > s.truncation_degree())
      throw std::invalid_argument("series json: term beyond the truncation degree");
    if (!s.coefficient(w).is_zero())
      throw std::invalid_argument("series json: duplicate word '" + w.str() + "'");
    const Rational k =
        Rational::from_strings(t.at("num").get<std::string>(), t.at("den").get<std::string>());
    s.add_term(w, k);
  }
  return s;
}

namespace {

Json channel_to_json(const Channel& ch) {
  Json j;
  if (const auto* pc = std::get_if<PiecewiseConstant>(&ch)) {
    j["kind"] = "piecewise_constant";
    j["breakpoints"] = pc->breakpoints;
    j["values"] = pc->values;
  } else if (const auto* po = std::get_if<Polynomial>(&ch)) {
    j["kind"] = "polynomial";
    j["coeffs"] = po->coeffs;
  } else {
    const auto& sa = std::get<Sampled>(ch);
    j["kind"] = "sampled";
    j["dt"] = sa.dt;
    j["values"] = sa.values;
  }
  return j;
}

Channel channel_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "piecewise_constant") {
    PiecewiseConstant pc;
    if (j.contains("breakpoints")) pc.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    pc.values = j.at("values").get<std::vector<double>>();
    return pc;
  }
  if (kind == "polynomial") {
    return Polynomial{j.at("coeffs").get<std::vector<double>>()};
  }
  if (kind == "sampled") {
    return Sampled{j.at("dt").get<double>(), j.at("values").get<std::vector<double>>()};
  }
  throw std::invalid_argument("controls json: unknown channel kind '" + kind + "'");
}

}  // namespace

Json controls_to_json(const ControlSpec& c) {
  Json j;
  j["T"] = c.horizon();
  j["channels"] = Json{{"a", channel_to_json(c.channel(Letter::A))},
                       {"b", channel_to_json(c.channel(Letter::B))},
                       {"c", channel_to_json(c.channel(Letter::C))}};
  return j;
}

ControlSpec controls_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("T") || !j.contains("channels"))
    throw std::invalid_argument("controls json: need T and channels");
  const Json& ch = j.at("channels");
  for (const char* k : {"a", "b", "c"})
    if (!ch.contains(k))
      throw std::invalid_argument(std::string("controls json: missing channel '") + k + "'");
  return ControlSpec(j.at("T").get<double>(), channel_from_json(ch.at("a")),
                     channel_from_json(ch.at("b")), channel_from_json(ch.at("c")));
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["degree"] = r.degree;
  j["steps"] = r.steps;
  j["draws"] = r.draws;
  j["seed"] = r.seed;
  j["convention"] = r.convention;
  j["pass"] = r.all_pass;
  j["checks"] = Json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back(Json{
        {"name", c.name}, {"max_error", c.max_error}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  return j;
}

}  // namespace sl2flow
