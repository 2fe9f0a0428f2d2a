#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json, vendored

#include "patavoid/avoiders.hpp"
#include "patavoid/error.hpp"
#include "patavoid/experiment.hpp"
#include "patavoid/integer.hpp"
#include "patavoid/pattern_set.hpp"
#include "patavoid/sequence_analysis.hpp"
#include "patavoid/survey.hpp"
#include "patavoid/templates.hpp"

// JSON forms of the library's results. Integers that do not fit in 64 bits are
// written as decimal strings; readers accept either form.

namespace patavoid {

using nlohmann::json;

inline json to_json_integer(const Integer& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return json(static_cast<std::uint64_t>(v));
  if (v < 0 && v >= std::numeric_limits<std::int64_t>::min()) return json(static_cast<std::int64_t>(v));
  return json(v.str());
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

inline json to_json(const std::vector<Integer>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_json_integer(v));
  return out;
}

inline std::vector<Integer> integers_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of integers");
  std::vector<Integer> out;
  for (const auto& v : j) out.push_back(integer_from_json(v));
  return out;
}

inline json to_json(const PatternSet& set) {
  json out = json::array();
  for (const auto& p : set) out.push_back(to_string(p));
  return out;
}

inline PatternSet pattern_set_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of patterns");
  std::vector<Permutation> patterns;
  for (const auto& p : j) patterns.push_back(parse_permutation(p.get<std::string>()));
  return PatternSet(std::move(patterns));
}

inline json to_json(const CountSequence& seq) {
  return json{{"patterns", to_json(seq.patterns)}, {"counts", to_json(seq.counts)}, {"max_n", seq.max_n()}};
}

inline CountSequence count_sequence_from_json(const json& j) {
  return CountSequence{pattern_set_from_json(j.at("patterns")), integers_from_json(j.at("counts"))};
}

// ---------------------------------------------------------------------------

inline json to_json(const ClassificationReport& r) {
  json out{{"verdict", std::string(to_string(r.verdict))}};
  switch (r.verdict) {
    case Verdict::eventually_zero:
      out["threshold"] = r.threshold;
      break;
    case Verdict::eventual_polynomial: {
      out["degree"] = r.polynomial->degree;
      out["threshold"] = r.threshold;
      json coeffs = json::array();
      for (const auto& c : r.polynomial->polynomial.coefficients) coeffs.push_back(c.str());
      out["coefficients"] = coeffs;
      break;
    }
    case Verdict::fib_like:
      out["a"] = to_json_integer(r.fib_like->a);
      out["b"] = to_json_integer(r.fib_like->b);
      out["threshold"] = r.threshold;
      break;
    case Verdict::unclassified:
      break;
  }
  if (r.verdict != Verdict::unclassified) out["evidence"] = r.evidence;
  return out;
}

inline ClassificationReport report_from_json(const json& j) {
  ClassificationReport r;
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict == "eventually_zero") {
    r.verdict = Verdict::eventually_zero;
    r.threshold = j.at("threshold").get<long>();
  } else if (verdict == "eventual_polynomial") {
    r.verdict = Verdict::eventual_polynomial;
    r.threshold = j.at("threshold").get<long>();
    PolynomialFit fit;
    fit.degree = j.at("degree").get<std::size_t>();
    fit.threshold = r.threshold;
    for (const auto& c : j.at("coefficients")) fit.polynomial.coefficients.emplace_back(c.get<std::string>());
    r.polynomial = std::move(fit);
  } else if (verdict == "fib_like") {
    r.verdict = Verdict::fib_like;
    r.threshold = j.at("threshold").get<long>();
    r.fib_like = FibLikeFit{integer_from_json(j.at("a")), integer_from_json(j.at("b")), r.threshold, 0};
  } else if (verdict == "unclassified") {
    r.verdict = Verdict::unclassified;
  } else {
    throw InvalidInput("unknown verdict '" + verdict + "'");
  }
  if (j.contains("evidence")) {
    r.evidence = j.at("evidence").get<std::size_t>();
    if (r.polynomial) r.polynomial->evidence = r.evidence;
    if (r.fib_like) r.fib_like->evidence = r.evidence;
  }
  return r;
}

// ---------------------------------------------------------------------------

inline json to_json(const Certificate& c) {
  json templates = json::array();
  for (const auto& t : c.templates) templates.push_back(to_string(t));
  json out{{"templates", templates},
           {"patterns", to_json(c.patterns)},
           {"bound", c.bound},
           {"verified", c.verified},
           {"witness", nullptr}};
  if (c.witness) {
    out["witness"] = json{{"length", c.witness->length},
                          {"permutation", to_string(c.witness->permutation)},
                          {"pattern", to_string(c.witness->pattern)}};
  }
  return out;
}

inline Certificate certificate_from_json(const json& j) {
  Certificate c;
  for (const auto& t : j.at("templates")) c.templates.push_back(parse_template(t.get<std::string>()));
  c.patterns = pattern_set_from_json(j.at("patterns"));
  c.bound = j.at("bound").get<std::size_t>();
  c.verified = j.at("verified").get<bool>();
  if (const auto& w = j.at("witness"); !w.is_null()) {
    c.witness = Witness{w.at("length").get<std::size_t>(), parse_permutation(w.at("permutation").get<std::string>()),
                        parse_permutation(w.at("pattern").get<std::string>())};
  }
  return c;
}

// ---------------------------------------------------------------------------
// Survey JSON Lines

inline json to_json(const SurveyRecord& r) {
  json out{{"class", to_json(r.canonical)}, {"orbit", r.orbit_size}, {"max_n", r.max_n}};
  if (r.error) {
    out["counts"] = nullptr;
    out["verdict"] = nullptr;
    out["error"] = *r.error;
  } else {
    out["counts"] = to_json(r.counts);
    out["verdict"] = r.report ? to_json(*r.report) : json(nullptr);
  }
  return out;
}

inline SurveyRecord survey_record_from_json(const json& j) {
  SurveyRecord r;
  r.canonical = pattern_set_from_json(j.at("class"));
  r.orbit_size = j.at("orbit").get<std::size_t>();
  if (j.contains("error") && !j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  if (!j.at("counts").is_null()) r.counts = integers_from_json(j.at("counts"));
  r.max_n = j.contains("max_n") ? j.at("max_n").get<std::size_t>() : r.counts.size();
  if (j.contains("verdict") && !j.at("verdict").is_null()) r.report = report_from_json(j.at("verdict"));
  return r;
}

inline std::string to_jsonl(const SurveyRecord& r) { return to_json(r).dump() + "\n"; }

inline SurveyRecord parse_jsonl(const std::string& line) {
  try {
    return survey_record_from_json(json::parse(line));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed survey record: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

inline json to_json(const ExperimentSummary& s) {
  json buckets = json::object();
  json fractions = json::object();
  for (auto b : kAllBuckets) {
    buckets[std::string(to_string(b))] = s.count(b);
    fractions[std::string(to_string(b))] = s.fraction(b);
  }
  return json{{"num_patterns", s.config.num_patterns},
              {"pattern_length", s.config.pattern_length},
              {"max_n", s.config.max_n},
              {"trials", s.config.trials},
              {"seed", s.config.seed},
              {"rng", "mt19937_64/splitmix64"},
              {"buckets", buckets},
              {"fractions", fractions},
              {"fib_horizon", s.config.effective_fib_horizon()},
              {"fib_like_among_non_polynomial", s.fib_like},
              {"fib_like_within_max_n", s.fib_like_within_horizon}};
}

/// Restores the configuration and tallies; per-trial data is not part of the summary.
inline ExperimentSummary experiment_summary_from_json(const json& j) {
  ExperimentSummary s;
  s.config.num_patterns = j.at("num_patterns").get<std::size_t>();
  s.config.pattern_length = j.at("pattern_length").get<std::size_t>();
  s.config.max_n = j.at("max_n").get<std::size_t>();
  s.config.trials = j.at("trials").get<std::size_t>();
  s.config.seed = j.at("seed").get<std::uint64_t>();
  s.config.fib_horizon = j.at("fib_horizon").get<std::size_t>();
  for (auto b : kAllBuckets) s.bucket_counts[static_cast<std::size_t>(b)] = j.at("buckets").at(std::string(to_string(b))).get<std::size_t>();
  s.fib_like = j.at("fib_like_among_non_polynomial").get<std::size_t>();
  s.fib_like_within_horizon = j.at("fib_like_within_max_n").get<std::size_t>();
  return s;
}

}  // namespace patavoid
