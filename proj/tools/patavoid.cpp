// patavoid: command-line front end for the pattern-avoidance library.
//
// Exit status: 0 success, 1 invalid input, 2 node budget exhausted, 3 a reproduction
// check ran but did not pass.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "patavoid/serialize.hpp"
#include "patavoid/patavoid.hpp"
#include "patavoid/reproduce.hpp"

namespace pa = patavoid;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitBudget = 2;
constexpr int kExitCheckFailed = 3;

std::string join(const std::vector<pa::Integer>& values, char sep = ',') {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? std::string(1, sep) : "") << values[i];
  return out.str();
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

std::string set_for_csv(const pa::PatternSet& set) {
  std::string out;
  for (const auto& p : set) out += (out.empty() ? "" : " ") + pa::to_string(p);
  return out;
}

std::vector<pa::Integer> parse_integer_list(const std::string& text) {
  std::vector<pa::Integer> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = std::min(text.find(',', start), text.size());
    auto token = text.substr(start, stop - start);
    const auto first = token.find_first_not_of(' ');
    const auto last = token.find_last_not_of(' ');
    token = first == std::string::npos ? "" : token.substr(first, last - first + 1);
    const bool valid = !token.empty() && (std::isdigit(static_cast<unsigned char>(token[0])) ||
                                          (token[0] == '-' && token.size() > 1)) &&
                       token.find_first_not_of("0123456789", token[0] == '-' ? 1 : 0) == std::string::npos;
    if (!valid) throw pa::ParseError("invalid integer in sequence", token, start);
    out.emplace_back(token);
    start = stop + 1;
  }
  return out;
}

std::vector<pa::SurveyRecord> read_survey(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pa::InvalidInput("cannot open survey file '" + path + "'");
  std::vector<pa::SurveyRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) records.push_back(pa::parse_jsonl(line));
  }
  return records;
}

struct Config {
  std::size_t node_budget = 0;  // 0: environment or default
  std::size_t workers = 1;

  pa::CountOptions count_options() const {
    pa::CountOptions o;
    o.node_budget = node_budget ? node_budget : pa::node_budget_from_env();
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation pattern avoidance: exact counting, template families, symmetry surveys and "
               "sequence classification."};
  app.require_subcommand(1);
  Config config;
  app.add_option("--node-budget", config.node_budget,
                 "Maximum generating-tree nodes per count (default: $PATAVOID_NODE_BUDGET or 1e8)");

  // count ------------------------------------------------------------------
  auto* count = app.add_subcommand("count", "Count |Av_n(patterns)| for n = 0..max_n");
  std::string count_patterns;
  std::size_t count_max_n = 10;
  bool count_naive = false, count_full = false, count_one_based = false;
  std::string count_emit = "text";
  count->add_option("--patterns", count_patterns, "Patterns, e.g. 1234,1243,1342,4231")->required();
  count->add_option("--max-n", count_max_n, "Largest length to count")->check(CLI::NonNegativeNumber);
  count->add_flag("--naive", count_naive, "Brute-force filter over S_n (max-n <= 8)");
  count->add_flag("--full-recheck", count_full, "Re-test whole children against every pattern");
  count->add_flag("--one-based", count_one_based, "Text and CSV start at n = 1");
  count->add_option("--emit", count_emit, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));

  // template ---------------------------------------------------------------
  auto* tmpl = app.add_subcommand("template", "Template-generated permutation families");
  tmpl->require_subcommand(1);
  auto* gen = tmpl->add_subcommand("gen", "List the family members of length n");
  std::string gen_templates;
  std::size_t gen_n = 0;
  std::string gen_emit = "text";
  gen->add_option("--templates", gen_templates, "Templates ORDER:MASK, e.g. 231:101")->required();
  gen->add_option("--n", gen_n, "Length")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--emit", gen_emit, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* certify = tmpl->add_subcommand("certify", "Prove that every family member avoids the patterns");
  std::string cert_templates, cert_patterns, cert_emit = "text";
  certify->add_option("--templates", cert_templates, "Templates ORDER:MASK")->required();
  certify->add_option("--patterns", cert_patterns, "Patterns to avoid")->required();
  certify->add_option("--emit", cert_emit, "Output format")->check(CLI::IsMember({"text", "json"}));

  // analyze ----------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Classify an integer sequence");
  std::string analyze_seq;
  long analyze_offset = 0;
  std::size_t analyze_degree = pa::kDefaultMaxDegree;
  analyze->add_option("--seq", analyze_seq, "Comma-separated terms")->required();
  analyze->add_option("--offset", analyze_offset, "Index of the first term (default 0)");
  analyze->add_option("--max-degree", analyze_degree, "Largest polynomial degree tried");

  // survey -----------------------------------------------------------------
  auto* survey = app.add_subcommand("survey", "Exhaustive symmetry-class survey of k-subsets of S_m");
  survey->require_subcommand(0, 1);
  std::size_t survey_k = 4, survey_len = 4, survey_max_n = 10;
  std::string survey_out;
  survey->add_option("--num-patterns", survey_k, "Patterns per set");
  survey->add_option("--pattern-length", survey_len, "Pattern length");
  survey->add_option("--max-n", survey_max_n, "Counting horizon N (counts n = 1..N)");
  survey->add_option("--out", survey_out, "JSON Lines output; existing records are kept and skipped");
  survey->add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* wilf = survey->add_subcommand("wilf", "Cluster survey records by count fingerprint");
  std::string wilf_in, wilf_emit = "text";
  std::size_t wilf_horizon = 0;
  wilf->add_option("--in", wilf_in, "Survey JSON Lines file")->required();
  wilf->add_option("--horizon", wilf_horizon, "Fingerprint length (default: full record)");
  wilf->add_option("--emit", wilf_emit, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* polyscan = survey->add_subcommand("polyscan", "List classes with polynomial counts");
  std::string poly_in, poly_emit = "text";
  std::size_t poly_degree = 7;
  polyscan->add_option("--in", poly_in, "Survey JSON Lines file")->required();
  polyscan->add_option("--max-degree", poly_degree, "Largest degree");
  polyscan->add_option("--emit", poly_emit, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));

  // experiment -------------------------------------------------------------
  auto* experiment = app.add_subcommand("experiment", "Random pattern-set classification experiment");
  pa::ExperimentConfig exp;
  std::string exp_emit = "text";
  experiment->add_option("--num-patterns", exp.num_patterns, "Patterns per random set");
  experiment->add_option("--pattern-length", exp.pattern_length, "Pattern length");
  experiment->add_option("--max-n", exp.max_n, "Counting horizon N");
  experiment->add_option("--trials", exp.trials, "Number of random sets")->check(CLI::PositiveNumber);
  experiment->add_option("--seed", exp.seed, "RNG seed");
  experiment->add_option("--fib-horizon", exp.fib_horizon, "Horizon for the Fibonacci-like check (default N+3)");
  experiment->add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
  experiment->add_option("--emit", exp_emit, "Output format")->check(CLI::IsMember({"text", "json", "jsonl"}));

  // reproduce --------------------------------------------------------------
  auto* reproduce = app.add_subcommand("reproduce", "Run a named reproduction check (or 'all')");
  std::string claim_id;
  std::uint64_t reproduce_seed = 42;
  reproduce->add_option("claim", claim_id, "Claim id: " + pa::reproduce::claim_ids() + ", all")->required();
  reproduce->add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
  reproduce->add_option("--seed", reproduce_seed, "Seed for experiment820");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  std::ostream& out = std::cout;
  try {
    if (*count) {
      const auto patterns = pa::parse_pattern_set(count_patterns);
      pa::CountOptions options = config.count_options();
      options.full_recheck = count_full;
      const auto seq = count_naive ? pa::count_avoiders_naive(patterns, count_max_n)
                                   : pa::count_avoiders(patterns, count_max_n, options);
      const auto shown = count_one_based ? seq.from_one() : seq.counts;
      if (count_emit == "json") {
        out << pa::to_json(seq).dump() << "\n";  // always n = 0..max_n
      } else if (count_emit == "csv") {
        out << "patterns,counts,degree\n";
        const auto fp = seq.from_one();
        std::optional<pa::PolynomialFit> fit;
        if (fp.size() >= pa::kMinPolynomialTerms) fit = pa::detect_eventual_polynomial(fp, 1, pa::kDefaultMaxDegree);
        out << csv_quote(set_for_csv(patterns)) << "," << csv_quote(join(shown)) << ","
            << (fit ? std::to_string(fit->degree) : "") << "\n";
      } else {
        out << join(shown) << "\n";
      }
      return 0;
    }

    if (*gen) {
      const auto family = pa::generate_S(pa::parse_template_set(gen_templates), gen_n);
      if (gen_emit == "json") {
        pa::json perms = pa::json::array();
        for (const auto& p : family) perms.push_back(pa::to_string(p));
        pa::json templates = pa::json::array();
        for (const auto& t : pa::parse_template_set(gen_templates)) templates.push_back(pa::to_string(t));
        out << pa::json{{"templates", templates}, {"n", gen_n}, {"count", family.size()}, {"permutations", perms}}
                   .dump()
            << "\n";
      } else {
        for (const auto& p : family) out << pa::to_string(p) << "\n";
      }
      return 0;
    }

    if (*certify) {
      const auto cert =
          pa::certify_avoidance(pa::parse_template_set(cert_templates), pa::parse_pattern_set(cert_patterns));
      if (cert_emit == "json") {
        out << pa::to_json(cert).dump() << "\n";
      } else {
        out << "verified: " << (cert.verified ? "true" : "false") << " (bound " << cert.bound << ")";
        if (cert.witness) {
          out << "; witness " << pa::to_string(cert.witness->permutation) << " at length " << cert.witness->length
              << " contains " << pa::to_string(cert.witness->pattern);
        }
        out << "\n";
      }
      return 0;
    }

    if (*analyze) {
      const auto terms = parse_integer_list(analyze_seq);
      const auto report = pa::classify(terms, analyze_offset, analyze_degree);
      out << pa::to_json(report).dump() << "\n";
      return 0;
    }

    if (*wilf) {
      const auto records = read_survey(wilf_in);
      const auto report = pa::wilf_survey(records, wilf_horizon);
      if (wilf_emit == "json") {
        pa::json clusters = pa::json::array();
        for (const auto& [fp, sets] : report.clusters) {
          pa::json members = pa::json::array();
          for (const auto& s : sets) members.push_back(pa::to_json(s));
          clusters.push_back(pa::json{{"fingerprint", pa::to_json(fp)}, {"classes", members}});
        }
        pa::json failed = pa::json::array();
        for (const auto& s : report.failed) failed.push_back(pa::to_json(s));
        out << pa::json{{"horizon", report.horizon},
                        {"records", records.size()},
                        {"distinct_fingerprints", report.distinct()},
                        {"failed", failed},
                        {"clusters", clusters}}
                   .dump()
            << "\n";
      } else {
        out << "records: " << records.size() << "\n"
            << "distinct fingerprints at horizon N = " << report.horizon << ": " << report.distinct()
            << " (lower bound on Wilf classes)\n";
        if (!report.failed.empty()) out << "records without counts: " << report.failed.size() << "\n";
      }
      return 0;
    }

    if (*polyscan) {
      const auto records = read_survey(poly_in);
      const auto scan = pa::polynomial_scan(records, poly_degree);
      if (poly_emit == "json") {
        pa::json flagged = pa::json::array();
        for (const auto& e : scan.flagged) flagged.push_back(pa::json{{"class", pa::to_json(e.canonical)}, {"degree", e.degree}});
        out << pa::json{{"max_degree", poly_degree},
                        {"flagged", flagged},
                        {"total", scan.flagged.size()},
                        {"eventual_total", scan.eventual.size()}}
                   .dump()
            << "\n";
      } else if (poly_emit == "csv") {
        std::map<pa::PatternSet, const pa::SurveyRecord*> by_class;
        for (const auto& r : records) by_class[r.canonical] = &r;
        out << "patterns,counts,degree\n";
        for (const auto& e : scan.flagged) {
          out << csv_quote(set_for_csv(e.canonical)) << "," << csv_quote(join(by_class.at(e.canonical)->counts)) << ","
              << e.degree << "\n";
        }
      } else {
        for (const auto& e : scan.flagged) out << "degree " << e.degree << "  {" << pa::to_string(e.canonical) << "}\n";
        out << "polynomial over the whole horizon: " << scan.flagged.size() << " classes\n"
            << "eventually polynomial at some threshold: " << scan.eventual.size() << " classes\n";
      }
      return 0;
    }

    if (*survey) {
      const auto classes = pa::enumerate_symmetry_classes(survey_k, survey_len);
      pa::SurveyOptions options;
      options.max_n = survey_max_n;
      options.workers = config.workers;
      options.count = config.count_options();
      std::set<pa::PatternSet> done;
      std::ofstream file;
      std::ostream* sink = &out;
      if (!survey_out.empty()) {
        if (std::filesystem::exists(survey_out)) {
          for (const auto& r : read_survey(survey_out))
            if (r.max_n == survey_max_n && !r.error) done.insert(r.canonical);
        }
        file.open(survey_out, std::ios::app);
        if (!file) throw pa::InvalidInput("cannot write '" + survey_out + "'");
        sink = &file;
      }
      std::size_t written = 0, failed = 0;
      pa::run_survey(
          classes, options,
          [&](const pa::SurveyRecord& r) {
            *sink << pa::to_jsonl(r);
            sink->flush();
            ++written;
            if (r.error) ++failed;
          },
          done);
      if (!survey_out.empty()) {
        std::cerr << classes.size() << " symmetry classes; " << written << " surveyed, " << done.size()
                  << " already present";
        if (failed) std::cerr << ", " << failed << " over budget";
        std::cerr << "\n";
      }
      return 0;
    }

    if (*experiment) {
      exp.workers = config.workers;
      exp.count = config.count_options();
      const auto summary = pa::random_experiment(exp);
      if (exp_emit == "json") {
        out << pa::to_json(summary).dump() << "\n";
      } else if (exp_emit == "jsonl") {
        for (const auto& t : summary.trials) {
          pa::json j{{"patterns", pa::to_json(t.patterns)},
                     {"counts", pa::to_json(t.counts)},
                     {"bucket", std::string(pa::to_string(t.bucket))},
                     {"verdict", t.report ? pa::to_json(*t.report) : pa::json(nullptr)},
                     {"fib_like", t.fib_like.has_value()}};
          out << j.dump() << "\n";
        }
      } else {
        out << "trials " << exp.trials << ", " << exp.num_patterns << " patterns of length " << exp.pattern_length
            << ", n = 1.." << exp.max_n << ", seed " << exp.seed << "\n";
        for (auto b : pa::kAllBuckets) {
          out << "  " << pa::to_string(b) << ": " << summary.count(b) << " (" << std::fixed << std::setprecision(1)
              << 100 * summary.fraction(b) << "%)\n";
        }
        out << "  Fibonacci-like among non-polynomial: " << summary.fib_like << "/"
            << summary.count(pa::Bucket::non_polynomial) << " (checked to n = " << exp.effective_fib_horizon()
            << "; " << summary.fib_like_within_horizon << " within n <= " << exp.max_n << ")\n";
      }
      return 0;
    }

    if (*reproduce) {
      pa::reproduce::Options options;
      options.workers = config.workers;
      options.count = config.count_options();
      options.seed = reproduce_seed;
      std::vector<std::string> ids;
      if (claim_id == "all") {
        for (const auto& c : pa::reproduce::claims()) ids.emplace_back(c.id);
      } else {
        ids.push_back(claim_id);
      }
      bool all_passed = true;
      for (const auto& id : ids) {
        const auto r = pa::reproduce::run(id, options);
        all_passed = all_passed && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.id << " (" << std::fixed << std::setprecision(2) << r.seconds
            << " s)\n  expected: " << r.expected << "\n  actual:   " << r.actual << "\n";
      }
      return all_passed ? 0 : kExitCheckFailed;
    }
  } catch (const pa::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const pa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
