// feynq: exact Grothendieck-class computations and finite-field point-count
// experiments for Feynman quadrics of complete graphs.
//
// Subcommands: class, count, verify, interpolate, survey, arr classify.
// Exit codes: 0 success, 1 verification/holdout/consistency failure,
// 2 usage or budget error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "feynq/classes.hpp"
#include "feynq/count.hpp"
#include "feynq/fp.hpp"
#include "feynq/graph.hpp"
#include "feynq/json_io.hpp"
#include "feynq/lclass.hpp"

namespace {

using feynq::FeynmanGraph;
using feynq::Int;
using feynq::LClass;

// ---------------------------------------------------------------------------
// argument parsing helpers

FeynmanGraph parse_graph(const std::string& spec) {
  if (spec.rfind("complete:", 0) == 0) {
    const std::string tail = spec.substr(9);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(tail, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad graph spec '" + spec + "'");
    }
    if (used != tail.size() || n < 1)
      throw std::invalid_argument("bad graph spec '" + spec + "'");
    return FeynmanGraph::complete(n);
  }
  std::vector<FeynmanGraph::Edge> edges;
  int max_vertex = 0;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos)
      throw std::invalid_argument("bad edge '" + tok + "' in graph spec");
    try {
      const int a = std::stoi(tok.substr(0, dash));
      const int b = std::stoi(tok.substr(dash + 1));
      edges.emplace_back(a, b);
      max_vertex = std::max({max_vertex, a, b});
    } catch (const std::exception&) {
      throw std::invalid_argument("bad edge '" + tok + "' in graph spec");
    }
  }
  if (edges.empty())
    throw std::invalid_argument("graph spec '" + spec + "' has no edges");
  return FeynmanGraph(max_vertex, std::move(edges));
}

std::uint32_t parse_prime_token(const std::string& tok) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad prime '" + tok + "'");
  }
  if (used != tok.size())
    throw std::invalid_argument("bad prime '" + tok + "'");
  if (v > 65536)
    throw std::invalid_argument(tok + " exceeds the largest supported "
                                      "modulus 2^16");
  if (!feynq::is_prime_u32(static_cast<std::uint32_t>(v)))
    throw std::invalid_argument(tok + " is not prime");
  return static_cast<std::uint32_t>(v);
}

// "2,3,5", "2..41", or a mix of both kinds of token
std::vector<std::uint32_t> parse_primes(const std::string& spec) {
  std::vector<std::uint32_t> primes;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      primes.push_back(parse_prime_token(tok));
      continue;
    }
    unsigned long lo = 0, hi = 0;
    try {
      lo = std::stoul(tok.substr(0, dots));
      hi = std::stoul(tok.substr(dots + 2));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad prime range '" + tok + "'");
    }
    if (lo > hi || hi > 65536)
      throw std::invalid_argument("bad prime range '" + tok + "'");
    for (unsigned long v = lo; v <= hi; ++v)
      if (feynq::is_prime_u32(static_cast<std::uint32_t>(v)))
        primes.push_back(static_cast<std::uint32_t>(v));
  }
  if (primes.empty())
    throw std::invalid_argument("prime list '" + spec + "' is empty");
  return primes;
}

// ---------------------------------------------------------------------------
// shared command state

struct Options {
  bool json = false;
  int threads = 0;
  std::uint64_t budget = 0; // 0 = library defaults
  std::uint64_t seed = 42;  // reserved for randomized fixtures

  std::string graph;
  std::string quadric;
  int dim = 2;
  std::string method = "corrected";
  std::string methods = "paper,corrected";
  std::uint32_t prime = 2;
  std::string primes;
  std::string holdout;
  std::string algo = "fibrewise";
  int survey_n = 1;
  std::string file;
};

feynq::CountBudget make_budget(const Options& o) {
  feynq::CountBudget b;
  if (o.budget != 0) {
    b.brute = o.budget;
    b.fibrewise = o.budget;
  }
  return b;
}

Int run_count(const FeynmanGraph& g, int d, std::uint32_t q,
              const Options& o) {
  if (o.algo == "brute")
    return feynq::brute_force_count(g, d, q, o.threads, make_budget(o)).count;
  if (o.algo == "fibrewise")
    return feynq::fibrewise_count(g, d, q, o.threads, make_budget(o)).count;
  throw std::invalid_argument("unknown algorithm '" + o.algo +
                              "' (expected brute or fibrewise)");
}

void require_complete(const FeynmanGraph& g) {
  if (!(g == FeynmanGraph::complete(g.vertex_count())))
    throw std::invalid_argument(
        "class formulas are only available for complete graphs");
}

// named closed-form targets: class polynomial and independent counter
struct QuadricTarget {
  std::string name;
  LClass cls;
  Int (*count)(int d, std::uint32_t q, const feynq::CountBudget&);
};

QuadricTarget quadric_target(const std::string& name, int d) {
  if (name == "simple")
    return {name, feynq::simple_quadric_class(d),
            [](int dd, std::uint32_t q, const feynq::CountBudget& b) {
              return feynq::count_simple_quadric(dd, q, b);
            }};
  if (name == "projective-closure")
    return {name, feynq::projective_closure_class(d),
            [](int dd, std::uint32_t q, const feynq::CountBudget& b) {
              return feynq::count_projective_closure(dd, q, b);
            }};
  if (name == "exceptional-divisor")
    return {name, feynq::exceptional_divisor_class(d),
            [](int dd, std::uint32_t q, const feynq::CountBudget& b) {
              return feynq::count_projective_quadric(2 * dd, q, b);
            }};
  if (name == "blowup")
    return {name, feynq::blowup_class(d),
            [](int dd, std::uint32_t q, const feynq::CountBudget& b) {
              return feynq::count_simple_quadric(dd, q, b) - 1 +
                     feynq::count_projective_quadric(2 * dd, q, b);
            }};
  throw std::invalid_argument(
      "unknown quadric '" + name +
      "' (expected simple, projective-closure, exceptional-divisor or "
      "blowup)");
}

LClass method_class(const std::string& method, int n, int d) {
  if (method == "paper") return feynq::z_complete_paper(n, d);
  if (method == "corrected") return feynq::z_complete_corrected(n, d);
  throw std::invalid_argument("unknown method '" + method +
                              "' (expected paper or corrected)");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

void emit(const nlohmann::json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// subcommands

int cmd_class(const Options& o) {
  LClass cls;
  nlohmann::json target;
  if (!o.quadric.empty()) {
    cls = quadric_target(o.quadric, o.dim).cls;
    target = o.quadric;
  } else if (!o.graph.empty()) {
    const auto g = parse_graph(o.graph);
    require_complete(g);
    cls = method_class(o.method, g.vertex_count(), o.dim);
    target = o.graph;
  } else {
    throw std::invalid_argument("class: pass --graph or --quadric");
  }
  if (o.json)
    emit({{"target", target},
          {"d", o.dim},
          {"method", o.quadric.empty() ? o.method : o.quadric},
          {"class", feynq::lclass_to_json(cls)}});
  else
    std::cout << cls.str() << "\n";
  return 0;
}

int cmd_count(const Options& o) {
  const auto g = parse_graph(o.graph);
  std::optional<feynq::CountReport> maybe;
  if (o.algo == "brute")
    maybe = feynq::brute_force_count(g, o.dim, o.prime, o.threads,
                                     make_budget(o));
  else if (o.algo == "fibrewise")
    maybe = feynq::fibrewise_count(g, o.dim, o.prime, o.threads,
                                   make_budget(o));
  else
    throw std::invalid_argument("unknown algorithm '" + o.algo +
                                "' (expected brute or fibrewise)");
  const feynq::CountReport& report = *maybe;
  if (o.json) {
    emit(feynq::count_report_to_json(report));
  } else {
    std::cout << "graph: " << o.graph << "\n"
              << "d: " << report.d << "\n"
              << "q: " << report.q << "\n"
              << "algorithm: "
              << (report.algorithm == feynq::CountAlgorithm::Brute
                      ? "brute"
                      : "fibrewise")
              << "\n"
              << "threads: " << report.threads << "\n"
              << "count: " << report.count.str() << "\n"
              << "elapsed_ms: " << report.elapsed_ms << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const auto primes = parse_primes(o.primes);
  std::vector<std::pair<std::string, LClass>> candidates;
  std::string target;
  std::optional<QuadricTarget> quadric;
  std::optional<FeynmanGraph> graph;
  if (!o.quadric.empty()) {
    quadric = quadric_target(o.quadric, o.dim);
    candidates.emplace_back(quadric->name, quadric->cls);
    target = o.quadric;
  } else if (!o.graph.empty()) {
    graph = parse_graph(o.graph);
    require_complete(*graph);
    for (const auto& m : split_csv(o.methods))
      candidates.emplace_back(m,
                              method_class(m, graph->vertex_count(), o.dim));
    target = o.graph;
  } else {
    throw std::invalid_argument("verify: pass --graph or --quadric");
  }
  if (candidates.empty())
    throw std::invalid_argument("verify: no candidate methods given");

  nlohmann::json rows = nlohmann::json::array();
  std::vector<bool> all_match(candidates.size(), true);
  std::ostringstream text;
  text << "target: " << target << " (d = " << o.dim << ")\n";
  for (const auto q : primes) {
    const Int observed = quadric
                             ? quadric->count(o.dim, q, make_budget(o))
                             : run_count(*graph, o.dim, q, o);
    nlohmann::json predictions, residuals;
    text << "q = " << q << ": observed = " << observed.str() << "\n";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const Int predicted = candidates[i].second.eval(Int(q));
      const Int residual = predicted - observed;
      if (residual != 0) all_match[i] = false;
      predictions[candidates[i].first] = predicted.str();
      residuals[candidates[i].first] = residual.str();
      text << "  " << candidates[i].first
           << ": predicted = " << predicted.str()
           << ", residual = " << residual.str() << "\n";
    }
    rows.push_back({{"q", q},
                    {"observed", observed.str()},
                    {"predictions", predictions},
                    {"residuals", residuals}});
  }
  nlohmann::json verdict = nlohmann::json::array();
  std::string verdict_text;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (all_match[i]) {
      verdict.push_back(candidates[i].first);
      if (!verdict_text.empty()) verdict_text += ", ";
      verdict_text += candidates[i].first;
    }
  if (o.json)
    emit({{"target", target},
          {"d", o.dim},
          {"algorithm", quadric ? "direct" : o.algo},
          {"rows", rows},
          {"verdict", verdict}});
  else
    std::cout << text.str()
              << "verdict: " << (verdict.empty() ? "none" : verdict_text)
              << "\n";
  return verdict.empty() ? 1 : 0;
}

int cmd_interpolate(const Options& o) {
  const auto g = parse_graph(o.graph);
  const auto primes = parse_primes(o.primes);
  const std::vector<std::uint32_t> holdouts =
      o.holdout.empty() ? std::vector<std::uint32_t>{}
                        : parse_primes(o.holdout);
  const int n = g.vertex_count();
  const int max_degree = 2 * o.dim * n - 2 * o.dim;
  if (static_cast<int>(primes.size()) < max_degree + 1)
    throw std::invalid_argument(
        "interpolate: need at least " + std::to_string(max_degree + 1) +
        " primes for the reduced degree bound " + std::to_string(max_degree) +
        ", got " + std::to_string(primes.size()));

  std::vector<std::pair<Int, Int>> points;
  points.reserve(primes.size());
  for (const auto q : primes) {
    const Int count = run_count(g, o.dim, q, o);
    Int qf = 1;
    for (int i = 0; i < 2 * o.dim; ++i) qf *= q;
    if (count % qf != 0)
      // the count of any edge union is invariant under simultaneous
      // translation of all z and all w, so q^{2d} must divide it; a failure
      // here means a counting bug, not bad input
      throw std::logic_error("translation reduction failed at q = " +
                             std::to_string(q) + ": count " + count.str() +
                             " is not divisible by q^" +
                             std::to_string(2 * o.dim));
    points.emplace_back(Int(q), count / qf);
  }
  const LClass reduced = feynq::interpolate(points, max_degree);
  const LClass cls =
      reduced * LClass::monomial(static_cast<unsigned>(2 * o.dim));

  nlohmann::json hrows = nlohmann::json::array();
  bool all_match = true;
  std::ostringstream text;
  text << "class: " << cls.str() << "\n";
  for (const auto q : holdouts) {
    const Int observed = run_count(g, o.dim, q, o);
    const Int predicted = cls.eval(Int(q));
    const bool match = predicted == observed;
    all_match = all_match && match;
    hrows.push_back({{"q", q},
                     {"predicted", predicted.str()},
                     {"observed", observed.str()},
                     {"match", match}});
    text << "holdout q = " << q << ": predicted = " << predicted.str()
         << ", observed = " << observed.str() << ", "
         << (match ? "match" : "MISMATCH") << "\n";
  }
  if (o.json)
    emit({{"graph", o.graph},
          {"d", o.dim},
          {"reduced_degree_bound", max_degree},
          {"class", feynq::lclass_to_json(cls)},
          {"holdouts", hrows},
          {"match", all_match}});
  else
    std::cout << text.str();
  return all_match ? 0 : 1;
}

int cmd_survey(const Options& o) {
  const auto s =
      feynq::fibre_survey(o.survey_n, o.dim, o.prime, o.threads,
                          make_budget(o));
  if (o.json) {
    emit(feynq::survey_to_json(s));
  } else {
    std::cout << "n: " << s.n << ", d: " << s.d << ", q: " << s.q << "\n"
              << "case1 (a pinned pair satisfies its quadric): "
              << s.case1_count.str() << "\n"
              << "case2 (w^a equals a pinned w): " << s.case2_count.str()
              << "\n"
              << "case3 general: " << s.case3_general.str() << "\n"
              << "case3 almost-general: " << s.case3_almost.str() << "\n"
              << "case3 violating: " << s.case3_violating.str() << "\n"
              << "fibre point total: " << s.fibre_point_total.str() << "\n"
              << "fibrewise cross-check: " << s.fibrewise_total.str() << "\n";
  }
  return 0;
}

int cmd_arr_classify(const Options& o) {
  std::ifstream in(o.file);
  if (!in)
    throw std::invalid_argument("cannot open '" + o.file + "'");
  nlohmann::json doc;
  in >> doc;
  const auto arr = feynq::arrangement_from_json(doc);
  const auto pc = arr.classify_position();
  if (o.json)
    emit(feynq::position_to_json(pc));
  else
    std::cout << feynq::position_to_string(pc) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  Options o;
  int rc = 0;
  CLI::App app{"exact Grothendieck-class computations and finite-field "
               "point counts for Feynman quadrics"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "emit a single JSON document");
    sub->add_option("--threads", o.threads,
                    "worker threads (0 = available parallelism)");
    sub->add_option("--budget", o.budget,
                    "enumeration budget override (0 = defaults)");
    sub->add_option("--seed", o.seed,
                    "seed for randomized fixtures (reserved)");
  };

  auto* c_class = app.add_subcommand("class", "print a class polynomial");
  c_class->add_option("--graph", o.graph, "complete:n or an edge list");
  c_class->add_option("--quadric", o.quadric,
                      "simple | projective-closure | exceptional-divisor | "
                      "blowup");
  c_class->add_option("--dim", o.dim, "coordinate dimension d")->required();
  c_class->add_option("--method", o.method, "paper | corrected");
  add_common(c_class);
  c_class->callback([&] { rc = cmd_class(o); });

  auto* c_count = app.add_subcommand("count", "count F_q points");
  c_count->add_option("--graph", o.graph, "complete:n or an edge list")
      ->required();
  c_count->add_option("--dim", o.dim, "coordinate dimension d")->required();
  c_count->add_option("--prime", o.prime, "field size q")->required();
  c_count->add_option("--algo", o.algo, "brute | fibrewise");
  add_common(c_count);
  c_count->callback([&] { rc = cmd_count(o); });

  auto* c_verify = app.add_subcommand(
      "verify", "evaluate candidate classes against counts");
  c_verify->add_option("--graph", o.graph, "complete:n");
  c_verify->add_option("--quadric", o.quadric,
                       "simple | projective-closure | exceptional-divisor | "
                       "blowup");
  c_verify->add_option("--dim", o.dim, "coordinate dimension d")->required();
  c_verify->add_option("--primes", o.primes, "e.g. 2,3,5 or 2..41")
      ->required();
  c_verify->add_option("--methods", o.methods,
                       "candidate methods (default paper,corrected)");
  c_verify->add_option("--algo", o.algo, "brute | fibrewise");
  add_common(c_verify);
  c_verify->callback([&] { rc = cmd_verify(o); });

  auto* c_interp = app.add_subcommand(
      "interpolate", "fit a class polynomial to counts across primes");
  c_interp->add_option("--graph", o.graph, "complete:n or an edge list")
      ->required();
  c_interp->add_option("--dim", o.dim, "coordinate dimension d")->required();
  c_interp->add_option("--primes", o.primes, "fit primes, e.g. 2..41")
      ->required();
  c_interp->add_option("--holdout", o.holdout, "validation primes");
  c_interp->add_option("--algo", o.algo, "brute | fibrewise");
  add_common(c_interp);
  c_interp->callback([&] { rc = cmd_interpolate(o); });

  auto* c_survey = app.add_subcommand(
      "survey", "classify fibres over the forgetful-projection base");
  c_survey->add_option("--n", o.survey_n, "pinned vertices")->required();
  c_survey->add_option("--dim", o.dim, "coordinate dimension d")->required();
  c_survey->add_option("--prime", o.prime, "field size q")->required();
  add_common(c_survey);
  c_survey->callback([&] { rc = cmd_survey(o); });

  auto* c_arr = app.add_subcommand("arr", "hyperplane arrangement tools");
  c_arr->require_subcommand(1);
  auto* c_classify =
      c_arr->add_subcommand("classify", "classify an arrangement file");
  c_classify->add_option("file", o.file, "arrangement JSON file")
      ->required();
  add_common(c_classify);
  c_classify->callback([&] { rc = cmd_arr_classify(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const feynq::NotDivisible& e) {
    std::cerr << "feynq: consistency failure: " << e.what() << "\n";
    return 1;
  } catch (const feynq::NoIntegerFit& e) {
    std::cerr << "feynq: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "feynq: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "feynq: consistency failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "feynq: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
