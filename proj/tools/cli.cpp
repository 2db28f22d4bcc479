#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tailkit/errors.hpp"
#include "tailkit/fractional.hpp"
#include "tailkit/hypergraph.hpp"
#include "tailkit/linsys.hpp"
#include "tailkit/moment_bounds.hpp"
#include "tailkit/rooted.hpp"
#include "tailkit/sim.hpp"

namespace tailkit::cli {

using json = nlohmann::ordered_json;

namespace {

std::string_view command_name(Command c) {
  switch (c) {
    case Command::hyper:
      return "hyper";
    case Command::linsys:
      return "linsys";
    case Command::ap:
      return "ap";
    case Command::schur:
      return "schur";
    case Command::rooted:
      return "rooted";
    case Command::sweep:
      return "sweep";
  }
  return "?";
}

json number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return json::parse(format_number(x));
}

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

json log_number(double x) { return number(x > 0.0 ? std::log(x) : -INFINITY); }

std::string rational_text(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string big_text(const BigInt& v) { return v.str(); }

// Everything one grid point produces, before serialization.
struct Point {
  json document;
  std::string regime;
  std::optional<double> M;
  double mu = 0.0;
  std::optional<BoundEnvelope> envelope;
  std::optional<double> exact;
  std::optional<Dyadic> exact_value;  // unrounded, for the verdict
  std::optional<TailEstimate> empirical;
  bool failed = false;
};

void validate(const RunConfig& c) {
  if (!(c.t > 1.0)) throw ArgumentError("--t must exceed 1");
  if (!(c.p >= 0.0 && c.p <= 1.0)) throw ArgumentError("--p must lie in [0, 1]");
  if (c.m_max && *c.m_max < 1) throw ArgumentError("--m-max must be positive");
  if (c.command == Command::sweep) {
    if (c.inner == Command::sweep) throw ArgumentError("--command cannot be sweep");
    if (c.steps < 2) throw ArgumentError("--steps must be at least 2");
    if (!(c.p_min > 0.0 && c.p_min < c.p_max && c.p_max <= 1.0)) {
      throw ArgumentError("sweeps need 0 < p-min < p-max <= 1");
    }
  }
}

json inputs_of(const RunConfig& c, Command command) {
  json in;
  in["command"] = command_name(command);
  switch (command) {
    case Command::hyper:
      in["hypergraph"] = c.hypergraph_path;
      break;
    case Command::linsys:
      if (c.matrix_path.empty()) {
        in["system"] = c.system;
        in["k"] = c.k;
      } else {
        in["matrix"] = c.matrix_path;
      }
      in["N"] = c.N;
      break;
    case Command::ap:
      in["k"] = c.k;
      in["N"] = c.N;
      break;
    case Command::schur:
      in["N"] = c.N;
      break;
    case Command::rooted: {
      in["graph"] = c.graph_path;
      in["roots"] = c.roots;
      in["n"] = c.n;
      break;
    }
    case Command::sweep:
      break;
  }
  in["p"] = number(c.p);
  in["t"] = number(c.t);
  in["q"] = optional_number(c.q);
  in["trials"] = c.trials;
  in["seed"] = c.seed;
  in["m_max"] = c.m_max ? json(*c.m_max) : json(nullptr);
  in["exact"] = c.exact ? json(*c.exact) : json("auto");
  return in;
}

json estimate_json(const std::optional<TailEstimate>& e) {
  if (!e) return nullptr;
  json out;
  out["hits"] = e->hits;
  out["trials"] = e->trials;
  out["estimate"] = number(e->estimate);
  out["log_estimate"] = log_number(e->estimate);
  out["ci_low"] = number(e->ci_low);
  out["ci_high"] = number(e->ci_high);
  out["seed"] = e->seed;
  return out;
}

json exact_json(const std::optional<double>& exact) {
  if (!exact) return nullptr;
  json out;
  out["tail"] = number(*exact);
  out["log_tail"] = log_number(*exact);
  return out;
}

// Verdict against the exact tail when present, otherwise the Monte Carlo CI.
json verdict_json(Point& point) {
  if (!point.envelope || (!point.exact && !point.empirical)) return nullptr;
  const Verdict v = point.exact_value ? envelope_check(*point.envelope, *point.exact_value)
                                : envelope_check(*point.envelope, *point.empirical);
  point.failed = !v.pass;
  json out;
  out["status"] = v.pass ? "PASS" : "FAIL";
  out["against"] = point.exact ? "exact" : "empirical";
  out["side"] = std::string(to_string(v.side));
  out["margin"] = number(v.margin);
  return out;
}

json bounds_json(const std::optional<BoundEnvelope>& env, json certificate) {
  if (!env) return nullptr;
  json out;
  out["mu"] = number(env->mu);
  out["t"] = number(env->t);
  out["lower_log_prob"] = optional_number(env->lower_log_prob);
  if (const auto lower = certificate_probability(*env)) {
    out["lower_prob"] = number(lower->to_double());
  } else {
    out["lower_prob"] = env->lower_log_prob ? number(std::exp(*env->lower_log_prob)) : json(nullptr);
  }
  out["certificate"] = std::move(certificate);
  out["upper_tail_bound"] = number(env->upper_tail_bound);
  out["log_upper_tail_bound"] = number(env->log_upper_tail_bound);
  out["optimal_m"] = env->optimal_m;
  out["lower_exponent_scale"] = number(env->lower_exponent_scale);
  out["upper_exponent_scale"] = number(env->upper_exponent_scale);
  out["in_interesting_range"] = env->in_interesting_range;
  return out;
}

bool want_exact(const RunConfig& c, bool fits) {
  if (c.exact) return *c.exact;
  return fits;
}

struct HyperProblem {
  Hypergraph h;
  std::optional<LinearSystem> system;
  double q = 0.0;
  bool has_q = false;
};

HyperProblem load_hyper(const RunConfig& c, Command command) {
  auto from_system = [&](LinearSystem a) {
    if (c.N < 1) throw ArgumentError("--N must be positive");
    Hypergraph h = solution_hypergraph(a, c.N, Guards::from_environment());
    const double q = c.q.value_or(static_cast<double>(a.q()));
    return HyperProblem{std::move(h), std::move(a), q, true};
  };
  switch (command) {
    case Command::hyper: {
      if (c.hypergraph_path.empty()) throw ArgumentError("hyper needs --hypergraph");
      Hypergraph h = Hypergraph::load(c.hypergraph_path);
      return HyperProblem{std::move(h), std::nullopt, c.q.value_or(0.0), c.q.has_value()};
    }
    case Command::linsys:
      if (!c.matrix_path.empty()) return from_system(LinearSystem::load(c.matrix_path));
      if (c.system == "ap") return from_system(standard_system(StandardSystem::ap, c.k));
      if (c.system == "schur") return from_system(standard_system(StandardSystem::schur, 3));
      throw ArgumentError("linsys needs --matrix or --system ap|schur");
    case Command::ap:
      return from_system(standard_system(StandardSystem::ap, c.k));
    case Command::schur:
      return from_system(standard_system(StandardSystem::schur, 3));
    default:
      break;
  }
  throw ArgumentError("not a hypergraph command");
}

Point hyper_point(const RunConfig& c, Command command, const HyperProblem& problem, double p) {
  const Hypergraph& h = problem.h;
  const Guards guards = Guards::from_environment();
  Point point;
  point.mu = expected_count(h, p);
  if (!(point.mu > 0.0)) throw ArgumentError("mu = 0: the upper tail is trivial");
  const double need = c.t * point.mu;
  const bool feasible = need <= static_cast<double>(h.size());

  json counts;
  counts["edges"] = h.size();
  counts["ground_size"] = h.ground_size();
  counts["uniformity"] = h.uniformity();
  counts["mu"] = number(point.mu);
  counts["degrees"] = degree_profile(h);
  if (problem.system) {
    json theory = json::array();
    for (unsigned j = 0; j <= h.uniformity(); ++j) {
      theory.push_back(big_text(theoretical_delta_bound(*problem.system, j, h.ground_size())));
    }
    counts["theoretical_degrees"] = std::move(theory);
    counts["density"] = number(solution_density(*problem.system, h));
  }

  // Certificate: the best prefix [1..m] for linear systems, greedy otherwise.
  std::vector<Vertex> members;
  json certificate = nullptr;
  if (feasible) {
    if (problem.system) {
      const auto prefix = prefix_certificate(*problem.system, h.ground_size(), p, c.t, guards);
      members = prefix.members();
      certificate = json::object();
      certificate["construction"] = "prefix";
      certificate["size"] = prefix.m;
      certificate["hosted"] = prefix.hosted;
      certificate["analytic_m"] = prefix.analytic_m;
      certificate["density_floor"] = number(prefix.density_floor);
    } else if (auto greedy = greedy_certificate(h, p, c.t, h.ground_size())) {
      members = std::move(*greedy);
      certificate = json::object();
      certificate["construction"] = "greedy";
      certificate["size"] = members.size();
      certificate["hosted"] = induced_count(h, members);
    }
  }

  const bool scales = problem.has_q && p > 0.0 && p < 1.0;
  BoundEnvelope env;
  if (scales) {
    env = build_envelope(h, p, c.t, problem.q, c.m_max,
                         certificate.is_null() ? std::nullopt
                                               : std::optional<std::span<const Vertex>>(members));
  } else {
    // No exponent scale without q or at p = 1; the bounds themselves still apply.
    const auto markov =
        markov_tail_upper(h, p, c.t, c.m_max.value_or(default_m_max(point.mu, h.uniformity())));
    env.mu = point.mu;
    env.t = c.t;
    env.p = p;
    env.q = problem.q;
    env.upper_tail_bound = markov.bound;
    env.log_upper_tail_bound = markov.log_bound;
    env.optimal_m = markov.optimal_m;
    env.lower_exponent_scale = NAN;
    env.upper_exponent_scale = NAN;
    env.in_interesting_range =
        point.mu >= 1.0 && std::log(c.t) + h.uniformity() * std::log(p) <= 0.0;
    if (!certificate.is_null()) {
      env.lower_log_prob = certificate_tail_lower(h, members, p, c.t);
      env.certificate_size = members.size();
    }
  }
  point.envelope = env;

  json regime;
  point.regime = feasible ? (env.in_interesting_range ? "interesting" : "outside") : "d";
  regime["name"] = point.regime;
  regime["tail_is_zero"] = !feasible;
  regime["required"] = number(need);

  const bool fits = h.ground_size() <= guards.max_subset_enumeration;
  if (!feasible) {
    point.exact_value = Dyadic();
  } else if (want_exact(c, fits)) {
    point.exact_value = exact_tail_dyadic(h, p, need, guards);
  }
  if (point.exact_value) point.exact = point.exact_value->to_double();
  if (c.trials > 0) {
    const std::uint32_t ground = h.ground_size();
    point.empirical = monte_carlo_tail(
        [&](std::uint64_t seed, std::uint64_t trial) {
          return static_cast<double>(
              induced_count(h, sample_subset(ground, p, seed, trial).members));
        },
        need, c.trials, c.seed, c.threads);
    point.empirical->exact = point.exact;
  }

  json doc;
  RunConfig echo = c;
  echo.p = p;
  doc["inputs"] = inputs_of(echo, command);
  doc["counts"] = std::move(counts);
  doc["regime"] = std::move(regime);
  doc["bounds"] = bounds_json(point.envelope, std::move(certificate));
  doc["empirical"] = estimate_json(point.empirical);
  doc["exact"] = exact_json(point.exact);
  doc["verdict"] = verdict_json(point);
  point.document = std::move(doc);
  return point;
}

RootedGraph load_rooted(const RunConfig& c) {
  if (c.graph_path.empty()) throw ArgumentError("rooted needs --graph");
  Graph g = Graph::load(c.graph_path);
  std::vector<unsigned> roots;
  for (unsigned r : c.roots) {
    if (r < 1 || r > g.vertex_count()) throw ArgumentError("--roots entries must lie in [1, n(G)]");
    roots.push_back(r - 1);
  }
  return RootedGraph(std::move(g), std::move(roots));
}

Point rooted_point(const RunConfig& c, const RootedGraph& g, double p) {
  const Guards guards = Guards::from_environment();
  if (!(p > 0.0)) throw ArgumentError("rooted analysis needs p > 0");
  Point point;
  const RegimeReport regime = classify_regime(g, c.n, p, c.t, guards);
  point.mu = regime.mu;
  point.M = regime.M;
  point.regime = std::string(to_string(regime.regime));
  const double need = c.t * point.mu;

  json counts;
  counts["copies"] = big_text(regime.complete_copies);
  counts["mu"] = number(regime.mu);
  counts["edges"] = g.edge_count();
  counts["rooted_edges"] = g.rooted_edge_count();
  const auto alpha = fractional_independence(g.without_roots());
  counts["alpha_star"] = rational_text(alpha.value);
  counts["rooted_density"] = rational_text(regime.rooted_density);
  counts["M"] = number(regime.M);
  counts["extension_multiplicity"] = extension_multiplicity(g, c.n);

  json reg;
  reg["name"] = point.regime;
  reg["threshold"] = number(regime.threshold);
  reg["p1"] = number(regime.p1);
  reg["p2"] = number(regime.p2);
  reg["tail_is_zero"] = regime.tail_is_zero;
  reg["required"] = number(need);

  json certificate = nullptr;
  const bool enumerable = complete_rooted_copies(c.n, g) <= 1'000'000;
  if (enumerable) {
    point.envelope = rooted_envelope(g, c.n, p, c.t, c.m_max, guards);
    if (auto cert = rooted_lower_certificate(g, c.n, p, c.t, guards)) {
      certificate = json::object();
      certificate["construction"] = cert->construction;
      certificate["size"] = cert->edges.size();
      certificate["hosted"] = cert->hosted;
    }
  }

  const unsigned pairs = c.n * (c.n - 1) / 2;
  if (regime.tail_is_zero) {
    point.exact_value = Dyadic();
  } else if (want_exact(c, pairs <= guards.max_rooted_pairs)) {
    point.exact_value = exact_tail_rooted_dyadic(g, c.n, p, need, guards);
  }
  if (point.exact_value) point.exact = point.exact_value->to_double();
  if (c.trials > 0) {
    const unsigned n = c.n;
    const unsigned r = g.root_count();
    point.empirical = monte_carlo_tail(
        [&](std::uint64_t seed, std::uint64_t trial) {
          return static_cast<double>(count_rooted_copies(sample_gnp(n, p, seed, trial), r, g));
        },
        need, c.trials, c.seed, c.threads);
    point.empirical->exact = point.exact;
  }

  json doc;
  RunConfig echo = c;
  echo.p = p;
  doc["inputs"] = inputs_of(echo, Command::rooted);
  doc["counts"] = std::move(counts);
  doc["regime"] = std::move(reg);
  doc["bounds"] = bounds_json(point.envelope, std::move(certificate));
  doc["empirical"] = estimate_json(point.empirical);
  doc["exact"] = exact_json(point.exact);
  doc["verdict"] = verdict_json(point);
  point.document = std::move(doc);
  return point;
}

std::vector<std::string> csv_row(const Point& point, double p, double t) {
  auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
  const auto& env = point.envelope;
  return {format_number(p),
          format_number(t),
          point.regime,
          format_number(point.mu),
          opt(point.M),
          env ? format_number(env->lower_exponent_scale) : "",
          env ? format_number(env->upper_exponent_scale) : "",
          env ? opt(env->lower_log_prob) : "",
          env ? format_number(env->upper_tail_bound) : "",
          env ? std::to_string(env->optimal_m) : "",
          opt(point.exact),
          point.empirical ? format_number(point.empirical->estimate) : ""};
}

std::vector<double> grid(const RunConfig& c) {
  std::vector<double> ps;
  for (unsigned i = 0; i < c.steps; ++i) {
    const double f = static_cast<double>(i) / (c.steps - 1);
    if (c.scale == Scale::log) {
      ps.push_back(std::exp(std::log(c.p_min) + f * (std::log(c.p_max) - std::log(c.p_min))));
    } else {
      ps.push_back(c.p_min + f * (c.p_max - c.p_min));
    }
  }
  ps.front() = c.p_min;
  ps.back() = c.p_max;
  return ps;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

const std::vector<std::string>& csv_header() {
  static const std::vector<std::string> header{
      "p",     "t",     "regime", "mu",         "M",         "lower_exponent_scale",
      "upper_exponent_scale", "lower_log_prob", "upper_tail_bound", "optimal_m",
      "exact_tail", "estimate"};
  return header;
}

Report run(const RunConfig& config) {
  validate(config);
  Report report;
  const Command command = config.command == Command::sweep ? config.inner : config.command;
  const std::vector<double> ps =
      config.command == Command::sweep ? grid(config) : std::vector<double>{config.p};

  std::optional<HyperProblem> hyper;
  std::optional<RootedGraph> rooted;
  if (command == Command::rooted) {
    rooted = load_rooted(config);
  } else {
    hyper = load_hyper(config, command);
  }

  json points = json::array();
  for (double p : ps) {
    Point point = rooted ? rooted_point(config, *rooted, p) : hyper_point(config, command, *hyper, p);
    report.failed = report.failed || point.failed;
    report.rows.push_back(csv_row(point, p, config.t));
    points.push_back(std::move(point.document));
  }

  if (config.command == Command::sweep) {
    json doc;
    doc["sweep"] = {{"command", command_name(command)},
                    {"p_min", number(config.p_min)},
                    {"p_max", number(config.p_max)},
                    {"steps", config.steps},
                    {"scale", config.scale == Scale::log ? "log" : "linear"}};
    doc["points"] = std::move(points);
    report.document = std::move(doc);
  } else {
    report.document = std::move(points.front());
  }
  return report;
}

std::string emit(const Report& report, Format format) {
  if (format == Format::json) return report.document.dump(2) + "\n";
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(csv_header());
  for (const auto& row : report.rows) line(row);
  return out.str();
}

}  // namespace tailkit::cli
