#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "credal/convergence.hpp"
#include "credal/credal_div.hpp"
#include "credal/duality.hpp"
#include "credal/error.hpp"
#include "credal/parallel.hpp"
#include "credal/property_suite.hpp"
#include "credal/random.hpp"
#include "credal/serialization.hpp"

namespace credal::cli {

namespace {

enum class Format { text, json, csv };

struct Options {
  std::string p_file;
  std::string q_file;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::size_t trials = 50;
  std::optional<double> metric_p;
  Format format = Format::text;
  std::string out_file;
  std::size_t steps = 10;
  std::size_t n = 3;
  std::size_t k = 2;
  double min_weight = 0.0;
};

/// Thrown for flag combinations CLI11 cannot express; exits with code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string text;
  int code = kOk;
};

const char* status_name(SolveStatus s) {
  return s == SolveStatus::converged ? "converged" : "iteration_limit";
}

bool hit_limit(const SolverReport& r) { return r.status == SolveStatus::iteration_limit; }

std::string join_weights(std::span<const double> w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += format_real(w[i]);
  }
  return s + "]";
}

void write_report(JsonWriter& w, const SolverReport& r) {
  w.begin_object();
  w.field("value", r.value);
  w.field("witness_outer", static_cast<std::uint64_t>(r.witness_outer));
  w.key("witness_inner");
  if (r.witness_inner) {
    w.begin_array(true);
    for (double x : r.witness_inner->coefficients()) w.value(x);
    w.end_array();
  } else {
    w.null();
  }
  if (r.witness_outer_weights) {
    w.key("witness_outer_weights").begin_array(true);
    for (double x : r.witness_outer_weights->coefficients()) w.value(x);
    w.end_array();
  }
  w.field("gap", r.gap);
  w.field("iterations", static_cast<std::uint64_t>(r.iterations));
  w.field("status", status_name(r.status));
  w.end_object();
}

std::string text_report(const std::string& label, const SolverReport& r) {
  std::ostringstream os;
  os << label << " = " << format_real(r.value) << "\n";
  os << "  witness_outer = " << r.witness_outer << "\n";
  if (r.witness_inner) os << "  witness_inner = " << join_weights(r.witness_inner->coefficients()) << "\n";
  if (r.witness_outer_weights) {
    os << "  witness_outer_weights = " << join_weights(r.witness_outer_weights->coefficients()) << "\n";
  }
  os << "  gap = " << format_real(r.gap) << "\n";
  os << "  iterations = " << r.iterations << "\n";
  os << "  status = " << status_name(r.status) << "\n";
  return os.str();
}

struct Pair {
  Instance p;
  Instance q;
};

Pair load_pair(const Options& o) {
  if (o.p_file.empty() || o.q_file.empty()) throw UsageError("--p and --q are required");
  Pair pair{load_instance(o.p_file), load_instance(o.q_file)};
  if (!same_space(pair.p.set.space(), pair.q.set.space())) {
    fail(ErrorCode::SpaceMismatch, o.q_file + ": space differs from " + o.p_file);
  }
  return pair;
}

double metric_order(const Options& o, const CredalSet& set) {
  if (o.metric_p && !set.space()->has_metric()) {
    fail(ErrorCode::NoMetric, "--metric-p given but the space has no metric");
  }
  const double order = o.metric_p.value_or(1.0);
  if (!(order >= 1.0) || !std::isfinite(order)) throw UsageError("--metric-p must be a finite value >= 1");
  return order;
}

Output cmd_div(const Options& o) {
  const Pair in = load_pair(o);
  const CredalSet& p = in.p.set;
  const CredalSet& q = in.q.set;
  const double order = metric_order(o, p);

  const SolverReport pq = gkl(p, q, o.tol);
  const SolverReport qp = gkl(q, p, o.tol);
  const SolverReport star = kl_star(p, q, o.tol);
  const ExtendedReal bar = pq.value + qp.value;
  const GjsReport js = gjs_report(p, q, o.tol);
  const SolverReport tv_pq = directed_tv(p, q);
  const SolverReport tv_qp = directed_tv(q, p);
  const double tv = std::max(tv_pq.value.value(), tv_qp.value.value());
  std::optional<SolverReport> w_pq, w_qp;
  if (p.space()->has_metric()) {
    w_pq = directed_wasserstein(p, q, order);
    w_qp = directed_wasserstein(q, p, order);
  }
  const bool limited = hit_limit(pq) || hit_limit(qp) || hit_limit(star) ||
                       hit_limit(js.p_to_mid) || hit_limit(js.q_to_mid);

  Output res;
  res.code = limited ? kSolverError : kOk;
  if (o.format == Format::json) {
    JsonWriter w;
    w.begin_object();
    w.field("command", "div");
    w.field("p", std::string_view(o.p_file));
    w.field("q", std::string_view(o.q_file));
    w.field("tolerance", o.tol);
    w.key("gkl_pq");
    write_report(w, pq);
    w.key("gkl_qp");
    write_report(w, qp);
    w.field("kl_bar", bar);
    w.key("kl_star");
    write_report(w, star);
    w.key("gjs").begin_object();
    w.field("value", js.value);
    w.key("p_to_mid");
    write_report(w, js.p_to_mid);
    w.key("q_to_mid");
    write_report(w, js.q_to_mid);
    w.end_object();
    w.key("gtv").begin_object();
    w.field("value", tv);
    w.key("pq");
    write_report(w, tv_pq);
    w.key("qp");
    write_report(w, tv_qp);
    w.end_object();
    if (w_pq) {
      w.key("gwasserstein").begin_object();
      w.field("order", order);
      w.field("value", std::max(w_pq->value.value(), w_qp->value.value()));
      w.key("pq");
      write_report(w, *w_pq);
      w.key("qp");
      write_report(w, *w_qp);
      w.end_object();
    }
    w.end_object();
    res.text = w.str();
  } else if (o.format == Format::csv) {
    std::ostringstream os;
    os << "quantity,value,gap,status\n";
    auto row = [&os](const char* name, const SolverReport& r) {
      os << name << ',' << format_real(r.value) << ',' << format_real(r.gap) << ','
         << status_name(r.status) << '\n';
    };
    row("gkl_pq", pq);
    row("gkl_qp", qp);
    os << "kl_bar," << format_real(bar) << ",,\n";
    row("kl_star", star);
    os << "gjs," << format_real(js.value) << ','
       << format_real(std::max(js.p_to_mid.gap, js.q_to_mid.gap)) << ",\n";
    os << "gtv," << format_real(tv) << ',' << format_real(std::max(tv_pq.gap, tv_qp.gap)) << ",\n";
    if (w_pq) {
      os << "gwasserstein," << format_real(std::max(w_pq->value.value(), w_qp->value.value())) << ','
         << format_real(std::max(w_pq->gap, w_qp->gap)) << ",\n";
    }
    res.text = os.str();
  } else {
    std::ostringstream os;
    os << text_report("gkl(P||Q)", pq) << text_report("gkl(Q||P)", qp);
    os << "kl_bar = " << format_real(bar) << "\n";
    os << text_report("kl_star(P||Q)", star);
    os << "gjs = " << format_real(js.value) << "\n";
    os << "gtv = " << format_real(tv) << "\n";
    os << text_report("  directed_tv(P,Q)", tv_pq) << text_report("  directed_tv(Q,P)", tv_qp);
    if (w_pq) {
      os << "gwasserstein(p=" << format_real(order)
         << ") = " << format_real(std::max(w_pq->value.value(), w_qp->value.value())) << "\n";
    }
    res.text = os.str();
  }
  return res;
}

Output cmd_dual(const Options& o) {
  const Pair in = load_pair(o);
  const CredalSet& p = in.p.set;
  const CredalSet& q = in.q.set;

  std::optional<DualityCertificate> klc;
  try {
    klc = maximize_dual_kl(p, q, o.tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InfinitePrimal) throw;
  }
  const DualityCertificate tvc = maximize_dual_tv(p, q);

  const bool kl_ok = !klc || std::fabs(klc->gap) <= kKlDualityGapTarget;
  const bool tv_ok = std::fabs(tvc.gap) <= kTvDualityGapTarget;
  const char* kl_status = !klc ? "infinite_primal" : kl_ok ? "certified" : "gap_exceeded";
  const char* tv_status = tv_ok ? "certified" : "gap_exceeded";

  Output res;
  res.code = kl_ok && tv_ok ? kOk : kDualityGap;
  auto phi_list = [](const DualityCertificate& c) { return join_weights(c.best_phi.values()); };
  if (o.format == Format::json) {
    JsonWriter w;
    w.begin_object();
    w.field("command", "dual");
    w.field("p", std::string_view(o.p_file));
    w.field("q", std::string_view(o.q_file));
    w.key("kl").begin_object();
    w.field("status", kl_status);
    if (klc) {
      w.field("primal", klc->primal);
      w.field("dual", klc->dual);
      w.field("gap", klc->gap);
      w.field("target", kKlDualityGapTarget);
      w.field("ascent_iterations", static_cast<std::uint64_t>(klc->ascent_iterations));
      w.key("phi").begin_array(true);
      for (double x : klc->best_phi.values()) w.value(x);
      w.end_array();
    } else {
      w.field("primal", ExtendedReal::infinity());
    }
    w.end_object();
    w.key("tv").begin_object();
    w.field("status", tv_status);
    w.field("primal", tvc.primal);
    w.field("dual", tvc.dual);
    w.field("gap", tvc.gap);
    w.field("target", kTvDualityGapTarget);
    w.key("phi").begin_array(true);
    for (double x : tvc.best_phi.values()) w.value(x);
    w.end_array();
    w.end_object();
    w.end_object();
    res.text = w.str();
  } else if (o.format == Format::csv) {
    std::ostringstream os;
    os << "certificate,status,primal,dual,gap,target\n";
    if (klc) {
      os << "kl," << kl_status << ',' << format_real(klc->primal) << ',' << format_real(klc->dual)
         << ',' << format_real(klc->gap) << ',' << format_real(kKlDualityGapTarget) << '\n';
    } else {
      os << "kl," << kl_status << ",+inf,,," << format_real(kKlDualityGapTarget) << '\n';
    }
    os << "tv," << tv_status << ',' << format_real(tvc.primal) << ',' << format_real(tvc.dual) << ','
       << format_real(tvc.gap) << ',' << format_real(kTvDualityGapTarget) << '\n';
    res.text = os.str();
  } else {
    std::ostringstream os;
    if (klc) {
      os << "kl: " << kl_status << "\n  primal = " << format_real(klc->primal)
         << "\n  dual = " << format_real(klc->dual) << "\n  gap = " << format_real(klc->gap)
         << "\n  phi = " << phi_list(*klc) << "\n";
    } else {
      os << "kl: " << kl_status << "\n  primal = +inf\n";
    }
    os << "tv: " << tv_status << "\n  primal = " << format_real(tvc.primal)
       << "\n  dual = " << format_real(tvc.dual) << "\n  gap = " << format_real(tvc.gap)
       << "\n  phi = " << phi_list(tvc) << "\n";
    res.text = os.str();
  }
  return res;
}

Output cmd_check(const Options& o) {
  PropertyConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.tol = o.tol;
  const auto results = run_property_suite(cfg);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const PropertyResult& r) { return r.passed(); });
  Output res;
  res.code = ok ? kOk : kPropertyViolation;
  if (o.format == Format::json) {
    JsonWriter w;
    w.begin_object();
    w.field("command", "check");
    w.field("seed", o.seed);
    w.field("trials", static_cast<std::uint64_t>(o.trials));
    w.field("passed", ok);
    w.key("properties").begin_array();
    for (const auto& r : results) {
      w.begin_object();
      w.field("name", std::string_view(r.name));
      w.field("cases", static_cast<std::uint64_t>(r.cases));
      w.field("failures", static_cast<std::uint64_t>(r.failures));
      w.field("worst_margin", r.worst_margin);
      if (!r.passed()) w.field("first_failure", std::string_view(r.first_failure));
      w.end_object();
    }
    w.end_array();
    w.end_object();
    res.text = w.str();
  } else if (o.format == Format::csv) {
    std::ostringstream os;
    os << "property,cases,failures,worst_margin,result\n";
    for (const auto& r : results) {
      os << r.name << ',' << r.cases << ',' << r.failures << ',' << format_real(r.worst_margin)
         << ',' << (r.passed() ? "pass" : "FAIL") << '\n';
    }
    res.text = os.str();
  } else {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-24s %8s %9s %14s  %s\n", "property", "cases", "failures",
                  "worst_margin", "result");
    os << line;
    for (const auto& r : results) {
      std::snprintf(line, sizeof line, "%-24s %8zu %9zu %14.6g  %s\n", r.name.c_str(), r.cases,
                    r.failures, r.worst_margin, r.passed() ? "pass" : "FAIL");
      os << line;
      if (!r.passed()) os << "    first failure: " << r.first_failure << "\n";
    }
    os << (ok ? "all properties hold" : "property violations found") << " (seed " << o.seed
       << ", " << o.trials << " trials)\n";
    res.text = os.str();
  }
  return res;
}

Output cmd_converge(const Options& o) {
  CredalSet start = CredalSet::singleton(Distribution(make_line_space(2), {0.9, 0.1}));
  CredalSet target = CredalSet::singleton(Distribution(start.space(), {0.5, 0.5}));
  if (!o.p_file.empty() || !o.q_file.empty()) {
    const Pair in = load_pair(o);
    start = in.p.set;
    target = in.q.set;
  }
  const auto sequence = make_interpolating_sequence(start, target, uniform_schedule(o.steps));
  const TestDictionary dict = make_default_dictionary(*target.space(), o.seed);
  const auto table = convergence_table(sequence, target, dict, o.tol);
  const EquivalenceReport probe = js_tv_equivalence_probe(sequence, target, o.tol);

  bool ok = probe.passed;
  for (const auto& r : table) ok = ok && r.residuals.min() >= -kResidualTolerance;

  Output res;
  res.code = ok ? kOk : kPropertyViolation;
  if (o.format == Format::json) {
    JsonWriter w;
    w.begin_object();
    w.field("command", "converge");
    w.field("steps", static_cast<std::uint64_t>(o.steps));
    w.field("seed", o.seed);
    w.field("residuals_hold", ok);
    w.field("js_tv_probe_passed", probe.passed);
    w.key("records").begin_array();
    for (const auto& r : table) {
      w.begin_object();
      w.field("step", static_cast<std::uint64_t>(r.step));
      w.field("kl_bar", r.kl_bar.total);
      w.field("gjs", r.gjs);
      w.field("gtv", r.gtv);
      w.key("gw1");
      r.gw1 ? w.value(*r.gw1) : w.null();
      w.field("weak_gap", r.weak_gap);
      w.field("pinsker_slack", r.residuals.pinsker_slack);
      w.field("js_quarter_slack", r.residuals.js_quarter_slack);
      w.field("weak_lipschitz_slack", r.residuals.weak_lipschitz_slack);
      w.key("w1_diameter_slack");
      r.residuals.w1_diameter_slack ? w.value(*r.residuals.w1_diameter_slack) : w.null();
      w.end_object();
    }
    w.end_array();
    w.end_object();
    res.text = w.str();
  } else {
    // CSV is the native table format; text mode prints the same table.
    res.text = convergence_csv(table);
  }
  return res;
}

Output cmd_gen(const Options& o) {
  const CredalSet set = gen_random_credal(o.seed, o.n, o.k, o.min_weight);
  Instance inst{"random seed " + std::to_string(o.seed), set};
  return Output{serialize_instance(inst), kOk};
}

int code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::SolverFailure:
    case ErrorCode::OverflowGuard:
    case ErrorCode::TooManyVertices:
    case ErrorCode::InfinitePrimal:
      return kSolverError;
    default:
      return kParseError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divergences between finitely generated credal sets", "credal-div"};
  app.require_subcommand(1);
  Options o;

  const std::map<std::string, Format> formats{
      {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "Solver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Output format: text, json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", o.out_file, "Write output to FILE instead of stdout");
  };
  auto add_pair = [&](CLI::App* sub, bool required) {
    auto* p = sub->add_option("--p", o.p_file, "Instance file for P");
    auto* q = sub->add_option("--q", o.q_file, "Instance file for Q");
    if (required) {
      p->required();
      q->required();
    }
  };

  CLI::App* div = app.add_subcommand("div", "Generalized divergences between P and Q");
  add_pair(div, true);
  add_common(div);
  div->add_option("--metric-p", o.metric_p, "Wasserstein order (default 1)");

  CLI::App* dual = app.add_subcommand("dual", "Duality certificates for the KL and TV values");
  add_pair(dual, true);
  add_common(dual);

  CLI::App* check = app.add_subcommand("check", "Run the property suite on seeded instances");
  add_common(check);
  check->add_option("--seed", o.seed, "Random seed");
  check->add_option("--trials", o.trials, "Number of seeded instances")->check(CLI::PositiveNumber);

  CLI::App* conv = app.add_subcommand("converge", "Convergence table along an interpolating sequence");
  add_pair(conv, false);
  add_common(conv);
  conv->add_option("--seed", o.seed, "Seed for the test-function dictionary");
  conv->add_option("--steps", o.steps, "Number of schedule steps")->check(CLI::PositiveNumber);

  CLI::App* gen = app.add_subcommand("gen", "Write a seeded random credal set");
  add_common(gen);
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--n", o.n, "Number of points")->check(CLI::PositiveNumber);
  gen->add_option("--k", o.k, "Number of vertices")->check(CLI::PositiveNumber);
  gen->add_option("--min-weight", o.min_weight, "Lower bound on every weight");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    apply_thread_limit_from_env();
    Output res;
    if (*div) res = cmd_div(o);
    else if (*dual) res = cmd_dual(o);
    else if (*check) res = cmd_check(o);
    else if (*conv) res = cmd_converge(o);
    else res = cmd_gen(o);

    if (o.out_file.empty()) {
      out << res.text;
    } else {
      std::ofstream f(o.out_file, std::ios::binary);
      if (!f || !(f << res.text)) {
        err << "error: cannot write " << o.out_file << "\n";
        return kParseError;
      }
    }
    return res.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolverError;
  }
}

}  // namespace credal::cli
