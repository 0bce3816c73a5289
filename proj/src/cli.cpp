#include "bohrconv/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bohrconv/bohr.hpp"
#include "bohrconv/errors.hpp"
#include "bohrconv/kernels.hpp"
#include "bohrconv/verify.hpp"
#include "parallel.hpp"

namespace bohrconv::cli {

namespace {

using nlohmann::json;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json hypotheses_json(const std::vector<Hypothesis>& hs) {
  json arr = json::array();
  for (const auto& h : hs) arr.push_back({{"name", h.name}, {"ok", h.ok}});
  return arr;
}

json radius_json(const RadiusResult& r) {
  return {{"value", r.value},
          {"method", to_string(r.method)},
          {"residual", r.residual},
          {"bracket", {r.lo, r.hi}},
          {"hypotheses", hypotheses_json(r.hypotheses)}};
}

RadiusResult closed_form(double value) {
  RadiusResult r;
  r.value = value;
  r.lo = r.hi = value;
  return r;
}

struct Globals {
  std::size_t order = kDefaultOrder;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  bool json_out = false;
  bool csv_out = false;
};

struct PairArgs {
  std::string pair;
  std::size_t m = 1;
  std::optional<double> a;
  std::string h1;
  std::string h2;
  int l = 0;
  bool assume_co_k = false;
};

KernelPair custom_pair(const PairArgs& p) {
  if (p.h1.empty() || p.h2.empty()) throw InvalidInput("pair custom needs --h1 and --h2");
  const auto parse = [](const std::string& text) {
    try {
      return kernel_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("kernel descriptor is not valid JSON: ") + e.what());
    }
  };
  return {"custom", parse(p.h1), parse(p.h2), p.l};
}

KernelPair named_pair(const PairArgs& p) {
  if (p.pair == "id0") return id0_pair();
  if (p.pair == "derivative") return derivative_pair(p.m);
  if (p.pair == "integral") return integral_pair();
  if (p.pair == "lacunary") return lacunary_kernel(p.m);
  if (p.pair == "custom") return custom_pair(p);
  throw InvalidInput("pair " + p.pair + " has no convolution form");
}

CoKPolicy policy(const PairArgs& p) {
  return p.assume_co_k ? CoKPolicy::assume : CoKPolicy::require;
}

json cmd_radius(const PairArgs& p, const std::string& bound, const std::string& op,
                const HypergeometricParams& hp) {
  json extra = json::object();
  RadiusResult r;
  const std::string& pair = p.pair;
  if (pair == "id0") {
    r = closed_form(radius_id0(p.a.value_or(1.0)));
  } else if (pair == "derivative") {
    r = p.a ? radius_derivative_pair_with_a(p.m, *p.a) : closed_form(radius_derivative_pair(p.m));
  } else if (pair == "integral") {
    if (p.a) {
      r = radius_integral_with_a(*p.a);
    } else if (bound == "lower") {
      r = radius_integral_lower();
    } else if (bound == "upper") {
      const CurveMinimum c = radius_integral_upper();
      r = closed_form(c.r_min);
      r.method = Method::minimization;
      extra["a_min"] = c.a_min;
    } else {
      throw InvalidInput("pair integral needs --a or --bound lower|upper");
    }
  } else if (pair == "lacunary") {
    r = radius_lacunary_with_a(p.m, p.a.value_or(1.0));
  } else if (pair == "hypergeometric") {
    r = radius_hypergeometric(hp);
  } else if (pair == "shift") {
    r = closed_form(shift_pair_lower_bound(p.m));
  } else if (pair == "operator") {
    if (op.empty()) throw InvalidInput("pair operator needs --operator");
    try {
      r = identity_radius_lower_bound(operator_from_json(json::parse(op)));
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("operator descriptor is not valid JSON: ") + e.what());
    }
  } else if (pair == "custom") {
    r = theorem1_radius(custom_pair(p), p.a.value_or(1.0), policy(p));
  } else {
    throw InvalidInput("unknown pair " + pair);
  }
  json j = radius_json(r);
  j["pair"] = pair;
  if (p.a) j["a"] = *p.a;
  j.update(extra);
  return j;
}

json cmd_bombieri(const PairArgs& p, double r) {
  json j = {{"pair", p.pair}, {"r", r}};
  if (p.pair == "id0" && !p.a) {
    j["value"] = bombieri_id0(r);
    return j;
  }
  if (p.pair == "cesaro") {
    if (p.a) throw InvalidInput("pair cesaro takes no --a");
    j["value"] = cesaro_bombieri_bound(r);
    j["bound"] = "upper";
    return j;
  }
  if (!p.a) throw InvalidInput("pair " + p.pair + " needs --a");
  const KernelPair pair = named_pair(p);
  j["a"] = *p.a;
  j["hypotheses"] = hypotheses_json(theorem1_hypotheses(pair.h1, pair.h2, *p.a, r));
  j["value"] = bombieri_value_thm1(pair, *p.a, r, policy(p));
  return j;
}

struct SweepRow {
  double a = 0.0;
  std::optional<double> r;
  std::string condition;
  std::optional<double> curve;
};

std::function<double(double)> sweep_quantity(const std::string& quantity, std::size_t m) {
  if (quantity == "integral_with_a") return [](double a) { return radius_integral_with_a(a).value; };
  if (quantity == "derivative_with_a") {
    return [m](double a) { return radius_derivative_pair_with_a(m, a).value; };
  }
  if (quantity == "lacunary") return [m](double a) { return radius_lacunary_with_a(m, a).value; };
  if (quantity == "id0") return [](double a) { return radius_id0(a); };
  throw InvalidInput("unknown quantity " + quantity +
                     " (expected integral_with_a, derivative_with_a, lacunary or id0)");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : "null";
}

int cmd_sweep(const std::string& quantity, std::size_t m, double start, double stop,
              std::size_t count, const std::string& output, bool as_json, std::ostream& out,
              std::ostream& err) {
  if (!(start < stop)) throw InvalidInput("sweep needs start < stop");
  if (count < 2) throw InvalidInput("sweep needs count >= 2");
  const auto fn = sweep_quantity(quantity, m);
  const bool integral = quantity == "integral_with_a";
  const auto rows = detail::parallel_map(count, [&](std::size_t i) {
    SweepRow row;
    row.a = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    try {
      row.r = fn(row.a);
    } catch (const HypothesisViolation& e) {
      row.condition = e.condition();
    } catch (const std::domain_error& e) {
      row.condition = e.what();
    } catch (const std::invalid_argument& e) {
      row.condition = e.what();
    }
    if (integral && row.a > 0.0 && row.a <= 1.0) row.curve = integral_radius_curve(row.a);
    return row;
  });

  std::ostringstream text;
  if (as_json) {
    json arr = json::array();
    for (const auto& row : rows) {
      json e = {{"a", row.a}, {"valid", row.r.has_value()}, {"condition", row.condition}};
      e["r"] = row.r ? json(*row.r) : json(nullptr);
      if (integral) {
        e["curve"] = row.curve ? json(*row.curve) : json(nullptr);
        e["diagonal"] = row.a;
      }
      arr.push_back(e);
    }
    json doc = {{"quantity", quantity}, {"rows", arr}};
    if (quantity != "integral_with_a" && quantity != "id0") doc["m"] = m;
    text << dump(doc) << '\n';
  } else {
    text << "a,r,valid,condition" << (integral ? ",curve,diagonal" : "") << '\n';
    for (const auto& row : rows) {
      text << format_number(row.a) << ',' << optional_number(row.r) << ','
           << (row.r ? "true" : "false") << ',' << csv_field(row.condition);
      if (integral) text << ',' << optional_number(row.curve) << ',' << format_number(row.a);
      text << '\n';
    }
  }
  if (output.empty() || output == "-") {
    out << text.str();
    return kOk;
  }
  std::ofstream file(output);
  if (!file || !(file << text.str()) || !file.flush()) {
    err << "error: cannot write " << output << '\n';
    return kUnwritable;
  }
  return kOk;
}

int cmd_verify(const std::string& suite, const std::string& pair, const Globals& g,
               std::ostream& out, std::ostream& err) {
  SuiteOptions opts;
  opts.samples = g.samples;
  opts.seed = g.seed;
  opts.order = g.order;
  opts.tolerance = g.tol;
  opts.pair = pair;
  const auto reports = run_suite(suite, opts);
  json checks = json::array();
  bool holds = true;
  const CheckReport* worst = nullptr;
  for (const auto& rep : reports) {
    checks.push_back(to_json(rep));
    holds = holds && rep.holds;
    if (!rep.holds && (!worst || rep.worst_margin < worst->worst_margin)) worst = &rep;
  }
  json doc = {{"suite", suite},       {"holds", holds},       {"checks", checks},
              {"seed", g.seed},       {"samples", g.samples}, {"order", g.order},
              {"tolerance", g.tol}};
  out << dump(doc) << '\n';
  if (holds) return kOk;
  err << "verification failed: " << worst->check << ' ' << dump(worst->params)
      << " worst sample " << dump(worst->worst) << '\n';
  return kVerificationFailed;
}

std::optional<std::size_t> order_from_env() {
  const char* v = std::getenv(kOrderEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const long long n = std::strtoll(v, &end, 10);
  if (*end != '\0' || n < 8 || n > 1'000'000) {
    throw InvalidInput(std::string(kOrderEnv) + " must be an integer in [8, 1000000]");
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

json canonical(const json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) return nullptr;
    return std::stod(format_number(v));
  }
  if (j.is_array() || j.is_object()) {
    json copy = j;
    for (auto& e : copy) e = canonical(e);
    return copy;
  }
  return j;
}

std::string dump(const json& j) { return canonical(j).dump(2); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bohr radii of convolution operators on the unit disk", "bohrconv"};
  app.require_subcommand(1);
  Globals g;
  try {
    if (auto n = order_from_env()) g.order = *n;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  app.add_option("--order", g.order, "Series truncation order")
      ->check(CLI::Range(std::size_t{8}, std::size_t{1'000'000}));
  app.add_option("--tol", g.tol, "Closed-form agreement tolerance for verify")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--samples", g.samples, "Samples or trials per check");
  auto* json_flag = app.add_flag("--json", g.json_out, "JSON output");
  app.add_flag("--csv", g.csv_out, "CSV output (sweep)")->excludes(json_flag);

  PairArgs pa;
  std::string bound;
  std::string op;
  HypergeometricParams hp;
  const std::vector<std::string> radius_pairs = {"id0",   "derivative", "integral", "lacunary",
                                                 "hypergeometric", "shift", "operator", "custom"};
  auto* radius = app.add_subcommand("radius", "Bohr radius of an operator pair");
  radius->add_option("--pair", pa.pair)->required()->check(CLI::IsMember(radius_pairs));
  radius->add_option("--m", pa.m, "Order parameter")->check(CLI::NonNegativeNumber);
  radius->add_option("--a", pa.a, "Modulus of the initial coefficient");
  radius->add_option("--bound", bound, "integral without --a: lower or upper")
      ->check(CLI::IsMember({"lower", "upper"}));
  radius->add_option("--operator", op, "Operator descriptor JSON for pair operator");
  radius->add_option("--ha", hp.a, "Hypergeometric a");
  radius->add_option("--hb", hp.b, "Hypergeometric b");
  radius->add_option("--hc", hp.c, "Hypergeometric c");
  radius->add_option("--h1", pa.h1, "Kernel descriptor JSON for pair custom");
  radius->add_option("--h2", pa.h2, "Kernel descriptor JSON for pair custom");
  radius->add_option("--l", pa.l, "Shift for pair custom");
  radius->add_flag("--assume-co-k", pa.assume_co_k, "Tolerate a missing co-K witness");

  double r = 0.0;
  auto* bombieri = app.add_subcommand("bombieri", "Bohr-Bombieri function m(r[, a])");
  bombieri->add_option("--pair", pa.pair)
      ->required()
      ->check(CLI::IsMember({"id0", "derivative", "integral", "lacunary", "cesaro", "custom"}));
  bombieri->add_option("--r", r)->required();
  bombieri->add_option("--m", pa.m)->check(CLI::NonNegativeNumber);
  bombieri->add_option("--a", pa.a);
  bombieri->add_option("--h1", pa.h1);
  bombieri->add_option("--h2", pa.h2);
  bombieri->add_option("--l", pa.l);
  bombieri->add_flag("--assume-co-k", pa.assume_co_k);

  std::string suite;
  std::string sharp_pair;
  auto* verify = app.add_subcommand("verify", "Run a numerical verification suite");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(kSuites));
  verify->add_option("--pair", sharp_pair, "Sharpness configuration")
      ->check(CLI::IsMember({"id0", "lacunary"}));

  std::string quantity;
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 0;
  std::string output;
  std::size_t sweep_m = 1;
  auto* sweep = app.add_subcommand("sweep", "Tabulate r(a) over a grid");
  sweep->add_option("--quantity", quantity)->required();
  sweep->add_option("--m", sweep_m)->check(CLI::NonNegativeNumber);
  sweep->add_option("--start", start)->required();
  sweep->add_option("--stop", stop)->required();
  sweep->add_option("--count", count)->required();
  sweep->add_option("--output", output, "Output path; stdout when omitted");

  for (auto* sub : {radius, bombieri, verify, sweep}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (g.csv_out && !sweep->parsed()) throw InvalidInput("--csv applies to sweep only");
    if (radius->parsed()) {
      out << dump(cmd_radius(pa, bound, op, hp)) << '\n';
    } else if (bombieri->parsed()) {
      out << dump(cmd_bombieri(pa, r)) << '\n';
    } else if (verify->parsed()) {
      if (!sharp_pair.empty() && suite != "sharpness" && suite != "all") {
        throw InvalidInput("--pair applies to the sharpness suite only");
      }
      return cmd_verify(suite, sharp_pair, g, out, err);
    } else if (sweep->parsed()) {
      return cmd_sweep(quantity, sweep_m, start, stop, count, output, g.json_out, out, err);
    }
    return kOk;
  } catch (const HypothesisViolation& e) {
    err << "hypothesis violated: " << e.condition() << ": " << e.what() << '\n';
    return kHypothesis;
  } catch (const NoRootError& e) {
    err << "no root: " << e.what() << '\n';
    return kNoRoot;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
}

}  // namespace bohrconv::cli
