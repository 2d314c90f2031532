#include "banach/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "banach/errors.hpp"
#include "banach/exact_enum.hpp"
#include "banach/operators.hpp"
#include "banach/orthogonality.hpp"
#include "banach/random.hpp"
#include "banach/space_core.hpp"
#include "banach/theorem_verify.hpp"

namespace banach {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "v1";

/// Bad user input; reported with exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integral doubles print as integers so that exact answers read naturally.
json num(double v) {
  if (v == 0.0) return 0;
  if (std::isfinite(v) && std::nearbyint(v) == v && std::fabs(v) < 9e15) return static_cast<std::int64_t>(v);
  return v;
}

json vec(const VecN& v) {
  json a = json::array();
  for (double c : v) a.push_back(num(c));
  return a;
}

json points(const std::vector<VecN>& pts) {
  json a = json::array();
  for (const auto& v : pts) a.push_back(vec(v));
  return a;
}

json header() { return json{{"schema", kSchema}}; }

Exponent exponent_from_json(const json& j) {
  try {
    if (j.is_number()) return Exponent::from_double(j.get<double>());
    if (j.is_string()) return Exponent::parse(j.get<std::string>());
    if (j.is_object() && j.contains("int") && j.at("int").is_number_integer() && j.size() == 1) {
      return Exponent::integer(j.at("int").get<int>());
    }
  } catch (const std::exception& e) {
    throw InputError(std::string("field 'p': ") + e.what());
  }
  throw InputError("field 'p': expected a number, \"inf\" or {\"int\": q}");
}

Exponent exponent_from_flag(const std::string& text) {
  try {
    return Exponent::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("--p: ") + e.what());
  }
}

struct OperatorInput {
  Exponent p = Exponent::integer(2);
  Operator2<double> numeric;
  QOperator2 exact;
  /// Some entry was given as a string ("n/d" or a literal).
  bool exact_entries = false;
};

OperatorInput parse_operator(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("top level: expected an object with fields 'p' and 'matrix'");
  if (!j.contains("p")) throw InputError("field 'p': missing");
  if (!j.contains("matrix")) throw InputError("field 'matrix': missing");
  OperatorInput in;
  in.p = exponent_from_json(j.at("p"));
  const json& m = j.at("matrix");
  if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 || m[1].size() != 2) {
    throw InputError("field 'matrix': expected [[a, b], [c, d]]");
  }
  Rational q[4];
  double d[4];
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const json& e = m[r][c];
      const std::string where = "field 'matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]'";
      const int k = 2 * r + c;
      if (e.is_number()) {
        d[k] = e.get<double>();
        if (!std::isfinite(d[k])) throw InputError(where + ": not finite");
        q[k] = rat_from_double(d[k]);
      } else if (e.is_string()) {
        try {
          q[k] = parse_rational(e.get<std::string>());
        } catch (const std::exception& ex) {
          throw InputError(where + ": " + ex.what());
        }
        d[k] = q[k].get_d();
        in.exact_entries = true;
      } else {
        throw InputError(where + ": expected a number or a \"num/den\" string");
      }
    }
  }
  in.numeric = {d[0], d[1], d[2], d[3]};
  in.exact = {q[0], q[1], q[2], q[3]};
  return in;
}

std::string read_operator_text(const std::string& inline_json, const std::string& path) {
  if (!inline_json.empty()) return inline_json;
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read input file '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }
  return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
}

QVecN parse_coords(const std::string& text, const std::string& field) {
  std::vector<Rational> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      coords.push_back(parse_rational(item));
    } catch (const std::exception& e) {
      throw InputError("field '" + field + "': " + e.what());
    }
  }
  if (coords.empty()) throw InputError("field '" + field + "': expected comma-separated coordinates");
  return QVecN(std::move(coords));
}

std::uint64_t default_seed() {
  const char* env = std::getenv("BANACH_GEOM_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw InputError("BANACH_GEOM_SEED: expected an unsigned integer");
  return v;
}

json witness_json(const Witness& w, const CheckReport& r) {
  json j{{"trial", w.trial},
         {"trial_seed", w.trial_seed},
         {"replay", "banach-geom verify " + r.suite + " --p " + r.exponent.to_string() + " --trial-seed " +
                        std::to_string(w.trial_seed)}};
  for (const auto& [k, v] : w.fields) j[k] = v;
  return j;
}

json report_json(const CheckReport& r, bool timing) {
  json j{{"suite", r.suite}, {"p", r.exponent.to_string()}, {"trials", r.trials}, {"skipped", r.skipped},
         {"passed", r.passed()}};
  json fails = json::array();
  for (const auto& w : r.failures) fails.push_back(witness_json(w, r));
  j["failures"] = fails;
  j["expected_violations"] = r.expected_violations.size();
  json examples = json::array();
  for (std::size_t i = 0; i < r.expected_violations.size() && i < 3; ++i) {
    examples.push_back(witness_json(r.expected_violations[i], r));
  }
  j["expected_violation_examples"] = examples;
  json hist = json::object();
  for (const auto& [k, v] : r.histogram) hist[k < 0 ? std::string("sphere") : std::to_string(k)] = v;
  j["histogram"] = hist;
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = num(v);
  j["metrics"] = metrics;
  if (timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Birkhoff-James orthogonality and norm attainment on l_p spaces", "banach-geom"};
  app.require_subcommand(1);

  std::string json_text;
  std::string input_path;
  auto add_operator_input = [&](CLI::App* sub) {
    sub->add_option("--json", json_text, "operator as JSON: {\"p\": ..., \"matrix\": [[a, b], [c, d]]}");
    sub->add_option("--input", input_path, "file with the operator JSON (default: stdin)");
  };

  // bj-check
  std::string p_text;
  std::string x_text;
  std::string y_text;
  auto* bj = app.add_subcommand("bj-check", "decide x ⊥_B y");
  bj->add_option("--p", p_text, "exponent: integer, real or inf")->required();
  bj->add_option("--x", x_text, "comma-separated coordinates of x")->required();
  bj->add_option("--y", y_text, "comma-separated coordinates of y")->required();

  // op-norm
  int grid = kDefaultGrid;
  int refine = kDefaultRefineIters;
  auto* opn = app.add_subcommand("op-norm", "operator norm on l_p^2");
  add_operator_input(opn);
  opn->add_option("--grid", grid, "grid points per chart")->check(CLI::Range(64, 1 << 22));
  opn->add_option("--refine", refine, "ternary refinement iterations")->check(CLI::Range(0, 1000));

  // mt-enum
  bool details = false;
  auto* enm = app.add_subcommand("mt-enum", "exact norm attainment set (integer p >= 2, or p in {1, inf})");
  add_operator_input(enm);
  enm->add_flag("--details", details, "add candidate bookkeeping");

  // mt-numeric
  double tol = kDefaultTol;
  auto* mtn = app.add_subcommand("mt-numeric", "numeric norm attainment set");
  add_operator_input(mtn);
  mtn->add_option("--tol", tol, "relative tolerance")->check(CLI::PositiveNumber);

  // daugavet
  double dtol = 1e-9;
  auto* dg = app.add_subcommand("daugavet", "Daugavet residual, fixed point and invariant line");
  add_operator_input(dg);
  dg->add_option("--tol", dtol, "residual tolerance")->check(CLI::PositiveNumber);

  // verify
  std::string suite_id;
  std::string verify_p;
  int trials = 200;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::uint64_t> trial_seed;
  int dim = 0;
  bool timing = false;
  bool list = false;
  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("suite", suite_id, "suite id or 'all'");
  ver->add_option("--p", verify_p, "exponent (default: the suite's standard set)");
  ver->add_option("--trials", trials, "trials per run")->check(CLI::Range(1, 100000000));
  ver->add_option("--seed", seed_flag, "base seed (default: $BANACH_GEOM_SEED or 1)");
  ver->add_option("--trial-seed", trial_seed, "replay a single trial");
  ver->add_option("--n", dim, "dimension for kernel-span (2 or 3; default alternates)");
  ver->add_flag("--timing", timing, "include elapsed times (output is then not reproducible)");
  ver->add_flag("--list", list, "list suites");

  // sphere-image
  int samples = 256;
  std::string output_path;
  auto* img = app.add_subcommand("sphere-image", "CSV of z and Tz around the unit sphere");
  add_operator_input(img);
  img->add_option("--samples", samples, "number of points")->check(CLI::Range(1, 10000000));
  img->add_option("--output", output_path, "CSV file (default: stdout)");

  // mt-scan
  std::string scan_ps = "2,3,4,5";
  int count = 1000;
  auto* scan = app.add_subcommand("mt-scan", "histogram of |M_T| over random rational operators");
  scan->add_option("--p", scan_ps, "comma-separated integer exponents >= 2");
  scan->add_option("--count", count, "operators per exponent")->check(CLI::Range(1, 100000000));
  scan->add_option("--seed", seed_flag, "base seed (default: $BANACH_GEOM_SEED or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*bj) {
      const Exponent p = exponent_from_flag(p_text);
      const QVecN x = parse_coords(x_text, "x");
      const QVecN y = parse_coords(y_text, "y");
      if (x.size() != y.size()) throw InputError("fields 'x' and 'y': dimensions differ");
      if (x.is_zero()) throw InputError("field 'x': must be nonzero");
      const OrthVerdict v = p.exact_capable() ? bj_orthogonal(x, y, p) : bj_orthogonal(to_double(x), to_double(y), p);
      json j = header();
      j["orthogonal"] = v.orthogonal;
      j["d_minus"] = num(v.deriv.d_minus);
      j["d_plus"] = num(v.deriv.d_plus);
      j["method"] = v.method == OrthMethod::Exact ? "exact" : "derivative";
      emit(out, j);
      return 0;
    }

    if (*opn) {
      const OperatorInput in = parse_operator(read_operator_text(json_text, input_path));
      const NormEstimate est = operator_norm_numeric(in.numeric, in.p, grid, refine);
      json j = header();
      j["p"] = in.p.to_string();
      const bool closed = in.p.is_one() || in.p.is_infinity() || (in.p.is_integer() && in.p.integer_value() == 2);
      j["norm"] = num(closed ? operator_norm(in.numeric, in.p) : est.value);
      j["numeric_norm"] = num(est.value);
      j["whole_sphere"] = est.whole_sphere;
      j["argmax"] = est.whole_sphere ? json::array() : points(est.argmax);
      emit(out, j);
      return 0;
    }

    if (*enm) {
      const OperatorInput in = parse_operator(read_operator_text(json_text, input_path));
      const Exponent& p = in.p;
      if (in.exact.is_zero()) throw InputError("field 'matrix': M_T needs T != 0");
      json j = header();
      if (auto s = is_isometry_multiple(in.exact, p)) {
        j["norm"] = num(*s);
        j["points"] = json::array();
        j["whole_sphere"] = true;
        j["certificate"] = "exact";
        emit(out, j);
        return 0;
      }
      if (p.is_one() || p.is_infinity()) {
        const PolyhedralAttainment pa = polyhedral_attainment(in.exact, p);
        std::vector<VecN> verts;
        for (const auto& v : pa.vertices) verts.push_back(to_double(v));
        j["norm"] = num(pa.norm.get_d());
        j["points"] = points(verts);
        json edges = json::array();
        for (const auto& [a, b] : pa.edges) edges.push_back(json::array({vec(to_double(a)), vec(to_double(b))}));
        if (!edges.empty()) j["edges"] = edges;
        j["certificate"] = "exact";
        if (details) j["norm_exact"] = to_string(pa.norm);
        emit(out, j);
        return 0;
      }
      if (!p.is_integer()) throw InputError("field 'p': exact enumeration needs an integer p >= 2, 1 or inf");
      const ExactAttainment res = mt_exact_detailed(in.exact, p);
      j["norm"] = num(res.set.norm_value);
      j["points"] = points(res.set.points);
      j["certificate"] = "exact";
      if (details) {
        j["norm_power_enclosure"] = json::array({to_string(res.norm_power.lo()), to_string(res.norm_power.hi())});
        j["regions"] = res.regions;
        j["candidates"] = res.candidates;
        j["tie"] = res.tie;
        j["bound"] = mt_bound(p.integer_value());
      }
      emit(out, j);
      return 0;
    }

    if (*mtn) {
      const OperatorInput in = parse_operator(read_operator_text(json_text, input_path));
      if (in.numeric.is_zero()) throw InputError("field 'matrix': M_T needs T != 0");
      const AttainmentSet set = mt_numeric(in.numeric, in.p, tol);
      json j = header();
      j["norm"] = num(set.norm_value);
      j["points"] = points(set.points);
      j["whole_sphere"] = set.whole_sphere;
      j["certificate"] = "numeric";
      j["tol"] = tol;
      emit(out, j);
      return 0;
    }

    if (*dg) {
      const OperatorInput in = parse_operator(read_operator_text(json_text, input_path));
      const double norm = operator_norm(in.numeric, in.p);
      const double plus = operator_norm(Operator2<double>::identity() + in.numeric, in.p);
      const double residual = 1.0 + norm - plus;
      json j = header();
      j["norm"] = num(norm);
      j["norm_identity_plus"] = num(plus);
      j["residual"] = num(residual);
      j["satisfies"] = std::fabs(residual) <= dtol * std::max(1.0, norm);
      if (j["satisfies"].get<bool>() && norm > 0.0 && in.p.smooth()) {
        const Operator2<double> unit = (1.0 / norm) * in.numeric;
        const AttainmentSet set = mt_numeric(Operator2<double>::identity() + unit, in.p);
        if (!set.whole_sphere && !set.points.empty()) {
          const VecN& x0 = set.points.front();
          const VecN tx = unit.apply(x0);
          j["fixed_point"] = vec(x0);
          j["fixed_point_error"] = num(std::hypot(tx[0] - x0[0], tx[1] - x0[1]));
          j["invariant_line"] = invariant_line_check(unit, x0, in.p, 1e-6);
        }
      }
      emit(out, j);
      return 0;
    }

    if (*ver) {
      if (list) {
        json j = header();
        json arr = json::array();
        for (const auto& s : suites()) {
          json ps = json::array();
          for (const auto& p : default_exponents(s)) ps.push_back(p.to_string());
          arr.push_back(json{{"id", s.id}, {"summary", s.summary}, {"default_p", ps}});
        }
        j["suites"] = arr;
        emit(out, j);
        return 0;
      }
      if (suite_id.empty()) throw InputError("verify: expected a suite id or 'all'");
      std::vector<const SuiteInfo*> chosen;
      if (suite_id == "all") {
        for (const auto& s : suites()) chosen.push_back(&s);
      } else {
        try {
          chosen.push_back(&find_suite(suite_id));
        } catch (const std::out_of_range& e) {
          throw InputError(e.what());
        }
      }
      SuiteOptions opt;
      opt.trials = trials;
      opt.seed = seed_flag ? *seed_flag : default_seed();
      opt.trial_seed = trial_seed;
      opt.n = dim;
      json reports = json::array();
      bool all_passed = true;
      for (const SuiteInfo* s : chosen) {
        std::vector<Exponent> ps;
        if (!verify_p.empty()) {
          const Exponent p = exponent_from_flag(verify_p);
          if (!s->supports(p)) {
            if (suite_id == "all") continue;
            throw InputError("--p: suite '" + s->id + "' does not support p = " + p.to_string());
          }
          ps.push_back(p);
        } else {
          ps = default_exponents(*s);
        }
        for (const Exponent& p : ps) {
          opt.p = p;
          const CheckReport r = s->run(opt);
          all_passed = all_passed && r.passed();
          reports.push_back(report_json(r, timing));
        }
      }
      json j = header();
      j["seed"] = opt.seed;
      j["trials"] = trial_seed ? 1 : trials;
      j["passed"] = all_passed;
      j["reports"] = reports;
      emit(out, j);
      return all_passed ? 0 : 3;
    }

    if (*img) {
      const OperatorInput in = parse_operator(read_operator_text(json_text, input_path));
      std::ofstream file;
      if (!output_path.empty()) {
        file.open(output_path);
        if (!file) throw InputError("cannot write '" + output_path + "'");
      }
      std::ostream& sink = output_path.empty() ? out : file;
      sink << "t,z1,z2,Tz1,Tz2,norm\n";
      char line[256];
      for (int i = 0; i < samples; ++i) {
        const double t = 2.0 * 3.14159265358979323846 * i / samples;
        VecN z{std::cos(t), std::sin(t)};
        const double len = p_norm(z, in.p);
        z = VecN{z[0] / len, z[1] / len};
        const VecN tz = in.numeric.apply(z);
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, z[0], z[1], tz[0], tz[1],
                      p_norm(tz, in.p));
        sink << line;
      }
      return 0;
    }

    if (*scan) {
      const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
      std::vector<Exponent> ps;
      std::stringstream ss(scan_ps);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const Exponent p = exponent_from_flag(item);
        if (!p.is_integer() || p.integer_value() < 2) throw InputError("--p: mt-scan needs integer exponents >= 2");
        ps.push_back(p);
      }
      json scans = json::array();
      for (const Exponent& p : ps) {
        std::map<int, int> hist;
        int running = 0;
        json steps = json::array();
        for (int i = 0; i < count; ++i) {
          const RandomOperator op = random_operator(derive_seed(seed, static_cast<std::uint64_t>(i)), {}, p);
          const int k = static_cast<int>(mt_exact(*op.exact, p).points.size());
          ++hist[k];
          if (k > running) {
            running = k;
            steps.push_back(json::array({i, k}));
          }
        }
        json h = json::object();
        for (const auto& [k, v] : hist) h[std::to_string(k)] = v;
        scans.push_back(json{{"p", p.to_string()},
                             {"operators", count},
                             {"histogram", h},
                             {"max_points", running},
                             {"bound", mt_bound(p.integer_value())},
                             {"running_max", steps}});
      }
      json j = header();
      j["seed"] = seed;
      j["scans"] = scans;
      emit(out, j);
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IsometryLike& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace banach
