#include "qsd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qsd/certificate.hpp"
#include "qsd/error.hpp"
#include "qsd/factory.hpp"
#include "qsd/families.hpp"
#include "qsd/json_io.hpp"
#include "qsd/oracle.hpp"
#include "qsd/parallel.hpp"
#include "qsd/solver.hpp"

namespace qsd::cli {

namespace {

using io::json;

std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw ParseError(path + ": cannot open file");
  ss << f.rdbuf();
  return ss.str();
}

json load(const std::string& path, std::istream& in) {
  return io::parse(slurp(path, in), path == "-" ? "<stdin>" : path);
}

struct SolveOptions {
  std::string file;
  bool verify = false;
  double tol = -1.0;
};

int cmd_solve(const SolveOptions& o, std::istream& in, std::ostream& out) {
  const WeightedEnsemble e = io::ensemble_from_json(load(o.file, in));
  const DiscriminationSolution s = solve(e);
  json j = io::to_json(s);
  int code = kOk;
  if (o.verify) {
    const double tol = o.tol > 0.0 ? o.tol : s.tolerance();
    const auto kkt = verify_kkt(e, s.symmetry_operator, s.povm, tol);
    const auto legacy = verify_legacy_conditions(e, s.povm, tol);
    j["certificate"] = io::to_json(kkt);
    j["legacy_certificate"] = io::to_json(legacy);
    if (!kkt.pass || !legacy.pass) code = kUncertified;
  }
  out << j.dump(2) << '\n';
  return code;
}

struct VerifyOptions {
  std::string ensemble;
  std::string solution = "-";
  double tol = -1.0;
};

int cmd_verify(const VerifyOptions& o, std::istream& in, std::ostream& out) {
  if (o.ensemble == "-" && o.solution == "-") throw InvalidArgument("verify: ensemble and solution cannot both be stdin");
  const WeightedEnsemble e = io::ensemble_from_json(load(o.ensemble, in));
  const io::SolutionFile s = io::solution_from_json(load(o.solution, in));
  const double tol = o.tol > 0.0 ? o.tol : s.tolerance.value_or(1e-8);
  const auto kkt = verify_kkt(e, s.k, s.povm, tol);
  const auto legacy = verify_legacy_conditions(e, s.povm, tol);
  const bool pass = kkt.pass && legacy.pass;
  out << json{{"kkt", io::to_json(kkt)}, {"legacy", io::to_json(legacy)}, {"verdict", pass ? "pass" : "fail"}}.dump(2)
      << '\n';
  return pass ? kOk : kUncertified;
}

struct GenerateOptions {
  std::string kfile;
  std::string mode = "identity";
  std::string measurements;
  std::string params;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t count = 0;
};

HermitianOperator load_k(const json& j) {
  if (j.is_object() && j.contains("K")) return io::hermitian_from_json(j["K"], "K");
  return io::hermitian_from_json(j, "K");
}

std::vector<Vec3> vec3_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& v = j[i];
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
      throw ParseError(where + "[" + std::to_string(i) + "]: expected [x, y, z]");
    out.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
  }
  return out;
}

std::vector<double> real_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(where + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

FactoryOutput run_generate(const GenerateOptions& o, const HermitianOperator& k, std::istream& in) {
  const std::size_t d = k.dim();
  if (o.mode == "identity") {
    std::vector<SteeringMeasurement> m;
    for (std::size_t x = 0; x < d; ++x) {
      ComplexVector e(d);
      e[x] = 1.0;
      m.emplace_back(HermitianOperator::projector(e));
    }
    return generate_from_symmetry_operator(k, m);
  }
  if (o.mode == "steer") {
    if (o.measurements.empty()) throw InvalidArgument("generate: --mode steer needs --measurements");
    json j = load(o.measurements, in);
    if (j.is_object() && j.contains("measurements")) j = j["measurements"];
    if (!j.is_array()) throw ParseError("measurements: expected an array of matrices");
    std::vector<SteeringMeasurement> m;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto h = io::hermitian_from_json(j[i], "measurements[" + std::to_string(i) + "]");
      m.emplace_back(std::move(h));
    }
    return generate_from_symmetry_operator(k, m);
  }
  if (o.mode == "random") {
    const std::size_t n = o.count ? o.count : d + 1;
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<SteeringMeasurement> m;
    for (std::size_t x = 0; x < n; ++x) {
      ComplexVector v(d);
      for (auto& z : v) z = Complex(g(rng), g(rng));
      const double nv = norm(v);
      for (auto& z : v) z /= nv;
      m.emplace_back(HermitianOperator::projector(v));
    }
    return generate_from_symmetry_operator(k, m);
  }
  if (o.mode == "qubit") {
    if (d != 2) throw InvalidArgument("generate: --mode qubit needs a 2x2 K");
    if (o.params.empty()) throw InvalidArgument("generate: --mode qubit needs --params");
    const json p = load(o.params, in);
    if (!p.is_object()) throw ParseError("params: expected an object");
    const auto c = bloch_components(k);
    QubitClassSpec s;
    s.t = c.t;
    s.k = c.k;
    s.directions = vec3_list(p.value("directions", json()), "directions");
    s.weights = real_list(p.value("weights", json()), "weights");
    s.priors = real_list(p.value("priors", json()), "priors");
    return generate_qubit_class_element(s);
  }
  throw InvalidArgument("generate: unknown mode \"" + o.mode + "\" (identity | steer | qubit | random)");
}

int cmd_generate(const GenerateOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const HermitianOperator k = load_k(load(o.kfile, in));
  const FactoryOutput f = run_generate(o, k, in);
  const std::string text = io::to_json(f).dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out);
    if (!file) throw InvalidArgument("generate: cannot write " + o.out);
    file << text;
  }
  if (f.certified) {
    err << "certified\n";
    return kOk;
  }
  err << "uncertified: worst residual " << io::format9(f.certificate.worst()) << " exceeds tolerance "
      << io::format9(f.certificate.tolerance) << '\n';
  return kUncertified;
}

struct SweepOptions {
  std::string family;
  std::optional<double> from, to;
  int steps = 50;
  double theta0 = 0.0;
  std::string format = "csv";
  std::uint64_t seed = 0;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  constexpr double pi = std::numbers::pi;
  double lo = 0.0, hi = 0.0;
  if (o.family == "isosceles") {
    lo = o.from.value_or(0.1);
    hi = o.to.value_or(pi);
    if (!(lo > 0.0) || hi > pi + 1e-12) throw InvalidArgument("sweep isosceles: theta must lie in (0, pi]");
  } else if (o.family == "rectangle") {
    lo = o.from.value_or(0.1);
    hi = o.to.value_or(pi / 2 - 0.1);
    if (!(lo > 0.0) || !(hi < pi / 2)) throw InvalidArgument("sweep rectangle: theta must lie in (0, pi/2)");
  } else if (o.family == "tetrahedron") {
    lo = o.from.value_or(0.1);
    hi = o.to.value_or(1.0);
    if (!(lo > 0.0) || hi > 1.0 + 1e-12) throw InvalidArgument("sweep tetrahedron: f must lie in (0, 1]");
  } else {
    throw InvalidArgument("sweep: unknown family \"" + o.family + "\" (isosceles | rectangle | tetrahedron)");
  }
  if (lo > hi) throw InvalidArgument("sweep: --from exceeds --to");
  if (o.steps < 2) throw InvalidArgument("sweep: --steps must be >= 2");
  if (o.format != "csv" && o.format != "json") throw InvalidArgument("sweep: --format must be csv or json");

  const auto rot = families::random_rotation(o.seed);
  std::vector<double> params;
  std::vector<WeightedEnsemble> batch;
  for (int i = 0; i < o.steps; ++i) {
    const double p = i == o.steps - 1 ? hi : lo + (hi - lo) * i / (o.steps - 1);
    params.push_back(p);
    if (o.family == "isosceles") {
      batch.push_back(families::isosceles(p, o.theta0));
    } else if (o.family == "rectangle") {
      batch.push_back(families::rectangle(p, o.theta0));
    } else {
      // The value does not depend on orientation; --seed picks one.
      std::vector<Vec3> v = families::regular_tetrahedron(p);
      if (o.seed != 0)
        for (auto& x : v) x = families::rotate(rot, x);
      batch.push_back(families::uniform_qubits(v));
    }
  }
  const auto results = solve_batch_omp(batch);

  json rows = json::array();
  std::ostringstream csv;
  csv << "parameter,p_guess,support_size\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].error) std::rethrow_exception(results[i].error);
    const auto& s = *results[i].solution;
    csv << io::format9(params[i]) << ',' << io::format9(s.p_guess) << ',' << s.support.size() << '\n';
    rows.push_back({{"parameter", io::round9(params[i])}, {"p_guess", io::round9(s.p_guess)},
                    {"support_size", s.support.size()}});
  }
  if (o.format == "csv") out << csv.str();
  else out << rows.dump(2) << '\n';
  return kOk;
}

struct OracleOptions {
  std::string file;
  double resolution = 1e-3;
};

int cmd_oracle(const OracleOptions& o, std::istream& in, std::ostream& out) {
  const WeightedEnsemble e = io::ensemble_from_json(load(o.file, in));
  if (e.dim() != 2) throw UnsupportedInstance("oracle: only qubit ensembles have a grid oracle");
  const double v = dual_grid_oracle(e, o.resolution);
  out << json{{"p_guess_upper", io::round9(v)}, {"resolution", o.resolution},
              {"max_excess", io::round9(std::sqrt(3.0) * o.resolution)}}
             .dump(2)
      << '\n';
  return kOk;
}

int exit_code(const std::exception& ex) {
  if (dynamic_cast<const ParseError*>(&ex)) return kParseError;
  if (dynamic_cast<const ConvergenceError*>(&ex)) return kNoConvergence;
  if (dynamic_cast<const UnsupportedInstance*>(&ex) || dynamic_cast<const InvalidArgument*>(&ex) ||
      dynamic_cast<const InfeasibleError*>(&ex) || dynamic_cast<const DegenerateError*>(&ex))
    return kInvalidInstance;
  return kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-error quantum state discrimination: solve, verify, generate, sweep"};
  app.name("qsd");
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an ensemble file and print the solution JSON");
  solve_cmd->add_option("ensemble", so.file, "Ensemble JSON file, or - for stdin")->required();
  solve_cmd->add_flag("--verify", so.verify, "Append the KKT and legacy certificates");
  solve_cmd->add_option("--tol", so.tol, "Certificate tolerance (default: the solver path's tolerance)");

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "Certify a candidate solution against an ensemble");
  verify_cmd->add_option("ensemble", vo.ensemble, "Ensemble JSON file")->required();
  verify_cmd->add_option("solution", vo.solution, "Solution JSON file, or - for stdin (default)");
  verify_cmd->add_option("--tol", vo.tol, "Tolerance (default: the solution's own, else 1e-8)");

  GenerateOptions go;
  auto* gen_cmd = app.add_subcommand("generate", "Build an ensemble from a symmetry operator");
  gen_cmd->add_option("K", go.kfile, "Symmetry operator matrix JSON")->required();
  gen_cmd->add_option("--mode", go.mode, "identity | steer | qubit | random")
      ->check(CLI::IsMember({"identity", "steer", "qubit", "random"}));
  gen_cmd->add_option("--measurements", go.measurements, "Steering measurements M0 (JSON array of matrices)");
  gen_cmd->add_option("--params", go.params, "Qubit mode parameters: directions, weights, priors");
  gen_cmd->add_option("--out", go.out, "Write the output JSON here instead of stdout");
  gen_cmd->add_option("--seed", go.seed, "Seed for --mode random");
  gen_cmd->add_option("--count", go.count, "Number of random steering measurements (default dim + 1)");

  SweepOptions sw;
  double from = 0.0, to = 0.0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Solve a parametrized family and emit rows");
  sweep_cmd->add_option("family", sw.family, "isosceles | rectangle | tetrahedron")->required();
  auto* from_opt = sweep_cmd->add_option("--from", from, "First parameter value");
  auto* to_opt = sweep_cmd->add_option("--to", to, "Last parameter value");
  sweep_cmd->add_option("--steps", sw.steps, "Number of rows (>= 2)");
  sweep_cmd->add_option("--theta0", sw.theta0, "Orientation angle of the planar families");
  sweep_cmd->add_option("--format", sw.format, "csv | json");
  sweep_cmd->add_option("--seed", sw.seed, "Orientation seed for the tetrahedron family");

  OracleOptions oo;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force grid upper bound for a qubit ensemble");
  oracle_cmd->add_option("ensemble", oo.file, "Ensemble JSON file")->required();
  oracle_cmd->add_option("--resolution", oo.resolution, "Finest grid step")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qsd: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (*solve_cmd) return cmd_solve(so, in, out);
    if (*verify_cmd) return cmd_verify(vo, in, out);
    if (*gen_cmd) return cmd_generate(go, in, out, err);
    if (*sweep_cmd) {
      if (*from_opt) sw.from = from;
      if (*to_opt) sw.to = to;
      return cmd_sweep(sw, out);
    }
    if (*oracle_cmd) return cmd_oracle(oo, in, out);
  } catch (const std::exception& ex) {
    err << "qsd: " << ex.what() << '\n';
    return exit_code(ex);
  }
  return kFailure;
}

}  // namespace qsd::cli
