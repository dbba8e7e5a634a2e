#include "qsd/json_io.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "qsd/error.hpp"

namespace qsd::io {

double round9(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
  double y = 0.0;
  std::from_chars(buf, res.ptr, y);
  return y;
}

std::string format9(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, round9(x));
  return std::string(buf, res.ptr);
}

json to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json rr = json::array(), ir = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      rr.push_back(round9(m(i, j).real()) + 0.0);
      ir.push_back(round9(m(i, j).imag()) + 0.0);
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json to_json(const HermitianOperator& h) { return to_json(h.matrix()); }

json to_json(const WeightedEnsemble& e) {
  json j;
  // Priors keep full precision: uniform priors written as 0.333333333 would
  // no longer read back as uniform.
  j["priors"] = e.priors();
  json states = json::array();
  for (const auto& s : e.states()) states.push_back(to_json(s.op()));
  j["states"] = std::move(states);
  if (e.seed()) j["seed"] = *e.seed();
  return j;
}

namespace {

json complementary_json(const ComplementarySet& c) {
  json out = json::array();
  for (const auto& cs : c)
    out.push_back({{"r", round9(cs.weight)}, {"sigma", cs.state ? to_json(cs.state->op()) : json(nullptr)}});
  return out;
}

json povm_json(const std::vector<HermitianOperator>& povm) {
  json out = json::array();
  for (const auto& m : povm) out.push_back(to_json(m));
  return out;
}

}  // namespace

json to_json(const DiscriminationSolution& s) {
  return {{"p_guess", round9(s.p_guess)},
          {"K", to_json(s.symmetry_operator)},
          {"complementary", complementary_json(s.complementary)},
          {"povm", povm_json(s.povm)},
          {"support", s.support},
          {"path", std::string(to_string(s.path))},
          {"tolerance", s.tolerance()}};
}

json to_json(const KktCertificate& c) {
  json r = json::object();
  auto put = [&](const char* name, const std::optional<double>& v) {
    if (v) r[name] = round9(*v);
  };
  put("symmetry", c.symmetry);
  put("dual_feasibility", c.dual_feasibility);
  put("orthogonality", c.orthogonality);
  put("legacy_pairwise", c.legacy_pairwise);
  put("legacy_operator", c.legacy_operator);
  r["completeness"] = round9(c.completeness);
  r["povm_positivity"] = round9(c.povm_positivity);
  return {{"residuals", std::move(r)}, {"tolerance", c.tolerance}, {"verdict", c.pass ? "pass" : "fail"}};
}

json to_json(const FactoryOutput& f) {
  json j = to_json(f.ensemble);
  std::vector<double> p;
  for (double v : f.steering_probs) p.push_back(round9(v));
  j["steering_probs"] = p;
  j["K"] = to_json(f.symmetry_operator);
  j["complementary"] = complementary_json(f.complementary);
  j["povm"] = povm_json(f.povm);
  j["certificate"] = to_json(f.certificate);
  j["certified"] = f.certified;
  j["status"] = f.certified ? "certified" : "uncertified";
  return j;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "non-finite number");
  return v;
}

}  // namespace

CMatrix matrix_from_json(const json& j, const std::string& where) {
  const json& dj = field(j, "dim", where);
  if (!dj.is_number_integer() || dj.get<long long>() < 1) fail(where + ".dim", "expected a positive integer");
  const auto n = static_cast<std::size_t>(dj.get<long long>());
  CMatrix m(n);
  auto read = [&](const char* key, bool imag) {
    auto it = j.find(key);
    if (it == j.end()) {
      if (imag) return;  // real matrices may omit "im"
      fail(where, std::string("missing field \"") + key + "\"");
    }
    const std::string w = where + "." + key;
    if (!it->is_array() || it->size() != n) fail(w, "expected " + std::to_string(n) + " rows");
    for (std::size_t r = 0; r < n; ++r) {
      const json& row = (*it)[r];
      const std::string wr = w + "[" + std::to_string(r) + "]";
      if (!row.is_array() || row.size() != n) fail(wr, "expected " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) {
        const double v = number(row[c], wr + "[" + std::to_string(c) + "]");
        if (imag) m(r, c).imag(v);
        else m(r, c).real(v);
      }
    }
  };
  read("re", false);
  read("im", true);
  return m;
}

HermitianOperator hermitian_from_json(const json& j, const std::string& where) {
  CMatrix m = matrix_from_json(j, where);
  // Nine-digit data is only Hermitian to ~1e-9; symmetrize anything that
  // close and reject the rest.
  const double scale = std::max(1.0, m.max_abs());
  if (max_abs_diff(m, m.adjoint()) > 1e-8 * scale) fail(where, "matrix is not Hermitian");
  try {
    return hermitian_part(m);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

WeightedEnsemble ensemble_from_json(const json& j) {
  const json& pj = field(j, "priors", "ensemble");
  const json& sj = field(j, "states", "ensemble");
  if (!pj.is_array() || pj.empty()) fail("priors", "expected a nonempty array");
  if (!sj.is_array() || sj.size() != pj.size()) fail("states", "expected one state per prior");
  std::vector<double> q;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const double v = number(pj[i], "priors[" + std::to_string(i) + "]");
    if (!(v > 0.0)) fail("priors[" + std::to_string(i) + "]", "prior must be positive");
    q.push_back(v);
  }
  const double total = std::accumulate(q.begin(), q.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-8) fail("priors", "priors must sum to 1");
  for (auto& v : q) v /= total;

  std::vector<DensityOperator> states;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < sj.size(); ++i) {
    const std::string w = "states[" + std::to_string(i) + "]";
    HermitianOperator h = hermitian_from_json(sj[i], w);
    if (i == 0) dim = h.dim();
    else if (h.dim() != dim) fail(w, "dimension differs from states[0]");
    try {
      states.push_back(DensityOperator::from_approximate(h, 1e-8));
    } catch (const InvalidArgument& e) {
      fail(w, e.what());
    }
  }
  std::optional<std::uint64_t> seed;
  if (auto it = j.find("seed"); it != j.end() && it->is_number_unsigned()) seed = it->get<std::uint64_t>();
  return WeightedEnsemble(std::move(q), std::move(states), seed);
}

SolutionFile solution_from_json(const json& j) {
  SolutionFile s{hermitian_from_json(field(j, "K", "solution"), "K"), {}, std::nullopt};
  const json& pj = field(j, "povm", "solution");
  if (!pj.is_array()) fail("povm", "expected an array");
  for (std::size_t i = 0; i < pj.size(); ++i) s.povm.push_back(hermitian_from_json(pj[i], "povm[" + std::to_string(i) + "]"));
  if (auto it = j.find("tolerance"); it != j.end()) s.tolerance = number(*it, "tolerance");
  return s;
}

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; translate it to line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

}  // namespace qsd::io
