#pragma once

#include <string>

#include <json.hpp>

#include "qsd/certificate.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/factory.hpp"
#include "qsd/solver.hpp"

namespace qsd::io {

using nlohmann::json;

/// x rounded to 9 significant digits (locale independent).
double round9(double x);
/// Shortest decimal text for round9(x).
std::string format9(double x);

json to_json(const CMatrix& m);
json to_json(const HermitianOperator& h);
json to_json(const WeightedEnsemble& e);
json to_json(const DiscriminationSolution& s);
json to_json(const KktCertificate& c);
json to_json(const FactoryOutput& f);

/// Parsers throw ParseError naming the offending field (e.g. "states[1].re").
CMatrix matrix_from_json(const json& j, const std::string& where);
HermitianOperator hermitian_from_json(const json& j, const std::string& where);

/// Accepts files written with limited precision: priors must sum to 1 within
/// 1e-8 and are renormalized; states must be PSD and unit-trace within 1e-8
/// and are projected onto the state space.
WeightedEnsemble ensemble_from_json(const json& j);

struct SolutionFile {
  HermitianOperator k;
  std::vector<HermitianOperator> povm;
  std::optional<double> tolerance;
};
SolutionFile solution_from_json(const json& j);

/// Parses text, mapping syntax errors to ParseError with line/column.
json parse(const std::string& text, const std::string& source);

}  // namespace qsd::io
