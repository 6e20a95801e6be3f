#pragma once

// JSON and CSV encodings. Rationals are strings "p/q" (integers may also be JSON numbers on
// input); hypotheses are sorted index arrays.

#include "triadic/coherence.hpp"
#include "triadic/constructions.hpp"
#include "triadic/decision.hpp"
#include "triadic/losses.hpp"
#include "triadic/model.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace triadic::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json rational_to_json(const Rational& r);
/// Accepts "p/q", "p" or an integral JSON number. Throws Error(ParseError).
Rational rational_from_json(const Json& j);

Json rationals_to_json(std::span<const Rational> values);
std::vector<Rational> rationals_from_json(const Json& j);

Json hypothesis_to_json(const Hypothesis& h);
/// Throws Error(ParseError) for malformed arrays, Error(IndexOutOfRange) for members >= k.
Hypothesis hypothesis_from_json(unsigned k, const Json& j);

Json regions_to_json(const RegionEstimator& r);
RegionEstimator regions_from_json(unsigned k, const Json& j);

/// {theta_size, x_size, prior, likelihood} or {theta_size, x_size, posterior, x_marginal};
/// optional labels. Matrices are row-per-theta.
Json model_to_json(const Model& model);
Model model_from_json(const Json& j);

/// {type: "tec"|"ec", lambda: {pn, bp, bn, np}, per_hypothesis: [{hypothesis, lambda}]}
Json ec_loss_to_json(const ECLoss& loss);
ECLoss ec_loss_from_json(unsigned k, const Json& j);

/// {type: "gfbst", b, v, c}
Json gfbst_loss_to_json(const GFBSTLoss& loss);
GFBSTLoss gfbst_loss_from_json(const Json& j);

/// {type: "table", tables: [{hypothesis, accept: [k], boundary: [k], reject: [k]}]}
std::map<Mask, LossTable> loss_tables_from_json(unsigned k, const Json& j);
Json loss_tables_to_json(unsigned k, const std::map<Mask, LossTable>& tables);

/// [{x, hypothesis, verdict}] over every (x, H); only for materialized tests.
Json verdicts_to_json(const SimultaneousTest& test);
/// Inverse of verdicts_to_json; every (x, H) must appear exactly once.
SimultaneousTest test_from_json(unsigned k, std::size_t m, const Json& verdicts);

/// CSV with header "x,hypothesis,verdict"; hypothesis members joined by ';'.
void write_csv(std::ostream& out, const SimultaneousTest& test);

Json violation_to_json(const Violation& v);
Json coherence_to_json(const CoherenceReport& report);

Json witness_to_json(const TecWitness& w);
Json counterexample_to_json(const Counterexample& c, const ECLoss& loss);

}  // namespace triadic::io
