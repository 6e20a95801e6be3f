#pragma once

#include "triadic/coherence.hpp"
#include "triadic/decision.hpp"
#include "triadic/losses.hpp"
#include "triadic/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace triadic {

/// Denominator of the uniform term in the witness posterior.
enum class Eq3Variant {
    Theta,  // |H| / |Theta|: normalizes for every |X|
    X,      // |H| / |X| as printed; only normalizes when |X| == |Theta|
};

/// A probability and a TEC loss under which a coherent test is Bayes.
struct TecWitness {
    Model model;                // posterior form, uniform marginal over X
    ECLoss loss;                // accept_out = reject_in = kappa, boundary_in = boundary_out = 1
    unsigned table_parameter;   // kappa = max(k, 3)
    Thresholds thresholds;      // (1/kappa, (kappa-1)/kappa)
    RegionEstimator regions;    // extracted from the input test
};

/// Builds the witness and replays bayes_test_ec on it before returning.
/// Throws Error(NotCoherent), Error(NonNormalized) (X variant with |X| != |Theta|),
/// Error(ReplayFailed).
TecWitness tec_witness(const SimultaneousTest& test, Eq3Variant variant = Eq3Variant::Theta,
                       const CoherenceOptions& options = {});

/// A single-observation posterior whose EC-Bayes test breaks coherence.
struct Counterexample {
    std::vector<Rational> posterior;
    Axiom violated;  // the axiom the construction targets
    Hypothesis h1;
    std::optional<Hypothesis> h2;  // monotonicity: h1 inside h2; union consonance: the other rejected set
    std::string recipe;
    CoherenceReport report;  // from the replay
};

/// Counterexample for a valid EC loss over k >= 3 points. Throws Error(InvalidLoss),
/// Error(SizeTooSmall), Error(ReplayFailed) if no construction succeeds.
Counterexample ec_incoherence_counterexample(const ECLoss& loss, unsigned k);

/// Exhaustive search over posteriors with entries i / d, d = 2..max_denominator.
std::optional<Counterexample> grid_counterexample(const ECLoss& loss, unsigned k,
                                                  unsigned max_denominator = 100);

/// Single-observation model with the given posterior (marginal 1).
Model single_observation_model(std::vector<Rational> posterior);

}  // namespace triadic
