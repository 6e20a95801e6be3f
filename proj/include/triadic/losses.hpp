#pragma once

#include "triadic/hypothesis.hpp"
#include "triadic/rational.hpp"
#include "triadic/verdict.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace triadic {

/// Error-wise constant loss for one hypothesis.
///
///              theta in H   theta not in H
///   accept        0            accept_out   (lambda_PN)
///   undecided  boundary_in    boundary_out  (lambda_BP, lambda_BN)
///   reject     reject_in          0         (lambda_NP)
struct ECConstants {
    Rational accept_out;    // lambda_PN
    Rational boundary_in;   // lambda_BP
    Rational boundary_out;  // lambda_BN
    Rational reject_in;     // lambda_NP

    friend bool operator==(const ECConstants&, const ECConstants&) = default;
};

/// The three validity constraints on EC constants.
enum class EcConstraint {
    BoundaryInRange,   // 0 < lambda_BP < lambda_NP / 2
    BoundaryOutRange,  // 0 < lambda_BN < lambda_PN / 2
    ThresholdOrder,    // (lambda_PN - lambda_BN) lambda_NP > lambda_BP lambda_PN
};

std::string_view to_string(EcConstraint c) noexcept;

/// Constraints violated by one set of constants (empty = valid).
std::vector<EcConstraint> ec_constraint_violations(const ECConstants& c);

/// EC loss over the whole power set: shared constants plus optional per-hypothesis overrides.
/// Without overrides the loss is trivial (TEC).
class ECLoss {
public:
    ECLoss() = default;
    explicit ECLoss(ECConstants shared) : shared_(std::move(shared)) {}

    static ECLoss tec(ECConstants c) { return ECLoss(std::move(c)); }

    ECLoss& set(const Hypothesis& h, ECConstants c);

    const ECConstants& constants(Mask h) const;
    const ECConstants& shared() const noexcept { return shared_; }
    const std::map<Mask, ECConstants>& overrides() const noexcept { return overrides_; }
    bool trivial() const noexcept { return overrides_.empty(); }

private:
    ECConstants shared_;
    std::map<Mask, ECConstants> overrides_;
};

struct EcViolation {
    std::optional<Mask> hypothesis;  // nullopt: the shared constants
    EcConstraint constraint;
};

/// Every violated constraint, shared constants first, then overrides in mask order.
std::vector<EcViolation> validate_ec(const ECLoss& loss);

struct Thresholds {
    Rational alpha;  // reject below
    Rational beta;   // accept above

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// beta = (PN - BN) / ((PN - BN) + BP), alpha = BN / ((BN - BP) + NP). No validation.
Thresholds thresholds_of(const ECConstants& c);

/// Thresholds for h; throws Error(InvalidLoss) if h's constants violate a constraint.
Thresholds ec_thresholds(const ECLoss& loss, const Hypothesis& h);

/// Loss values for one hypothesis (and, for data-dependent losses, one observation):
/// values[verdict][theta].
struct LossTable {
    std::array<std::vector<Rational>, 3> values;

    explicit LossTable(unsigned k = 0) {
        for (auto& row : values) row.assign(k, Rational(0));
    }
    unsigned theta_size() const noexcept { return static_cast<unsigned>(values[0].size()); }
    Rational& at(Verdict d, unsigned theta) { return values[index_of(d)][theta]; }
    const Rational& at(Verdict d, unsigned theta) const { return values[index_of(d)][theta]; }
};

LossTable ec_table(const ECConstants& c, const Hypothesis& h);

/// Loss family over the power set. The second argument is the posterior at the current
/// observation; data-independent families ignore it.
using LossFamily = std::function<LossTable(const Hypothesis&, std::span<const Rational>)>;

LossFamily ec_family(ECLoss loss);
/// Explicit per-hypothesis tables; a missing hypothesis throws Error(ValidationError) at lookup.
LossFamily table_family(std::map<Mask, LossTable> tables);

/// Properness: ordered losses inside and outside h, and L(1/2) below the accept/reject midpoint.
bool is_proper(const LossTable& loss, const Hypothesis& h);

/// sum over theta' in a of [L_{theta'}(1/2, theta) - L_{theta'}(1, theta)], where
/// singleton_tables[theta'] is the table for hypothesis {theta'}.
Rational induced_region_loss(std::span<const LossTable> singleton_tables, const Hypothesis& a,
                             unsigned theta);

/// Tables of family for every singleton at posterior dist.
std::vector<LossTable> singleton_tables(const LossFamily& family, std::span<const Rational> dist);

// ---- GFBST loss -------------------------------------------------------------

struct GFBSTLoss {
    Rational b;
    Rational v;
    Rational c;
};

/// Throws Error(InvalidLoss) unless 0 < v < b and c > 0.
void validate_gfbst(const GFBSTLoss& loss);

/// (v + c) / (b + c)
Rational gfbst_threshold(const GFBSTLoss& loss);

/// Points strictly denser than every point of h. The supremum over the empty set is -inf,
/// so the tangent set of the empty hypothesis is Theta.
Hypothesis tangent_set(std::span<const Rational> dist, const Hypothesis& h);

/// Entry of the GFBST loss table for (decision, theta) given the tangent sets of h and h^c.
Rational gfbst_loss_value(const GFBSTLoss& loss, Verdict decision, unsigned theta,
                          const Hypothesis& h, std::span<const Rational> dist);

LossTable gfbst_table(const GFBSTLoss& loss, const Hypothesis& h, std::span<const Rational> dist);
LossFamily gfbst_family(GFBSTLoss loss);

}  // namespace triadic
