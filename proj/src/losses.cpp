#include "triadic/losses.hpp"

#include "triadic/error.hpp"

#include <algorithm>
#include <string>

namespace triadic {

std::string_view to_string(EcConstraint c) noexcept {
    switch (c) {
        case EcConstraint::BoundaryInRange: return "0 < lambda_BP < lambda_NP/2";
        case EcConstraint::BoundaryOutRange: return "0 < lambda_BN < lambda_PN/2";
        case EcConstraint::ThresholdOrder: return "(lambda_PN - lambda_BN) lambda_NP > lambda_BP lambda_PN";
    }
    return "?";
}

std::vector<EcConstraint> ec_constraint_violations(const ECConstants& c) {
    std::vector<EcConstraint> out;
    if (!(sgn(c.boundary_in) > 0 && 2 * c.boundary_in < c.reject_in)) out.push_back(EcConstraint::BoundaryInRange);
    if (!(sgn(c.boundary_out) > 0 && 2 * c.boundary_out < c.accept_out)) out.push_back(EcConstraint::BoundaryOutRange);
    if (!((c.accept_out - c.boundary_out) * c.reject_in > c.boundary_in * c.accept_out))
        out.push_back(EcConstraint::ThresholdOrder);
    return out;
}

ECLoss& ECLoss::set(const Hypothesis& h, ECConstants c) {
    overrides_[h.bits()] = std::move(c);
    return *this;
}

const ECConstants& ECLoss::constants(Mask h) const {
    const auto it = overrides_.find(h);
    return it == overrides_.end() ? shared_ : it->second;
}

std::vector<EcViolation> validate_ec(const ECLoss& loss) {
    std::vector<EcViolation> out;
    for (auto c : ec_constraint_violations(loss.shared())) out.push_back({std::nullopt, c});
    for (const auto& [h, constants] : loss.overrides())
        for (auto c : ec_constraint_violations(constants)) out.push_back({h, c});
    return out;
}

Thresholds thresholds_of(const ECConstants& c) {
    const Rational accept_margin = c.accept_out - c.boundary_out;
    Thresholds t;
    t.beta = accept_margin / (accept_margin + c.boundary_in);
    t.alpha = c.boundary_out / ((c.boundary_out - c.boundary_in) + c.reject_in);
    return t;
}

Thresholds ec_thresholds(const ECLoss& loss, const Hypothesis& h) {
    const auto& c = loss.constants(h.bits());
    if (const auto bad = ec_constraint_violations(c); !bad.empty())
        throw Error(ErrorKind::InvalidLoss, "EC constants for " + h.to_string() + " violate " + std::string(to_string(bad.front())));
    return thresholds_of(c);
}

LossTable ec_table(const ECConstants& c, const Hypothesis& h) {
    const unsigned k = h.ambient();
    LossTable t(k);
    for (unsigned theta = 0; theta < k; ++theta) {
        if (h.contains(theta)) {
            t.at(Verdict::Boundary, theta) = c.boundary_in;
            t.at(Verdict::Reject, theta) = c.reject_in;
        } else {
            t.at(Verdict::Accept, theta) = c.accept_out;
            t.at(Verdict::Boundary, theta) = c.boundary_out;
        }
    }
    return t;
}

LossFamily ec_family(ECLoss loss) {
    return [loss = std::move(loss)](const Hypothesis& h, std::span<const Rational>) {
        return ec_table(loss.constants(h.bits()), h);
    };
}

LossFamily table_family(std::map<Mask, LossTable> tables) {
    return [tables = std::move(tables)](const Hypothesis& h, std::span<const Rational>) {
        const auto it = tables.find(h.bits());
        if (it == tables.end()) throw Error(ErrorKind::ValidationError, "no loss table for hypothesis " + h.to_string());
        if (it->second.theta_size() != h.ambient())
            throw Error(ErrorKind::DimensionMismatch, "loss table for " + h.to_string() + " has the wrong width");
        return it->second;
    };
}

bool is_proper(const LossTable& loss, const Hypothesis& h) {
    for (unsigned theta = 0; theta < loss.theta_size(); ++theta) {
        const Rational& accept = loss.at(Verdict::Accept, theta);
        const Rational& boundary = loss.at(Verdict::Boundary, theta);
        const Rational& reject = loss.at(Verdict::Reject, theta);
        const bool ordered = h.contains(theta) ? (accept < boundary && boundary < reject)
                                               : (accept > boundary && boundary > reject);
        if (!ordered || !(2 * boundary < accept + reject)) return false;
    }
    return true;
}

Rational induced_region_loss(std::span<const LossTable> singleton_tables, const Hypothesis& a, unsigned theta) {
    Rational total(0);
    for (unsigned member : a.indices()) {
        if (member >= singleton_tables.size()) throw Error(ErrorKind::IndexOutOfRange, "no singleton table for " + std::to_string(member));
        const auto& t = singleton_tables[member];
        total += t.at(Verdict::Boundary, theta) - t.at(Verdict::Reject, theta);
    }
    return total;
}

std::vector<LossTable> singleton_tables(const LossFamily& family, std::span<const Rational> dist) {
    const auto k = static_cast<unsigned>(dist.size());
    std::vector<LossTable> out;
    out.reserve(k);
    for (unsigned theta = 0; theta < k; ++theta) out.push_back(family(Hypothesis::singleton(k, theta), dist));
    return out;
}

void validate_gfbst(const GFBSTLoss& loss) {
    if (!(sgn(loss.v) > 0 && loss.v < loss.b))
        throw Error(ErrorKind::InvalidLoss, "GFBST loss needs 0 < v < b, got v = " + format_rational(loss.v) +
                                                ", b = " + format_rational(loss.b));
    if (sgn(loss.c) <= 0) throw Error(ErrorKind::InvalidLoss, "GFBST loss needs c > 0, got c = " + format_rational(loss.c));
}

Rational gfbst_threshold(const GFBSTLoss& loss) { return (loss.v + loss.c) / (loss.b + loss.c); }

Hypothesis tangent_set(std::span<const Rational> dist, const Hypothesis& h) {
    const auto k = static_cast<unsigned>(dist.size());
    if (h.ambient() != k) throw Error(ErrorKind::DimensionMismatch, "hypothesis and distribution sizes differ");
    if (h.is_empty()) return Hypothesis::full(k);
    const auto members = h.indices();
    const Rational* sup = &dist[members.front()];
    for (unsigned i : members)
        if (dist[i] > *sup) sup = &dist[i];
    Mask bits = 0;
    for (unsigned i = 0; i < k; ++i)
        if (dist[i] > *sup) bits |= Mask{1} << i;
    return {k, bits};
}

namespace {

enum class TangentColumn { InTangentOfH, Neither, InTangentOfComplement };

Rational table_entry(const GFBSTLoss& loss, Verdict decision, TangentColumn column) {
    switch (decision) {
        case Verdict::Accept:
            switch (column) {
                case TangentColumn::InTangentOfH: return loss.b + loss.c;
                case TangentColumn::Neither: return loss.b;
                case TangentColumn::InTangentOfComplement: return Rational(0);
            }
            break;
        case Verdict::Boundary:
            return column == TangentColumn::Neither ? loss.v : Rational(loss.v + loss.c);
        case Verdict::Reject:
            switch (column) {
                case TangentColumn::InTangentOfH: return Rational(0);
                case TangentColumn::Neither: return loss.b;
                case TangentColumn::InTangentOfComplement: return loss.b + loss.c;
            }
            break;
    }
    return Rational(0);
}

TangentColumn classify(unsigned theta, const Hypothesis& tangent_h, const Hypothesis& tangent_complement) {
    if (tangent_h.contains(theta)) return TangentColumn::InTangentOfH;
    if (tangent_complement.contains(theta)) return TangentColumn::InTangentOfComplement;
    return TangentColumn::Neither;
}

}  // namespace

Rational gfbst_loss_value(const GFBSTLoss& loss, Verdict decision, unsigned theta, const Hypothesis& h,
                          std::span<const Rational> dist) {
    if (theta >= dist.size()) throw Error(ErrorKind::IndexOutOfRange, "theta = " + std::to_string(theta));
    return table_entry(loss, decision, classify(theta, tangent_set(dist, h), tangent_set(dist, h.complement())));
}

LossTable gfbst_table(const GFBSTLoss& loss, const Hypothesis& h, std::span<const Rational> dist) {
    const auto tangent_h = tangent_set(dist, h);
    const auto tangent_complement = tangent_set(dist, h.complement());
    LossTable t(h.ambient());
    for (unsigned theta = 0; theta < h.ambient(); ++theta) {
        const auto column = classify(theta, tangent_h, tangent_complement);
        for (Verdict d : kAllVerdicts) t.at(d, theta) = table_entry(loss, d, column);
    }
    return t;
}

LossFamily gfbst_family(GFBSTLoss loss) {
    return [loss = std::move(loss)](const Hypothesis& h, std::span<const Rational> dist) {
        return gfbst_table(loss, h, dist);
    };
}

}  // namespace triadic
