#include "triadic/io.hpp"

#include "triadic/error.hpp"

#include <bit>
#include <ostream>
#include <set>
#include <string>

namespace triadic::io {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t size_from_json(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

RationalMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const char* what) {
    if (!j.is_array() || j.size() != rows)
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must have " + std::to_string(rows) + " rows");
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto row = rationals_from_json(j[r]);
        if (row.size() != cols)
            throw Error(ErrorKind::DimensionMismatch, std::string(what) + " row " + std::to_string(r) + " must have " +
                                                          std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    }
    return m;
}

Json matrix_to_json(const RationalMatrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(rationals_to_json(m.row(r)));
    return out;
}

Json constants_to_json(const ECConstants& c) {
    return Json{{"pn", rational_to_json(c.accept_out)},
                {"bp", rational_to_json(c.boundary_in)},
                {"bn", rational_to_json(c.boundary_out)},
                {"np", rational_to_json(c.reject_in)}};
}

ECConstants constants_from_json(const Json& j) {
    return {rational_from_json(require(j, "pn")), rational_from_json(require(j, "bp")),
            rational_from_json(require(j, "bn")), rational_from_json(require(j, "np"))};
}

}  // namespace

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return parse_rational(std::to_string(j.get<unsigned long long>()));
    throw Error(ErrorKind::ParseError, "rational must be a \"p/q\" string or an integer, got " + j.dump());
}

Json rationals_to_json(std::span<const Rational> values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(rational_to_json(v));
    return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array of rationals, got " + j.dump());
    std::vector<Rational> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(rational_from_json(v));
    return out;
}

Json hypothesis_to_json(const Hypothesis& h) { return h.indices(); }

Hypothesis hypothesis_from_json(unsigned k, const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "hypothesis must be an index array, got " + j.dump());
    std::vector<unsigned> members;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw Error(ErrorKind::ParseError, "hypothesis member must be a nonnegative integer, got " + v.dump());
        members.push_back(v.get<unsigned>());
    }
    return Hypothesis::from_indices(k, members);
}

Json regions_to_json(const RegionEstimator& r) {
    Json out = Json::array();
    for (const auto& region : r.regions) out.push_back(hypothesis_to_json(region));
    return out;
}

RegionEstimator regions_from_json(unsigned k, const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "regions must be an array of index arrays");
    RegionEstimator r{k, {}};
    for (const auto& region : j) r.regions.push_back(hypothesis_from_json(k, region));
    return r;
}

Json model_to_json(const Model& model) {
    Json out{{"theta_size", model.theta_size()}, {"x_size", model.x_size()}};
    if (!model.labels().empty()) out["labels"] = model.labels();
    if (model.form() == Model::Form::Likelihood) {
        out["prior"] = rationals_to_json(model.prior());
        out["likelihood"] = matrix_to_json(model.likelihood());
    } else {
        out["posterior"] = matrix_to_json(model.posterior_table());
        out["x_marginal"] = rationals_to_json(model.x_marginal());
    }
    return out;
}

Model model_from_json(const Json& j) {
    const std::size_t k = size_from_json(j, "theta_size");
    const std::size_t m = size_from_json(j, "x_size");
    if (k == 0 || m == 0) throw Error(ErrorKind::ValidationError, "theta_size and x_size must be positive");
    if (k > kMaxTheta) throw Error(ErrorKind::TooLarge, "theta_size " + std::to_string(k) + " exceeds 63");
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw Error(ErrorKind::ParseError, "labels must be an array of strings");
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) throw Error(ErrorKind::ParseError, "labels must be an array of strings");
            labels.push_back(l.get<std::string>());
        }
    }
    const bool likelihood_form = j.contains("prior") || j.contains("likelihood");
    const bool posterior_form = j.contains("posterior") || j.contains("x_marginal");
    if (likelihood_form == posterior_form)
        throw Error(ErrorKind::ValidationError, "model needs exactly one of prior+likelihood or posterior+x_marginal");
    if (likelihood_form) {
        auto prior = rationals_from_json(require(j, "prior"));
        if (prior.size() != k) throw Error(ErrorKind::DimensionMismatch, "prior must have theta_size entries");
        return Model::from_likelihood(std::move(prior), matrix_from_json(require(j, "likelihood"), k, m, "likelihood"),
                                      std::move(labels));
    }
    auto marginal = rationals_from_json(require(j, "x_marginal"));
    if (marginal.size() != m) throw Error(ErrorKind::DimensionMismatch, "x_marginal must have x_size entries");
    return Model::from_posterior(matrix_from_json(require(j, "posterior"), k, m, "posterior"), std::move(marginal),
                                 std::move(labels));
}

Json ec_loss_to_json(const ECLoss& loss) {
    Json out{{"type", loss.trivial() ? "tec" : "ec"}, {"lambda", constants_to_json(loss.shared())}};
    if (!loss.trivial()) {
        Json per = Json::array();
        for (const auto& [h, c] : loss.overrides()) {
            std::vector<unsigned> members;
            for (Mask b = h; b != 0; b &= b - 1) members.push_back(static_cast<unsigned>(std::countr_zero(b)));
            per.push_back(Json{{"hypothesis", members}, {"lambda", constants_to_json(c)}});
        }
        out["per_hypothesis"] = per;
    }
    return out;
}

ECLoss ec_loss_from_json(unsigned k, const Json& j) {
    const std::string type = require(j, "type").get<std::string>();
    if (type != "tec" && type != "ec") throw Error(ErrorKind::ValidationError, "not an EC loss: type \"" + type + "\"");
    ECLoss loss(constants_from_json(require(j, "lambda")));
    if (j.contains("per_hypothesis")) {
        if (type == "tec") throw Error(ErrorKind::ValidationError, "a TEC loss cannot have per-hypothesis constants");
        for (const auto& entry : j["per_hypothesis"])
            loss.set(hypothesis_from_json(k, require(entry, "hypothesis")), constants_from_json(require(entry, "lambda")));
    }
    return loss;
}

Json gfbst_loss_to_json(const GFBSTLoss& loss) {
    return Json{{"type", "gfbst"}, {"b", rational_to_json(loss.b)}, {"v", rational_to_json(loss.v)}, {"c", rational_to_json(loss.c)}};
}

GFBSTLoss gfbst_loss_from_json(const Json& j) {
    return {rational_from_json(require(j, "b")), rational_from_json(require(j, "v")), rational_from_json(require(j, "c"))};
}

std::map<Mask, LossTable> loss_tables_from_json(unsigned k, const Json& j) {
    const Json& tables = require(j, "tables");
    if (!tables.is_array()) throw Error(ErrorKind::ParseError, "\"tables\" must be an array");
    std::map<Mask, LossTable> out;
    for (const auto& entry : tables) {
        const auto h = hypothesis_from_json(k, require(entry, "hypothesis"));
        LossTable t(k);
        for (Verdict d : kAllVerdicts) {
            auto row = rationals_from_json(require(entry, std::string(to_string(d)).c_str()));
            if (row.size() != k) throw Error(ErrorKind::DimensionMismatch, "loss row must have theta_size entries");
            t.values[index_of(d)] = std::move(row);
        }
        if (!out.emplace(h.bits(), std::move(t)).second)
            throw Error(ErrorKind::ValidationError, "duplicate loss table for " + h.to_string());
    }
    return out;
}

Json loss_tables_to_json(unsigned k, const std::map<Mask, LossTable>& tables) {
    Json list = Json::array();
    for (const auto& [h, t] : tables) {
        Json entry{{"hypothesis", hypothesis_to_json(Hypothesis(k, h))}};
        for (Verdict d : kAllVerdicts) entry[std::string(to_string(d))] = rationals_to_json(t.values[index_of(d)]);
        list.push_back(entry);
    }
    return Json{{"type", "table"}, {"tables", list}};
}

Json verdicts_to_json(const SimultaneousTest& test) {
    Json out = Json::array();
    const unsigned k = test.theta_size();
    for (std::size_t x = 0; x < test.x_size(); ++x) {
        const auto col = test.column(x);
        for (Mask h = 0; h < col.size(); ++h)
            out.push_back(Json{{"x", x}, {"hypothesis", hypothesis_to_json(Hypothesis(k, h))}, {"verdict", to_string(col[h])}});
    }
    return out;
}

SimultaneousTest test_from_json(unsigned k, std::size_t m, const Json& verdicts) {
    if (k > kMaterializeLimit) throw Error(ErrorKind::TooLarge, "explicit verdict tables need theta_size <= 12");
    if (!verdicts.is_array()) throw Error(ErrorKind::ParseError, "verdicts must be an array");
    const std::size_t per_x = std::size_t{1} << k;
    std::vector<Verdict> table(per_x * m, Verdict::Boundary);
    std::vector<bool> seen(table.size(), false);
    for (const auto& entry : verdicts) {
        const std::size_t x = size_from_json(entry, "x");
        if (x >= m) throw Error(ErrorKind::IndexOutOfRange, "verdict for x = " + std::to_string(x));
        const auto h = hypothesis_from_json(k, require(entry, "hypothesis"));
        const auto v = parse_verdict(require(entry, "verdict").get<std::string>());
        if (!v) throw Error(ErrorKind::ParseError, "unknown verdict " + entry["verdict"].dump());
        const std::size_t idx = x * per_x + h.bits();
        if (seen[idx]) throw Error(ErrorKind::ValidationError, "duplicate verdict for " + h.to_string() + " at x = " + std::to_string(x));
        seen[idx] = true;
        table[idx] = *v;
    }
    for (std::size_t idx = 0; idx < seen.size(); ++idx)
        if (!seen[idx])
            throw Error(ErrorKind::ValidationError, "missing verdict for " + Hypothesis(k, idx % per_x).to_string() +
                                                        " at x = " + std::to_string(idx / per_x));
    return SimultaneousTest::from_table(k, m, std::move(table), Provenance::External);
}

void write_csv(std::ostream& out, const SimultaneousTest& test) {
    out << "x,hypothesis,verdict\n";
    const unsigned k = test.theta_size();
    for (std::size_t x = 0; x < test.x_size(); ++x) {
        const auto col = test.column(x);
        for (Mask h = 0; h < col.size(); ++h) {
            out << x << ',';
            bool first = true;
            for (unsigned i : Hypothesis(k, h).indices()) {
                if (!first) out << ';';
                out << i;
                first = false;
            }
            out << ',' << to_string(col[h]) << '\n';
        }
    }
}

Json violation_to_json(const Violation& v) {
    Json verdicts = Json::array();
    for (Verdict d : v.verdicts) verdicts.push_back(to_string(d));
    // Masks are reported as index arrays; bit positions need the ambient size only for bounds.
    auto members = [](Mask h) {
        std::vector<unsigned> out;
        for (Mask b = h; b != 0; b &= b - 1) out.push_back(static_cast<unsigned>(std::countr_zero(b)));
        return out;
    };
    Json out{{"axiom", to_string(v.axiom)}, {"x", v.x}, {"h1", members(v.h1)}, {"verdicts", verdicts}};
    if (v.h2) out["h2"] = members(*v.h2);
    return out;
}

Json coherence_to_json(const CoherenceReport& report) {
    Json counts = Json::object();
    for (std::size_t i = 0; i < kAxiomCount; ++i) counts[std::string(to_string(static_cast<Axiom>(i)))] = report.counts[i];
    Json violations = Json::array();
    for (const auto& v : report.violations) violations.push_back(violation_to_json(v));
    return Json{{"coherent", report.coherent},
                {"exhaustive", report.exhaustive},
                {"counts", counts},
                {"violations", violations}};
}

Json witness_to_json(const TecWitness& w) {
    const Json loss = ec_loss_to_json(w.loss);
    const Json model = model_to_json(w.model);
    return Json{{"model", model},
                {"loss", loss},
                {"table_parameter", w.table_parameter},
                {"thresholds", Json{{"alpha", rational_to_json(w.thresholds.alpha)}, {"beta", rational_to_json(w.thresholds.beta)}}},
                {"regions", regions_to_json(w.regions)},
                {"replay", Json{{"schema_version", kSchemaVersion}, {"task", "test"}, {"model", model}, {"loss", loss}}}};
}

Json counterexample_to_json(const Counterexample& c, const ECLoss& loss) {
    const Json model = model_to_json(single_observation_model(c.posterior));
    const Json loss_json = ec_loss_to_json(loss);
    Json out{{"posterior", rationals_to_json(c.posterior)},
             {"violated_axiom", to_string(c.violated)},
             {"h1", hypothesis_to_json(c.h1)},
             {"recipe", c.recipe},
             {"coherence", coherence_to_json(c.report)},
             {"replay", Json{{"schema_version", kSchemaVersion},
                             {"task", "coherence"},
                             {"model", model},
                             {"loss", loss_json},
                             {"options", Json{{"expect_coherent", false}}}}}};
    if (c.h2) out["h2"] = hypothesis_to_json(*c.h2);
    return out;
}

}  // namespace triadic::io
