#include "triadic/scenario.hpp"

#include "triadic/coherence.hpp"
#include "triadic/decision.hpp"
#include "triadic/error.hpp"
#include "triadic/verify.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace triadic {

namespace {

using io::Json;

constexpr std::array<std::pair<Task, std::string_view>, 6> kTaskNames{{
    {Task::Test, "test"},
    {Task::Coherence, "coherence"},
    {Task::CertifyGfbst, "certify-gfbst"},
    {Task::Witness, "witness"},
    {Task::Counterexample, "counterexample"},
    {Task::VerifyTheorems, "verify-theorems"},
}};

Json error_report(ErrorKind kind, const std::string& message) {
    return Json{{"schema_version", io::kSchemaVersion},
                {"error", Json{{"kind", std::string(to_string(kind))}, {"message", message}}}};
}

/// Strips the "Kind: " prefix that Error adds to its message.
std::string bare_message(const Error& e) {
    const std::string what = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

const Json* find(const Json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

bool flag(const Json& options, const char* key, bool fallback) {
    const Json* v = find(options, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw Error(ErrorKind::ParseError, std::string("option \"") + key + "\" must be a boolean");
    return v->get<bool>();
}

std::uint64_t unsigned_field(const Json& j, const char* key) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be a nonnegative integer");
    return j.get<std::uint64_t>();
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ValidationError, "cannot open referenced file " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

class Runner {
public:
    Runner(const Json& scenario, const RunOptions& options) : s_(scenario), opt_(options) {
        if (!s_.is_object()) throw Error(ErrorKind::ParseError, "scenario must be a JSON object");
        if (const Json* v = find(s_, "schema_version"); v && (!v->is_number_integer() || v->get<int>() != io::kSchemaVersion))
            throw Error(ErrorKind::ValidationError, "unsupported schema_version " + v->dump());
        if (const Json* o = find(s_, "options")) {
            if (!o->is_object()) throw Error(ErrorKind::ParseError, "\"options\" must be an object");
            options_ = *o;
        }
    }

    Task task() const {
        if (opt_.task) return *opt_.task;
        const Json* t = find(s_, "task");
        if (!t) throw Error(ErrorKind::ValidationError, "scenario has no task");
        if (!t->is_string()) throw Error(ErrorKind::ParseError, "\"task\" must be a string");
        const auto parsed = parse_task(t->get<std::string>());
        if (!parsed) throw Error(ErrorKind::ValidationError, "unknown task \"" + t->get<std::string>() + "\"");
        return *parsed;
    }

    RunResult run() {
        const Task t = task();
        report_ = Json{{"schema_version", io::kSchemaVersion}, {"task", std::string(to_string(t))}};
        int code = 0;
        switch (t) {
            case Task::Test: code = run_test(); break;
            case Task::Coherence: code = run_coherence(); break;
            case Task::CertifyGfbst: code = run_certify(); break;
            case Task::Witness: code = run_witness(); break;
            case Task::Counterexample: code = run_counterexample(); break;
            case Task::VerifyTheorems: code = run_verify(); break;
        }
        return RunResult{code, std::move(report_), std::move(csv_)};
    }

private:
    const Json& s_;
    const RunOptions& opt_;
    Json options_ = Json::object();
    Json report_;
    std::optional<std::string> csv_;
    std::optional<Model> model_;

    unsigned max_k() const {
        const Json* v = find(options_, "max_k");
        return v ? static_cast<unsigned>(unsigned_field(*v, "max_k")) : 12U;
    }

    std::uint64_t seed() const {
        if (opt_.seed) return *opt_.seed;
        const Json* v = find(options_, "seed");
        if (!v) v = find(s_, "seed");
        return v ? unsigned_field(*v, "seed") : 0;
    }

    void check_size(unsigned k) const {
        if (opt_.max_theta && k > *opt_.max_theta)
            throw Error(ErrorKind::TooLarge, "theta_size " + std::to_string(k) + " exceeds --max-theta " +
                                                 std::to_string(*opt_.max_theta));
    }

    bool has_model() const { return find(s_, "model") != nullptr; }

    const Model& model() {
        if (model_) return *model_;
        const Json* spec = find(s_, "model");
        if (!spec) throw Error(ErrorKind::ValidationError, "this task needs a model");
        if (const Json* file = find(*spec, "file")) {
            if (!file->is_string()) throw Error(ErrorKind::ParseError, "model \"file\" must be a path string");
            model_ = io::model_from_json(read_json_file(opt_.base_dir / file->get<std::string>()));
        } else if (const Json* hg = find(*spec, "hypergeometric")) {
            const auto N = unsigned_field(hg->at("N"), "N");
            const auto n = unsigned_field(hg->at("n"), "n");
            if (N >= kMaxTheta) throw Error(ErrorKind::TooLarge, "hypergeometric N must be below 63");
            model_ = hypergeometric_model(static_cast<unsigned>(N), static_cast<unsigned>(n));
        } else {
            model_ = io::model_from_json(*spec);
        }
        check_size(model_->theta_size());
        return *model_;
    }

    const Json& loss_json() const {
        const Json* l = find(s_, "loss");
        if (!l) throw Error(ErrorKind::ValidationError, "this task needs a loss");
        if (!find(*l, "type") || !(*l)["type"].is_string())
            throw Error(ErrorKind::ValidationError, "loss needs a string \"type\"");
        return *l;
    }

    std::string loss_type() const { return loss_json()["type"].get<std::string>(); }

    ECLoss ec_loss(unsigned k) const {
        const std::string type = loss_type();
        if (type != "ec" && type != "tec")
            throw Error(ErrorKind::ValidationError, "this task needs an ec or tec loss, got \"" + type + "\"");
        return io::ec_loss_from_json(k, loss_json());
    }

    const Json& test_spec() const {
        static const Json empty = Json::object();
        const Json* t = find(s_, "test");
        if (t && !t->is_object()) throw Error(ErrorKind::ParseError, "\"test\" must be an object");
        return t ? *t : empty;
    }

    std::pair<unsigned, std::size_t> shape(const Json& spec) {
        if (has_model()) return {model().theta_size(), model().x_size()};
        const Json* k = find(spec, "theta_size");
        const Json* m = find(spec, "x_size");
        if (!k || !m) throw Error(ErrorKind::ValidationError, "test without a model needs theta_size and x_size");
        const auto kk = unsigned_field(*k, "theta_size");
        if (kk == 0 || kk > kMaxTheta) throw Error(ErrorKind::ValidationError, "theta_size must be in 1..63");
        check_size(static_cast<unsigned>(kk));
        return {static_cast<unsigned>(kk), unsigned_field(*m, "x_size")};
    }

    std::vector<Rational> levels(std::size_t m) const {
        const Json* l = find(test_spec(), "levels");
        if (!l) l = find(options_, "levels");
        if (!l) throw Error(ErrorKind::ValidationError, "hpd test needs \"levels\"");
        if (!l->is_array()) return std::vector<Rational>(m, io::rational_from_json(*l));
        return io::rationals_from_json(*l);
    }

    std::string test_kind() const {
        const Json* kind = find(test_spec(), "kind");
        if (!kind) return "bayes";
        if (!kind->is_string()) throw Error(ErrorKind::ParseError, "test \"kind\" must be a string");
        return kind->get<std::string>();
    }

    SimultaneousTest build_test() {
        const Json& spec = test_spec();
        const std::string kind = test_kind();
        if (kind == "bayes") {
            const Model& mdl = model();
            const std::string type = loss_type();
            if (type == "ec" || type == "tec") return bayes_test_ec(mdl, ec_loss(mdl.theta_size()));
            if (type == "gfbst") return gfbst_bayes(mdl, io::gfbst_loss_from_json(loss_json()));
            if (type == "table")
                return bayes_test_direct(mdl, table_family(io::loss_tables_from_json(mdl.theta_size(), loss_json())));
            throw Error(ErrorKind::ValidationError, "unknown loss type \"" + type + "\"");
        }
        if (kind == "region") {
            const auto [k, m] = shape(spec);
            const Json* r = find(spec, "regions");
            if (!r) throw Error(ErrorKind::ValidationError, "region test needs \"regions\"");
            auto regions = io::regions_from_json(k, *r);
            if (regions.x_size() != m) throw Error(ErrorKind::DimensionMismatch, "need one region per observation");
            return region_test(regions);
        }
        if (kind == "hpd") {
            const Model& mdl = model();
            return gfbst(mdl, levels(mdl.x_size()));
        }
        if (kind == "table") {
            const auto [k, m] = shape(spec);
            const Json* v = find(spec, "verdicts");
            if (!v) throw Error(ErrorKind::ValidationError, "table test needs \"verdicts\"");
            return io::test_from_json(k, m, *v);
        }
        throw Error(ErrorKind::ValidationError, "unknown test kind \"" + kind + "\"");
    }

    void describe(const SimultaneousTest& test) {
        report_["theta_size"] = test.theta_size();
        report_["x_size"] = test.x_size();
        report_["provenance"] = std::string(to_string(test.provenance()));
    }

    CoherenceOptions coherence_options() const {
        CoherenceOptions o;
        o.max_k = max_k();
        if (const Json* p = find(options_, "sampled_pairs")) o.sampled_pairs = unsigned_field(*p, "sampled_pairs");
        o.seed = seed();
        return o;
    }

    int run_test() {
        const auto test = build_test();
        describe(test);
        report_["verdicts"] = io::verdicts_to_json(test);
        std::ostringstream csv;
        io::write_csv(csv, test);
        csv_ = csv.str();
        return 0;
    }

    int run_coherence() {
        const auto test = build_test();
        describe(test);
        const bool expected = flag(options_, "expect_coherent", true);
        const auto report = check_coherence(test, coherence_options());
        report_["expect_coherent"] = expected;
        report_["coherence"] = io::coherence_to_json(report);
        return report.coherent == expected ? 0 : 1;
    }

    int run_certify() {
        const auto test = build_test();
        describe(test);
        const Model& mdl = model();
        const bool expected = flag(options_, "expect_gfbst", true);
        const auto rb = is_region_based(test, max_k());
        report_["region_based"] = rb.region_based;
        bool gfbst_ok = false;
        if (rb.region_based) {
            report_["regions"] = io::regions_to_json(*rb.witness);
            gfbst_ok = certify_gfbst(test, mdl, max_k());
            Json hpd_flags = Json::array();
            for (std::size_t x = 0; x < mdl.x_size(); ++x) hpd_flags.push_back(is_hpd((*rb.witness)(x), mdl.posterior(x)));
            report_["region_is_hpd"] = hpd_flags;
        } else if (rb.mismatch) {
            const auto& mm = *rb.mismatch;
            report_["mismatch"] = Json{{"x", mm.x},
                                       {"hypothesis", io::hypothesis_to_json(Hypothesis(test.theta_size(), mm.h))},
                                       {"test", to_string(mm.left)},
                                       {"region_test", to_string(mm.right)}};
        } else if (rb.empty_region_at) {
            report_["empty_region_at"] = *rb.empty_region_at;
        }
        report_["gfbst"] = gfbst_ok;
        report_["expect_gfbst"] = expected;
        return gfbst_ok == expected ? 0 : 1;
    }

    int run_witness() {
        const auto test = build_test();
        describe(test);
        report_["eq3_variant"] = opt_.eq3 == Eq3Variant::Theta ? "theta" : "x";
        try {
            report_["witness"] = io::witness_to_json(tec_witness(test, opt_.eq3, coherence_options()));
            return 0;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotCoherent) throw;
            report_["witness"] = nullptr;
            report_["reason"] = bare_message(e);
            report_["coherence"] = io::coherence_to_json(check_coherence(test, coherence_options()));
            return 1;
        }
    }

    int run_counterexample() {
        unsigned k = 0;
        if (const Json* v = find(options_, "theta_size")) {
            k = static_cast<unsigned>(unsigned_field(*v, "theta_size"));
        } else if (has_model()) {
            k = model().theta_size();
        } else {
            throw Error(ErrorKind::ValidationError, "counterexample needs options.theta_size or a model");
        }
        check_size(k);
        const auto loss = ec_loss(k);
        report_["theta_size"] = k;
        report_["counterexample"] = io::counterexample_to_json(ec_incoherence_counterexample(loss, k), loss);
        return 0;
    }

    int run_verify() {
        VerifyBounds b;
        if (const Json* j = find(options_, "bounds")) {
            if (!j->is_object()) throw Error(ErrorKind::ParseError, "\"bounds\" must be an object");
            auto set = [&](const char* key, auto& field) {
                if (const Json* v = find(*j, key)) field = static_cast<std::remove_reference_t<decltype(field)>>(unsigned_field(*v, key));
            };
            set("max_theta", b.max_theta);
            set("max_x", b.max_x);
            set("models", b.models);
            set("losses", b.losses);
            set("thm1_exhaustive_k", b.thm1_exhaustive_k);
            set("thm1_sample_k", b.thm1_sample_k);
            set("thm1_samples", b.thm1_samples);
            set("thm3_tests", b.thm3_tests);
            set("thm4_losses", b.thm4_losses);
            set("eq1_pairs", b.eq1_pairs);
            set("proper_instances", b.proper_instances);
        }
        if (opt_.max_theta) {
            b.max_theta = *opt_.max_theta;
            b.thm1_sample_k = std::min(b.thm1_sample_k, b.max_theta);
            b.thm1_exhaustive_k = std::min(b.thm1_exhaustive_k, b.max_theta);
        }
        const auto summary = verify_theorems(b, seed());
        Json suites = Json::array();
        for (const auto& s : summary.suites) {
            suites.push_back(Json{{"name", s.name},
                                  {"checks", s.checks},
                                  {"failures", s.failures},
                                  {"passed", s.passed()},
                                  {"stats", s.stats},
                                  {"failure_samples", s.failure_samples}});
        }
        report_["seed"] = summary.seed;
        report_["bounds"] = Json{{"max_theta", b.max_theta},
                                 {"max_x", b.max_x},
                                 {"models", b.models},
                                 {"losses", b.losses},
                                 {"thm1_exhaustive_k", b.thm1_exhaustive_k},
                                 {"thm1_sample_k", b.thm1_sample_k},
                                 {"thm1_samples", b.thm1_samples},
                                 {"thm3_tests", b.thm3_tests},
                                 {"thm4_losses", b.thm4_losses},
                                 {"eq1_pairs", b.eq1_pairs},
                                 {"proper_instances", b.proper_instances}};
        report_["suites"] = suites;
        report_["passed"] = summary.passed();
        return summary.passed() ? 0 : 1;
    }
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotCoherent:
        case ErrorKind::ReplayFailed:
            return 1;
        default:
            return 2;
    }
}

}  // namespace

std::string_view to_string(Task t) noexcept {
    for (const auto& [task, name] : kTaskNames)
        if (task == t) return name;
    return "unknown";
}

std::optional<Task> parse_task(std::string_view s) noexcept {
    for (const auto& [task, name] : kTaskNames)
        if (name == s) return task;
    return std::nullopt;
}

RunResult run_scenario(const Json& scenario, const RunOptions& options) {
    try {
        return Runner(scenario, options).run();
    } catch (const Error& e) {
        return RunResult{exit_code_for(e.kind()), error_report(e.kind(), bare_message(e)), std::nullopt};
    } catch (const Json::exception& e) {
        return RunResult{2, error_report(ErrorKind::ParseError, e.what()), std::nullopt};
    }
}

RunResult run_scenario_file(const std::filesystem::path& path, RunOptions options) {
    Json scenario;
    try {
        scenario = read_json_file(path);
    } catch (const Error& e) {
        return RunResult{2, error_report(e.kind(), bare_message(e)), std::nullopt};
    }
    options.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return run_scenario(scenario, options);
}

namespace {

void render_verdicts(std::ostringstream& out, const Json& verdicts) {
    std::size_t current = static_cast<std::size_t>(-1);
    for (const auto& v : verdicts) {
        const auto x = v["x"].get<std::size_t>();
        if (x != current) {
            out << "x = " << x << '\n';
            current = x;
        }
        std::string members;
        for (const auto& i : v["hypothesis"]) members += (members.empty() ? "" : ",") + std::to_string(i.get<unsigned>());
        out << "  {" << members << "}  " << v["verdict"].get<std::string>() << '\n';
    }
}

}  // namespace

std::string render_pretty(const Json& report) {
    std::ostringstream out;
    if (report.contains("error")) {
        out << "error (" << report["error"]["kind"].get<std::string>() << "): " << report["error"]["message"].get<std::string>()
            << '\n';
        return out.str();
    }
    const std::string task = report.value("task", "");
    out << "task: " << task << '\n';
    if (report.contains("theta_size")) out << "theta size: " << report["theta_size"] << '\n';
    if (report.contains("x_size")) out << "observations: " << report["x_size"] << '\n';
    if (task == "test") {
        render_verdicts(out, report["verdicts"]);
    } else if (task == "coherence" || (task == "witness" && report.contains("coherence"))) {
        const auto& c = report["coherence"];
        out << "coherent: " << (c["coherent"].get<bool>() ? "yes" : "no") << (c["exhaustive"].get<bool>() ? "" : " (sampled)")
            << '\n';
        for (const auto& [axiom, count] : c["counts"].items()) out << "  " << axiom << ": " << count << '\n';
    } else if (task == "certify-gfbst") {
        out << "region based: " << (report["region_based"].get<bool>() ? "yes" : "no") << '\n';
        out << "gfbst: " << (report["gfbst"].get<bool>() ? "yes" : "no") << '\n';
    } else if (task == "verify-theorems") {
        out << "seed: " << report["seed"] << '\n';
        for (const auto& s : report["suites"]) {
            out << "  " << s["name"].get<std::string>() << ": " << s["checks"] << " checks, " << s["failures"] << " failures\n";
            for (const auto& f : s["failure_samples"]) out << "    " << f.get<std::string>() << '\n';
        }
        out << (report["passed"].get<bool>() ? "all suites passed" : "FAILURES") << '\n';
    } else {
        const std::string key = task == "witness" ? "witness" : "counterexample";
        out << report[key].dump(2) << '\n';
    }
    return out.str();
}

}  // namespace triadic
