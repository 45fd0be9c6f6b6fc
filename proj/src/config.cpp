#include "bfb/config.hpp"

#include <cerrno>
#include <cmath>
#include <limits>

namespace bfb::config {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

double num(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number()) fail(std::string(field) + " must be a number");
    return j[field].get<double>();
}

double num_or(const json& j, const char* field, double dflt) {
    if (!j.contains(field)) return dflt;
    if (!j[field].is_number()) fail(std::string(field) + " must be a number");
    return j[field].get<double>();
}

// bound values admit "inf" / "-inf" strings since JSON has no infinity
double bound(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    fail("bounds must be numbers or \"inf\"/\"-inf\"");
}

std::size_t count(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_unsigned())
        fail(std::string(field) + " must be a nonnegative integer");
    return j[field].get<std::size_t>();
}

std::string str(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string()) fail(std::string(field) + " must be a string");
    return j[field].get<std::string>();
}

std::vector<double> num_list(const json& j) {
    if (!j.is_array()) fail("expected an array of numbers");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) fail("expected an array of numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

std::vector<double> bound_list(const json& j) {
    if (!j.is_array()) fail("expected an array of bounds");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(bound(e));
    return v;
}

}  // namespace

Vector parse_vector(const json& spec) { return Vector(num_list(spec)); }

LegendreKernel parse_kernel(const json& spec) {
    if (!spec.is_object()) fail("kernel spec must be an object");
    std::string kind = str(spec, "kind");
    if (kind == "quadratic") {
        if (spec.contains("matrix")) {
            std::vector<double> m = num_list(spec["matrix"]);
            std::size_t d = count(spec, "d");
            return make_quadratic_metric(d, m);
        }
        if (spec.contains("diag")) return make_quadratic_metric_diag(num_list(spec["diag"]));
        std::size_t d = count(spec, "d");
        return make_quadratic_identity(d, num_or(spec, "scale", 1.0));
    }
    if (kind == "entropy") return make_boltzmann_shannon(count(spec, "d"));
    if (kind == "power_norm")
        return make_power_norm(num(spec, "p"), num_or(spec, "chi", 1.0), count(spec, "d"));
    if (kind == "product") {
        if (!spec.contains("z") || !spec.contains("xi")) fail("product kernel needs z and xi parts");
        return make_product_kernel(parse_kernel(spec["z"]), parse_kernel(spec["xi"]),
                                   num_or(spec, "offset", 0.0));
    }
    fail("unknown kernel kind '" + kind + "'");
}

namespace {

ChiSequence parse_chi(const json& spec) {
    ChiSequence chi;
    std::string kind = str(spec, "kind");
    if (kind == "one_plus_geometric") {
        chi.form = ChiSequence::Form::one_plus_geometric;
        chi.coeff = num(spec, "coeff");
        chi.ratio = num(spec, "ratio");
    } else if (kind == "list") {
        chi.form = ChiSequence::Form::list;
        chi.values = num_list(spec.contains("values") ? spec["values"] : json());
    } else {
        fail("unknown chi sequence kind '" + kind + "'");
    }
    return chi;
}

MetricSequence parse_metrics(const json& spec, std::size_t d) {
    MetricSequence seq;
    seq.d = d;
    std::string kind = str(spec, "kind");
    if (kind == "scaled_identity_geometric") {
        seq.form = MetricSequence::Form::scaled_identity_geometric;
        seq.coeff = num(spec, "coeff");
        seq.ratio = num(spec, "ratio");
    } else if (kind == "diag_list") {
        seq.form = MetricSequence::Form::diag_list;
        if (!spec.contains("diags") || !spec["diags"].is_array()) fail("diag_list needs diags");
        for (const auto& e : spec["diags"]) seq.diags.push_back(num_list(e));
    } else {
        fail("unknown metric sequence kind '" + kind + "'");
    }
    return seq;
}

std::optional<std::vector<double>> parse_eta(const json& spec) {
    if (!spec.contains("eta")) return std::nullopt;
    return num_list(spec["eta"]);
}

}  // namespace

KernelSchedule parse_schedule(const json& spec, const json* kernel_spec) {
    if (spec.is_null() || (spec.is_object() && spec.empty())) {
        if (!kernel_spec) fail("constant schedule needs a kernel");
        return KernelSchedule::constant(parse_kernel(*kernel_spec));
    }
    std::string rule = str(spec, "rule");
    if (rule == "constant") {
        if (!kernel_spec) fail("constant schedule needs a kernel");
        return KernelSchedule::constant(parse_kernel(*kernel_spec), num_or(spec, "alpha", 1.0));
    }
    if (rule == "chi")
        return KernelSchedule::power_chi(num(spec, "p"), count(spec, "d"), parse_chi(spec["chi"]),
                                         num_or(spec, "alpha", 1.0), parse_eta(spec));
    if (rule == "product_chi")
        return KernelSchedule::product_chi(num(spec, "p"), count(spec, "d1"),
                                           parse_chi(spec["chi"]), num_or(spec, "offset", 1.0),
                                           num_or(spec, "alpha", 1.0));
    if (rule == "metric")
        return KernelSchedule::metric(parse_metrics(spec["metrics"], count(spec, "d")),
                                      num_or(spec, "alpha", 1.0), parse_eta(spec));
    fail("unknown schedule rule '" + rule + "'");
}

StepSchedule parse_steps(const json& spec) {
    if (!spec.is_object()) fail("steps spec must be an object");
    std::string kind = str(spec, "kind");
    double eps = num_or(spec, "eps", 0.5);
    if (kind == "constant") return StepSchedule::constant(num(spec, "gamma"), eps);
    if (kind == "list") return StepSchedule::list(num_list(spec["values"]), eps);
    if (kind == "harmonic_like")
        return StepSchedule::decreasing_to(num(spec, "gamma_inf"), num(spec, "gamma0"), eps);
    fail("unknown steps kind '" + kind + "'");
}

namespace {

ScalarGraph parse_graph(const json& spec) {
    std::string kind = str(spec, "kind");
    if (kind == "zero") return {ScalarGraph::Kind::zero, 0.0, 0.0};
    if (kind == "constant") return {ScalarGraph::Kind::constant, num(spec, "c"), 0.0};
    if (kind == "linear")
        return {ScalarGraph::Kind::linear, num(spec, "slope"), num_or(spec, "intercept", 0.0)};
    if (kind == "abs") return {ScalarGraph::Kind::abs_subdiff, num(spec, "lambda"), 0.0};
    if (kind == "interval")
        return {ScalarGraph::Kind::interval_cone, bound(spec.at("lo")), bound(spec.at("hi"))};
    if (kind == "sign_shift") return {ScalarGraph::Kind::sign_shift, num(spec, "center"), 0.0};
    if (kind == "cubic") return {ScalarGraph::Kind::cubic, num_or(spec, "scale", 1.0), 0.0};
    fail("unknown scalar graph kind '" + kind + "'");
}

}  // namespace

SetValuedMap parse_set_map(const json& spec, std::size_t d) {
    if (!spec.is_object()) fail("operator spec must be an object");
    std::string kind = str(spec, "kind");
    if (kind == "zero") return zero_set_map(d);
    if (kind == "constant") return constant_set_map(DualVector(num_list(spec["c"])));
    if (kind == "l1") return l1_subdifferential(d, num(spec, "lambda"));
    if (kind == "box") return box_normal_cone(bound_list(spec["lo"]), bound_list(spec["hi"]));
    if (kind == "linear")
        return linear_set_map(d, num_list(spec["matrix"]),
                              spec.contains("offset") ? num_list(spec["offset"])
                                                      : std::vector<double>{});
    if (kind == "simplex") {
        bool proj = spec.contains("projection") && spec["projection"].get<bool>();
        return simplex_normal_cone(d, proj);
    }
    if (kind == "halfspace")
        return halfspace_normal_cone(num_list(spec["normal"]), num(spec, "offset"));
    if (kind == "separable") {
        std::vector<ScalarGraph> graphs;
        for (const auto& g : spec.at("graphs")) {
            ScalarGraph sg = parse_graph(g);
            std::size_t n = g.contains("count") ? g["count"].get<std::size_t>() : 1;
            for (std::size_t i = 0; i < n; ++i) graphs.push_back(sg);
        }
        return separable_map(std::move(graphs));
    }
    fail("unknown operator kind '" + kind + "'");
}

MonotoneMap parse_monotone_map(const json& spec, std::size_t d) {
    if (!spec.is_object()) fail("operator spec must be an object");
    std::string kind = str(spec, "kind");
    if (kind == "zero") return zero_map(d);
    if (kind == "identity") return scaled_identity_map(d, num_or(spec, "scale", 1.0));
    if (kind == "translation_gradient")
        return translation_gradient_map(parse_vector(spec["b"]), num_or(spec, "scale", 1.0));
    if (kind == "constant") return constant_map(DualVector(num_list(spec["c"])));
    if (kind == "linear") {
        std::vector<double> offset =
            spec.contains("offset") ? num_list(spec["offset"]) : std::vector<double>{};
        if (spec.contains("diag")) return linear_map_diag(num_list(spec["diag"]), offset);
        return linear_map_dense(d, num_list(spec["matrix"]), offset);
    }
    if (kind == "power_gradient") {
        std::size_t lo = spec.contains("active_lo") ? spec["active_lo"].get<std::size_t>() : 0;
        std::size_t hi = spec.contains("active_hi") ? spec["active_hi"].get<std::size_t>() : d;
        return power_gradient_map(d, num(spec, "q"), num_or(spec, "scale", 1.0), lo, hi);
    }
    if (kind == "rotation2d") return rotation2d_map();
    fail("unknown operator kind '" + kind + "'");
}

ConditionCertificate parse_certificate(const json& spec) {
    if (!spec.is_object()) fail("certificate spec must be an object");
    if (!spec.contains("route")) {
        return explicit_certificate(num(spec, "kappa"), num_or(spec, "delta1", 0.0),
                                    num_or(spec, "delta2", 0.0));
    }
    auto route = route_from_name(str(spec, "route"));
    if (!route) fail("unknown certificate route '" + spec["route"].get<std::string>() + "'");
    CertificateAux aux;
    if (spec.contains("alpha")) aux.alpha = num(spec, "alpha");
    if (spec.contains("beta")) aux.beta = num(spec, "beta");
    if (spec.contains("mu")) aux.mu = num(spec, "mu");
    if (spec.contains("nu")) aux.nu = num(spec, "nu");
    if (spec.contains("eps")) aux.eps = num(spec, "eps");
    if (spec.contains("kappa")) aux.kappa = num(spec, "kappa");
    if (spec.contains("delta1")) aux.delta1 = num(spec, "delta1");
    return derive_certificate(*route, aux);
}

BoxSampler parse_region(const json& spec, std::size_t default_d) {
    if (spec.is_null()) fail("region spec required");
    std::size_t d = spec.contains("d") ? count(spec, "d") : default_d;
    std::vector<double> lo, hi;
    if (spec.contains("lo") && spec["lo"].is_array()) {
        lo = num_list(spec["lo"]);
        hi = num_list(spec["hi"]);
    } else {
        lo.assign(d, num_or(spec, "lo", -3.0));
        hi.assign(d, num_or(spec, "hi", 3.0));
    }
    bool log_mix = !spec.contains("log_mix") || spec["log_mix"].get<bool>();
    return BoxSampler{SampleBox{std::move(lo), std::move(hi)}, log_mix};
}

// ---------------------------------------------------------------------------
// Minimization structure: evaluators plus the derived A = @phi and B = grad psi.

namespace {

struct PhiParts {
    std::function<double(const Vector&)> eval;
    SetValuedMap subdifferential;
};

PhiParts parse_phi(const json& spec, std::size_t d) {
    std::string kind = str(spec, "kind");
    if (kind == "zero")
        return {[](const Vector&) { return 0.0; }, zero_set_map(d)};
    if (kind == "l1") {
        double lambda = num(spec, "lambda");
        return {[lambda](const Vector& x) { return lambda * norm_p(x, 1.0); },
                l1_subdifferential(d, lambda)};
    }
    if (kind == "indicator_box") {
        std::vector<double> lo = bound_list(spec["lo"]);
        std::vector<double> hi = bound_list(spec["hi"]);
        return {[lo, hi](const Vector& x) {
                    for (std::size_t k = 0; k < x.dim(); ++k)
                        if (x[k] < lo[k] - 1e-8 || x[k] > hi[k] + 1e-8) return kInf;
                    return 0.0;
                },
                box_normal_cone(lo, hi)};
    }
    if (kind == "indicator_simplex") {
        bool proj = spec.contains("projection") && spec["projection"].get<bool>();
        return {[](const Vector& x) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < x.dim(); ++k) {
                        if (x[k] < -1e-12) return kInf;
                        s += x[k];
                    }
                    return std::fabs(s - 1.0) <= 1e-8 ? 0.0 : kInf;
                },
                simplex_normal_cone(d, proj)};
    }
    if (kind == "linear") {
        DualVector c(num_list(spec["c"]));
        return {[c](const Vector& x) { return pair(c, x); }, constant_set_map(c)};
    }
    fail("unknown phi kind '" + kind + "'");
}

struct PsiParts {
    std::function<double(const Vector&)> eval;
    MonotoneMap gradient;
};

PsiParts parse_psi(const json& spec, std::size_t d) {
    std::string kind = str(spec, "kind");
    if (kind == "zero")
        return {[](const Vector&) { return 0.0; }, zero_map(d)};
    if (kind == "quadratic_distance") {
        Vector b = parse_vector(spec["b"]);
        double s = num_or(spec, "scale", 1.0);
        return {[b, s](const Vector& x) {
                    double v = norm2(sub(x, b));
                    return 0.5 * s * v * v;
                },
                translation_gradient_map(b, s)};
    }
    if (kind == "linear") {
        DualVector c(num_list(spec["c"]));
        return {[c](const Vector& x) { return pair(c, x); }, constant_map(c)};
    }
    if (kind == "power") {
        double p = num(spec, "p");
        double s = num_or(spec, "scale", 1.0);
        MonotoneMap grad = power_gradient_map(d, p, s, 0, d);
        return {[grad](const Vector& x) { return grad.potential(x); }, grad};
    }
    fail("unknown psi kind '" + kind + "'");
}

ProblemSpec build_problem_document(const json& p) {
    ProblemSpec spec;
    if (!p.contains("x0")) fail("problem needs x0");
    spec.x0 = parse_vector(p["x0"]);
    std::size_t d = spec.x0.dim();

    const json* kernel_spec = p.contains("kernel") ? &p["kernel"] : nullptr;
    spec.schedule = parse_schedule(p.contains("schedule") ? p["schedule"] : json(), kernel_spec);
    spec.steps = parse_steps(p.at("steps"));

    bool has_min = p.contains("minimization");
    if (has_min) {
        if (p.contains("A") || p.contains("B"))
            fail("with a minimization block, A and B are derived from phi and psi");
        const json& m = p["minimization"];
        PhiParts phi = parse_phi(m.at("phi"), d);
        PsiParts psi = parse_psi(m.at("psi"), d);
        spec.A = phi.subdifferential;
        spec.B = psi.gradient;
        MinimizationStructure ms;
        ms.phi = phi.eval;
        ms.psi = psi.eval;
        if (m.contains("known_min")) ms.known_min = num(m, "known_min");
        spec.minimization = std::move(ms);
    } else {
        spec.A = parse_set_map(p.at("A"), d);
        spec.B = parse_monotone_map(p.at("B"), d);
    }

    spec.cert = parse_certificate(p.at("certificate"));
    if (p.contains("known_solution")) spec.known_solution = parse_vector(p["known_solution"]);
    std::string engine = p.contains("engine") ? p["engine"].get<std::string>()
                                              : (has_min ? "minimization" : "inclusion");
    if (engine == "minimization") {
        if (!has_min) fail("engine 'minimization' needs a minimization block");
        spec.engine = Engine::minimization;
    } else if (engine == "inclusion") {
        spec.engine = Engine::inclusion;
    } else {
        fail("unknown engine '" + engine + "'");
    }
    spec.name = p.contains("name") ? p["name"].get<std::string>() : "problem";
    return spec;
}

ProblemSpec build_preset_document(const json& p) {
    std::string name = str(p, "name");
    Vector x0 = parse_vector(p.at("x0"));
    std::size_t d = x0.dim();
    ProblemSpec spec;
    if (name == "proximal_point") {
        spec = preset_proximal_point(parse_set_map(p.at("A"), d), parse_kernel(p.at("kernel")),
                                     parse_steps(p.at("steps")), x0);
    } else if (name == "classical_fb") {
        spec = preset_classical_fb(parse_set_map(p.at("A"), d), parse_monotone_map(p.at("B"), d),
                                   num(p, "beta"), num(p, "eps"), parse_steps(p.at("steps")), x0);
    } else if (name == "variable_metric") {
        spec = preset_variable_metric(parse_set_map(p.at("A"), d),
                                      parse_monotone_map(p.at("B"), d),
                                      parse_metrics(p.at("metrics"), d), num(p, "alpha"),
                                      num(p, "beta"), num(p, "eps"), parse_steps(p.at("steps")), x0);
    } else if (name == "renaud_cohen") {
        spec = preset_renaud_cohen(parse_set_map(p.at("A"), d), parse_monotone_map(p.at("B"), d),
                                   parse_kernel(p.at("kernel")), num(p, "beta"), num(p, "gamma"),
                                   x0);
    } else if (name == "example56") {
        SetValuedMap a;  // invalid handle selects the preset's default graph
        if (p.contains("A")) a = parse_set_map(p["A"], d);
        spec = preset_example56(num(p, "p"), parse_chi(p.at("chi")), d - 1, a, x0,
                                parse_steps(p.at("steps")));
    } else if (name == "strong") {
        spec = preset_strong(parse_set_map(p.at("A"), d), parse_monotone_map(p.at("B"), d),
                             parse_kernel(p.at("kernel")), num(p, "kappa"),
                             parse_steps(p.at("steps")), x0);
    } else {
        fail("unknown preset '" + name + "'");
    }
    if (p.contains("known_solution")) spec.known_solution = parse_vector(p["known_solution"]);
    if (p.contains("minimization")) {
        const json& m = p["minimization"];
        PhiParts phi = parse_phi(m.at("phi"), d);
        PsiParts psi = parse_psi(m.at("psi"), d);
        MinimizationStructure ms;
        ms.phi = phi.eval;
        ms.psi = psi.eval;
        if (m.contains("known_min")) ms.known_min = num(m, "known_min");
        spec.minimization = std::move(ms);
    }
    return spec;
}

}  // namespace

ProblemSpec parse_problem(const json& cfg) {
    bool has_problem = cfg.contains("problem");
    bool has_preset = cfg.contains("preset");
    if (has_problem == has_preset) fail("exactly one of 'problem' or 'preset' must be present");
    return has_problem ? build_problem_document(cfg["problem"])
                       : build_preset_document(cfg["preset"]);
}

StopRule parse_stop(const json& cfg) {
    StopRule stop;
    if (!cfg.contains("stop")) return stop;
    const json& s = cfg["stop"];
    if (s.contains("max_iter")) stop.max_iter = count(s, "max_iter");
    if (s.contains("tol_step")) stop.tol_step = num(s, "tol_step");
    if (s.contains("tol_residual")) stop.tol_residual = num(s, "tol_residual");
    if (s.contains("resolvent_tol")) stop.resolvent_tol = num(s, "resolvent_tol");
    if (s.contains("dense_cap")) stop.dense_cap = count(s, "dense_cap");
    return stop;
}

std::uint64_t fingerprint(const json& cfg) {
    std::string s = cfg.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Report assembly

namespace {

json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    json points = json::array();
    for (const auto& v : w->points) points.push_back(v.coords());
    return json{{"points", points}, {"sample_index", w->sample_index}, {"label", w->label}};
}

json check_report_json(const CheckReport& r) {
    return json{{"name", r.name},       {"pass", r.pass},
                {"worst_slack", r.worst_slack}, {"tol", r.tol},
                {"samples", r.samples}, {"witness", witness_json(r.witness)},
                {"detail", r.detail}};
}

json verdict_json(const Verdict& v) {
    json metrics = json::object();
    for (const auto& [k, val] : v.metrics) {
        if (std::isfinite(val))
            metrics[k] = val;
        else
            metrics[k] = val > 0 ? "inf" : (val < 0 ? "-inf" : "nan");
    }
    return json{{"pass", v.pass},
                {"applicable", v.applicable},
                {"metrics", metrics},
                {"detail", v.detail}};
}

json validation_json(const ValidationReport& v) {
    json items = json::array();
    for (const auto& item : v.items)
        items.push_back(json{{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
    return json{{"pass", v.pass}, {"items", items}, {"notes", v.notes}};
}

double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace

json report_from_trace(const IterationTrace& t, const DiagnosticsReport& d,
                       std::uint64_t fingerprint) {
    json checks = json::object();
    for (const auto& v : d.verdicts) checks[v.check] = verdict_json(v);
    json final = json::object();
    final["residual"] = finite_or_zero(t.final_residual());
    if (!t.rows.empty()) {
        const TraceRow& last = t.rows.back();
        if (std::isfinite(last.obj)) final["obj"] = last.obj;
        if (std::isfinite(last.gap)) final["gap"] = last.gap;
        if (std::isfinite(last.d_to_z)) final["d_to_z"] = last.d_to_z;
    }
    try {
        final["x"] = t.final_iterate().coords();
    } catch (const std::exception&) {
        // trace carried no recorded iterate
    }
    return json{{"format", "bfb-report-v1"},
                {"config_fingerprint", fingerprint},
                {"status", run_status_name(t.status)},
                {"error", t.error_message},
                {"iterations", t.iterations()},
                {"certified", t.certified},
                {"objective_monotone_observed", t.objective_monotone_observed},
                {"constants",
                 json{{"kappa", t.kappa},
                      {"alpha", t.alpha},
                      {"delta1", t.delta1},
                      {"delta2", t.delta2},
                      {"eps_trace", t.eps_trace},
                      {"eta_sum_bound", t.eta_sum_bound}}},
                {"validation", validation_json(t.validation)},
                {"final", final},
                {"checks", checks},
                {"all_checks_pass", d.all_pass()}};
}

RunOutcome execute_run(const json& cfg) {
    RunOutcome out;
    ProblemSpec spec = parse_problem(cfg);
    StopRule stop = parse_stop(cfg);
    bool force = cfg.contains("force") && cfg["force"].get<bool>();
    double residual_tol = num_or(cfg, "residual_tol", 1e-6);

    out.trace = (spec.engine == Engine::minimization) ? run_minimization(spec, stop, force)
                                                      : run(spec, stop, force);
    out.trace.fingerprint = fingerprint(cfg);
    out.diagnostics = run_all_diagnostics(out.trace, residual_tol);
    out.report = report_from_trace(out.trace, out.diagnostics, out.trace.fingerprint);
    switch (out.trace.status) {
        case RunStatus::converged_step_tol:
        case RunStatus::converged_residual:
            out.exit_code = 0;
            break;
        case RunStatus::max_iter:
            out.exit_code = 2;
            break;
        case RunStatus::error:
            out.exit_code = 1;
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Condition-check configs

namespace {

CheckReport dispatch_check(const json& c, std::uint64_t seed) {
    std::string type = str(c, "type");
    std::size_t samples = c.contains("samples") ? count(c, "samples") : 10000;

    if (type == "cocoercive" || type == "lipschitz" || type == "angle_bounded" ||
        type == "descent_pair") {
        // operators on a plain region
        std::size_t d = c.contains("d") ? count(c, "d") : 0;
        if (d == 0 && c.contains("region") && c["region"].contains("d"))
            d = c["region"]["d"].get<std::size_t>();
        if (d == 0) fail("check needs a dimension (d or region.d)");
        MonotoneMap B = parse_monotone_map(c.at("B"), d);
        BoxSampler region = c.contains("region") ? parse_region(c["region"], d)
                                                 : BoxSampler::cube(d, -3.0, 3.0);
        if (type == "cocoercive") return check_cocoercive(B, num(c, "beta"), region, samples, seed);
        if (type == "lipschitz") return check_lipschitz(B, num(c, "nu"), region, samples, seed);
        if (type == "angle_bounded")
            return check_angle_bounded(B, num(c, "beta"), num(c, "nu"), region, samples, seed);
        LegendreKernel f = parse_kernel(c.at("kernel"));
        return check_descent_pair(B, f, num(c, "kappa"), region, samples, seed);
    }
    if (type == "descent_triple") {
        LegendreKernel f = parse_kernel(c.at("kernel"));
        std::size_t d = f.dim();
        MonotoneMap B = parse_monotone_map(c.at("B"), d);
        BoxSampler region = c.contains("region") ? parse_region(c["region"], d)
                                                 : BoxSampler::cube(d, -3.0, 3.0);
        std::vector<Vector> s_points;
        for (const auto& z : c.at("s_points")) s_points.push_back(parse_vector(z));
        return check_descent_triple(B, f, num(c, "kappa"), region, s_points, samples, seed);
    }
    if (type == "strong_monotone" || type == "renaud_cohen") {
        std::size_t d = count(c, "d");
        SetValuedMap A = parse_set_map(c.at("A"), d);
        MonotoneMap B = parse_monotone_map(c.at("B"), d);
        LegendreKernel f = c.contains("kernel") ? parse_kernel(c["kernel"])
                                                : make_quadratic_identity(d);
        BoxSampler region = c.contains("region") ? parse_region(c["region"], d)
                                                 : BoxSampler::cube(d, -3.0, 3.0);
        GraphSampler a_graph = resolvent_graph_sampler(f, A, region);
        if (type == "renaud_cohen")
            return check_renaud_cohen(A, B, num(c, "beta"), a_graph, samples, seed);
        GraphSampler apb{[a_graph, B](Rng& rng) {
            auto [x, xa] = a_graph.draw(rng);
            return std::make_pair(x, add(xa, B.eval(x)));
        }};
        return check_strong_monotone(apb, num(c, "mu"), samples, seed);
    }
    if (type == "condition_main") {
        LegendreKernel f = parse_kernel(c.at("kernel"));
        std::size_t d = f.dim();
        SetValuedMap A = parse_set_map(c.at("A"), d);
        MonotoneMap B = parse_monotone_map(c.at("B"), d);
        ConditionCertificate cert = parse_certificate(c.at("certificate"));
        ConditionSampler sampler{c.contains("region") ? parse_region(c["region"], d)
                                                      : BoxSampler::cube(d, -3.0, 3.0),
                                 {},
                                 resolvent_graph_sampler(f, A, c.contains("region")
                                                                ? parse_region(c["region"], d)
                                                                : BoxSampler::cube(d, -3.0, 3.0))};
        for (const auto& z : c.at("s_points")) sampler.solution_points.push_back(parse_vector(z));
        return check_condition_main(A, B, f, cert, sampler, samples, seed);
    }
    fail("unknown check type '" + type + "'");
}

}  // namespace

CheckOutcome execute_checks(const json& cfg) {
    CheckOutcome out;
    std::uint64_t seed = cfg.contains("seed") ? cfg["seed"].get<std::uint64_t>() : 1;
    if (!cfg.contains("checks") || !cfg["checks"].is_array() || cfg["checks"].empty())
        fail("check config needs a nonempty 'checks' array");
    json checks = json::array();
    bool all = true;
    for (const auto& c : cfg["checks"]) {
        CheckReport r = dispatch_check(c, seed);
        all = all && r.pass;
        checks.push_back(check_report_json(r));
    }
    out.report = json{{"format", "bfb-check-v1"},
                      {"seed", seed},
                      {"checks", checks},
                      {"all_pass", all}};
    out.exit_code = all ? 0 : 3;
    return out;
}

json rediagnose(const json& cfg, IterationTrace trace) {
    ProblemSpec spec = parse_problem(cfg);
    trace.kappa = spec.cert.kappa;
    trace.alpha = spec.schedule.alpha();
    trace.delta1 = spec.cert.delta1;
    trace.delta2 = spec.cert.delta2;
    trace.eps_trace = std::clamp(1.0 - spec.cert.delta1 * spec.steps.sup_ratio(), 0.0, 1.0);
    trace.eta_sum_bound = spec.schedule.eta_sum_bound();
    if (spec.minimization && spec.minimization->known_min)
        trace.known_min = spec.minimization->known_min;
    double residual_tol = num_or(cfg, "residual_tol", 1e-6);
    DiagnosticsReport d = run_all_diagnostics(trace, residual_tol);
    return report_from_trace(trace, d, fingerprint(cfg));
}

}  // namespace bfb::config
