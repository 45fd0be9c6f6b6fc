// Command-line front door: run solvers, run condition checkers, evaluate
// one-shot proximity queries, sweep parameter grids, and re-run diagnostics
// on stored traces.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "bfb/config.hpp"
#include "bfb/resolvent.hpp"

namespace fs = std::filesystem;
using bfb::config::json;

namespace {

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bfb::ConfigError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bfb::ConfigError("cannot write " + path.string());
    out << content;
}

void write_report(const fs::path& path, json report) {
    report["timestamp"] = timestamp_utc();
    write_file(path, report.dump(2) + "\n");
}

int fail_with(const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    bool force = false;
    std::optional<std::size_t> max_iter;
    std::optional<double> tol;
};

void apply_overrides(json& cfg, const CommonOpts& o) {
    if (o.seed) cfg["seed"] = *o.seed;
    if (o.force) cfg["force"] = true;
    if (o.max_iter) cfg["stop"]["max_iter"] = *o.max_iter;
    if (o.tol) cfg["stop"]["tol_step"] = *o.tol;
}

int cmd_run(const CommonOpts& o) {
    json cfg;
    try {
        cfg = load_json(o.config_path);
        apply_overrides(cfg, o);
        bfb::config::RunOutcome out = bfb::config::execute_run(cfg);

        fs::path trace_path, report_path;
        if (cfg.contains("outputs")) {
            const json& op = cfg["outputs"];
            if (op.contains("trace_csv")) trace_path = op["trace_csv"].get<std::string>();
            if (op.contains("report_json")) report_path = op["report_json"].get<std::string>();
        }
        if (!o.out_dir.empty()) {
            fs::path dir(o.out_dir);
            if (trace_path.empty()) trace_path = dir / "trace.csv";
            if (report_path.empty()) report_path = dir / "report.json";
            if (trace_path.is_relative()) trace_path = dir / trace_path.filename();
            if (report_path.is_relative()) report_path = dir / report_path.filename();
        }
        if (!trace_path.empty()) {
            std::ostringstream csv;
            bfb::write_trace_csv(out.trace, csv);
            write_file(trace_path, csv.str());
        }
        if (!report_path.empty())
            write_report(report_path, out.report);
        else
            std::cout << out.report.dump(2) << "\n";
        if (out.trace.status == bfb::RunStatus::error)
            std::cerr << json{{"error", out.trace.error_message}}.dump() << "\n";
        return out.exit_code;
    } catch (const std::exception& e) {
        return fail_with(e);
    }
}

int cmd_check(const CommonOpts& o) {
    try {
        json cfg = load_json(o.config_path);
        if (o.seed) cfg["seed"] = *o.seed;
        bfb::config::CheckOutcome out = bfb::config::execute_checks(cfg);
        if (!o.out_dir.empty())
            write_report(fs::path(o.out_dir) / "check_report.json", out.report);
        else
            std::cout << out.report.dump(2) << "\n";
        return out.exit_code;
    } catch (const std::exception& e) {
        return fail_with(e);
    }
}

int cmd_prox(const std::string& kernel_spec, const std::string& map_spec, double gamma,
             const std::string& target_spec) {
    try {
        json kj = json::parse(kernel_spec);
        json tj = json::parse(target_spec);
        bfb::LegendreKernel f = bfb::config::parse_kernel(kj);
        bfb::SetValuedMap A = bfb::config::parse_set_map(json::parse(map_spec), f.dim());
        bfb::DualVector target(tj.get<std::vector<double>>());
        bfb::ResolventQuery q{f, gamma, A, target};
        bfb::ResolventResult r = bfb::resolvent_solve(q);
        std::cout << json{{"x", r.x.coords()},
                          {"a_star", r.a_star.coords()},
                          {"residual", r.residual},
                          {"iterations", r.iterations},
                          {"closed_form", r.used_closed_form}}
                         .dump(2)
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        return fail_with(e);
    }
}

int cmd_sweep(const CommonOpts& o) {
    try {
        json cfg = load_json(o.config_path);
        if (!cfg.contains("base")) throw bfb::ConfigError("sweep config needs 'base'");
        if (!cfg.contains("grid") || !cfg["grid"].is_array() || cfg["grid"].empty())
            throw bfb::ConfigError("sweep config needs a nonempty 'grid' array");
        if (o.out_dir.empty()) throw bfb::ConfigError("sweep needs --out DIR");
        if (o.seed) cfg["base"]["seed"] = *o.seed;

        // cartesian product over grid axes; every axis is a json-pointer patch
        std::vector<json> cells{cfg["base"]};
        std::vector<json> cell_params{json::object()};
        for (const auto& axis : cfg["grid"]) {
            std::string path = axis.at("path").get<std::string>();
            std::vector<json> next, next_params;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                for (const auto& value : axis.at("values")) {
                    json c = cells[i];
                    c[json::json_pointer(path)] = value;
                    json p = cell_params[i];
                    p[path] = value;
                    next.push_back(std::move(c));
                    next_params.push_back(std::move(p));
                }
            }
            cells = std::move(next);
            cell_params = std::move(next_params);
        }

        struct CellResult {
            bool validated = true;
            bool checks_pass = false;
            std::string status = "error";
            std::string error;
            json report;
        };
        std::vector<std::future<CellResult>> futures;
        futures.reserve(cells.size());
        for (const auto& cell : cells) {
            futures.push_back(std::async(std::launch::async, [cell]() {
                CellResult res;
                try {
                    bfb::config::RunOutcome out = bfb::config::execute_run(cell);
                    res.status = bfb::run_status_name(out.trace.status);
                    res.checks_pass = out.diagnostics.all_pass() &&
                                      out.trace.status != bfb::RunStatus::error;
                    res.error = out.trace.error_message;
                    res.report = out.report;
                } catch (const bfb::ContractViolation& e) {
                    res.validated = false;
                    res.error = e.what();
                } catch (const std::exception& e) {
                    res.error = e.what();
                }
                return res;
            }));
        }

        json index = json::array();
        bool ok = true;
        for (std::size_t i = 0; i < futures.size(); ++i) {
            CellResult res = futures[i].get();
            std::string report_name = "cell_" + std::to_string(i) + "_report.json";
            if (!res.report.is_null()) write_report(fs::path(o.out_dir) / report_name, res.report);
            index.push_back(json{{"id", i},
                                 {"params", cell_params[i]},
                                 {"validated", res.validated},
                                 {"status", res.status},
                                 {"checks_pass", res.checks_pass},
                                 {"error", res.error},
                                 {"report", res.report.is_null() ? json() : json(report_name)}});
            if (res.validated && !res.checks_pass) ok = false;
        }
        write_report(fs::path(o.out_dir) / "sweep_index.json",
                     json{{"format", "bfb-sweep-v1"}, {"pass", ok}, {"cells", index}});
        return ok ? 0 : 3;
    } catch (const std::exception& e) {
        return fail_with(e);
    }
}

int cmd_report(const std::string& trace_path, const CommonOpts& o) {
    try {
        json cfg = load_json(o.config_path);
        std::ifstream in(trace_path);
        if (!in) throw bfb::ConfigError("cannot open " + trace_path);
        bfb::IterationTrace trace = bfb::read_trace_csv(in);
        json report = bfb::config::rediagnose(cfg, std::move(trace));
        if (!o.out_dir.empty())
            write_report(fs::path(o.out_dir) / "report.json", report);
        else
            std::cout << report.dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        return fail_with(e);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bregman forward-backward splitting solver and condition checkers"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string kernel_spec, map_spec, target_spec, trace_path;
    double gamma = 1.0;

    auto add_common = [&](CLI::App* sub, bool needs_config = true) {
        if (needs_config)
            sub->add_option("--config", opts.config_path, "JSON config path")->required();
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--seed", opts.seed, "RNG seed override");
        sub->add_option("--max-iter", opts.max_iter, "iteration cap override");
        sub->add_option("--tol", opts.tol, "step tolerance override");
        sub->add_flag("--force", opts.force, "run despite validation failure");
    };

    CLI::App* run = app.add_subcommand("run", "solve a configured problem");
    add_common(run);
    CLI::App* check = app.add_subcommand("check", "run sampled condition checkers");
    add_common(check);
    CLI::App* prox = app.add_subcommand("prox", "one-shot backward step");
    prox->add_option("--kernel", kernel_spec, "kernel spec (JSON)")->required();
    prox->add_option("--map", map_spec, "operator spec (JSON)")->required();
    prox->add_option("--gamma", gamma, "step size")->required();
    prox->add_option("--target", target_spec, "target dual vector (JSON array)")->required();
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid");
    add_common(sweep);
    CLI::App* report = app.add_subcommand("report", "re-run diagnostics on a stored trace");
    report->add_option("--trace", trace_path, "trace CSV path")->required();
    add_common(report);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(opts);
    if (check->parsed()) return cmd_check(opts);
    if (prox->parsed()) return cmd_prox(kernel_spec, map_spec, gamma, target_spec);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (report->parsed()) return cmd_report(trace_path, opts);
    return 1;
}
