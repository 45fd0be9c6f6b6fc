#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "bfb/checks.hpp"
#include "bfb/diagnostics.hpp"
#include "bfb/presets.hpp"
#include "bfb/solver.hpp"

namespace bfb::config {

using json = nlohmann::json;

// Parsers for the JSON config vocabulary. All throw ConfigError with a field
// path on malformed input.
LegendreKernel parse_kernel(const json& spec);
KernelSchedule parse_schedule(const json& spec, const json* kernel_spec);
StepSchedule parse_steps(const json& spec);
SetValuedMap parse_set_map(const json& spec, std::size_t d);
MonotoneMap parse_monotone_map(const json& spec, std::size_t d);
ConditionCertificate parse_certificate(const json& spec);
Vector parse_vector(const json& spec);
BoxSampler parse_region(const json& spec, std::size_t default_d);

// Builds the full problem from a run config (either a "problem" document or
// a "preset" document; exactly one must be present).
ProblemSpec parse_problem(const json& cfg);
StopRule parse_stop(const json& cfg);

// FNV-1a over the canonical dump; ties a report to the config it came from.
std::uint64_t fingerprint(const json& cfg);

struct RunOutcome {
    IterationTrace trace;
    DiagnosticsReport diagnostics;
    json report;
    int exit_code = 0;  // 0 converged, 2 max_iter, 1 error
};

// Validate, run, diagnose, and assemble the report document (no timestamp;
// the CLI stamps files at write time so reports stay comparable).
RunOutcome execute_run(const json& cfg);

struct CheckOutcome {
    json report;
    int exit_code = 0;  // 0 all pass, 3 falsified, 1 error
};

// Runs the "checks" array of a check config with the config's seed.
CheckOutcome execute_checks(const json& cfg);

// Re-run diagnostics on a stored trace, with constants recovered from cfg.
json rediagnose(const json& cfg, IterationTrace trace);

json report_from_trace(const IterationTrace& t, const DiagnosticsReport& d,
                       std::uint64_t fingerprint);

}  // namespace bfb::config
