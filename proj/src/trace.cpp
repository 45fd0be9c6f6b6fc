#include "bfb/trace.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "bfb/errors.hpp"

namespace bfb {

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::converged_step_tol: return "converged_step_tol";
        case RunStatus::converged_residual: return "converged_residual";
        case RunStatus::max_iter: return "max_iter";
        case RunStatus::error: return "error";
    }
    return "unknown";
}

const Vector& IterationTrace::final_iterate() const {
    for (auto it = iterates.rbegin(); it != iterates.rend(); ++it)
        if (it->has_value()) return **it;
    throw ContractViolation("trace: no recorded iterate");
}

double IterationTrace::final_residual() const {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        if (std::isfinite(it->residual)) return it->residual;
    return TraceRow::nan;
}

namespace {

void put(std::ostream& os, double v, bool lead_comma = true) {
    if (lead_comma) os << ',';
    if (std::isnan(v)) return;  // empty cell
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

double cell(const std::string& s) {
    if (s.empty()) return TraceRow::nan;
    return std::strtod(s.c_str(), nullptr);
}

}  // namespace

void write_trace_csv(const IterationTrace& t, std::ostream& os) {
    os << "n,gamma,d_step_fwd,d_step_bwd,d_to_z,delta,theta_qty,obj,gap,residual,eta,v_term,b_pair";
    for (std::size_t k = 0; k < t.dim; ++k) os << ",x" << k;
    os << '\n';
    for (std::size_t n = 0; n < t.rows.size(); ++n) {
        const TraceRow& r = t.rows[n];
        os << n;
        put(os, r.gamma);
        put(os, r.d_step_fwd);
        put(os, r.d_step_bwd);
        put(os, r.d_to_z);
        put(os, r.delta);
        put(os, r.theta_qty);
        put(os, r.obj);
        put(os, r.gap);
        put(os, r.residual);
        put(os, r.eta);
        put(os, r.v_term);
        put(os, r.b_pair);
        if (n < t.iterates.size() && t.iterates[n].has_value()) {
            for (std::size_t k = 0; k < t.dim; ++k) put(os, (*t.iterates[n])[k]);
        } else {
            for (std::size_t k = 0; k < t.dim; ++k) os << ',';
        }
        os << '\n';
    }
}

IterationTrace read_trace_csv(std::istream& is) {
    IterationTrace t;
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("trace csv: empty file");
    // count iterate columns from the header
    std::size_t dim = 0;
    {
        std::stringstream hs(line);
        std::string col;
        while (std::getline(hs, col, ',')) {
            if (col.size() >= 2 && col[0] == 'x' && std::isdigit(static_cast<unsigned char>(col[1])))
                ++dim;
        }
    }
    t.dim = dim;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string col;
        std::vector<std::string> cells;
        while (std::getline(ls, col, ',')) cells.push_back(col);
        cells.resize(13 + dim);
        TraceRow r;
        r.gamma = cell(cells[1]);
        r.d_step_fwd = cell(cells[2]);
        r.d_step_bwd = cell(cells[3]);
        r.d_to_z = cell(cells[4]);
        r.delta = cell(cells[5]);
        r.theta_qty = cell(cells[6]);
        r.obj = cell(cells[7]);
        r.gap = cell(cells[8]);
        r.residual = cell(cells[9]);
        r.eta = cell(cells[10]);
        r.v_term = cell(cells[11]);
        r.b_pair = cell(cells[12]);
        t.rows.push_back(r);
        bool have_x = dim > 0 && !cells[13].empty();
        if (have_x) {
            std::vector<double> x(dim);
            for (std::size_t k = 0; k < dim; ++k) x[k] = cell(cells[13 + k]);
            t.iterates.push_back(Vector(std::move(x)));
        } else {
            t.iterates.push_back(std::nullopt);
        }
        t.x_stars.push_back(std::nullopt);
    }
    t.has_solution = false;
    for (const auto& r : t.rows)
        if (std::isfinite(r.d_to_z)) t.has_solution = true;
    t.minimization = false;
    for (const auto& r : t.rows)
        if (std::isfinite(r.obj)) t.minimization = true;
    return t;
}

}  // namespace bfb
