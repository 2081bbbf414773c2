#pragma once

#include <string>
#include <vector>

#include "cmslab/grid.hpp"
#include "cmslab/surface.hpp"

namespace cmslab {

/// Row-tolerance plumbing: every check belongs to one of two base classes
/// (first-derivative identities and third-derivative identities) and scales
/// it by a fixed multiplier in {0.01, 1, 10} reflecting how many noisy
/// contractions the residual stacks on top of the base operation.
struct SuiteTolerances {
    double first = 1e-10;
    double third = 1e-8;
};

struct ReportRow {
    std::string id;
    std::string description;
    std::string anchor;   // formula text the residual probes
    double time = 0.0;
    double max_abs = 0.0;
    double rms = 0.0;
    double node_u = 0.0;  // node of the worst residual
    double node_v = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    long samples = 0;     // nodes that contributed
    long skipped = 0;     // nodes where evaluation was impossible
};

struct SuiteResult {
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;
    bool pass = true;
};

/// Sweeps the identity catalog over the grid at every requested time slice.
/// One report row per identity per time slice, deterministic ordering and
/// deterministic values: per-grid-row partials are reduced in a fixed order,
/// so the result is bit-identical for any worker count.
SuiteResult run_suite(const SurfaceSpec& spec, const GridSpec& grid,
                      const SuiteTolerances& tol, int workers = 1);

/// Structured report: surface echo, grid, tolerances, environment stamp,
/// per-check rows, notes, overall verdict. 17 significant digits, no
/// timestamps — identical inputs produce identical bytes.
std::string report_json(const SurfaceSpec& spec, const GridSpec& grid,
                        const SuiteTolerances& tol, const SuiteResult& result);

/// The same rows as a plain-text table.
std::string report_table(const SuiteResult& result);

}  // namespace cmslab
