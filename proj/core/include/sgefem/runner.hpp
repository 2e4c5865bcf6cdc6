#pragma once

#include "sgefem/config.hpp"
#include "sgefem/postprocess.hpp"

#include <optional>
#include <string>

namespace sgefem {

struct CaseResult {
    CaseSummary summary;
    Mesh mesh;
    Solution solution;
    MaterialParams material;
};

// Solves one configured case in memory (mesh, assemble, solve, summarize).
CaseResult solve_case(const RunConfig& config);

// Solves and writes summary.json, profile CSVs and SVG plots into out_dir.
CaseSummary run_single(const RunConfig& config, const std::string& out_dir);

// Sweeps R/ell, M or the quadrature rule and writes convergence.csv plus an
// SVG. Failed sweep points are recorded and the study continues.
void run_convergence(const RunConfig& config, const std::string& out_dir,
                     int threads);

// Sweeps d/L for each ell/L and writes size_effect.csv plus SVGs of the
// normalized amplitudes, normalized J and inverse tip stress concentration.
void run_size_effect(const RunConfig& config, const std::string& out_dir,
                     int threads);

// JSON serialization of a case summary (stable key order, no timestamps).
std::string summary_to_json(const RunConfig& config, const CaseSummary& summary);

} // namespace sgefem
