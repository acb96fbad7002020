#pragma once

#include <string>
#include <vector>

#include "secantforge/harness.hpp"
#include "secantforge/interpolation.hpp"

namespace secantforge::io {

using vec::Vec;

// 17 significant digits: round-trip exact for doubles. Non-finite values
// print as "inf", "-inf", "nan".
std::string format_double(double v);

// Write via a temporary file in the same directory, then rename into place.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Family / trace file layout: first row "# xstar: v1,v2,...", then one row
// per point "x1,...,xd,g1,...,gd[,f]".
std::string family_to_csv(const interpolation::InterpFamily& family);
interpolation::InterpFamily family_from_csv(const std::string& content);

void write_family_csv(const std::string& path, const interpolation::InterpFamily& family);
interpolation::InterpFamily read_family_csv(const std::string& path);

// Run summary table: "step,dist_sq,radius_sq,f,grad_norm". The final iterate
// is never answered by the oracle, so its f and grad_norm print as nan.
std::string run_to_csv(const harness::RunRecord& record);

// Full transcript export: "step,f,grad_norm,dist_to_center,radius," followed
// by the x coordinates then the g coordinates.
std::string transcript_to_csv(const harness::RunRecord& record);

// "alpha,beta,rho_hat,diverged"; diverged cells print rho_hat as "inf".
std::string sweep_to_csv(const std::vector<harness::SweepCell>& cells);

// "step,rsi,eb,skipped"
std::string trace_report_to_csv(const harness::TraceReport& report);

// The (x, g) pairs of a family file, for trace analysis.
std::vector<std::pair<Vec, Vec>> family_points(const interpolation::InterpFamily& family);

}  // namespace secantforge::io
