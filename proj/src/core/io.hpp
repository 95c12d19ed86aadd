#pragma once

#include <string>

#include "core/model.hpp"
#include "core/multiplatform.hpp"
#include "core/solver.hpp"

namespace bpo {

// shortest text that parses back to the same double
std::string format_double(double v);
// 12 significant digits, the precision reports are written with
std::string format_double_12(double v);

// `bpo-instance v1` text format: header, N/advertiser/budget lines, per-user
// `user <id> <lambda> <cost> <cap>` lines, sparse `imp <source> <viewer> <p>`
// lines. '#' starts a comment. Writing is canonical, so equal instances
// produce identical bytes.
void write_instance(const CampaignInstance& inst, const std::string& path);
CampaignInstance read_instance(const std::string& path);
CampaignInstance read_instance_text(const std::string& text);
std::string instance_to_text(const CampaignInstance& inst);

// `bpo-mp v1` format: L/Q counts, sigma/zeta weight lines, user and imp lines
// carrying (l, q) prefixes.
void write_mp_instance(const MultiPlatformInstance& mp, const std::string& path);
MultiPlatformInstance read_mp_instance(const std::string& path);
MultiPlatformInstance read_mp_instance_text(const std::string& text);
std::string mp_instance_to_text(const MultiPlatformInstance& mp);

// Stable field order, floats at 12 significant digits. Timing fields are
// wall-clock and so inherently volatile; with_timings=false zeroes them for
// byte-reproducible output.
std::string report_to_json(const SolveReport& rep, bool with_timings = true);
// one row per recorded iterate: t, objective, gap, step_size, iter_ms
std::string report_to_csv(const SolveReport& rep, bool with_timings = true);

SolveReport report_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace bpo
