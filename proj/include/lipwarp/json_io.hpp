#pragma once

#include <string>

#include "lipwarp/align.hpp"
#include "lipwarp/eval.hpp"

namespace lipwarp {

// JSON schemas:
//   warp:   {"ref_step": s, "source_times": [...]}
//   path:   {"pairs": [[i, j], ...], "total_cost": x}
//   report: {"pct_outside": x, "lead_pct": x, "lag_pct": x, "n_frames": n,
//            "thresholds": {"lead_max": 0.045, "lag_max": 0.125}}

std::string warp_to_json(const WarpFunction& warp);
WarpFunction warp_from_json(const std::string& text);
WarpFunction load_warp(const std::string& path);
void save_warp(const WarpFunction& warp, const std::string& path);

std::string path_to_json(const AlignmentPath& path);
std::string report_to_json(const AsynchronyReport& report);

}  // namespace lipwarp
