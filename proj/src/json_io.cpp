#include "lipwarp/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lipwarp {

using nlohmann::json;

std::string warp_to_json(const WarpFunction& warp) {
  json j;
  j["ref_step"] = warp.ref_step;
  j["source_times"] = warp.source_times;
  return j.dump();
}

WarpFunction warp_from_json(const std::string& text) {
  WarpFunction warp;
  try {
    const json j = json::parse(text);
    warp.ref_step = j.at("ref_step").get<double>();
    warp.source_times = j.at("source_times").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid warp JSON: ") + e.what());
  }
  if (warp.source_times.empty() || !(warp.ref_step > 0.0))
    throw InputError("invalid warp JSON: empty warp or bad step");
  return warp;
}

WarpFunction load_warp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open warp file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return warp_from_json(buf.str());
}

void save_warp(const WarpFunction& warp, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open warp file for writing: " + path);
  f << warp_to_json(warp) << "\n";
  if (!f) throw InputError("failed writing warp file: " + path);
}

std::string path_to_json(const AlignmentPath& path) {
  json pairs = json::array();
  for (const auto& [i, j] : path.pairs) pairs.push_back({i, j});
  json j;
  j["pairs"] = std::move(pairs);
  j["total_cost"] = path.total_cost;
  return j.dump();
}

std::string report_to_json(const AsynchronyReport& report) {
  json j;
  j["pct_outside"] = report.pct_outside;
  j["lead_pct"] = report.lead_pct;
  j["lag_pct"] = report.lag_pct;
  j["n_frames"] = report.n_frames;
  j["thresholds"] = {{"lead_max", report.lead_max},
                     {"lag_max", report.lag_max}};
  return j.dump();
}

}  // namespace lipwarp
