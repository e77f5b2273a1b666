#pragma once

#include <istream>
#include <map>
#include <string>

#include "sbm/harness/plan.hpp"

namespace sbm::cli {

struct RunSettings {
    harness::ExperimentPlan plan;
    std::string out_dir = "sbm_out";
    bool dump_snapshots = false;
    std::map<std::string, int> key_lines;  // line of each key present in the file
};

// Flat "key = value" document, '#' starts a comment. Keys:
//   d alpha beta domain(full|orthant) absorbed start N dt seed t_max snapshot_times
//   particle_cap engine(genealogy|event) replicates threads checks f spectral_f slln_box
//   eps delta grid_points spectral_points moment_times second_moment_time drift_pairs
//   variance_times spectral_times out_dir dump_snapshots
// Lists take commas or blanks, drift pairs are "s:t". Test functions are written
//   constant | box lo=0 hi=1 | gaussian center=0 width=1 | cosine lambda=0.5
// with optional amplitude=<a>; vector fields use commas ("lo=0,0").
// Throws ConfigError naming the line and key.
RunSettings parse_config(std::istream& in);
RunSettings load_config(const std::string& path);

// Prefixes "line N: " when the message starts with the name of a key from the file.
std::string locate(const RunSettings& settings, const std::string& message);

}  // namespace sbm::cli
