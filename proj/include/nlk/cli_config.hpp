#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nlk/params.hpp"
#include "nlk/quad.hpp"

namespace nlk {

/// Run manifest. Serialized verbatim into every output file header so that
/// a run can be reproduced from its artifacts.
struct RunConfig {
    std::string subcommand;
    std::vector<int> d_values;
    std::vector<double> p_values;
    std::vector<double> s_values;
    std::string sweep;       // named parameter sweep ("default") or empty
    std::string fields_path; // JSON field file; empty = built-in library
    QuadConfig quad;
    std::string out_path;
    std::string format = "json"; // json | csv
    std::string plot_path;

    nlohmann::json to_json() const;
    /// Strict parse: unknown keys are rejected.
    static RunConfig from_json(const nlohmann::json& j);

    /// Expands flags/sweep into the list of admissible parameter triples.
    /// With `filter_excluded` the inadmissible combinations (ps = 1, and
    /// s = 1/2 where Korn applies) are silently dropped; otherwise they
    /// raise ExcludedParameter.
    std::vector<FracParams> expand_params(bool need_ps_not_one, bool need_korn,
                                          bool filter_excluded) const;
};

/// One-line config header for CSV outputs ("# config {json}").
std::string config_header_line(const RunConfig& cfg);
/// Parses the header line back; inverse of config_header_line.
RunConfig parse_config_header(const std::string& line);

} // namespace nlk
