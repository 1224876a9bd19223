#include "nlk/cli_config.hpp"

#include <set>

namespace nlk {

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["d"] = d_values;
    j["p"] = p_values;
    j["s"] = s_values;
    j["sweep"] = sweep;
    j["fields"] = fields_path;
    j["quad"] = {{"n_samples", quad.n_samples},
                 {"truncation_pad", quad.truncation_pad},
                 {"diagonal_cutoff", quad.diagonal_cutoff},
                 {"seed", quad.seed},
                 {"n_strata", quad.n_strata},
                 {"jobs", quad.jobs}};
    j["out"] = out_path;
    j["format"] = format;
    j["plot"] = plot_path;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {"subcommand", "d",   "p",      "s",    "sweep",
                                                "fields",     "quad", "out",   "format", "plot"};
    static const std::set<std::string> known_quad = {"n_samples", "truncation_pad",
                                                     "diagonal_cutoff", "seed", "n_strata", "jobs"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw InvalidParameter("config: unknown key '" + it.key() + "'");
    RunConfig c;
    c.subcommand = j.value("subcommand", "");
    c.d_values = j.value("d", std::vector<int>{});
    c.p_values = j.value("p", std::vector<double>{});
    c.s_values = j.value("s", std::vector<double>{});
    c.sweep = j.value("sweep", "");
    c.fields_path = j.value("fields", "");
    if (j.contains("quad")) {
        const auto& q = j.at("quad");
        for (auto it = q.begin(); it != q.end(); ++it)
            if (!known_quad.count(it.key()))
                throw InvalidParameter("config.quad: unknown key '" + it.key() + "'");
        c.quad.n_samples = q.value("n_samples", c.quad.n_samples);
        c.quad.truncation_pad = q.value("truncation_pad", c.quad.truncation_pad);
        c.quad.diagonal_cutoff = q.value("diagonal_cutoff", c.quad.diagonal_cutoff);
        c.quad.seed = q.value("seed", c.quad.seed);
        c.quad.n_strata = q.value("n_strata", c.quad.n_strata);
        c.quad.jobs = q.value("jobs", c.quad.jobs);
    }
    c.out_path = j.value("out", "");
    c.format = j.value("format", "json");
    c.plot_path = j.value("plot", "");
    return c;
}

std::vector<FracParams> RunConfig::expand_params(bool need_ps_not_one, bool need_korn,
                                                 bool filter_excluded) const {
    std::vector<int> ds = d_values;
    std::vector<double> ps = p_values;
    std::vector<double> ss = s_values;
    if (!sweep.empty()) {
        if (sweep != "default") throw InvalidParameter("unknown sweep name: " + sweep);
        if (ds.empty()) ds = {1, 2, 3};
        if (ps.empty()) ps = {1.0, 2.0, 3.0};
        if (ss.empty()) ss = {0.25, 0.4, 0.6, 0.75};
    }
    if (ds.empty()) ds = {2};
    if (ps.empty()) ps = {2.0};
    if (ss.empty()) ss = {0.25, 0.75};

    std::vector<FracParams> out;
    for (int d : ds)
        for (double p : ps)
            for (double s : ss) {
                FracParams fp(d, p, s);
                bool excluded = (need_ps_not_one && fp.ps_is_one()) ||
                                (need_korn && (p != 2.0 || s == 0.5));
                if (excluded) {
                    if (filter_excluded) continue;
                    if (need_ps_not_one && fp.ps_is_one())
                        throw ExcludedParameter("ps = 1 excluded");
                    throw ExcludedParameter("Korn checks require p = 2 and s != 1/2");
                }
                out.push_back(fp);
            }
    return out;
}

std::string config_header_line(const RunConfig& cfg) {
    return "# config " + cfg.to_json().dump();
}

RunConfig parse_config_header(const std::string& line) {
    const std::string prefix = "# config ";
    if (line.rfind(prefix, 0) != 0) throw InvalidParameter("not a config header line");
    return RunConfig::from_json(nlohmann::json::parse(line.substr(prefix.size())));
}

} // namespace nlk
