#include "sgefem/config.hpp"

#include "sgefem/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace sgefem {

using ordered_json = nlohmann::ordered_json;

namespace {

void reject_unknown(const ordered_json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) {
            throw ConfigError("config: unknown key '" + key + "' in " + where);
        }
    }
}

double number(const ordered_json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(std::string("config: '") + key +
                                                 "' must be a number");
    return obj[key].get<double>();
}

} // namespace

const char* mode_name(CrackMode mode) {
    return mode == CrackMode::I ? "I" : "II";
}

RunConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(j, {"mode", "material", "geometry", "quadrature", "enrichment",
                       "load", "study", "output"},
                   "top level");

    RunConfig c;
    if (j.contains("mode")) {
        const std::string m = j["mode"].get<std::string>();
        if (m == "I") {
            c.mode = CrackMode::I;
        } else if (m == "II") {
            c.mode = CrackMode::II;
        } else {
            throw ConfigError("config: mode must be \"I\" or \"II\", got \"" + m + "\"");
        }
    }
    if (j.contains("material")) {
        const auto& m = j["material"];
        reject_unknown(m, {"E", "nu", "ell"}, "material");
        c.youngs_modulus = number(m, "E", c.youngs_modulus);
        c.poisson_ratio = number(m, "nu", c.poisson_ratio);
        c.length_scale = number(m, "ell", c.length_scale);
    }
    if (j.contains("geometry")) {
        const auto& g = j["geometry"];
        reject_unknown(g, {"d", "L", "R", "M", "grading"}, "geometry");
        c.half_crack = number(g, "d", c.half_crack);
        c.half_domain = number(g, "L", c.half_domain);
        c.fan_radius = number(g, "R", c.fan_radius);
        if (g.contains("M")) c.fan_count = g["M"].get<int>();
        c.grading = number(g, "grading", c.grading);
    }
    if (j.contains("quadrature")) c.quadrature_id = j["quadrature"].get<int>();
    if (j.contains("enrichment")) c.enrichment = j["enrichment"].get<bool>();
    if (j.contains("load")) c.load = number(j, "load", c.load);
    if (j.contains("study")) {
        const auto& s = j["study"];
        reject_unknown(s, {"type", "sweep", "values", "d_over_L", "ell_over_L"},
                       "study");
        const std::string type = s.value("type", "single");
        if (type == "single") {
            c.study = StudyType::Single;
        } else if (type == "convergence") {
            c.study = StudyType::Convergence;
            const std::string sweep = s.value("sweep", "R_over_ell");
            if (sweep == "R_over_ell") {
                c.sweep = SweepParameter::RadiusOverEll;
                c.sweep_values = {1.0, 0.5, 0.2, 0.1, 0.05, 0.01, 0.005};
            } else if (sweep == "M") {
                c.sweep = SweepParameter::FanCount;
                c.sweep_values = {4, 5, 6, 8};
            } else if (sweep == "quadrature") {
                c.sweep = SweepParameter::Quadrature;
                c.sweep_values = {13, 25, 30, 37};
            } else {
                throw ConfigError("config: study.sweep must be R_over_ell, M or "
                                  "quadrature");
            }
            if (s.contains("values")) {
                c.sweep_values = s["values"].get<std::vector<double>>();
            }
            if (c.sweep_values.empty()) {
                throw ConfigError("config: convergence study needs a non-empty "
                                  "values list");
            }
        } else if (type == "size-effect") {
            c.study = StudyType::SizeEffect;
            c.d_over_length = {1.0 / 40, 0.1, 0.2, 0.3, 0.4, 0.5};
            c.ell_over_length = {0.005, 0.01, 0.02};
            if (s.contains("d_over_L")) {
                c.d_over_length = s["d_over_L"].get<std::vector<double>>();
            }
            if (s.contains("ell_over_L")) {
                c.ell_over_length = s["ell_over_L"].get<std::vector<double>>();
            }
            if (c.d_over_length.empty() || c.ell_over_length.empty()) {
                throw ConfigError("config: size-effect study needs non-empty "
                                  "d_over_L and ell_over_L lists");
            }
        } else {
            throw ConfigError("config: study.type must be single, convergence or "
                              "size-effect");
        }
    }
    if (j.contains("output")) c.output_dir = j["output"].get<std::string>();
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    ordered_json j;
    j["mode"] = mode_name(c.mode);
    j["material"] = {{"E", c.youngs_modulus}, {"nu", c.poisson_ratio},
                     {"ell", c.length_scale}};
    j["geometry"] = {{"d", c.half_crack}, {"L", c.half_domain}, {"R", c.fan_radius},
                     {"M", c.fan_count}, {"grading", c.grading}};
    j["quadrature"] = c.quadrature_id;
    j["enrichment"] = c.enrichment;
    j["load"] = c.load;
    ordered_json s;
    switch (c.study) {
        case StudyType::Single:
            s["type"] = "single";
            break;
        case StudyType::Convergence:
            s["type"] = "convergence";
            s["sweep"] = (c.sweep == SweepParameter::RadiusOverEll) ? "R_over_ell"
                         : (c.sweep == SweepParameter::FanCount)    ? "M"
                                                                    : "quadrature";
            s["values"] = c.sweep_values;
            break;
        case StudyType::SizeEffect:
            s["type"] = "size-effect";
            s["d_over_L"] = c.d_over_length;
            s["ell_over_L"] = c.ell_over_length;
            break;
    }
    j["study"] = s;
    j["output"] = c.output_dir;
    return j.dump(2) + "\n";
}

} // namespace sgefem
