#pragma once

#include "sgefem/asymptotics.hpp"

#include <string>
#include <vector>

namespace sgefem {

enum class StudyType { Single, Convergence, SizeEffect };
enum class SweepParameter { RadiusOverEll, FanCount, Quadrature };

// One JSON document drives every run. Unknown keys are rejected.
struct RunConfig {
    CrackMode mode = CrackMode::I;

    double youngs_modulus = 1.0e9;
    double poisson_ratio = 0.3;
    double length_scale = 0.02;

    double half_crack = 0.2;
    double half_domain = 1.0;
    double fan_radius = 0.002;
    int fan_count = 5;
    double grading = 1.3;

    int quadrature_id = 13;
    bool enrichment = true;
    double load = 1.0e6;

    StudyType study = StudyType::Single;
    SweepParameter sweep = SweepParameter::RadiusOverEll;
    std::vector<double> sweep_values;  // convergence studies
    std::vector<double> d_over_length; // size-effect studies
    std::vector<double> ell_over_length;

    std::string output_dir = "out";

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

const char* mode_name(CrackMode mode);

} // namespace sgefem
