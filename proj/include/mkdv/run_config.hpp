#pragma once

#include <string>

#include "mkdv/curve.hpp"
#include "mkdv/orbit.hpp"

namespace mkdv {

/// Flat key = value run description ('#' starts a comment).
struct RunConfig {
    double k1 = 0, k2 = 0, k3 = 0;
    CurveCase kcase = CurveCase::A;

    enum class InitMode { Default, Explicit };
    InitMode init_mode = InitMode::Default;
    double phi_c = 0.0;
    Vec3 phi{};
    std::array<int, 3> sheet{1, 1, 1};

    IntegratorConfig integrator;

    std::string csv_path = "orbit.csv";
    std::string events_path = "orbit_events.txt";
    int precision = 17;
};

RunConfig parse_run_config(const std::string& path);

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& rc);

CurveParams curve_of(const RunConfig& rc);
PhaseState initial_state(const RunConfig& rc, const CurveParams& cv);

} // namespace mkdv
