#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mkdv {

struct PropertyResult {
    std::string name;
    double max_residual;
    double tolerance;
    bool pass;
};

/// Randomized property suite over the reference curve plus random valid
/// curves. states_per_property: 100 for quick, 10000 for full.
/// inject_sign_fault corrupts a matrix sign locally to exercise the failure
/// path; it must make the basis-identity property fail.
std::vector<PropertyResult> run_verification(int states_per_property, std::uint64_t seed,
                                             bool inject_sign_fault = false);

} // namespace mkdv
