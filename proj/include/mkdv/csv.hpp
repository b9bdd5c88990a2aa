#pragma once

#include <string>
#include <vector>

#include "mkdv/orbit.hpp"

namespace mkdv {

inline constexpr const char* kCsvHeader =
    "s,phi1,phi2,phi3,g1,g2,g3,psi_r,dpsi_r_ds,dpsi_i_du3,psi_i_circ,gauge_A,"
    "du1_re,du1_im,du2_re,du2_im,du3_re,du3_im";

void write_csv(const std::string& path, const std::vector<OrbitSample>& samples,
               int precision = 17);

std::vector<OrbitSample> read_csv(const std::string& path);

/// One line per event: s=<val> type=<branch|collision> comp=<a|a,b>, 1-based.
void write_events(const std::string& path, const std::vector<Event>& events,
                  int precision = 17);

} // namespace mkdv
