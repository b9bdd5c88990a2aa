#pragma once

#include <vector>

#include "mkdv/abelmat.hpp"

namespace mkdv {

/// One output record of an orbit run.
struct OrbitSample {
    double s;
    PhaseState state;
    double psi_r;
    double dpsi_r_ds;
    double dpsi_i_du3;
    double psi_i_circ;   // trapezoidal integral of dpsi_i_du3, 0 at the first sample
    double gauge_A;
    Vec3c du_accum;      // accumulated Abel displacement
};

double psi_r(const PhaseState& st);

/// d psi_r / ds along the s-flow: twice the sum of the angle velocities.
/// Within eps_collision of a pair coincidence the colliding pair's part is
/// replaced by its finite series limit -2 a (b1 + b2).
double dpsi_r_ds(const CurveParams& cv, const PhaseState& st, double eps_collision = 1e-6);

/// Gauge diagnostic: twice the imaginary u3-derivative of the angle sum,
/// components 2 Ktilde_a sin(phi_b + phi_c) / dd_a. Within eps_collision of a
/// pair coincidence the pair contributes its local series 0 + eta1 + O(eta1^2),
/// which vanishes at the crossing.
double dpsi_i_du3(const CurveParams& cv, const PhaseState& st, double eps_collision = 1e-6);

/// (lambda6 - 3 - 3/4 (dpsi_i_du3)^2) / 2
double gauge_A(const CurveParams& cv, const PhaseState& st, double eps_collision = 1e-6);

/// Evaluates the three one-forms on the displacement rhs*ds; equals
/// e1 * ds up to round-off at interior states.
Vec3c abel_increment(const CurveParams& cv, const PhaseState& st, double ds);

/// Cumulative trapezoidal integral of dpsi_i_du3 over s; first value 0.
std::vector<double> psi_i_circ_accumulate(const std::vector<OrbitSample>& samples);

} // namespace mkdv
