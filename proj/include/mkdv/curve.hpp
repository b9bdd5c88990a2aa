#pragma once

#include <array>
#include <utility>

#include "mkdv/errors.hpp"
#include "mkdv/linalg.hpp"

namespace mkdv {

enum class CurveCase { A, B };

/// Genus-three hyperelliptic curve in the angle expression.
///
/// The moduli (k1, k2, k3) fix the branch offsets e_{2a-1} = (alpha_a + i beta_a)^2,
/// e_{2a} = conj(e_{2a-1}) with beta_a = 1/k_a, so all finite branch points other
/// than b0 = -1 sit on the unit circle |x - b0| = 1.
struct CurveParams {
    double k1, k2, k3;
    CurveCase kcase;
    Vec3 beta;                 // 1/k_a
    Vec3 alpha;                // sqrt(1 - beta_a^2)
    std::array<cplx, 6> e;     // branch offsets, e_{2a-1} e_{2a} = 1
    std::array<cplx, 6> b;     // b_j = e_j + b0
    double b0 = -1.0;
    double lambda6;            // -(b0 + sum b_j), real
    double phi_b_minus, phi_b_plus;

    const double& k(int a) const { return a == 0 ? k1 : (a == 1 ? k2 : k3); }
};

CurveParams make_curve(double k1, double k2, double k3, CurveCase kcase);

/// Nonnegative root Ktilde(phi) = sqrt(prod_a (1 - k_a^2 sin^2 phi)) / (k1 k2 k3).
/// Tiny negative radicands from round-off at the branch angles clamp to zero;
/// anything below -1e-14 is a domain violation.
double ktilde(const CurveParams& cv, double phi);

/// d(sheet * Ktilde)/dphi in closed form. Throws NearBranchError when
/// Ktilde < 1e-12 (the derivative is unbounded in phi there; use the
/// branch chart of the orbit module instead).
double kprime(const CurveParams& cv, double phi, int sheet);

std::pair<double, double> branch_angles(const CurveParams& cv);

/// A point of the double cover in angle coordinates: w = e^{i phi},
/// y = 8i gamma Ktilde e^{3i phi}.
struct CurvePointHat {
    double phi;
    int sheet;
    cplx w;
    cplx y;
};

CurvePointHat curve_point(const CurveParams& cv, double phi, int sheet);

/// Relative residual of the angle-form curve equation
/// y^2 = -64 e^{6 i phi} prod_a (1 - k_a^2 sin^2 phi) / (k1 k2 k3)^2
/// at the given point. The product is evaluated fresh from sin(phi).
double curve_equation_residual(const CurveParams& cv, const CurvePointHat& p);

// --- branch-chart scalar factors ------------------------------------------
//
// Near phi_b^+ write phi = phi_b - t^2 (near phi_b^-: phi = phi_b^- + t^2).
// The vanishing factor splits off: 1 -+ k1 sin phi = t^2 * xi(t), and
// Ktilde = |t| * wfactor(t), both smooth through t = 0.

/// xi(0) = k1 cos(phi_b); evaluated by series for small |t|.
double xi_branch(const CurveParams& cv, double t, bool upper);

/// wfactor(t) = sqrt(xi(t) * (1 +- k1 sin phi)(1 - k2^2 sin^2 phi)(1 - k3^2 sin^2 phi)) / (k1 k2 k3)
double w_branch(const CurveParams& cv, double t, bool upper);

} // namespace mkdv
