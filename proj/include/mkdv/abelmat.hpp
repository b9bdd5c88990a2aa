#pragma once

#include <array>

#include "mkdv/curve.hpp"
#include "mkdv/linalg.hpp"

namespace mkdv {

/// A point of the real arc of S^3 X-hat: three angles plus sheet signs.
/// The triple has unordered-multiset semantics; the stored order is a label.
struct PhaseState {
    Vec3 phi;
    std::array<int, 3> sheet;
};

// Basis of C^3 adapted to the real plane: e1, e2 span R^2, e3 the
// complementary direction.
inline const Vec3c kBasisE1{cplx(0.5), cplx(-0.5), cplx(1.0)};
inline const Vec3c kBasisE2{cplx(1.0), cplx(0.0), cplx(0.0)};
inline const Vec3c kBasisE3{cplx(0.0, 0.5), cplx(0.0, 0.5), cplx(0.0)};

/// Transition matrix du = L dphi of the one-forms in angle coordinates,
/// K_j = sheet_j * Ktilde(phi_j). Row signs are the ones that satisfy
/// e_i = L C V_i numerically:
///   row 1:  +e^{-2 i phi} / (8 K)
///   row 2:  -i e^{-i phi} sin(phi) / (4 K)
///   row 3:  +sin^2(phi) / (2 K)
/// Throws BranchSingular when any Ktilde(phi_j) < 1e-12.
Mat3c matL(const CurveParams& cv, const PhaseState& st);

/// Explicit inverse K*M with K the diagonal of K_a / (sin(phi_b - phi_a) sin(phi_c - phi_a))
/// and M the 8 sin sin / -4i(...) / 2 e^{-i(phi_b+phi_c)} matrix; satisfies
/// matKM * matL = I. Throws CollisionSingular when |sin(phi_a - phi_b)| < 1e-10.
Mat3c matKM(const CurveParams& cv, const PhaseState& st);

/// Real meromorphic basis vectors on S^3 X-hat built from the unsigned Ktilde.
/// index 1 is the s-direction vector (numerators 2 Ktilde_a cos(phi_b + phi_c)),
/// index 2 the t-direction (8 Ktilde_a sin phi_b sin phi_c),
/// index 3 the imaginary-part vector (2 Ktilde_a sin(phi_b + phi_c)).
Vec3 vecV(const CurveParams& cv, const PhaseState& st, int index);

/// max_i || matL * C * vecV(i) - e_i ||_inf with C = diag(sheet).
double basis_identity_residual(const CurveParams& cv, const PhaseState& st);

/// dt = D^{-1} du with rows (1, -1, -1), (0, -2i, -i), (0, 0, 1);
/// maps e1 -> (0,0,1) (pure ds) and e2 -> (1,0,0) (pure dt).
Vec3c transform_D(const Vec3c& du);

/// Inverse of transform_D; round-trips to ~1e-16.
Vec3c transform_D_inv(const Vec3c& dt);

// Shared helpers for the orbit module.

/// sin(phi_b - phi_a) sin(phi_c - phi_a) for component a (b, c cyclic).
double denom_dd(const Vec3& phi, int a);

double min_pair_gap(const Vec3& phi);

} // namespace mkdv
