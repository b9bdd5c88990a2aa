#include "mkdv/abelmat.hpp"

#include <cmath>

namespace mkdv {

namespace {
constexpr double kBranchTol = 1e-12;
constexpr double kCollisionTol = 1e-10;
constexpr cplx kI{0.0, 1.0};
} // namespace

double denom_dd(const Vec3& phi, int a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    return std::sin(phi[b] - phi[a]) * std::sin(phi[c] - phi[a]);
}

double min_pair_gap(const Vec3& phi) {
    return std::min({std::abs(phi[0] - phi[1]), std::abs(phi[1] - phi[2]),
                     std::abs(phi[0] - phi[2])});
}

Mat3c matL(const CurveParams& cv, const PhaseState& st) {
    Mat3c L;
    for (int j = 0; j < 3; ++j) {
        double kt = ktilde(cv, st.phi[j]);
        if (kt < kBranchTol)
            throw BranchSingular("matL: Ktilde below 1e-12 at component " + std::to_string(j));
        double K = st.sheet[j] * kt;
        cplx em1 = std::polar(1.0, -st.phi[j]);
        L.m[0][j] = em1 * em1 / (8.0 * K);
        L.m[1][j] = -kI * em1 * std::sin(st.phi[j]) / (4.0 * K);
        L.m[2][j] = std::sin(st.phi[j]) * std::sin(st.phi[j]) / (2.0 * K);
    }
    return L;
}

Mat3c matKM(const CurveParams& cv, const PhaseState& st) {
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3;
        if (std::abs(std::sin(st.phi[a] - st.phi[b])) < kCollisionTol)
            throw CollisionSingular("matKM: coincident angles " + std::to_string(a) + "," +
                                    std::to_string(b));
    }
    Mat3c KM;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        double kt = ktilde(cv, st.phi[a]);
        if (kt < kBranchTol)
            throw BranchSingular("matKM: Ktilde below 1e-12 at component " + std::to_string(a));
        double diag = st.sheet[a] * kt / denom_dd(st.phi, a);
        double sb = std::sin(st.phi[b]), sc = std::sin(st.phi[c]);
        // column signs fixed by matKM * matL = I (columns 2 and 3 of the
        // paper's M enter negated).
        KM.m[a][0] = diag * 8.0 * sb * sc;
        KM.m[a][1] = diag * (4.0 * kI * (2.0 * kI * sb * sc - std::sin(st.phi[b] + st.phi[c])));
        KM.m[a][2] = diag * 2.0 * std::polar(1.0, -(st.phi[b] + st.phi[c]));
    }
    return KM;
}

Vec3 vecV(const CurveParams& cv, const PhaseState& st, int index) {
    Vec3 v{};
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        double dd = denom_dd(st.phi, a);
        if (std::abs(std::sin(st.phi[a] - st.phi[b])) < kCollisionTol ||
            std::abs(std::sin(st.phi[a] - st.phi[c])) < kCollisionTol)
            throw CollisionSingular("vecV: coincident angles");
        double kt = ktilde(cv, st.phi[a]);
        switch (index) {
            case 1: v[a] = 2.0 * kt * std::cos(st.phi[b] + st.phi[c]) / dd; break;
            case 2: v[a] = 8.0 * kt * std::sin(st.phi[b]) * std::sin(st.phi[c]) / dd; break;
            case 3: v[a] = 2.0 * kt * std::sin(st.phi[b] + st.phi[c]) / dd; break;
            default: throw DomainError("vecV: index must be 1, 2 or 3");
        }
    }
    return v;
}

double basis_identity_residual(const CurveParams& cv, const PhaseState& st) {
    Mat3c L = matL(cv, st);
    double worst = 0.0;
    const Vec3c* basis[3] = {&kBasisE1, &kBasisE2, &kBasisE3};
    for (int i = 1; i <= 3; ++i) {
        Vec3 v = vecV(cv, st, i);
        Vec3 cv_signed{v[0] * st.sheet[0], v[1] * st.sheet[1], v[2] * st.sheet[2]};
        Vec3c lhs = L * cv_signed;
        worst = std::max(worst, max_abs(sub(lhs, *basis[i - 1])));
    }
    return worst;
}

Vec3c transform_D(const Vec3c& du) {
    return {du[0] - du[1] - du[2],
            -2.0 * kI * du[1] - kI * du[2],
            du[2]};
}

Vec3c transform_D_inv(const Vec3c& dt) {
    // rows (1, i/2, 1/2), (0, i/2, -1/2), (0, 0, 1)
    return {dt[0] + 0.5 * kI * dt[1] + 0.5 * dt[2],
            0.5 * kI * dt[1] - 0.5 * dt[2],
            dt[2]};
}

} // namespace mkdv
