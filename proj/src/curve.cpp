#include "mkdv/curve.hpp"

#include <cmath>
#include <sstream>

namespace mkdv {

namespace {
constexpr double kRadicandClamp = 1e-14;
}

CurveParams make_curve(double k1, double k2, double k3, CurveCase kcase) {
    auto fail_order = [&](const char* need) {
        std::ostringstream os;
        os << "moduli ordering violated: need " << need << ", got k1=" << k1
           << " k2=" << k2 << " k3=" << k3;
        throw OrderingViolation(os.str());
    };
    if (!(k1 > 1.0 && k2 > 1.0 && k3 > 1.0))
        fail_order("all k_a > 1");
    if (kcase == CurveCase::A && !(k1 > k2 && k2 > k3))
        fail_order("k1 > k2 > k3 > 1 (case A)");
    if (kcase == CurveCase::B && !(k3 > k2 && k2 > k1))
        fail_order("k3 > k2 > k1 > 1 (case B)");

    CurveParams cv;
    cv.k1 = k1;
    cv.k2 = k2;
    cv.k3 = k3;
    cv.kcase = kcase;
    for (int a = 0; a < 3; ++a) {
        cv.beta[a] = 1.0 / cv.k(a);
        cv.alpha[a] = std::sqrt(1.0 - cv.beta[a] * cv.beta[a]);
        cplx root(cv.alpha[a], cv.beta[a]);
        cv.e[2 * a] = root * root;
        cv.e[2 * a + 1] = std::conj(root * root);
    }
    cplx sum = cv.b0;
    for (int j = 0; j < 6; ++j) {
        cv.b[j] = cv.e[j] + cv.b0;
        sum += cv.b[j];
    }
    cplx lambda = -sum;
    if (std::abs(lambda.imag()) > 1e-12)
        throw NonRealLambda("lambda6 has imaginary part " + std::to_string(lambda.imag()));
    cv.lambda6 = lambda.real();

    // cross-check against the closed form 1 + 4 sum beta_a^2
    double closed = 1.0 + 4.0 * (cv.beta[0] * cv.beta[0] + cv.beta[1] * cv.beta[1]
                                 + cv.beta[2] * cv.beta[2]);
    if (std::abs(cv.lambda6 - closed) > 1e-12 * std::abs(closed))
        throw NonRealLambda("lambda6 mismatch between branch-point sum and closed form");

    double arc = std::asin(1.0 / k1);
    if (kcase == CurveCase::A) {
        cv.phi_b_plus = arc;
        cv.phi_b_minus = -arc;
    } else {
        // Assumption's case (b) assignment; interval orientation recorded
        // ascending, integration is gated elsewhere.
        cv.phi_b_minus = arc;
        cv.phi_b_plus = M_PI - arc;
    }
    return cv;
}

double ktilde(const CurveParams& cv, double phi) {
    double s2 = std::sin(phi);
    s2 *= s2;
    double rad = (1.0 - cv.k1 * cv.k1 * s2) * (1.0 - cv.k2 * cv.k2 * s2)
               * (1.0 - cv.k3 * cv.k3 * s2);
    if (rad < 0.0) {
        if (rad < -kRadicandClamp) {
            std::ostringstream os;
            os << "Ktilde radicand negative (" << rad << ") at phi=" << phi;
            throw DomainError(os.str());
        }
        rad = 0.0;
    }
    return std::sqrt(rad) / (cv.k1 * cv.k2 * cv.k3);
}

double kprime(const CurveParams& cv, double phi, int sheet) {
    double kt = ktilde(cv, phi);
    if (kt < 1e-12)
        throw NearBranchError("kprime undefined this close to a branch angle");
    double k1s = cv.k1 * cv.k1, k2s = cv.k2 * cv.k2, k3s = cv.k3 * cv.k3;
    double s2 = std::sin(phi);
    s2 *= s2;
    double poly = 3.0 * k1s * k2s * k3s * s2 * s2
                - 2.0 * (k1s * k2s + k1s * k3s + k2s * k3s) * s2
                + (k1s + k2s + k3s);
    return -std::sin(2.0 * phi) * poly / (2.0 * sheet * kt);
}

std::pair<double, double> branch_angles(const CurveParams& cv) {
    return {cv.phi_b_minus, cv.phi_b_plus};
}

CurvePointHat curve_point(const CurveParams& cv, double phi, int sheet) {
    CurvePointHat p;
    p.phi = phi;
    p.sheet = sheet;
    p.w = std::polar(1.0, phi);
    p.y = cplx(0.0, 8.0 * sheet * ktilde(cv, phi)) * std::polar(1.0, 3.0 * phi);
    return p;
}

double curve_equation_residual(const CurveParams& cv, const CurvePointHat& p) {
    double s2 = std::sin(p.phi);
    s2 *= s2;
    double prod = (1.0 - cv.k1 * cv.k1 * s2) * (1.0 - cv.k2 * cv.k2 * s2)
                * (1.0 - cv.k3 * cv.k3 * s2);
    double norm = cv.k1 * cv.k2 * cv.k3;
    cplx rhs = -64.0 * std::polar(1.0, 6.0 * p.phi) * prod / (norm * norm);
    cplx lhs = p.y * p.y;
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale == 0.0) return 0.0;
    return std::abs(lhs - rhs) / scale;
}

double xi_branch(const CurveParams& cv, double t, bool upper) {
    double phib = upper ? cv.phi_b_plus : cv.phi_b_minus;
    double t2 = t * t;
    double cb = cv.k1 * std::cos(phib);
    if (std::abs(t) < 1e-4)
        return cb + 0.5 * t2 - cb * t2 * t2 / 6.0;
    double phi = upper ? phib - t2 : phib + t2;
    double vanish = upper ? 1.0 - cv.k1 * std::sin(phi) : 1.0 + cv.k1 * std::sin(phi);
    return vanish / t2;
}

double w_branch(const CurveParams& cv, double t, bool upper) {
    double phib = upper ? cv.phi_b_plus : cv.phi_b_minus;
    double phi = upper ? phib - t * t : phib + t * t;
    double s = std::sin(phi);
    double other = upper ? 1.0 + cv.k1 * s : 1.0 - cv.k1 * s;
    double rad = xi_branch(cv, t, upper) * other
               * (1.0 - cv.k2 * cv.k2 * s * s) * (1.0 - cv.k3 * cv.k3 * s * s);
    if (rad < 0.0) rad = 0.0;
    return std::sqrt(rad) / (cv.k1 * cv.k2 * cv.k3);
}

} // namespace mkdv
