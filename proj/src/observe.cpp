#include "mkdv/observe.hpp"

#include <cmath>

#include "mkdv/orbit.hpp"

namespace mkdv {

namespace {

// Identify a same-sheet pair within the collision window, if any.
// Returns {p, q, third} or p = -1.
struct WindowPair {
    int p = -1, q = -1, third = -1;
};

WindowPair window_pair(const PhaseState& st, double eps_collision) {
    WindowPair w;
    for (auto [p, q] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        if (st.sheet[p] != st.sheet[q]) continue;
        if (std::abs(std::sin(st.phi[p] - st.phi[q])) < eps_collision) {
            w.p = p;
            w.q = q;
            w.third = 3 - p - q;
            return w;
        }
    }
    return w;
}

void check_not_triple(const PhaseState& st, double eps) {
    if (std::abs(st.phi[0] - st.phi[1]) < eps && std::abs(st.phi[1] - st.phi[2]) < eps &&
        std::abs(st.phi[0] - st.phi[2]) < eps)
        throw TripleCollision("observable undefined: all three angles coincide");
}

// Signed local offset eta1 of the ascending track: negative while the pair
// approaches its crossing, positive after.
double signed_eta1(const CurveParams& cv, const PhaseState& st, const WindowPair& w) {
    double gap = std::abs(st.phi[w.q] - st.phi[w.p]);
    if (gap == 0.0) return 0.0;
    double mid = 0.5 * (st.phi[w.p] + st.phi[w.q]);
    CollisionExpansion ex =
        make_collision_expansion(cv, mid, st.phi[w.third], st.sheet[w.p] * ktilde(cv, mid), 0.0);
    // a_coef > 0 means these sheets approach: pre-crossing side
    return (ex.a_coef > 0.0 ? -0.5 : 0.5) * gap;
}

double third_component_term(const CurveParams& cv, const PhaseState& st, int a,
                            bool imaginary_part) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    double kt = ktilde(cv, st.phi[a]);
    double dd = denom_dd(st.phi, a);
    if (imaginary_part)
        return 2.0 * kt * std::sin(st.phi[b] + st.phi[c]) / dd;
    return 2.0 * st.sheet[a] * kt * std::cos(st.phi[b] + st.phi[c]) / dd;
}

} // namespace

double psi_r(const PhaseState& st) {
    return 2.0 * (st.phi[0] + st.phi[1] + st.phi[2]);
}

double dpsi_r_ds(const CurveParams& cv, const PhaseState& st, double eps_collision) {
    check_not_triple(st, eps_collision);
    WindowPair w = window_pair(st, eps_collision);
    if (w.p < 0) {
        Vec3 v = rhs(cv, st);
        return 2.0 * (v[0] + v[1] + v[2]);
    }
    double mid = 0.5 * (st.phi[w.p] + st.phi[w.q]);
    CollisionExpansion ex =
        make_collision_expansion(cv, mid, st.phi[w.third], st.sheet[w.p] * ktilde(cv, mid), 0.0);
    // pair part: finite series limit; third component is regular
    return -2.0 * ex.a_coef * (ex.b1_coef + ex.b2_coef)
         + 2.0 * third_component_term(cv, st, w.third, false);
}

double dpsi_i_du3(const CurveParams& cv, const PhaseState& st, double eps_collision) {
    check_not_triple(st, eps_collision);
    WindowPair w = window_pair(st, eps_collision);
    if (w.p < 0) {
        double sum = 0.0;
        for (int a = 0; a < 3; ++a) sum += third_component_term(cv, st, a, true);
        return 2.0 * sum;
    }
    // colliding pair contributes its local series 0 + eta1 + O(eta1^2)
    return 2.0 * (signed_eta1(cv, st, w) + third_component_term(cv, st, w.third, true));
}

double gauge_A(const CurveParams& cv, const PhaseState& st, double eps_collision) {
    double d = dpsi_i_du3(cv, st, eps_collision);
    return (cv.lambda6 - 3.0 - 0.75 * d * d) / 2.0;
}

Vec3c abel_increment(const CurveParams& cv, const PhaseState& st, double ds) {
    Mat3c L = matL(cv, st);
    Vec3 v = rhs(cv, st);
    Vec3 disp{v[0] * ds, v[1] * ds, v[2] * ds};
    return L * disp;
}

std::vector<double> psi_i_circ_accumulate(const std::vector<OrbitSample>& samples) {
    std::vector<double> out(samples.size(), 0.0);
    for (size_t i = 1; i < samples.size(); ++i) {
        double h = samples[i].s - samples[i - 1].s;
        out[i] = out[i - 1] + 0.5 * h * (samples[i].dpsi_i_du3 + samples[i - 1].dpsi_i_du3);
    }
    return out;
}

} // namespace mkdv
