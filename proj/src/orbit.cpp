#include "mkdv/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mkdv {

namespace {

constexpr double kStepCap = 2e-3;        // max |dphi| (or |dt|) per Euler piece
constexpr double kCleanGap = 1e-4;       // pair gap above which matL is well conditioned
constexpr double kCleanKt = 1e-10;
constexpr double kCoincident = 1e-9;     // exact-coincidence threshold at init
constexpr long kMaxPieces = 2'000'000;

double flow_numerator(const Vec3& phi, int a, FlowDirection dir) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    if (dir == FlowDirection::V2_t)
        return 4.0 * std::sin(phi[b]) * std::sin(phi[c]);
    return std::cos(phi[b] + phi[c]);
}

} // namespace

Vec3 rhs(const CurveParams& cv, const PhaseState& st, FlowDirection dir) {
    Vec3 v{};
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        if (std::abs(std::sin(st.phi[a] - st.phi[b])) < 1e-10 ||
            std::abs(std::sin(st.phi[a] - st.phi[c])) < 1e-10)
            throw CollisionSingular("rhs: coincident angles");
        double kt = ktilde(cv, st.phi[a]);
        v[a] = 2.0 * st.sheet[a] * kt * flow_numerator(st.phi, a, dir) / denom_dd(st.phi, a);
    }
    return v;
}

CollisionExpansion make_collision_expansion(const CurveParams& cv, double phi0,
                                            double phi_third, double K0, double s0,
                                            FlowDirection dir) {
    CollisionExpansion ex;
    ex.s0 = s0;
    ex.phi0 = phi0;
    ex.eta1 = ex.eta2 = 0.0;
    double sb = std::sin(phi_third - phi0);
    if (std::abs(sb) < 1e-8)
        throw TripleCollision("collision with the third angle too close");
    double N, dN;
    if (dir == FlowDirection::V2_t) {
        N = 4.0 * std::sin(phi0) * std::sin(phi_third);
        dN = 4.0 * std::cos(phi0) * std::sin(phi_third);
    } else {
        N = std::cos(phi0 + phi_third);
        dN = -std::sin(phi0 + phi_third);
    }
    if (std::abs(N) < 1e-12)
        throw CollisionSingular("collision expansion degenerate: vanishing numerator");
    double kp = K0 > 0 ? kprime(cv, phi0, +1) : kprime(cv, phi0, -1);
    ex.a_coef = 2.0 * K0 * N / sb;
    ex.b1_coef = kp / K0 + std::cos(phi_third - phi0) / sb;
    ex.b2_coef = -dN / N;
    return ex;
}

PhaseState default_init(const CurveParams& cv, double phi_c) {
    auto [lo, hi] = branch_angles(cv);
    if (!(phi_c > lo && phi_c < hi))
        throw DomainError("default_init: phi_c outside the branch interval");
    if (std::min(phi_c - lo, hi - phi_c) < 1e-9)
        throw DomainError("default_init: phi_c degenerate with a branch angle");
    PhaseState st;
    st.phi = {hi, phi_c, phi_c};
    // Pair sheets: pick the side on which the coincident pair separates
    // forward in s (approach coefficient negative).
    CollisionExpansion ex = make_collision_expansion(cv, phi_c, hi, +ktilde(cv, phi_c), 0.0);
    int g = ex.a_coef > 0.0 ? -1 : +1;
    st.sheet = {+1, g, g};
    return st;
}

// --- OrbitIntegrator ---------------------------------------------------------

OrbitIntegrator::OrbitIntegrator(const CurveParams& cv, const PhaseState& init,
                                 const IntegratorConfig& cfg)
    : cv_(cv), cfg_(cfg), st_(init) {
    if (cv.kcase == CurveCase::B && !cfg.allow_case_b)
        throw DomainError("case-B integration is experimental; enable allow_case_b");
    auto [lo, hi] = branch_angles(cv);
    for (int a = 0; a < 3; ++a) {
        if (st_.phi[a] < lo - 1e-12 || st_.phi[a] > hi + 1e-12)
            throw DomainError("initial angle outside the branch interval");
        if (st_.sheet[a] != 1 && st_.sheet[a] != -1)
            throw DomainError("sheet signs must be +1 or -1");
    }
    if (std::abs(st_.phi[0] - st_.phi[1]) < cfg.eps_collision &&
        std::abs(st_.phi[1] - st_.phi[2]) < cfg.eps_collision &&
        std::abs(st_.phi[0] - st_.phi[2]) < cfg.eps_collision)
        throw TripleCollision("initial angles all coincide");

    // Components starting on (or numerically at) a branch angle begin in the
    // t-chart; a coincident pair begins at its crossing and is released by the
    // series on the first step.
    for (int a = 0; a < 3; ++a) {
        double dist_hi = hi - st_.phi[a], dist_lo = st_.phi[a] - lo;
        if (std::min(dist_hi, dist_lo) < 1e-12 || ktilde(cv_, st_.phi[a]) < cfg_.eps_branch) {
            bool upper = dist_hi < dist_lo;
            double dist = std::max(upper ? dist_hi : dist_lo, 0.0);
            BranchChart ch;
            ch.comp = a;
            ch.upper = upper;
            ch.t = (upper ? -st_.sheet[a] : st_.sheet[a]) * std::sqrt(dist);
            ch.t_exit = std::max(std::abs(ch.t), 0.0);
            ch.xi0 = xi_branch(cv_, ch.t, upper);
            charts_[a] = ch;
        }
    }
    for (auto [p, q] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        if (!charts_[p] && !charts_[q] && std::abs(st_.phi[p] - st_.phi[q]) < kCoincident) {
            pending_pair_exit_ = true;
            pending_p_ = p;
            pending_q_ = q;
        }
    }
}

double OrbitIntegrator::numerator(int a) const {
    return flow_numerator(st_.phi, a, cfg_.direction);
}

void OrbitIntegrator::sync_from_charts() {
    auto [lo, hi] = branch_angles(cv_);
    for (int a = 0; a < 3; ++a) {
        if (!charts_[a]) continue;
        const BranchChart& ch = *charts_[a];
        st_.phi[a] = ch.upper ? hi - ch.t * ch.t : lo + ch.t * ch.t;
        if (ch.t != 0.0)
            st_.sheet[a] = ch.upper ? (ch.t > 0 ? -1 : +1) : (ch.t > 0 ? +1 : -1);
    }
}

Vec3 OrbitIntegrator::velocities() const {
    Vec3 v{};
    for (int a = 0; a < 3; ++a) {
        double dd = denom_dd(st_.phi, a);
        double num = numerator(a);
        if (charts_[a]) {
            v[a] = w_branch(cv_, charts_[a]->t, charts_[a]->upper) * num / dd;
        } else {
            v[a] = 2.0 * st_.sheet[a] * ktilde(cv_, st_.phi[a]) * num / dd;
        }
    }
    return v;
}

bool OrbitIntegrator::maybe_enter_charts(const Vec3& v, double h) {
    auto [lo, hi] = branch_angles(cv_);
    bool entered = false;
    for (int a = 0; a < 3; ++a) {
        if (charts_[a]) continue;
        double next = st_.phi[a] + v[a] * h;
        bool overshoot_hi = next >= hi, overshoot_lo = next <= lo;
        if (!overshoot_hi && !overshoot_lo && ktilde(cv_, st_.phi[a]) >= cfg_.eps_branch)
            continue;
        bool upper = overshoot_hi || (!overshoot_lo && st_.phi[a] > 0.5 * (lo + hi));
        double dist = std::max(upper ? hi - st_.phi[a] : st_.phi[a] - lo, 0.0);
        BranchChart ch;
        ch.comp = a;
        ch.upper = upper;
        ch.t = (upper ? -st_.sheet[a] : st_.sheet[a]) * std::sqrt(dist);
        ch.t_exit = std::abs(ch.t);
        ch.xi0 = xi_branch(cv_, ch.t, upper);
        charts_[a] = ch;
        entered = true;
    }
    return entered;
}

void OrbitIntegrator::maybe_exit_charts(const Vec3& v) {
    for (int a = 0; a < 3; ++a) {
        if (!charts_[a]) continue;
        BranchChart& ch = *charts_[a];
        if (ch.t == 0.0 || ch.t * v[a] <= 0.0) continue;        // not yet receding
        if (std::abs(ch.t) <= ch.t_exit) continue;              // inside the mirror window
        double kt = std::abs(ch.t) * w_branch(cv_, ch.t, ch.upper);
        if (kt < 3.0 * cfg_.eps_branch && std::abs(ch.t) < 0.3) continue;
        st_.sheet[a] = ch.upper ? (ch.t > 0 ? -1 : +1) : (ch.t > 0 ? +1 : -1);
        auto [lo, hi] = branch_angles(cv_);
        st_.phi[a] = ch.upper ? hi - ch.t * ch.t : lo + ch.t * ch.t;
        charts_[a].reset();
    }
}

std::optional<std::pair<int, int>> OrbitIntegrator::collision_pending(const Vec3& v,
                                                                      double h) const {
    for (auto [p, q] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        if (charts_[p] || charts_[q]) continue;
        if (st_.sheet[p] != st_.sheet[q]) continue;   // crossings happen on equal sheets
        double gap = st_.phi[q] - st_.phi[p];
        double rel = v[q] - v[p];
        bool approaching = gap * rel < 0.0;
        bool swaps = gap != 0.0 && gap * (gap + rel * h) <= 0.0;
        bool window = std::abs(std::sin(gap)) < cfg_.eps_collision && approaching;
        if (swaps || window) return std::pair{p, q};
    }
    return std::nullopt;
}

double OrbitIntegrator::collision_cross(int p, int q, const Vec3& v) {
    int third = 3 - p - q;
    double mid = 0.5 * (st_.phi[p] + st_.phi[q]);
    double gap = std::abs(st_.phi[q] - st_.phi[p]);
    if (std::abs(st_.phi[third] - mid) < 64.0 * std::max(gap, cfg_.eps_collision))
        throw TripleCollision("all three angles coincide at a crossing");

    double K0 = st_.sheet[p] * ktilde(cv_, mid);
    CollisionExpansion ex = make_collision_expansion(cv_, mid, st_.phi[third], K0, 0.0,
                                                     cfg_.direction);
    if (ex.a_coef <= 0.0)
        return 0.0;   // not on the approaching side after all; fall back to Euler
    double bsum = ex.b1_coef + ex.b2_coef;
    double eta1 = -0.5 * gap + bsum * gap * gap / 8.0;
    double eta2 = eta1 - bsum * eta1 * eta1;
    ex.phi0 = mid - 0.5 * bsum * eta1 * eta1;
    ex.eta1 = eta1;
    ex.eta2 = eta2;
    double ds_in = eta1 * eta1 / ex.a_coef - bsum * eta1 * eta1 * eta1 / ex.a_coef;
    ex.s0 = s_ + ds_in;
    double eta1x = -eta1;
    double eta2x = eta1x - bsum * eta1x * eta1x;
    double ds_out = eta1x * eta1x / ex.a_coef - bsum * eta1x * eta1x * eta1x / ex.a_coef;
    double consumed = ds_in + ds_out;

    int up = v[p] > v[q] ? p : q;   // ascending track passes through
    int dn = up == p ? q : p;
    st_.phi[up] = ex.phi0 + eta1x;
    st_.phi[dn] = ex.phi0 - eta2x;
    st_.phi[third] += v[third] * consumed;
    st_.sheet[p] = -st_.sheet[p];
    st_.sheet[q] = -st_.sheet[q];
    auto [lo, hi] = branch_angles(cv_);
    if (st_.phi[up] >= hi || st_.phi[dn] <= lo)
        throw ExpansionDiverged("collision exit left the branch interval");

    events_.push_back({Event::Type::Collision, ex.s0, std::min(p, q), std::max(p, q)});
    expansion_ = ex;
    du_ = add(du_, scale(cfg_.direction == FlowDirection::V2_t ? kBasisE2 : kBasisE1,
                         consumed));
    return consumed;
}

void OrbitIntegrator::accumulate_du(const PhaseState& before, const PhaseState& after,
                                    double h, bool clean) {
    const Vec3c& flat = cfg_.direction == FlowDirection::V2_t ? kBasisE2 : kBasisE1;
    if (!clean) {
        du_ = add(du_, scale(flat, h));
        return;
    }
    // trapezoidal evaluation of the one-forms along the actual polygonal path
    Mat3c La = matL(cv_, before), Lb = matL(cv_, after);
    Vec3c inc{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            inc[i] += 0.5 * (La.m[i][j] + Lb.m[i][j]) * (after.phi[j] - before.phi[j]);
    du_ = add(du_, inc);
}

double OrbitIntegrator::step() {
    if (pending_pair_exit_) {
        pending_pair_exit_ = false;
        int p = pending_p_, q = pending_q_, third = 3 - p - q;
        double phi0 = 0.5 * (st_.phi[p] + st_.phi[q]);
        double K0 = st_.sheet[p] * ktilde(cv_, phi0);
        double phi3 = st_.phi[third];
        if (charts_[third]) {
            auto [lo, hi] = branch_angles(cv_);
            phi3 = charts_[third]->upper ? hi : lo;
        }
        CollisionExpansion ex =
            make_collision_expansion(cv_, phi0, phi3, K0, s_, cfg_.direction);
        if (ex.a_coef > 0.0) {
            // the given sheets are the approaching side: the crossing is now
            st_.sheet[p] = -st_.sheet[p];
            st_.sheet[q] = -st_.sheet[q];
            ex.a_coef = -ex.a_coef;
        }
        double amag = -ex.a_coef;
        double bsum = ex.b1_coef + ex.b2_coef;
        double eta1 = std::sqrt(amag * cfg_.ds);
        eta1 *= 1.0 + 0.5 * bsum * eta1;   // one Newton refinement of s(eta1) = ds
        double eta2 = eta1 - bsum * eta1 * eta1;
        st_.phi[q] = phi0 + eta1;
        st_.phi[p] = phi0 - eta2;
        double consumed = eta1 * eta1 / amag - bsum * eta1 * eta1 * eta1 / amag;
        s_ += consumed;
        du_ = add(du_, scale(cfg_.direction == FlowDirection::V2_t ? kBasisE2 : kBasisE1,
                             consumed));
        return consumed;
    }

    double remaining = cfg_.ds;
    double consumed = 0.0;
    long pieces = 0;
    while (remaining > 1e-18) {
        if (++pieces > kMaxPieces)
            throw ExpansionDiverged("step did not finish within the piece budget");
        sync_from_charts();
        if (min_pair_gap(st_.phi) < cfg_.eps_collision &&
            std::max({std::abs(st_.phi[0] - st_.phi[1]), std::abs(st_.phi[1] - st_.phi[2]),
                      std::abs(st_.phi[0] - st_.phi[2])}) < cfg_.eps_collision)
            throw TripleCollision("all three angles within eps_collision");
        Vec3 v = velocities();
        if (maybe_enter_charts(v, remaining)) continue;

        double vmax = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
        double h = remaining;
        if (vmax * h > kStepCap) h = kStepCap / vmax;

        if (auto pq = collision_pending(v, h)) {
            double d = collision_cross(pq->first, pq->second, v);
            if (d > 0.0) {
                s_ += d;
                consumed += d;
                break;
            }
        }

        PhaseState before = st_;
        bool clean = min_pair_gap(st_.phi) > kCleanGap;
        for (int a = 0; a < 3; ++a) {
            if (charts_[a]) {
                clean = false;
                BranchChart& ch = *charts_[a];
                double tn = ch.t + v[a] * h;
                if (ch.t != 0.0 && tn * ch.t < 0.0)
                    events_.push_back({Event::Type::Branch, s_ - ch.t / v[a], a, -1});
                ch.t = tn;
            } else {
                if (ktilde(cv_, st_.phi[a]) < kCleanKt) clean = false;
                st_.phi[a] += v[a] * h;
            }
        }
        sync_from_charts();
        accumulate_du(before, st_, h, clean);
        s_ += h;
        consumed += h;
        remaining -= h;
        maybe_exit_charts(v);
    }
    return consumed;
}

// --- spec-level operations ---------------------------------------------------

OrbitResult integrate(const CurveParams& cv, const PhaseState& init,
                      const IntegratorConfig& cfg) {
    OrbitIntegrator integ(cv, init, cfg);
    OrbitResult out;

    auto record = [&]() {
        OrbitSample smp;
        smp.s = integ.s();
        smp.state = integ.state();
        smp.psi_r = psi_r(smp.state);
        smp.dpsi_r_ds = dpsi_r_ds(cv, smp.state, cfg.eps_collision);
        smp.dpsi_i_du3 = dpsi_i_du3(cv, smp.state, cfg.eps_collision);
        smp.gauge_A = gauge_A(cv, smp.state, cfg.eps_collision);
        smp.psi_i_circ = 0.0;
        smp.du_accum = integ.du_accum();
        out.samples.push_back(smp);
    };

    record();   // s = 0 sample equals the initial state
    long stride = 0;
    try {
        while (integ.s() < cfg.s_max) {
            integ.step();
            if (++stride >= cfg.output_stride) {
                stride = 0;
                record();
            }
        }
        if (stride != 0) record();
    } catch (const TripleCollision&) {
        out.triple_collision_abort = true;
    }
    out.events = integ.events();
    out.s_end = integ.s();
    auto circ = psi_i_circ_accumulate(out.samples);
    for (size_t i = 0; i < out.samples.size(); ++i) out.samples[i].psi_i_circ = circ[i];
    return out;
}

PhaseState step(const CurveParams& cv, const PhaseState& st, const IntegratorConfig& cfg) {
    for (int a = 0; a < 3; ++a) {
        if (ktilde(cv, st.phi[a]) < cfg.eps_branch)
            return branch_step(cv, st, a, cfg);
    }
    Vec3 v = rhs(cv, st, cfg.direction);
    for (auto [p, q] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        double gap = st.phi[q] - st.phi[p];
        if (st.sheet[p] == st.sheet[q] && std::abs(std::sin(gap)) < cfg.eps_collision &&
            gap * (v[q] - v[p]) < 0.0)
            return collision_step(cv, st, {p, q}, cfg);
    }
    OrbitIntegrator integ(cv, st, cfg);
    integ.step();
    return integ.state();
}

PhaseState branch_step(const CurveParams& cv, const PhaseState& st, int a,
                       const IntegratorConfig& cfg, double* ds_out) {
    OrbitIntegrator integ(cv, st, cfg);
    // stepping enters the chart on its own once the component is this close;
    // carry on until the chart is left again
    double consumed = 0.0;
    long guard = 0;
    do {
        consumed += integ.step();
        if (++guard > 100'000'000L / std::max(1L, long(1.0 / cfg.ds)))
            throw ExpansionDiverged("branch passage did not complete");
    } while (integ.in_branch_chart(a));
    if (ds_out) *ds_out = consumed;
    return integ.state();
}

PhaseState collision_step(const CurveParams& cv, const PhaseState& st,
                          std::pair<int, int> pair, const IntegratorConfig& cfg,
                          double* ds_out, CollisionExpansion* exp_out) {
    if (st.sheet[pair.first] != st.sheet[pair.second])
        throw CollisionSingular("collision_step: pair sheets differ (no crossing here)");
    OrbitIntegrator integ(cv, st, cfg);
    double consumed = 0.0;
    long guard = 0;
    // advance until the pair's crossing has been recorded
    while (!integ.last_expansion()) {
        consumed += integ.step();
        if (++guard > 1'000'000)
            throw ExpansionDiverged("no crossing reached from the given state");
    }
    if (ds_out) *ds_out = consumed;
    if (exp_out) *exp_out = *integ.last_expansion();
    return integ.state();
}

} // namespace mkdv
