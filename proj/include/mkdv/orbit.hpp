#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "mkdv/abelmat.hpp"
#include "mkdv/observe.hpp"

namespace mkdv {

enum class FlowDirection { V1_s, V2_t };

struct IntegratorConfig {
    double ds = 1e-5;
    double s_max = 1.0;
    double eps_branch = 1e-8;     // Ktilde threshold for entering the branch chart
    double eps_collision = 1e-6;  // |sin(phi_a - phi_b)| threshold for the collision chart
    int output_stride = 100;
    FlowDirection direction = FlowDirection::V1_s;
    bool allow_case_b = false;    // case-B integration is experimental
};

/// Local square-root chart at a branch angle: phi = phi_b - t^2 at the upper
/// endpoint (phi_b^- + t^2 at the lower). The sheet sign is carried by t:
/// sheet = -sign(t) upper, +sign(t) lower, so the flow is smooth through t = 0.
struct BranchChart {
    int comp;
    bool upper;
    double t;
    double t_exit;   // |t| at entry; the chart is left past the mirror point
    double xi0;      // series factor xi(t) at entry
};

/// Local series data at a pair crossing phi_a = phi_b (third angle distinct):
///   eta2(eta1) = eta1 - (b1+b2) eta1^2 + O(eta1^3)
///   s - s0     = -eta1^2/a + (b1+b2) eta1^3/a + O(eta1^4)
struct CollisionExpansion {
    double s0;
    double phi0;
    double eta1, eta2;   // entry offsets (negative on approach)
    double a_coef;       // 2 K0 N(phi0, phi3) / sin(phi3 - phi0); > 0 approaching
    double b1_coef;      // K0'/K0 + cot(phi3 - phi0)
    double b2_coef;      // -dN/dphi0 / N; tan(phi0 + phi3) for the s-flow
};

struct Event {
    enum class Type { Branch, Collision };
    Type type;
    double s;
    int a;        // component (branch) or first of the pair
    int b = -1;   // second of the pair, -1 for branch events
};

/// Angle velocities of the flow: d phi_a / ds = 2 sheet_a Ktilde_a N_a / dd_a
/// with N_a = cos(phi_b + phi_c) for the s-flow (V2_t: 4 sin phi_b sin phi_c).
Vec3 rhs(const CurveParams& cv, const PhaseState& st,
         FlowDirection dir = FlowDirection::V1_s);

/// Initial configuration (phi_b^+, phi_c, phi_c) with the coincident pair on
/// equal sheets chosen so the pair separates forward in s; the gauge
/// diagnostic vanishes there (Lemma-style initial condition).
PhaseState default_init(const CurveParams& cv, double phi_c);

struct OrbitResult {
    std::vector<OrbitSample> samples;
    std::vector<Event> events;
    bool triple_collision_abort = false;
    double s_end = 0.0;
};

OrbitResult integrate(const CurveParams& cv, const PhaseState& init,
                      const IntegratorConfig& cfg);

// --- stepping core ----------------------------------------------------------

/// Stateful integrator; keeps per-component branch charts across steps so the
/// square-root turning is resolved over as many ds-steps as it needs.
class OrbitIntegrator {
  public:
    OrbitIntegrator(const CurveParams& cv, const PhaseState& init,
                    const IntegratorConfig& cfg);

    /// Advance one nominal step (collision crossings consume their own series
    /// step length). Returns the s actually consumed.
    double step();

    const PhaseState& state() const { return st_; }
    double s() const { return s_; }
    const Vec3c& du_accum() const { return du_; }
    const std::vector<Event>& events() const { return events_; }
    bool in_branch_chart(int comp) const { return charts_[comp].has_value(); }
    const std::optional<BranchChart>& chart(int comp) const { return charts_[comp]; }
    /// True while the most recent collision expansion is fresh (set by a crossing).
    const std::optional<CollisionExpansion>& last_expansion() const { return expansion_; }

  private:
    Vec3 velocities() const;
    double numerator(int a) const;
    bool maybe_enter_charts(const Vec3& v, double h);
    void maybe_exit_charts(const Vec3& v);
    std::optional<std::pair<int, int>> collision_pending(const Vec3& v, double h) const;
    double collision_cross(int p, int q, const Vec3& v);
    void sync_from_charts();
    void accumulate_du(const PhaseState& before, const PhaseState& after, double h,
                       bool clean);

    const CurveParams& cv_;
    IntegratorConfig cfg_;
    PhaseState st_;
    std::array<std::optional<BranchChart>, 3> charts_;
    std::optional<CollisionExpansion> expansion_;
    std::vector<Event> events_;
    Vec3c du_{};
    double s_ = 0.0;
    bool pending_pair_exit_ = false;
    int pending_p_ = -1, pending_q_ = -1;
};

/// One dispatching update of the bare state: plain Euler far from the singular
/// loci, the branch chart when Ktilde(phi_a) < eps_branch (or the step would
/// leave the branch interval), the collision series when a pair is about to
/// cross. Branch and collision passages are resolved in full before returning.
PhaseState step(const CurveParams& cv, const PhaseState& st, const IntegratorConfig& cfg);

/// Carry component a through its branch turning point in the t-chart and
/// return the state just after the chart is left; the sheet sign of a is
/// flipped when t crosses zero. ds_out, when given, receives the s consumed.
PhaseState branch_step(const CurveParams& cv, const PhaseState& st, int a,
                       const IntegratorConfig& cfg, double* ds_out = nullptr);

/// Carry the pair (p, q) through its crossing with the local series and return
/// the state just past it (labels' roles exchanged, both pair sheets flipped).
PhaseState collision_step(const CurveParams& cv, const PhaseState& st,
                          std::pair<int, int> pair, const IntegratorConfig& cfg,
                          double* ds_out = nullptr,
                          CollisionExpansion* exp_out = nullptr);

/// Series coefficients of the crossing of the pair at phi0 (signed K0, i.e.
/// sheet * Ktilde(phi0)) against the third angle.
CollisionExpansion make_collision_expansion(const CurveParams& cv, double phi0,
                                            double phi_third, double K0, double s0,
                                            FlowDirection dir = FlowDirection::V1_s);

} // namespace mkdv
