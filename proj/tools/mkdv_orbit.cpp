#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mkdv/csv.hpp"
#include "mkdv/run_config.hpp"
#include "mkdv/verify.hpp"

namespace {

using namespace mkdv;

struct FigureSetup {
    double k1, k2, k3;
    double ref_dpsi_r, ref_dpsi_i;
};

const FigureSetup kFig2{1.0400, 1.0392, 1.010, 3.66894, 1.00952e-2};
const FigureSetup kFig3{1.0260, 1.0259, 1.0008, 0.0, 0.0};

struct FigureOutcome {
    double max_dpsi_r = 0, max_dpsi_i = 0;
    OrbitResult result;
};

FigureOutcome run_figure(const FigureSetup& fs, double ds, double s_max) {
    CurveParams cv = make_curve(fs.k1, fs.k2, fs.k3, CurveCase::A);
    PhaseState init = default_init(cv, -0.90);
    IntegratorConfig cfg;
    cfg.ds = ds;
    cfg.s_max = s_max;
    cfg.output_stride = 100;
    FigureOutcome out;
    out.result = integrate(cv, init, cfg);
    for (const auto& r : out.result.samples) {
        out.max_dpsi_r = std::max(out.max_dpsi_r, std::abs(r.dpsi_r_ds));
        out.max_dpsi_i = std::max(out.max_dpsi_i, std::abs(r.dpsi_i_du3));
    }
    return out;
}

int cmd_run(const std::string& config_path) {
    RunConfig rc;
    try {
        rc = parse_run_config(config_path);
        validate(rc);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    try {
        CurveParams cv = curve_of(rc);
        PhaseState init = initial_state(rc, cv);
        OrbitResult res = integrate(cv, init, rc.integrator);
        write_csv(rc.csv_path, res.samples, rc.precision);
        write_events(rc.events_path, res.events, rc.precision);
        std::cout << "wrote " << res.samples.size() << " samples to " << rc.csv_path << ", "
                  << res.events.size() << " events to " << rc.events_path << "\n";
        if (res.triple_collision_abort) {
            std::cerr << "aborted: triple coincidence at s=" << res.s_end
                      << " (partial output retained)\n";
            return 2;
        }
        return 0;
    } catch (const OrderingViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const TripleCollision& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return 2;
    }
}

int cmd_verify(const std::string& level, std::uint64_t seed, bool inject) {
    int n = level == "full" ? 10000 : 100;
    auto results = run_verification(n, seed, inject);
    bool all = true;
    std::printf("verification level=%s states=%d seed=%llu\n", level.c_str(), n,
                (unsigned long long)seed);
    for (const auto& p : results) {
        std::printf("  %-34s max residual %.3e  (tol %.0e)  %s\n", p.name.c_str(),
                    p.max_residual, p.tolerance, p.pass ? "ok" : "FAIL");
        all = all && p.pass;
    }
    if (!all) {
        std::printf("failed properties:");
        for (const auto& p : results)
            if (!p.pass) std::printf(" %s", p.name.c_str());
        std::printf("\n");
        return 3;
    }
    return 0;
}

int cmd_figure(const std::string& which, double ds, double s_max, std::string out_path) {
    if (which != "fig2" && which != "fig3") {
        std::cerr << "error: unknown figure '" << which << "' (expected fig2 or fig3)\n";
        return 1;
    }
    const FigureSetup& fs = which == "fig2" ? kFig2 : kFig3;
    if (out_path.empty()) out_path = which + ".csv";
    std::string events_path = out_path;
    auto dot = events_path.rfind('.');
    events_path = (dot == std::string::npos ? events_path : events_path.substr(0, dot)) +
                  "_events.txt";

    FigureOutcome out = run_figure(fs, ds, s_max);
    write_csv(out_path, out.result.samples);
    write_events(events_path, out.result.events);

    std::printf("%s: curve (%.4f, %.4f, %.4f), init (phi_b, -0.90, -0.90), ds=%g, s_max=%g\n",
                which.c_str(), fs.k1, fs.k2, fs.k3, ds, s_max);
    std::printf("  samples %zu, events %zu, wrote %s / %s\n", out.result.samples.size(),
                out.result.events.size(), out_path.c_str(), events_path.c_str());
    std::printf("  max|dpsi_r_ds|  = %.6f", out.max_dpsi_r);
    if (which == "fig2") std::printf("   (reference 3.66894)");
    std::printf("\n  max|dpsi_i_du3| = %.6e", out.max_dpsi_i);
    if (which == "fig2") std::printf("   (reference 1.00952e-02)");
    std::printf("\n  ratio           = %.6e\n", out.max_dpsi_i / out.max_dpsi_r);

    if (which == "fig3") {
        FigureOutcome ref = run_figure(kFig2, ds, s_max);
        double r2 = ref.max_dpsi_i / ref.max_dpsi_r;
        double r3 = out.max_dpsi_i / out.max_dpsi_r;
        std::printf("  fig2 ratio      = %.6e -> gauge deviation %s the fig2 level\n", r2,
                    r3 > r2 ? "exceeds" : "does not exceed");
    }
    if (out.result.triple_collision_abort) return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"genus-3 real-orbit integrator for the gauged MKdV cross-section"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "integrate an orbit described by a config file");
    run->add_option("config", config_path, "key = value run configuration")->required();

    std::string level = "quick";
    std::uint64_t seed = 20240811ULL;
    bool inject = false;
    auto* verify = app.add_subcommand("verify", "randomized identity/property suite");
    verify->add_option("--level", level, "quick (100 states) or full (10000)")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_flag("--inject-sign-fault", inject,
                     "corrupt a matrix sign to exercise the failure path");

    std::string which, fig_out;
    double fig_ds = 1e-5, fig_smax = 6.0;
    auto* figure = app.add_subcommand("figure", "canned reference-figure runs");
    figure->add_option("which", which, "fig2 or fig3")->required();
    figure->add_option("--ds", fig_ds, "Euler step");
    figure->add_option("--s-max", fig_smax, "integration horizon");
    figure->add_option("--out", fig_out, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (verify->parsed()) return cmd_verify(level, seed, inject);
        if (figure->parsed()) return cmd_figure(which, fig_ds, fig_smax, fig_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
