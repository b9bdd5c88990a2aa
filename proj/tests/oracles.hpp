#pragma once

// Test-only helpers: deterministic random states, independent brute-force
// oracles, and a small least-squares fitter. Nothing here reuses the library
// code paths it is meant to check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mkdv/abelmat.hpp"
#include "mkdv/curve.hpp"

namespace oracles {

using mkdv::cplx;
using mkdv::CurveParams;
using mkdv::PhaseState;
using mkdv::Vec3;

inline std::mt19937_64 make_rng(std::uint64_t seed = 0xC0FFEEULL) {
    return std::mt19937_64(seed);
}

inline PhaseState random_state(const CurveParams& cv, std::mt19937_64& rng,
                               double margin = 0.02, double min_gap = 5e-3) {
    auto [lo, hi] = branch_angles(cv);
    std::uniform_real_distribution<double> ang(lo + margin * (hi - lo),
                                               hi - margin * (hi - lo));
    std::uniform_int_distribution<int> coin(0, 1);
    while (true) {
        PhaseState st;
        for (int i = 0; i < 3; ++i) {
            st.phi[i] = ang(rng);
            st.sheet[i] = coin(rng) ? 1 : -1;
        }
        if (mkdv::min_pair_gap(st.phi) > min_gap) return st;
    }
}

// lambda6 recomputed from scratch: complex branch points from (alpha, beta)
// with long-double arithmetic.
inline double lambda6_bruteforce(double k1, double k2, double k3) {
    long double ks[3] = {(long double)k1, (long double)k2, (long double)k3};
    std::complex<long double> sum = -1.0L; // b0
    for (int a = 0; a < 3; ++a) {
        long double beta = 1.0L / ks[a];
        long double alpha = std::sqrt(1.0L - beta * beta);
        std::complex<long double> r(alpha, beta);
        std::complex<long double> e1 = r * r;
        std::complex<long double> e2 = std::conj(r) * std::conj(r);
        sum += (e1 - 1.0L) + (e2 - 1.0L);
    }
    return (double)(-sum.real());
}

// Central finite difference of sheet * Ktilde.
inline double kprime_fd(const CurveParams& cv, double phi, int sheet, double h = 1e-5) {
    return (sheet * mkdv::ktilde(cv, phi + h) - sheet * mkdv::ktilde(cv, phi - h)) / (2 * h);
}

// Least-squares polynomial fit y ~ sum c_k x^k, degree <= 3, via normal
// equations with Gaussian elimination.
inline std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y,
                                   int degree) {
    int n = degree + 1;
    std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
    for (size_t i = 0; i < x.size(); ++i) {
        double xp[8] = {1.0};
        for (int k = 1; k < 2 * n; ++k) xp[k] = xp[k - 1] * x[i];
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) A[r][c] += xp[r + c];
            A[r][n] += xp[r] * y[i];
        }
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = A[r][col] / A[col][col];
            for (int c = col; c <= n; ++c) A[r][c] -= f * A[col][c];
        }
    }
    std::vector<double> coef(n);
    for (int r = 0; r < n; ++r) coef[r] = A[r][n] / A[r][r];
    return coef;
}

} // namespace oracles
