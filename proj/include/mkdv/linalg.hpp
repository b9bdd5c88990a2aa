#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace mkdv {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Vec3c = std::array<cplx, 3>;

struct Mat3c {
    cplx m[3][3]{};

    static Mat3c identity() {
        Mat3c r;
        for (int i = 0; i < 3; ++i) r.m[i][i] = 1.0;
        return r;
    }

    Vec3c operator*(const Vec3c& v) const {
        Vec3c r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i] += m[i][j] * v[j];
        return r;
    }

    Vec3c operator*(const Vec3& v) const {
        Vec3c r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i] += m[i][j] * v[j];
        return r;
    }

    Mat3c operator*(const Mat3c& o) const {
        Mat3c r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
        return r;
    }

    cplx det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
             - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
             + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
};

inline double max_abs(const Vec3c& v) {
    double r = 0.0;
    for (const auto& x : v) r = std::max(r, std::abs(x));
    return r;
}

inline double max_abs_diff(const Mat3c& a, const Mat3c& b) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(a.m[i][j] - b.m[i][j]));
    return r;
}

inline Vec3c sub(const Vec3c& a, const Vec3c& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3c scale(const Vec3c& a, cplx c) {
    return {a[0] * c, a[1] * c, a[2] * c};
}

inline Vec3c add(const Vec3c& a, const Vec3c& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

} // namespace mkdv
