#include "mkdv/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mkdv {

namespace {

std::string fmt(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

} // namespace

void write_csv(const std::string& path, const std::vector<OrbitSample>& samples,
               int precision) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << kCsvHeader << "\n";
    for (const auto& r : samples) {
        out << fmt(r.s, precision);
        for (int i = 0; i < 3; ++i) out << ',' << fmt(r.state.phi[i], precision);
        for (int i = 0; i < 3; ++i) out << ',' << r.state.sheet[i];
        out << ',' << fmt(r.psi_r, precision) << ',' << fmt(r.dpsi_r_ds, precision) << ','
            << fmt(r.dpsi_i_du3, precision) << ',' << fmt(r.psi_i_circ, precision) << ','
            << fmt(r.gauge_A, precision);
        for (int i = 0; i < 3; ++i)
            out << ',' << fmt(r.du_accum[i].real(), precision) << ','
                << fmt(r.du_accum[i].imag(), precision);
        out << "\n";
    }
}

std::vector<OrbitSample> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv " + path);
    if (line != kCsvHeader) throw std::runtime_error("unexpected csv header in " + path);
    std::vector<OrbitSample> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 18) throw std::runtime_error("bad csv row in " + path);
        OrbitSample r;
        r.s = v[0];
        r.state.phi = {v[1], v[2], v[3]};
        r.state.sheet = {int(v[4]), int(v[5]), int(v[6])};
        r.psi_r = v[7];
        r.dpsi_r_ds = v[8];
        r.dpsi_i_du3 = v[9];
        r.psi_i_circ = v[10];
        r.gauge_A = v[11];
        r.du_accum = {cplx(v[12], v[13]), cplx(v[14], v[15]), cplx(v[16], v[17])};
        rows.push_back(r);
    }
    return rows;
}

void write_events(const std::string& path, const std::vector<Event>& events, int precision) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& e : events) {
        out << "s=" << fmt(e.s, precision) << " type="
            << (e.type == Event::Type::Branch ? "branch" : "collision") << " comp=" << (e.a + 1);
        if (e.type == Event::Type::Collision) out << ',' << (e.b + 1);
        out << "\n";
    }
}

} // namespace mkdv
