#include "mkdv/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace mkdv {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key, "not a number: '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + v + "'");
    }
}

} // namespace

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("file", "cannot open '" + path + "'");
    RunConfig rc;
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    auto take = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    if (auto* v = take("k1")) rc.k1 = to_double("k1", *v);
    if (auto* v = take("k2")) rc.k2 = to_double("k2", *v);
    if (auto* v = take("k3")) rc.k3 = to_double("k3", *v);
    if (auto* v = take("case")) {
        if (*v == "A") rc.kcase = CurveCase::A;
        else if (*v == "B") rc.kcase = CurveCase::B;
        else throw ConfigError("case", "must be A or B, got '" + *v + "'");
    }
    if (auto* v = take("init_mode")) {
        if (*v == "default") rc.init_mode = RunConfig::InitMode::Default;
        else if (*v == "explicit") rc.init_mode = RunConfig::InitMode::Explicit;
        else throw ConfigError("init_mode", "must be default or explicit");
    }
    if (auto* v = take("phi_c")) rc.phi_c = to_double("phi_c", *v);
    const char* phik[3] = {"phi1", "phi2", "phi3"};
    const char* gamk[3] = {"sheet1", "sheet2", "sheet3"};
    for (int i = 0; i < 3; ++i) {
        if (auto* v = take(phik[i])) rc.phi[i] = to_double(phik[i], *v);
        if (auto* v = take(gamk[i])) rc.sheet[i] = to_int(gamk[i], *v);
    }
    if (auto* v = take("ds")) rc.integrator.ds = to_double("ds", *v);
    if (auto* v = take("s_max")) rc.integrator.s_max = to_double("s_max", *v);
    if (auto* v = take("output_stride")) rc.integrator.output_stride = to_int("output_stride", *v);
    if (auto* v = take("eps_branch")) rc.integrator.eps_branch = to_double("eps_branch", *v);
    if (auto* v = take("eps_collision"))
        rc.integrator.eps_collision = to_double("eps_collision", *v);
    if (auto* v = take("direction")) {
        if (*v == "V1_s") rc.integrator.direction = FlowDirection::V1_s;
        else if (*v == "V2_t") rc.integrator.direction = FlowDirection::V2_t;
        else throw ConfigError("direction", "must be V1_s or V2_t");
    }
    if (auto* v = take("allow_case_b")) rc.integrator.allow_case_b = to_int("allow_case_b", *v) != 0;
    if (auto* v = take("csv")) rc.csv_path = *v;
    if (auto* v = take("events")) rc.events_path = *v;
    if (auto* v = take("precision")) rc.precision = to_int("precision", *v);

    static const char* known[] = {"k1", "k2", "k3", "case", "init_mode", "phi_c",
                                  "phi1", "phi2", "phi3", "sheet1", "sheet2", "sheet3",
                                  "ds", "s_max", "output_stride", "eps_branch",
                                  "eps_collision", "direction", "allow_case_b",
                                  "csv", "events", "precision"};
    for (const auto& [k, v] : kv) {
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* s) { return k == s; }) == std::end(known))
            throw ConfigError(k, "unknown key");
    }
    return rc;
}

void validate(const RunConfig& rc) {
    if (!(rc.k1 > 1.0)) throw ConfigError("k1", "must be > 1");
    if (!(rc.k2 > 1.0)) throw ConfigError("k2", "must be > 1");
    if (!(rc.k3 > 1.0)) throw ConfigError("k3", "must be > 1");
    if (rc.kcase == CurveCase::A && !(rc.k1 > rc.k2 && rc.k2 > rc.k3))
        throw ConfigError("k2", "case A needs k1 > k2 > k3 > 1");
    if (rc.kcase == CurveCase::B && !(rc.k3 > rc.k2 && rc.k2 > rc.k1))
        throw ConfigError("k2", "case B needs k3 > k2 > k1 > 1");
    if (!(rc.integrator.ds > 0)) throw ConfigError("ds", "must be positive");
    if (rc.integrator.s_max < 0) throw ConfigError("s_max", "must be nonnegative");
    if (rc.integrator.output_stride <= 0) throw ConfigError("output_stride", "must be positive");
    if (!(rc.integrator.eps_branch > 0)) throw ConfigError("eps_branch", "must be positive");
    if (!(rc.integrator.eps_collision > 0)) throw ConfigError("eps_collision", "must be positive");
    if (rc.precision < 1 || rc.precision > 17) throw ConfigError("precision", "must be in [1, 17]");
    if (rc.init_mode == RunConfig::InitMode::Explicit) {
        for (int i = 0; i < 3; ++i)
            if (rc.sheet[i] != 1 && rc.sheet[i] != -1)
                throw ConfigError("sheet" + std::to_string(i + 1), "must be +1 or -1");
    }
}

CurveParams curve_of(const RunConfig& rc) {
    return make_curve(rc.k1, rc.k2, rc.k3, rc.kcase);
}

PhaseState initial_state(const RunConfig& rc, const CurveParams& cv) {
    if (rc.init_mode == RunConfig::InitMode::Default) return default_init(cv, rc.phi_c);
    PhaseState st;
    st.phi = rc.phi;
    st.sheet = rc.sheet;
    return st;
}

} // namespace mkdv
