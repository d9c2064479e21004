#include "entroflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "entroflow/errors.hpp"

namespace entroflow {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string join_key(const std::string& prefix, const char* key) {
    return prefix.empty() ? std::string(key) : prefix + "." + key;
}

double get_number(const json& j, const char* key, const std::string& prefix,
                  double fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) throw SchemaError(join_key(prefix, key), "missing required key");
        return fallback;
    }
    const json& v = j.at(key);
    if (!v.is_number())
        throw SchemaError(join_key(prefix, key), "expected a number");
    return v.get<double>();
}

int get_int(const json& j, const char* key, const std::string& prefix, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer())
        throw SchemaError(join_key(prefix, key), "expected an integer");
    return v.get<int>();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw NumericError("cannot open output file: " + path);
    return f;
}

}  // namespace

SpaceSpec space_from_json(const json& j, const std::string& key_prefix) {
    if (!j.is_object())
        throw SchemaError(key_prefix.empty() ? "space" : key_prefix,
                          "expected an object");
    SpaceSpec spec;
    if (!j.contains("preset"))
        throw SchemaError(join_key(key_prefix, "preset"), "missing required key");
    if (!j.at("preset").is_string())
        throw SchemaError(join_key(key_prefix, "preset"), "expected a string");
    const std::string name = j.at("preset").get<std::string>();
    bool found = false;
    for (Preset p : {Preset::cone_half_line, Preset::cone_full_line,
                     Preset::sphere_zonal, Preset::hyperbolic_zonal,
                     Preset::gaussian_weight, Preset::circle, Preset::custom}) {
        if (name == preset_name(p)) {
            spec.preset = p;
            found = true;
            break;
        }
    }
    if (!found)
        throw SchemaError(join_key(key_prefix, "preset"),
                          "unknown preset '" + name + "'");
    spec.N = get_number(j, "N", key_prefix, spec.N);
    spec.n = get_int(j, "n", key_prefix, spec.n);
    spec.grid_size = get_int(j, "grid_size", key_prefix, spec.grid_size);
    spec.truncation = get_number(j, "truncation", key_prefix, spec.truncation);
    if (j.contains("custom_V")) {
        const json& tv = j.at("custom_V");
        if (!tv.is_array())
            throw SchemaError(join_key(key_prefix, "custom_V"),
                              "expected an array of [x, V] rows");
        for (const json& row : tv) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number() ||
                !row[1].is_number())
                throw SchemaError(join_key(key_prefix, "custom_V"),
                                  "each row must be [x, V]");
            spec.custom_V.push_back({row[0].get<double>(), row[1].get<double>()});
        }
    }
    return spec;
}

FlowConfig flow_config_from_json(const json& j, const std::string& key_prefix) {
    if (!j.is_object())
        throw SchemaError(key_prefix.empty() ? "flow" : key_prefix,
                          "expected an object");
    FlowConfig cfg;
    if (j.contains("solver")) {
        if (!j.at("solver").is_string())
            throw SchemaError(join_key(key_prefix, "solver"), "expected a string");
        const std::string s = j.at("solver").get<std::string>();
        if (s == "spectral")
            cfg.solver = SolverKind::spectral;
        else if (s == "cn" || s == "crank_nicolson")
            cfg.solver = SolverKind::crank_nicolson;
        else if (s == "closed_form")
            cfg.solver = SolverKind::closed_form;
        else
            throw SchemaError(join_key(key_prefix, "solver"),
                              "unknown solver '" + s + "'");
    }
    cfg.modes = get_int(j, "modes", key_prefix, cfg.modes);
    cfg.dt = get_number(j, "dt", key_prefix, cfg.dt);
    return cfg;
}

std::vector<double> times_from_json(const json& j, const std::string& key_path) {
    if (!j.is_array()) throw SchemaError(key_path, "expected an array of times");
    std::vector<double> times;
    for (const json& v : j) {
        if (!v.is_number()) throw SchemaError(key_path, "times must be numbers");
        times.push_back(v.get<double>());
    }
    if (times.empty())
        throw SchemaError(key_path, "times must be a nonempty increasing list");
    return times;
}

Density density_from_json(const WeightedSpace1D& space, const json& j,
                          const std::string& key_prefix, unsigned long long seed) {
    if (!j.is_object())
        throw SchemaError(key_prefix.empty() ? "initial_density" : key_prefix,
                          "expected an object");
    const std::string type =
        j.contains("type") && j.at("type").is_string()
            ? j.at("type").get<std::string>()
            : throw SchemaError(join_key(key_prefix, "type"),
                                "missing or non-string density type");
    const std::size_t M = space.size();
    Density d;
    d.u.assign(M, 1.0);
    d.time_tag = 0.0;

    auto add_bump = [&](double center, double variance, double weight) {
        if (!(variance > 0.0))
            throw SchemaError(join_key(key_prefix, "variance"),
                              "variance must be positive");
        for (std::size_t i = 0; i < M; ++i) {
            const double r = space.distance(space.x[i], center);
            d.u[i] += weight * std::exp(-r * r / (2.0 * variance));
        }
    };

    if (type == "uniform") {
        // keep ones
    } else if (type == "trig") {
        const double L = space.periodic() ? space.circumference() : space.span();
        const double wv = 2.0 * 3.14159265358979323846 / L;
        auto accumulate = [&](const char* key, bool sine) {
            if (!j.contains(key)) return;
            const json& arr = j.at(key);
            if (!arr.is_array())
                throw SchemaError(join_key(key_prefix, key),
                                  "expected an array of [k, amplitude] rows");
            for (const json& row : arr) {
                if (!row.is_array() || row.size() != 2 || !row[0].is_number() ||
                    !row[1].is_number())
                    throw SchemaError(join_key(key_prefix, key),
                                      "each row must be [k, amplitude]");
                const double k = row[0].get<double>();
                const double amp = row[1].get<double>();
                for (std::size_t i = 0; i < M; ++i) {
                    const double ph = wv * k * (space.x[i] - space.a);
                    d.u[i] += amp * (sine ? std::sin(ph) : std::cos(ph));
                }
            }
        };
        accumulate("cos", false);
        accumulate("sin", true);
    } else if (type == "gaussian") {
        d.u.assign(M, 0.0);
        add_bump(get_number(j, "center", key_prefix, 0.0),
                 get_number(j, "variance", key_prefix, 0.0, true), 1.0);
    } else if (type == "mixture") {
        if (!j.contains("components") || !j.at("components").is_array())
            throw SchemaError(join_key(key_prefix, "components"),
                              "expected an array of components");
        d.u.assign(M, 0.0);
        std::size_t ci = 0;
        for (const json& comp : j.at("components")) {
            const std::string cpath =
                join_key(key_prefix, "components") + "[" + std::to_string(ci++) + "]";
            if (!comp.is_object()) throw SchemaError(cpath, "expected an object");
            const double wgt = get_number(comp, "weight", cpath, 1.0);
            const double ctr = get_number(comp, "center", cpath, 0.0);
            const double var = get_number(comp, "variance", cpath, 0.0, true);
            if (!(wgt > 0.0)) throw SchemaError(cpath + ".weight", "must be positive");
            // Normalize each bump in mu before weighting so weights are masses.
            std::vector<double> bump(M);
            for (std::size_t i = 0; i < M; ++i) {
                const double r = space.distance(space.x[i], ctr);
                bump[i] = std::exp(-r * r / (2.0 * var));
            }
            normalize_density(space, bump);
            for (std::size_t i = 0; i < M; ++i) d.u[i] += wgt * bump[i];
        }
    } else if (type == "kernel") {
        const double t0 = get_number(j, "t0", key_prefix, 0.0, true);
        const double ctr = get_number(j, "center", key_prefix, 0.0);
        if (!(t0 > 0.0))
            throw SchemaError(join_key(key_prefix, "t0"), "t0 must be positive");
        for (std::size_t i = 0; i < M; ++i) {
            const double r = space.distance(space.x[i], ctr);
            d.u[i] = std::exp(-r * r / (4.0 * t0));
        }
    } else if (type == "random") {
        const int modes = get_int(j, "modes", key_prefix, 8);
        const double amp = get_number(j, "amplitude", key_prefix, 0.3);
        if (modes < 1)
            throw SchemaError(join_key(key_prefix, "modes"), "modes must be >= 1");
        if (!(amp > 0.0) || amp >= 1.0)
            throw SchemaError(join_key(key_prefix, "amplitude"),
                              "amplitude must lie in (0, 1)");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const double L = space.periodic() ? space.circumference() : space.span();
        const double wv = 2.0 * 3.14159265358979323846 / L;
        for (int k = 1; k <= modes; ++k) {
            const double ck = unit(rng) * amp / modes;
            const double sk = unit(rng) * amp / modes;
            for (std::size_t i = 0; i < M; ++i) {
                const double ph = wv * k * (space.x[i] - space.a);
                d.u[i] += ck * std::cos(ph) + sk * std::sin(ph);
            }
        }
    } else {
        throw SchemaError(join_key(key_prefix, "type"),
                          "unknown density type '" + type + "'");
    }

    double mn = *std::min_element(d.u.begin(), d.u.end());
    if (mn < 0.0) {
        if (type == "trig" || type == "random")
            throw SchemaError(key_prefix.empty() ? "initial_density" : key_prefix,
                              "coefficients produce a negative density");
        for (double& v : d.u) v = std::max(v, 0.0);
    }
    normalize_density(space, d.u);
    return d;
}

void write_space_csv(const std::string& path, const WeightedSpace1D& space) {
    std::ofstream f = open_out(path);
    f << "x,m,V,V′,V″,k_eff\n";
    std::vector<double> keff(space.size(),
                             std::numeric_limits<double>::quiet_NaN());
    try {
        keff = effective_curvature(space).k_eff;
    } catch (const NumericError&) {
        // undefined (N = 1 with genuine weight): emit nan column
    }
    for (std::size_t i = 0; i < space.size(); ++i) {
        f << fmt17(space.x[i]) << ',' << fmt17(space.m[i]) << ','
          << fmt17(space.V[i]) << ',' << fmt17(space.Vp[i]) << ','
          << fmt17(space.Vpp[i]) << ',' << fmt17(keff[i]) << '\n';
    }
}

void write_volumes_csv(const std::string& path, const WeightedSpace1D& space,
                       double center, const std::vector<double>& radii) {
    std::ofstream f = open_out(path);
    f << "r,ball_volume,bg_margin\n";
    for (double r : radii) {
        const double vol = ball_volume(space, center, r);
        double margin = std::numeric_limits<double>::quiet_NaN();
        try {
            margin = bishop_gromov_margin(space, center, 0.5 * r, r);
        } catch (const NumericError&) {
        }
        f << fmt17(r) << ',' << fmt17(vol) << ',' << fmt17(margin) << '\n';
    }
}

void write_flow_csv(const std::string& path, const WeightedSpace1D& space,
                    const FlowResult& flow) {
    std::ofstream f = open_out(path);
    f << "t,x,u\n";
    for (std::size_t j = 0; j < flow.times.size(); ++j)
        for (std::size_t i = 0; i < space.size(); ++i)
            f << fmt17(flow.times[j]) << ',' << fmt17(space.x[i]) << ','
              << fmt17(flow.densities[j].u[i]) << '\n';
}

void write_functionals_csv(const std::string& path, const FunctionalSeries& s) {
    std::ofstream f = open_out(path);
    f << "t,H,I,H_N,H_NK,entropy_power,W_N,W_NK,wang_WK,ye_Ya,gamma2,T1,T2,T3,"
         "dH_fd,d2H_fd\n";
    for (std::size_t j = 0; j < s.size(); ++j) {
        f << fmt17(s.t[j]) << ',' << fmt17(s.H[j]) << ',' << fmt17(s.I[j]) << ','
          << fmt17(s.H_N[j]) << ',' << fmt17(s.H_NK[j]) << ','
          << fmt17(s.entropy_power[j]) << ',' << fmt17(s.W_N[j]) << ','
          << fmt17(s.W_NK[j]) << ',' << fmt17(s.wang_WK[j]) << ','
          << fmt17(s.ye_Ya[j]) << ',' << fmt17(s.gamma2[j]) << ','
          << fmt17(s.T1[j]) << ',' << fmt17(s.T2[j]) << ',' << fmt17(s.T3[j])
          << ',' << fmt17(s.dH_fd[j]) << ',' << fmt17(s.d2H_fd[j]) << '\n';
    }
}

void write_minimizer_csv(const std::string& path, const WeightedSpace1D& space,
                         const std::vector<double>& rho) {
    std::ofstream f = open_out(path);
    f << "x,rho\n";
    for (std::size_t i = 0; i < space.size(); ++i)
        f << fmt17(space.x[i]) << ',' << fmt17(rho[i]) << '\n';
}

json check_to_json(const CheckResult& r) {
    json j;
    j["name"] = r.name;
    j["status"] = status_name(r.status);
    j["worst_margin"] = std::isnan(r.worst_margin) ? json() : json(r.worst_margin);
    j["worst_t"] = std::isnan(r.worst_t) ? json() : json(r.worst_t);
    j["worst_x"] = std::isnan(r.worst_x) ? json() : json(r.worst_x);
    j["tolerance"] = r.tolerance;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream f = open_out(path);
    f << j.dump(2) << '\n';
}

void write_series_svg(const std::string& path, const std::string& title,
                      const std::vector<double>& t, const std::vector<double>& y) {
    const int W = 720, H = 440, ML = 70, MR = 20, MT = 40, MB = 50;
    std::ofstream f = open_out(path);
    double tmin = t.empty() ? 0.0 : t.front(), tmax = t.empty() ? 1.0 : t.back();
    double ymin = 1e300, ymax = -1e300;
    for (double v : y) {
        if (std::isnan(v)) continue;
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
    }
    if (!(ymax > ymin)) {
        ymax = ymin + 1.0;
        ymin -= 1.0;
    }
    if (!(tmax > tmin)) tmax = tmin + 1.0;
    auto px = [&](double tv) {
        return ML + (tv - tmin) / (tmax - tmin) * (W - ML - MR);
    };
    auto py = [&](double yv) {
        return H - MB - (yv - ymin) / (ymax - ymin) * (H - MT - MB);
    };
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    f << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    f << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"16\">" << title << "</text>\n";
    // axes
    f << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR
      << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
    f << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\""
      << H - MB << "\" stroke=\"black\"/>\n";
    char lab[64];
    std::snprintf(lab, sizeof lab, "%.6g", ymin);
    f << "<text x=\"8\" y=\"" << H - MB << "\" font-family=\"monospace\" "
         "font-size=\"11\">" << lab << "</text>\n";
    std::snprintf(lab, sizeof lab, "%.6g", ymax);
    f << "<text x=\"8\" y=\"" << MT + 4 << "\" font-family=\"monospace\" "
         "font-size=\"11\">" << lab << "</text>\n";
    std::snprintf(lab, sizeof lab, "%.6g", tmin);
    f << "<text x=\"" << ML << "\" y=\"" << H - MB + 18
      << "\" font-family=\"monospace\" font-size=\"11\">" << lab << "</text>\n";
    std::snprintf(lab, sizeof lab, "%.6g", tmax);
    f << "<text x=\"" << W - MR - 40 << "\" y=\"" << H - MB + 18
      << "\" font-family=\"monospace\" font-size=\"11\">" << lab << "</text>\n";
    f << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < t.size() && i < y.size(); ++i) {
        if (std::isnan(y[i])) continue;
        f << px(t[i]) << ',' << py(y[i]) << ' ';
    }
    f << "\"/>\n</svg>\n";
}

}  // namespace entroflow
