/**
 * @file config.hpp
 * @brief Run configuration: strict JSON schema, family defaults, flag overrides.
 */
#pragma once

#include "helixqm/curve.hpp"
#include "helixqm/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace helixqm {

enum class Method { EM1, EM2, GEO, JWKB, JWKB_GEO };

enum class OutputKind { Spectrum, Wavefunctions, Potentials, Geometry };

inline std::string to_string(Method m) {
    switch (m) {
    case Method::EM1: return "EM1";
    case Method::EM2: return "EM2";
    case Method::GEO: return "GEO";
    case Method::JWKB: return "JWKB";
    case Method::JWKB_GEO: return "JWKB_GEO";
    }
    return "?";
}

inline std::string to_string(OutputKind k) {
    switch (k) {
    case OutputKind::Spectrum: return "spectrum";
    case OutputKind::Wavefunctions: return "wavefunctions";
    case OutputKind::Potentials: return "potentials";
    case OutputKind::Geometry: return "geometry";
    }
    return "?";
}

inline Method method_from_string(const std::string& s) {
    for (auto m : {Method::EM1, Method::EM2, Method::GEO, Method::JWKB, Method::JWKB_GEO})
        if (to_string(m) == s) return m;
    throw ConfigError("unknown Hamiltonian '" + s + "' (expected EM1, EM2, GEO, JWKB or JWKB_GEO)");
}

inline OutputKind output_from_string(const std::string& s) {
    for (auto k : {OutputKind::Spectrum, OutputKind::Wavefunctions, OutputKind::Potentials, OutputKind::Geometry})
        if (to_string(k) == s) return k;
    throw ConfigError("unknown output '" + s + "'");
}

/// Parses reals with an optional pi factor: "12.5", "pi", "4pi", "4*pi", "-0.5pi".
inline double parse_real(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        s.resize(s.size() - 2);
        if (!s.empty() && s.back() == '*') s.pop_back();
        if (s.empty() || s == "+") s = "1";
        if (s == "-") s = "-1";
    }
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || s.empty()) throw ConfigError("not a number: '" + text + "'");
    return value * factor;
}

/// Parameters used when a family is chosen without explicit values.
inline CurveSpec::Params default_params(CurveFamily f) {
    switch (f) {
    case CurveFamily::BulgingHelix: return {{"a", 1.0}, {"phi0", 4.0 * std::numbers::pi}};
    case CurveFamily::StretchedHelix: return {{"a", 0.1}};
    case CurveFamily::SqueezedHelix: return {{"c0", 0.01}, {"c1", 0.01}};
    case CurveFamily::RegularHelix: return {{"rho", 1.0}, {"pitch", 1.0}};
    case CurveFamily::Ellipse: return {{"fx", 2.0}, {"fy", 1.0}, {"pitch", 1.0}};
    case CurveFamily::Custom: break;
    }
    throw ConfigError("custom curves cannot be configured from a file");
}

inline std::pair<double, double> default_interval(CurveFamily f) {
    switch (f) {
    case CurveFamily::BulgingHelix: return {-40.0, 40.0};
    case CurveFamily::StretchedHelix: return {0.0, 20.0};
    case CurveFamily::SqueezedHelix: return {0.0, 40.0};
    default: return {0.0, 40.0};
    }
}

struct RunConfig {
    CurveFamily family = CurveFamily::BulgingHelix;
    CurveSpec::Params params = default_params(CurveFamily::BulgingHelix);
    double phi_min = -40.0;
    double phi_max = 40.0;
    std::vector<Method> hamiltonians{Method::EM1, Method::EM2, Method::JWKB, Method::GEO, Method::JWKB_GEO};
    std::size_t grid_points = 8000;
    std::size_t states = 4;
    std::vector<OutputKind> outputs{OutputKind::Spectrum};
    std::filesystem::path out_dir = ".";

    static constexpr std::size_t min_grid_points = 256;

    /// Switches family and resets parameters and interval to that family's defaults.
    void set_family(CurveFamily f) {
        family = f;
        params = default_params(f);
        std::tie(phi_min, phi_max) = default_interval(f);
    }

    bool wants(Method m) const { return std::find(hamiltonians.begin(), hamiltonians.end(), m) != hamiltonians.end(); }

    CurveSpec curve() const {
        try {
            return CurveSpec(family, params, phi_min, phi_max);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("invalid curve: ") + e.what());
        }
    }

    void validate() const {
        if (family == CurveFamily::Custom) throw ConfigError("custom curves cannot be configured from a file");
        (void)curve();
        if (states < 1 || states > 16) throw ConfigError("states must be between 1 and 16");
        if (grid_points < min_grid_points) throw ConfigError("grid_points must be at least 256");
        if (states >= grid_points) throw ConfigError("states must be below grid_points");
        if (hamiltonians.empty()) throw ConfigError("no Hamiltonians requested");
        if (std::set<Method>(hamiltonians.begin(), hamiltonians.end()).size() != hamiltonians.size())
            throw ConfigError("duplicate Hamiltonian in list");
    }

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

/// A JSON number, or a string in the form accepted by parse_real ("4pi").
inline double real_value(const nlohmann::json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_real(v.get<std::string>());
    throw ConfigError("'" + key + "' must be a number");
}

inline double number_at(const nlohmann::json& j, const std::string& key) { return real_value(j.at(key), key); }

inline std::size_t count_at(const nlohmann::json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("'" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

} // namespace detail

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    nlohmann::json hams = nlohmann::json::array();
    for (auto m : c.hamiltonians) hams.push_back(to_string(m));
    nlohmann::json outs = nlohmann::json::array();
    for (auto o : c.outputs) outs.push_back(to_string(o));
    return {
        {"curve", {{"family", std::string(to_string(c.family))}, {"params", params}, {"phi_min", c.phi_min}, {"phi_max", c.phi_max}}},
        {"hamiltonians", hams},
        {"grid_points", c.grid_points},
        {"states", c.states},
        {"outputs", outs},
        {"out_dir", c.out_dir.string()},
    };
}

/// Strict parse: unknown keys, wrong types and invalid curves raise ConfigError.
inline RunConfig config_from_json(const nlohmann::json& j) {
    using detail::reject_unknown_keys;
    reject_unknown_keys(j, {"curve", "hamiltonians", "grid_points", "states", "outputs", "out_dir"}, "config");
    RunConfig c;
    try {
        const auto& curve = j.at("curve");
        reject_unknown_keys(curve, {"family", "params", "phi_min", "phi_max"}, "curve");
        if (!curve.at("family").is_string()) throw ConfigError("curve.family must be a string");
        const auto family = family_from_string(curve.at("family").get<std::string>());
        if (!family) throw ConfigError("unknown curve family '" + curve.at("family").get<std::string>() + "'");
        c.set_family(*family);
        if (curve.contains("params")) {
            const auto& params = curve.at("params");
            if (!params.is_object()) throw ConfigError("curve.params must be an object");
            const auto& names = parameter_names(*family);
            for (const auto& [key, value] : params.items()) {
                if (std::find(names.begin(), names.end(), key) == names.end())
                    throw ConfigError("unknown parameter '" + key + "' for " + std::string(to_string(*family)));
                c.params[key] = detail::real_value(value, "curve.params." + key);
            }
        }
        if (curve.contains("phi_min")) c.phi_min = detail::number_at(curve, "phi_min");
        if (curve.contains("phi_max")) c.phi_max = detail::number_at(curve, "phi_max");

        if (j.contains("hamiltonians")) {
            if (!j.at("hamiltonians").is_array()) throw ConfigError("hamiltonians must be an array");
            c.hamiltonians.clear();
            for (const auto& h : j.at("hamiltonians")) {
                if (!h.is_string()) throw ConfigError("hamiltonians entries must be strings");
                c.hamiltonians.push_back(method_from_string(h.get<std::string>()));
            }
        }
        if (j.contains("grid_points")) c.grid_points = detail::count_at(j, "grid_points");
        if (j.contains("states")) c.states = detail::count_at(j, "states");
        if (j.contains("outputs")) {
            if (!j.at("outputs").is_array()) throw ConfigError("outputs must be an array");
            c.outputs.clear();
            for (const auto& o : j.at("outputs")) {
                if (!o.is_string()) throw ConfigError("outputs entries must be strings");
                c.outputs.push_back(output_from_string(o.get<std::string>()));
            }
        }
        if (j.contains("out_dir")) {
            if (!j.at("out_dir").is_string()) throw ConfigError("out_dir must be a string");
            c.out_dir = j.at("out_dir").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return config_from_json(j);
}

inline void save_config(const RunConfig& c, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << to_json(c).dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

inline std::vector<Method> parse_method_list(const std::string& list) {
    std::vector<Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(method_from_string(item));
    if (out.empty()) throw ConfigError("empty Hamiltonian list");
    return out;
}

/// Sets a single curve parameter, refusing names the family does not have.
inline void set_param(RunConfig& c, const std::string& name, double value) {
    const auto& names = parameter_names(c.family);
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw ConfigError("--" + name + " does not apply to " + std::string(to_string(c.family)));
    c.params[name] = value;
}

} // namespace helixqm
