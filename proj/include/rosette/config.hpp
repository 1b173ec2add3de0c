#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rosette/errors.hpp"
#include "rosette/fourier.hpp"
#include "rosette/quadrature.hpp"

namespace rosette {

/// Run description parsed from a sectioned key-value text file:
///
///   [support]
///   m = 1
///   a0 = 31
///   term = 2 2 0        # j a b
///   [branches]
///   k = 1
///   lambda = 0 0.1 0.4 0.5
///   [quadrature]
///   n_samples = 16384
///   [run]
///   seed = 42
///   trials = 1000
///   expect_fail = width_integral_identity
struct RunConfig {
    int m = 1;
    double a0 = 0.0;
    std::vector<FourierTerm> terms;
    std::vector<int> ks = {1};
    std::vector<double> lambdas = {0.5};
    QuadratureConfig quadrature;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000;
    std::string out_dir = ".";
    std::vector<std::string> expect_fail;
    std::uint64_t hash = 0;  // FNV-1a of the canonical file bytes
    std::string source_text;

    SupportFunction support() const { return SupportFunction(m, a0, terms); }
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

inline RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    cfg.source_text = text;
    cfg.hash = detail::fnv1a(text);
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    bool saw_lambda = false, saw_k = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hashpos = line.find('#');
        if (hashpos != std::string::npos) line = line.substr(0, hashpos);
        line = detail::strip(line);
        if (line.empty()) continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header" + where);
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value" + where);
        const std::string key = detail::strip(line.substr(0, eq));
        const std::string value = detail::strip(line.substr(eq + 1));
        std::istringstream vs(value);
        auto want = [&](auto& target) {
            if (!(vs >> target)) throw ConfigError("bad value for '" + key + "'" + where);
        };
        if (section == "support") {
            if (key == "m") {
                want(cfg.m);
            } else if (key == "a0") {
                want(cfg.a0);
            } else if (key == "term") {
                FourierTerm t;
                want(t.j);
                want(t.a);
                want(t.b);
                cfg.terms.push_back(t);
            } else {
                throw ConfigError("unknown key '" + key + "' in [support]" + where);
            }
        } else if (section == "branches") {
            if (key == "k") {
                cfg.ks.clear();
                int k;
                while (vs >> k) cfg.ks.push_back(k);
                if (cfg.ks.empty()) throw ConfigError("empty k list" + where);
                saw_k = true;
            } else if (key == "lambda") {
                cfg.lambdas.clear();
                double l;
                while (vs >> l) cfg.lambdas.push_back(l);
                if (cfg.lambdas.empty()) throw ConfigError("empty lambda list" + where);
                saw_lambda = true;
            } else {
                throw ConfigError("unknown key '" + key + "' in [branches]" + where);
            }
        } else if (section == "quadrature") {
            if (key == "n_samples") {
                want(cfg.quadrature.n_samples);
                if (cfg.quadrature.n_samples <= 0 ||
                    (cfg.quadrature.n_samples & (cfg.quadrature.n_samples - 1)) != 0)
                    throw ConfigError("n_samples must be a positive power of two" + where);
            } else if (key == "guard_halfwidth") {
                want(cfg.quadrature.guard_halfwidth);
            } else if (key == "richardson_levels") {
                want(cfg.quadrature.richardson_levels);
            } else if (key == "tolerance") {
                want(cfg.quadrature.tolerance);
            } else {
                throw ConfigError("unknown key '" + key + "' in [quadrature]" + where);
            }
        } else if (section == "run") {
            if (key == "seed") {
                want(cfg.seed);
            } else if (key == "trials") {
                want(cfg.trials);
            } else if (key == "out") {
                cfg.out_dir = value;
            } else if (key == "expect_fail") {
                cfg.expect_fail.push_back(value);
            } else {
                throw ConfigError("unknown key '" + key + "' in [run]" + where);
            }
        } else if (section.empty()) {
            throw ConfigError("key before any [section]" + where);
        } else {
            throw ConfigError("unknown section [" + section + "]" + where);
        }
    }
    (void)saw_lambda;
    (void)saw_k;
    if (cfg.terms.empty() && cfg.a0 == 0.0)
        throw ConfigError("[support] section with a0/term entries is required");
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace rosette
