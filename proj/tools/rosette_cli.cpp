#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rosette/config.hpp"
#include "rosette/csv.hpp"
#include "rosette/equidistant.hpp"
#include "rosette/invariants.hpp"
#include "rosette/rosette.hpp"
#include "rosette/verify.hpp"
#include "rosette/wavefront.hpp"

namespace {

using namespace rosette;

struct Options {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> n_samples;
    std::optional<double> tolerance;
};

RunConfig load_config(const Options& opt) {
    RunConfig cfg = parse_config_file(opt.config_path);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.n_samples) cfg.quadrature.n_samples = *opt.n_samples;
    if (opt.tolerance) cfg.quadrature.tolerance = *opt.tolerance;
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

Rosette make_rosette(const RunConfig& cfg) {
    const SupportFunction sf = cfg.support();
    const auto cert = is_rosette(sf);
    if (!cert.ok) {
        std::ostringstream msg;
        msg << "support function is not a rosette: radius of curvature at theta = "
            << cert.theta_min << " is " << cert.rho_min;
        throw ConfigError(msg.str());
    }
    return Rosette(sf);
}

std::vector<int> odd_ks(const RunConfig& cfg, int m) {
    std::vector<int> out;
    for (int k : cfg.ks)
        if (k % 2 == 1 && k >= 1 && k <= m) out.push_back(k);
    return out;
}

int cmd_sample(const RunConfig& cfg) {
    const Rosette r = make_rosette(cfg);
    const int m = r.rotation_number();
    const int nt = 512 * m;
    const std::string dir = cfg.out_dir + "/";

    {
        CsvWriter csv(dir + "rosette.csv", {"theta", "x", "y"}, cfg.hash);
        for (int i = 0; i <= nt; ++i) {
            const double t = r.period() * i / nt;
            const Vec2 p = r.point(t);
            csv.row({t, p.x, p.y});
        }
    }
    for (int k : cfg.ks) {
        for (double lambda : cfg.lambdas) {
            const int kmax = (lambda == 0.5) ? m : 2 * m - 1;
            if (k < 1 || k > kmax) continue;
            EquidistantBranch b(r, lambda, k);
            char name[96];
            std::snprintf(name, sizeof name, "equidistant_k%d_lambda%g.csv", k, lambda);
            CsvWriter csv(dir + name, {"theta", "x", "y"}, cfg.hash);
            const int n = static_cast<int>(nt * b.domain() / r.period());
            for (int i = 0; i <= n; ++i) {
                const double t = b.domain() * i / n;
                const Vec2 p = b.point(t);
                csv.row({t, p.x, p.y});
            }
        }
        if (k % 2 == 1 && k <= 2 * ((m + 1) / 2) - 1) {
            CssBranch css(r, k);
            char name[64];
            std::snprintf(name, sizeof name, "css_k%d.csv", k);
            CsvWriter csv(dir + name, {"theta", "x", "y"}, cfg.hash);
            const int n = static_cast<int>(nt * css.domain() / r.period());
            for (int i = 0; i <= n; ++i) {
                const double t = css.domain() * i / n;
                const Vec2 p = css.point(t);
                csv.row({t, p.x, p.y});
            }
        }
        if (k % 2 == 1 && k <= m) {
            FrontBranch b(r, k);
            char name[64];
            std::snprintf(name, sizeof name, "front_k%d.csv", k);
            CsvWriter csv(dir + name,
                          {"lambda", "theta", "x0", "x1", "x2", "nu0", "nu1", "nu2",
                           "area_density"},
                          cfg.hash);
            const int nl = 32, ntheta = 128 * m;
            for (int i = 0; i <= nl; ++i) {
                const double lambda = static_cast<double>(i) / nl;
                for (int j = 0; j <= ntheta; ++j) {
                    const double t = b.domain() * j / ntheta;
                    const Vec3 p = b.f(lambda, t);
                    const Vec3 nu = b.normal(t);
                    csv.row({lambda, t, p.x, p.y, p.z, nu.x, nu.y, nu.z,
                             b.signed_area_density(lambda, t)});
                }
            }
        }
    }
    std::cout << "sample: wrote curve and surface data to " << cfg.out_dir << "\n";
    return 0;
}

const char* kind_name(const SingularPoint& sp) {
    if (sp.kind == SingularKind::CuspidalEdge) return "cuspidal_edge";
    return sp.peak == PeakSign::Positive ? "swallowtail_positive_peak"
                                         : "swallowtail_negative_peak";
}

int cmd_singular(const RunConfig& cfg) {
    const Rosette r = make_rosette(cfg);
    const int m = r.rotation_number();
    const std::string dir = cfg.out_dir + "/";
    std::ofstream report(dir + "singular_report.txt");
    report << "config: " << std::hex << cfg.hash << std::dec << "\n";

    CsvWriter cusp_csv(dir + "cusps.csv", {"branch_kind", "k", "lambda", "theta", "x", "y"},
                       cfg.hash);
    for (int k : odd_ks(cfg, m)) {
        FrontBranch b(r, k);
        CssBranch css(r, k);

        char name[64];
        std::snprintf(name, sizeof name, "singular_k%d.csv", k);
        CsvWriter csv(dir + name,
                      {"theta", "lambda", "x0", "x1", "x2", "css_distance"}, cfg.hash);
        const int n = 2048 * m;
        for (int i = 0; i < n; ++i) {
            const double t = b.domain() * i / n;
            const double l = b.singular_lambda(t);
            const Vec3 p = b.f(l, t);
            const double d = (p.planar() - css.point(t)).norm();
            csv.row({t, l, p.x, p.y, p.z, d});
        }

        const auto sw = b.swallowtails();
        const auto css_cusps = css.cusps();
        report << "branch k=" << k << ":\n";
        report << "  swallowtails: " << sw.size() << "\n";
        report << "  css cusps (css domain): " << css_cusps.size() << "\n";
        int positive = 0, negative = 0;
        for (double t : sw) {
            const auto sp = b.classify(t);
            cusp_csv.row_tagged(kind_name(sp), {static_cast<double>(k), sp.lambda, sp.theta,
                                                sp.css_shadow.x, sp.css_shadow.y});
            if (sp.peak == PeakSign::Positive) ++positive;
            if (sp.peak == PeakSign::Negative) ++negative;
        }
        report << "  positive peaks: " << positive << ", negative peaks: " << negative << "\n";

        for (double lambda : cfg.lambdas) {
            const int kmax = (lambda == 0.5) ? m : 2 * m - 1;
            if (k > kmax) continue;
            try {
                EquidistantBranch eb(r, lambda, k);
                const auto cusps = eb.cusps();
                for (double t : cusps) {
                    const Vec2 p = eb.point(t);
                    cusp_csv.row_tagged("equidistant", {static_cast<double>(k), lambda, t,
                                                        p.x, p.y});
                }
                // rotation number of the branch fixes the expected parity of
                // the cusp count: integer -> even, half-integer -> odd
                const bool half_turn = (lambda == 0.5 && k == m && m % 2 == 1);
                const bool parity_ok = half_turn ? (cusps.size() % 2 == 1)
                                                 : (cusps.size() % 2 == 0);
                report << "  equidistant lambda=" << lambda << ": " << cusps.size()
                       << " cusps, parity " << (parity_ok ? "ok" : "VIOLATED") << "\n";
            } catch (const DegenerateZero& e) {
                report << "  equidistant lambda=" << lambda << ": degenerate (" << e.what()
                       << ")\n";
            }
        }

        // swallowtail parameters against CSS cusp parameters
        double worst = 0.0;
        if (sw.size() == css_cusps.size() || k == m) {
            for (double t : sw) {
                double best = 1e300;
                for (double c : css_cusps) {
                    best = std::min(best, std::abs(angle_distance(t, c, css.domain())));
                }
                worst = std::max(worst, best);
            }
            report << "  max swallowtail-to-css-cusp parameter distance: " << worst << "\n";
        }
    }
    std::cout << "singular: wrote census to " << cfg.out_dir << "\n";
    return 0;
}

void print_report(std::ostream& os, const IdentityReport& rep, int indent = 2) {
    const std::string pad(indent, ' ');
    os << pad << rep.id << ":\n";
    os << pad << "  lhs: " << rep.lhs << "\n";
    os << pad << "  rhs: " << rep.rhs << "\n";
    os << pad << "  abs_residual: " << rep.abs_residual << "\n";
    os << pad << "  rel_residual: " << rep.rel_residual << "\n";
    os << pad << "  tolerance: " << rep.tolerance << "\n";
    os << pad << "  error_estimate: " << rep.error_estimate << "\n";
    os << pad << "  n_samples: " << rep.n_samples << "\n";
    os << pad << "  status: " << (rep.skipped ? "skipped" : rep.pass ? "pass" : "fail") << "\n";
    if (!rep.notes.empty()) os << pad << "  notes: " << rep.notes << "\n";
}

int cmd_verify(const RunConfig& cfg) {
    const Rosette r = make_rosette(cfg);
    const int m = r.rotation_number();
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream report(cfg.out_dir + "/verify_report.txt");
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof hashbuf, "%016llx",
                  static_cast<unsigned long long>(cfg.hash));
    report << "config: " << hashbuf << "\n";

    std::vector<IdentityReport> reports;
    for (int k : odd_ks(cfg, m)) {
        FrontBranch b(r, k);
        report << "branch k=" << k << ":\n";
        reports.push_back(verify_gb_total(b, cfg.quadrature));
        for (double lambda : cfg.lambdas) {
            if (lambda < 0.0 || lambda >= 1.0) continue;
            try {
                reports.push_back(verify_lambda_geodesic(b, lambda, cfg.quadrature));
            } catch (const HypothesisViolated& e) {
                IdentityReport rep;
                rep.id = "slice_independence lambda=" + std::to_string(lambda);
                rep.skipped = true;
                rep.notes = e.what();
                reports.push_back(rep);
            }
        }
        try {
            const auto half = verify_cut_in_half(b, cfg.quadrature);
            reports.push_back(half.plus);
            reports.push_back(half.minus);
        } catch (const HypothesisViolated& e) {
            IdentityReport rep;
            rep.id = "half_slice_identities";
            rep.skipped = true;
            rep.notes = e.what();
            reports.push_back(rep);
        }
        reports.push_back(verify_css_integral(b, cfg.quadrature));
        reports.push_back(verify_width_identity(WidthFunction(r, k), 1e-10, cfg.quadrature));
    }
    bool ok = true;
    for (const auto& rep : reports) {
        const bool expected_fail =
            std::find(cfg.expect_fail.begin(), cfg.expect_fail.end(), rep.id) !=
            cfg.expect_fail.end();
        const bool effective = rep.skipped || (rep.pass != expected_fail);
        if (!effective) ok = false;
        print_report(report, rep);
        std::printf("%-44s %s%s\n", rep.id.c_str(),
                    rep.skipped ? "SKIP" : rep.pass ? "PASS" : "FAIL",
                    expected_fail ? " (expected fail)" : "");
    }
    return ok ? 0 : 1;
}

int cmd_conjecture(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto rep = explore_conjecture(cfg.seed, cfg.trials, cfg.quadrature);
    std::ofstream out(cfg.out_dir + "/conjecture_report.txt");
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof hashbuf, "%016llx",
                  static_cast<unsigned long long>(cfg.hash));
    out << "config: " << hashbuf << "\n";
    out << "seed: " << rep.seed << "\n";
    out << "trials: " << rep.trials << "\n";
    if (rep.trials > 0) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", rep.max_residual);
        out << "max_residual: " << buf << "\n";
        out << "max_trial: " << rep.max_trial << "\n";
        std::snprintf(buf, sizeof buf, "%.17g", rep.mean_residual);
        out << "mean_residual: " << buf << "\n";
        out << "candidates: " << rep.candidates.size() << "\n";
        for (const auto& c : rep.candidates)
            out << "  trial " << c.index << ": residual " << c.residual << "\n";
        std::printf("conjecture: %llu trials, max residual %.3e (trial %llu), %zu candidates\n",
                    static_cast<unsigned long long>(rep.trials), rep.max_residual,
                    static_cast<unsigned long long>(rep.max_trial), rep.candidates.size());
    } else {
        out << "empty\n";
        std::printf("conjecture: no trials requested\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometry of rosettes: equidistants, symmetry sets, wave fronts"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config_path, "run configuration file")->required();
    app.add_option("--out", opt.out_dir, "output directory (overrides config)");
    std::uint64_t seed_val = 0;
    int n_samples_val = 0;
    double tol_val = 0.0;
    auto* seed_opt = app.add_option("--seed", seed_val, "random seed (overrides config)");
    auto* ns_opt = app.add_option("--n-samples", n_samples_val, "quadrature samples");
    auto* tol_opt = app.add_option("--tolerance", tol_val, "quadrature tolerance");

    auto* sample = app.add_subcommand("sample", "emit curve/surface CSV data");
    auto* singular = app.add_subcommand("singular", "emit singular-set census");
    auto* verify = app.add_subcommand("verify", "run the integral-identity suite");
    auto* conjecture = app.add_subcommand("conjecture", "random width-identity trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }
    if (*seed_opt) opt.seed = seed_val;
    if (*ns_opt) opt.n_samples = n_samples_val;
    if (*tol_opt) opt.tolerance = tol_val;

    try {
        const RunConfig cfg = load_config(opt);
        if (sample->parsed()) return cmd_sample(cfg);
        if (singular->parsed()) return cmd_singular(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (conjecture->parsed()) return cmd_conjecture(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
