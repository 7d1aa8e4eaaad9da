// Experiment driver: seeded, manifest-emitting subcommands around the
// library. Exit codes: 0 success, 1 numeric failure, 2 usage error.

#include "rmt/characteristics.hpp"
#include "rmt/dbm.hpp"
#include "rmt/deformed_mp.hpp"
#include "rmt/edge_stats.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/spectral_law.hpp"
#include "rmt/tracy_widom.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace rmt;

namespace {

constexpr const char* kVersion = "rmt-edge-lab 1.0.0";

// 17 significant digits: lossless double round-trip
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

EntryDistribution parse_dist(const std::string& name) {
    if (name == "gaussian") return EntryDistribution::gaussian();
    if (name == "rademacher") return EntryDistribution::rademacher();
    if (name == "uniform") return EntryDistribution::uniform();
    throw CLI::ValidationError("--dist", "unknown distribution: " + name);
}

std::vector<double> read_population(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "missing population file: " << path << "\n";
        std::exit(2);
    }
    std::vector<double> sigmas;
    double v;
    while (f >> v) sigmas.push_back(v);
    if (sigmas.empty()) {
        std::cerr << "population file is empty: " << path << "\n";
        std::exit(2);
    }
    return sigmas;
}

json manifest(const std::string& command, json params,
              std::chrono::steady_clock::time_point t0) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["params"] = std::move(params);
    m["wall_time_s"] = wall;
    return m;
}

// ---- law / locations -----------------------------------------------------

int cmd_law(double xi, const std::string& out, std::chrono::steady_clock::time_point t0) {
    SpectralLaw law(xi);
    {
        auto f = open_out(out + "_density.csv");
        f << "x,rho\n";
        const double hi = law.sqrt_edge_plus();
        for (int i = 0; i <= 800; ++i) {
            const double x = -hi + 2.0 * hi * i / 800.0;
            f << fmt(x) << "," << fmt(law.sv_density(x)) << "\n";
        }
    }
    {
        auto f = open_out(out + "_stieltjes.csv");
        f << "z_re,z_im,m_re,m_im\n";
        for (double re = -3.0; re <= 3.0; re += 0.25)
            for (double im : {0.05, 0.2, 1.0}) {
                const Complex m = law.sv_stieltjes(Complex(re, im));
                f << fmt(re) << "," << fmt(im) << "," << fmt(m.real()) << "," << fmt(m.imag())
                  << "\n";
            }
    }
    json p{{"xi", xi}, {"out", out}, {"lambda_minus", law.lambda_minus()},
           {"lambda_plus", law.lambda_plus()}};
    std::cout << manifest("law", p, t0).dump(2) << "\n";
    return 0;
}

int cmd_locations(double xi, int n, const std::string& out,
                  std::chrono::steady_clock::time_point t0) {
    SpectralLaw law(xi);
    auto gamma = law.typical_locations(n);
    auto f = open_out(out);
    f << "k,gamma_k\n";
    for (int k = 0; k < n; ++k) f << k + 1 << "," << fmt(gamma[static_cast<std::size_t>(k)]) << "\n";
    json p{{"xi", xi}, {"n", n}, {"out", out}};
    std::cout << manifest("locations", p, t0).dump(2) << "\n";
    return 0;
}

// ---- deformed --------------------------------------------------------------

int cmd_deformed(const std::string& pop_path, double xi, const std::string& density_out,
                 std::chrono::steady_clock::time_point t0) {
    Population pop(read_population(pop_path));
    auto law = make_deformed_law(pop, xi);
    if (!density_out.empty()) {
        auto f = open_out(density_out);
        f << "e,rho_fc\n";
        const double lo = 0.01, hi = law.e_plus * 1.05;
        for (int i = 0; i <= 400; ++i) {
            const double e = lo + (hi - lo) * i / 400.0;
            f << fmt(e) << "," << fmt(fc_density(law, e)) << "\n";
        }
    }
    json p{{"population", pop_path}, {"xi", xi}};
    json m = manifest("deformed", p, t0);
    m["result"] = {{"xi_plus", law.xi_plus}, {"e_plus", law.e_plus}, {"gamma0", law.gamma0}};
    std::cout << m.dump(2) << "\n";
    return 0;
}

// ---- sample-edge -----------------------------------------------------------

int cmd_sample_edge(double xi, int n, int reps, const std::string& dist_name, std::uint64_t seed,
                    const std::string& out, const std::string& pop_path, int workers,
                    std::chrono::steady_clock::time_point t0) {
    const auto dist = parse_dist(dist_name);
    const int m = static_cast<int>(std::lround(n / xi));
    std::vector<double> sigma;
    if (!pop_path.empty()) {
        Population pop(read_population(pop_path));
        // expand the population atoms onto the M population directions
        sigma.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            sigma[static_cast<std::size_t>(i)] =
                pop.sigmas()[static_cast<std::size_t>(i) * pop.sigmas().size() /
                             static_cast<std::size_t>(m)];
    }
    auto f = open_out(out);
    f << "replica,lambda_max,s_max\n";
    for (int r = 0; r < reps; ++r) {
        auto x = sample_data(m, n, dist, seed, static_cast<std::uint64_t>(r));
        const double lmax = (sigma.empty() ? covariance(x) : separable(x, sigma))
                                .eigenvalues.back();
        f << r << "," << fmt(lmax) << "," << fmt(std::sqrt(lmax)) << "\n";
    }
    json p{{"xi", xi},     {"n", n},     {"reps", reps},       {"dist", dist_name},
           {"seed", seed}, {"out", out}, {"workers", workers}, {"sigma_xi", sigma_xi(xi)}};
    if (!pop_path.empty()) p["population"] = pop_path;
    std::cout << manifest("sample-edge", p, t0).dump(2) << "\n";
    return 0;
}

// ---- dbm -------------------------------------------------------------------

int cmd_dbm(int n, double xi, double dt, double t_end, const std::string& couple_mode,
            std::uint64_t seed, const std::string& record, const std::string& out,
            std::chrono::steady_clock::time_point t0) {
    const int m = static_cast<int>(std::lround(n / xi));
    SymmetrizedConfig cfg;
    cfg.s = covariance(sample_data(m, n, EntryDistribution::gaussian(), seed)).singular_values;
    DbmOptions opt;
    opt.dt = dt;

    auto f = open_out(out);
    f << "t,k,value\n";
    json extra;
    if (couple_mode == "wishart") {
        SymmetrizedConfig other;
        other.s = covariance(sample_data(m, n, EntryDistribution::rademacher(), seed + 1))
                      .singular_values;
        std::vector<double> grid;
        for (int i = 1; i <= 32; ++i) grid.push_back(t_end * i / 32.0);
        auto rec = couple(cfg, other, xi, t_end, seed + 2, grid, opt);
        for (std::size_t i = 0; i < rec.times.size(); ++i) {
            f << fmt(rec.times[i]) << "," << n << "," << fmt(rec.edge_gap[i]) << "\n";
            f << fmt(rec.times[i]) << "," << 0 << "," << fmt(rec.max_gap[i]) << "\n";
        }
        extra["coupled"] = true;
    } else if (couple_mode == "none") {
        CounterRng rng(seed, 0, 1);
        auto traj = record_trajectory(cfg, xi, t_end, rng, opt);
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const auto& s = traj.configs[i];
            if (record == "edge") {
                f << fmt(traj.times[i]) << "," << n << "," << fmt(s.back()) << "\n";
            } else if (record == "gaps") {
                for (std::size_t k = 1; k < s.size(); ++k)
                    f << fmt(traj.times[i]) << "," << k << "," << fmt(s[k] - s[k - 1]) << "\n";
            } else { // observable: symmetrized Stieltjes transform at a bulk point
                SymmetrizedConfig c;
                c.s = s;
                std::vector<double> v(s.size(), 1.0);
                auto ob = observable(c, v, Complex(1.0, 0.05), traj.times[i], xi);
                f << fmt(traj.times[i]) << "," << 0 << "," << fmt(ob.s_of_z.real()) << "\n";
                f << fmt(traj.times[i]) << "," << 1 << "," << fmt(ob.s_of_z.imag()) << "\n";
            }
        }
        extra["accepted_steps"] = traj.accepted_steps;
        extra["rejected_steps"] = traj.rejected_steps;
    } else {
        throw CLI::ValidationError("--couple", "must be none or wishart");
    }
    json p{{"n", n},       {"xi", xi},     {"dt", dt},         {"t_end", t_end},
           {"seed", seed}, {"out", out},   {"couple", couple_mode}, {"record", record}};
    json man = manifest("dbm", p, t0);
    man["result"] = extra;
    std::cout << man.dump(2) << "\n";
    return 0;
}

// ---- characteristics -------------------------------------------------------

int cmd_characteristics(double xi, const std::string& z0_str, double t_end,
                        const std::string& field_name, bool verify, const std::string& out,
                        std::chrono::steady_clock::time_point t0) {
    double re, im;
    char comma;
    std::istringstream is(z0_str);
    if (!(is >> re >> comma >> im) || comma != ',')
        throw CLI::ValidationError("--z0", "expected re,im");
    const FieldKind kind =
        field_name == "sc" ? FieldKind::semicircle_comparison : FieldKind::general;
    VelocityField field(xi, kind);
    auto path = flow(field, Complex(re, im), t_end, 64);
    {
        auto f = open_out(out);
        f << "t,re,im\n";
        for (std::size_t i = 0; i < path.times.size(); ++i)
            f << fmt(path.times[i]) << "," << fmt(path.points[i].real()) << ","
              << fmt(path.points[i].imag()) << "\n";
    }
    json p{{"xi", xi}, {"z0", z0_str}, {"t_end", t_end}, {"field", field_name}, {"out", out}};
    json man = manifest("characteristics", p, t0);
    if (verify) {
        SpectralLaw law(xi);
        VelocityField cmp(xi, FieldKind::semicircle_comparison);
        const double e = law.sqrt_edge_plus() - 0.01;
        auto rep = verify_characteristics_asymptotics(
            cmp, {Complex(e, 0.002), Complex(e, 0.01)}, {0.01, 0.1, 0.5});
        json rows = json::array();
        for (const auto& row : rep.rows)
            rows.push_back({{"z0_re", row.z0.real()},
                            {"z0_im", row.z0.imag()},
                            {"t", row.t},
                            {"re_ratio", row.re_ratio},
                            {"im_ratio", row.im_ratio}});
        man["verify"] = {{"band_lo", rep.band_lo},
                         {"band_hi", rep.band_hi},
                         {"pass", rep.pass},
                         {"rows", rows}};
    }
    std::cout << man.dump(2) << "\n";
    return 0;
}

// ---- tw / rate / rigidity ----------------------------------------------------

int cmd_tw(const std::string& out, std::chrono::steady_clock::time_point t0) {
    const auto& ref = tw1_reference();
    auto f = open_out(out);
    f << "s,F1\n";
    for (std::size_t i = 0; i < ref.s.size(); ++i)
        f << fmt(ref.s[i]) << "," << fmt(ref.f1[i]) << "\n";
    json p{{"out", out}};
    json man = manifest("tw", p, t0);
    man["result"] = {{"est_error", ref.est_error}, {"mean", ref.mean}, {"variance", ref.variance}};
    std::cout << man.dump(2) << "\n";
    return 0;
}

int cmd_rate(double xi, const std::vector<int>& ns, int reps, std::uint64_t seed,
             const std::string& dist_name, const std::string& out, int workers,
             std::chrono::steady_clock::time_point t0) {
    if (ns.size() < 4) {
        std::cerr << "rate: need at least 4 N values, got " << ns.size() << "\n";
        std::exit(2);
    }
    auto fit = null_rate_experiment(xi, ns, reps, seed, parse_dist(dist_name), workers);
    json per_n = json::array();
    for (const auto& pt : fit.points)
        per_n.push_back({{"n", pt.n}, {"delta", pt.delta}, {"dkw", pt.dkw}});
    json result{{"per_N", per_n},
                {"slope", fit.slope},
                {"intercept", fit.intercept},
                {"bound_respect", fit.bound_respect},
                {"bound_exponent", fit.bound_exponent},
                {"sigma_xi", sigma_xi(xi)},
                {"seed", seed},
                {"versions", kVersion}};
    {
        auto f = open_out(out);
        f << result.dump(2) << "\n";
    }
    json p{{"xi", xi},   {"ns", ns},   {"reps", reps},      {"seed", seed},
           {"dist", dist_name}, {"out", out}, {"workers", workers}};
    json man = manifest("rate", p, t0);
    man["result"] = result;
    std::cout << man.dump(2) << "\n";
    return 0;
}

int cmd_rigidity(double xi, int n, int reps, std::uint64_t seed,
                 std::chrono::steady_clock::time_point t0) {
    const int m = static_cast<int>(std::lround(n / xi));
    SpectralLaw law(AspectRatio::from_dims(n, m));
    const double phi = phi_param(n);
    int passed = 0, soft = 0, hard = 0;
    for (int r = 0; r < reps; ++r) {
        auto sv = covariance(sample_data(m, n, EntryDistribution::gaussian(), seed,
                                         static_cast<std::uint64_t>(r)))
                      .singular_values;
        auto rep = rigidity_check(sv, law, phi);
        passed += rep.pass;
        soft += rep.soft_pass;
        hard += rep.hard_pass;
    }
    json p{{"xi", xi}, {"n", n}, {"reps", reps}, {"seed", seed}, {"phi", phi}};
    json man = manifest("rigidity", p, t0);
    man["result"] = {{"pass_rate", static_cast<double>(passed) / reps},
                     {"soft_rate", static_cast<double>(soft) / reps},
                     {"hard_rate", static_cast<double>(hard) / reps}};
    std::cout << man.dump(2) << "\n";
    return 0;
}

// ---- plotdata ----------------------------------------------------------------

int cmd_plotdata(const std::string& kind, const std::string& out, int n, int reps,
                 std::uint64_t seed, int workers, std::chrono::steady_clock::time_point t0) {
    json extra;
    if (kind == "figure1") {
        // singular-value density curves for three aspect ratios
        for (double xi : {1.0, 0.36, 0.09}) {
            SpectralLaw law(xi);
            std::ostringstream name;
            name << out << "_density_xi" << xi << ".csv";
            auto f = open_out(name.str());
            f << "x,rho\n";
            const double hi = law.sqrt_edge_plus();
            for (int i = 0; i <= 800; ++i) {
                const double x = -hi + 2.0 * hi * i / 800.0;
                f << fmt(x) << "," << fmt(law.sv_density(x)) << "\n";
            }
        }
    } else if (kind == "overlay") {
        auto set = null_edge_samples(1.0, n, reps, seed, EntryDistribution::gaussian(), workers);
        const auto& tw = tw1_reference();
        const double lo = -6.0, hi = 4.0;
        const int bins = 50;
        std::vector<int> counts(bins, 0);
        for (double s : set.samples) {
            int b = static_cast<int>((s - lo) / (hi - lo) * bins);
            counts[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))]++;
        }
        auto f = open_out(out + "_overlay.csv");
        f << "bin_lo,bin_hi,count,empirical_density,tw_density\n";
        const double w = (hi - lo) / bins;
        int total = 0;
        for (int b = 0; b < bins; ++b) {
            const double a = lo + b * w;
            const double dens = counts[static_cast<std::size_t>(b)] /
                                (static_cast<double>(set.samples.size()) * w);
            const double twd = (tw.cdf(a + w) - tw.cdf(a)) / w;
            f << fmt(a) << "," << fmt(a + w) << "," << counts[static_cast<std::size_t>(b)] << ","
              << fmt(dens) << "," << fmt(twd) << "\n";
            total += counts[static_cast<std::size_t>(b)];
        }
        extra["bin_total"] = total;
        extra["reps"] = reps;
    } else if (kind == "rate") {
        std::vector<int> ns{50, 100, 200, 400};
        auto fit = null_rate_experiment(1.0, ns, reps, seed, EntryDistribution::gaussian(),
                                        workers);
        auto f = open_out(out + "_rate.csv");
        f << "log_n,log_delta,dkw\n";
        for (const auto& pt : fit.points)
            f << fmt(std::log(pt.n)) << "," << fmt(std::log(pt.delta)) << "," << fmt(pt.dkw)
              << "\n";
        extra["slope"] = fit.slope;
    } else {
        throw CLI::ValidationError("--kind", "unknown kind: " + kind);
    }
    json p{{"kind", kind}, {"out", out},         {"n", n},
           {"reps", reps}, {"seed", seed},       {"workers", workers}};
    json man = manifest("plotdata", p, t0);
    man["result"] = extra;
    std::cout << man.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"sample-covariance edge statistics laboratory"};
    app.require_subcommand(1);

    double xi = 1.0;
    int n = 100, reps = 100, workers = 1;
    std::uint64_t seed = 1;
    std::string out = "out.csv", dist = "gaussian", population, density_out;

    auto* law_cmd = app.add_subcommand("law", "spectral law density and transform grids");
    law_cmd->add_option("--xi", xi, "aspect ratio in (0,1]")->required();
    law_cmd->add_option("--out", out, "output prefix");

    auto* loc_cmd = app.add_subcommand("locations", "typical singular-value locations");
    loc_cmd->add_option("--xi", xi)->required();
    loc_cmd->add_option("--n", n)->required();
    loc_cmd->add_option("--out", out);

    auto* def_cmd = app.add_subcommand("deformed", "deformed-law edge quantities");
    def_cmd->add_option("--population", population, "one sigma per line")->required();
    def_cmd->add_option("--xi", xi)->required();
    def_cmd->add_option("--density", density_out, "optional density CSV");

    auto* se_cmd = app.add_subcommand("sample-edge", "largest-eigenvalue samples");
    se_cmd->add_option("--xi", xi)->required();
    se_cmd->add_option("--n", n)->required();
    se_cmd->add_option("--reps", reps)->required();
    se_cmd->add_option("--dist", dist);
    se_cmd->add_option("--seed", seed);
    se_cmd->add_option("--out", out)->required();
    se_cmd->add_option("--population", population);
    se_cmd->add_option("--workers", workers);

    double dt = 1e-5, t_end = 0.1;
    std::string couple_mode = "none", record = "edge";
    auto* dbm_cmd = app.add_subcommand("dbm", "symmetrized singular-value dynamics");
    dbm_cmd->add_option("--n", n)->required();
    dbm_cmd->add_option("--xi", xi)->required();
    dbm_cmd->add_option("--dt", dt);
    dbm_cmd->add_option("--t-end", t_end)->required();
    dbm_cmd->add_option("--couple", couple_mode, "none | wishart");
    dbm_cmd->add_option("--seed", seed);
    dbm_cmd->add_option("--record", record, "edge | gaps | observable");
    dbm_cmd->add_option("--out", out);

    std::string z0_str = "1.5,0.1", field_name = "general";
    bool verify = false;
    auto* ch_cmd = app.add_subcommand("characteristics", "advection characteristics");
    ch_cmd->add_option("--xi", xi)->required();
    ch_cmd->add_option("--z0", z0_str, "re,im");
    ch_cmd->add_option("--t-end", t_end)->required();
    ch_cmd->add_option("--field", field_name, "general | sc");
    ch_cmd->add_flag("--verify", verify, "emit lemma-ratio report");
    ch_cmd->add_option("--out", out);

    auto* tw_cmd = app.add_subcommand("tw", "Tracy-Widom beta=1 reference table");
    tw_cmd->add_option("--out", out)->required();

    std::vector<int> ns;
    auto* rate_cmd = app.add_subcommand("rate", "Kolmogorov-distance rate experiment");
    rate_cmd->add_option("--xi", xi)->required();
    rate_cmd->add_option("--ns", ns, "N grid (>= 4 values)")->required();
    rate_cmd->add_option("--reps", reps)->required();
    rate_cmd->add_option("--seed", seed);
    rate_cmd->add_option("--dist", dist);
    rate_cmd->add_option("--out", out)->required();
    rate_cmd->add_option("--workers", workers);

    auto* rig_cmd = app.add_subcommand("rigidity", "rigidity pass-rate experiment");
    rig_cmd->add_option("--xi", xi)->required();
    rig_cmd->add_option("--n", n)->required();
    rig_cmd->add_option("--reps", reps)->required();
    rig_cmd->add_option("--seed", seed);

    std::string kind = "figure1";
    auto* plot_cmd = app.add_subcommand("plotdata", "plot-ready data files");
    plot_cmd->add_option("--kind", kind, "figure1 | overlay | rate")->required();
    plot_cmd->add_option("--out", out)->required();
    plot_cmd->add_option("--n", n);
    plot_cmd->add_option("--reps", reps);
    plot_cmd->add_option("--seed", seed);
    plot_cmd->add_option("--workers", workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (law_cmd->parsed()) return cmd_law(xi, out, t0);
        if (loc_cmd->parsed()) return cmd_locations(xi, n, out, t0);
        if (def_cmd->parsed()) return cmd_deformed(population, xi, density_out, t0);
        if (se_cmd->parsed())
            return cmd_sample_edge(xi, n, reps, dist, seed, out, population, workers, t0);
        if (dbm_cmd->parsed())
            return cmd_dbm(n, xi, dt, t_end, couple_mode, seed, record, out, t0);
        if (ch_cmd->parsed())
            return cmd_characteristics(xi, z0_str, t_end, field_name, verify, out, t0);
        if (tw_cmd->parsed()) return cmd_tw(out, t0);
        if (rate_cmd->parsed()) return cmd_rate(xi, ns, reps, seed, dist, out, workers, t0);
        if (rig_cmd->parsed()) return cmd_rigidity(xi, n, reps, seed, t0);
        if (plot_cmd->parsed()) return cmd_plotdata(kind, out, n, reps, seed, workers, t0);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
