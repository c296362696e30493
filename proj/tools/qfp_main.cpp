// Command-line interface: transmit / rectify / profile / sweep / search /
// validate subcommands over the two-emitter interferometer model.
//
// Data goes to stdout or --out, informational logging to stderr. Exit codes:
// 0 success, 1 invalid input, 2 unconverged result under --strict.

#include "qfp/config_file.hpp"
#include "qfp/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace {

struct CommonOptions {
    double p_inc = 0.001;
    double length = 0.5;
    double dw1 = 0.0;
    double dw2 = 0.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    std::string direction = "ltr";
    std::string out;
    std::string config_path;
    bool strict = false;
    int workers = 0;
    int samples = 257;

    qfp::SolverSettings solver;

    CLI::Option* p_inc_opt = nullptr;
    CLI::Option* length_opt = nullptr;
    CLI::Option* dw1_opt = nullptr;
    CLI::Option* dw2_opt = nullptr;
    CLI::Option* gamma1_opt = nullptr;
    CLI::Option* gamma2_opt = nullptr;
    CLI::Option* direction_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* strict_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
    CLI::Option* samples_opt = nullptr;
    CLI::Option* damping_opt = nullptr;
    CLI::Option* rel_tol_opt = nullptr;
    CLI::Option* abs_tol_opt = nullptr;
    CLI::Option* max_iter_opt = nullptr;
    CLI::Option* n_seeds_opt = nullptr;
    CLI::Option* cont_steps_opt = nullptr;
};

void add_common_options(CLI::App* cmd, CommonOptions& o) {
    o.p_inc_opt = cmd->add_option("--p-inc", o.p_inc, "incident power (photons per lifetime)");
    o.length_opt = cmd->add_option("--length", o.length, "emitter separation in wavelengths");
    o.dw1_opt = cmd->add_option("--dw1", o.dw1, "detuning of emitter 1");
    o.dw2_opt = cmd->add_option("--dw2", o.dw2, "detuning of emitter 2");
    o.gamma1_opt = cmd->add_option("--gamma1", o.gamma1, "decay rate of emitter 1");
    o.gamma2_opt = cmd->add_option("--gamma2", o.gamma2, "decay rate of emitter 2");
    o.direction_opt = cmd->add_option("--direction", o.direction, "ltr or rtl");
    o.out_opt = cmd->add_option("--out", o.out, "write data to this file instead of stdout");
    cmd->add_option("--config", o.config_path, "key = value file supplying defaults");
    o.strict_opt = cmd->add_flag("--strict", o.strict, "exit 2 on any unconverged point");
    o.workers_opt = cmd->add_option("--workers", o.workers, "sweep worker threads, 0 = auto");
    o.samples_opt = cmd->add_option("--samples", o.samples, "profile sample count");
    o.damping_opt = cmd->add_option("--damping", o.solver.damping, "initial fixed-point mixing factor");
    o.rel_tol_opt = cmd->add_option("--rel-tol", o.solver.rel_tol, "relative tolerance");
    o.abs_tol_opt = cmd->add_option("--abs-tol", o.solver.abs_tol, "absolute tolerance floor");
    o.max_iter_opt = cmd->add_option("--max-iterations", o.solver.max_iterations, "iteration cap");
    o.n_seeds_opt = cmd->add_option("--n-seeds", o.solver.n_seeds, "random restarts for branch scans");
    o.cont_steps_opt = cmd->add_option("--continuation-steps", o.solver.continuation_steps,
                                       "warm-start steps of the power ramp");
}

// Flags override config values; config overrides built-in defaults.
void merge_config(CommonOptions& o) {
    if (o.config_path.empty())
        return;
    const qfp::ConfigFile cfg = qfp::ConfigFile::parse_file(o.config_path);
    auto num = [&](CLI::Option* opt, const char* key, double& slot) {
        if (opt && opt->count() == 0)
            if (const auto v = cfg.get_double(key))
                slot = *v;
    };
    auto integer = [&](CLI::Option* opt, const char* key, auto& slot) {
        if (opt && opt->count() == 0)
            if (const auto v = cfg.get_int(key))
                slot = static_cast<std::remove_reference_t<decltype(slot)>>(*v);
    };
    num(o.p_inc_opt, "p_inc", o.p_inc);
    num(o.length_opt, "length", o.length);
    num(o.dw1_opt, "dw1", o.dw1);
    num(o.dw2_opt, "dw2", o.dw2);
    num(o.gamma1_opt, "gamma1", o.gamma1);
    num(o.gamma2_opt, "gamma2", o.gamma2);
    num(o.damping_opt, "damping", o.solver.damping);
    num(o.rel_tol_opt, "rel_tol", o.solver.rel_tol);
    num(o.abs_tol_opt, "abs_tol", o.solver.abs_tol);
    integer(o.max_iter_opt, "max_iterations", o.solver.max_iterations);
    integer(o.n_seeds_opt, "n_seeds", o.solver.n_seeds);
    integer(o.cont_steps_opt, "continuation_steps", o.solver.continuation_steps);
    integer(o.workers_opt, "workers", o.workers);
    integer(o.samples_opt, "samples", o.samples);
    if (o.direction_opt->count() == 0)
        if (const auto v = cfg.get("direction"))
            o.direction = *v;
    if (o.out_opt->count() == 0)
        if (const auto v = cfg.get("out"))
            o.out = *v;
    if (o.strict_opt->count() == 0)
        if (const auto v = cfg.get_bool("strict"))
            o.strict = *v;
}

qfp::DeviceConfig device_from(const CommonOptions& o) {
    qfp::DeviceConfig dev;
    dev.emitter1 = qfp::EmitterParams{o.gamma1, o.dw1};
    dev.emitter2 = qfp::EmitterParams{o.gamma2, o.dw2};
    dev.geometry = qfp::CavityGeometry{o.length};
    return dev;
}

qfp::Direction direction_from(const std::string& name) {
    if (name == "ltr" || name == "12")
        return qfp::Direction::LeftToRight;
    if (name == "rtl" || name == "21")
        return qfp::Direction::RightToLeft;
    throw qfp::InvalidParameterError("--direction must be ltr or rtl");
}

// Emit a record: bare row on stdout, header + row into --out files.
int emit_record(const CommonOptions& o, const qfp::SweepRecord& rec,
                const char* header, const std::string& row) {
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "error: cannot write " << o.out << "\n";
            return 1;
        }
        f << header << '\n' << row << '\n';
    } else {
        std::cout << row << '\n';
    }
    if (o.strict && !(rec.converged_12 || rec.converged_21))
        return 2;
    return 0;
}

int run_transmit(const CommonOptions& o) {
    const qfp::DeviceConfig dev = device_from(o);
    const qfp::Direction dir = direction_from(o.direction);
    const auto [t, sol] = qfp::transmit(o.p_inc, dev, dir, o.solver);

    qfp::SweepRecord rec;
    rec.p_inc = o.p_inc;
    rec.length = o.length;
    rec.dw1 = o.dw1;
    rec.dw2 = o.dw2;
    rec.gamma1 = o.gamma1;
    rec.gamma2 = o.gamma2;
    rec.iterations = sol.iterations;
    rec.residual = sol.residual;
    if (dir == qfp::Direction::LeftToRight) {
        rec.converged_12 = sol.converged;
        if (sol.converged) {
            rec.p1 = sol.p1;
            rec.p2 = sol.p2;
            rec.R1 = sol.R1;
            rec.R2 = sol.R2;
            rec.t12 = t;
        }
    } else {
        rec.converged_21 = sol.converged;
        if (sol.converged)
            rec.t21 = t;
    }
    const int rc = emit_record(o, rec, qfp::kCsvHeader, qfp::to_csv_row(rec));
    if (rc == 2)
        return 2;
    if (o.strict && !sol.converged)
        return 2;
    return rc;
}

int run_rectify(const CommonOptions& o) {
    const qfp::DeviceConfig dev = device_from(o);
    const auto [t12, sol12] = qfp::transmit(o.p_inc, dev, qfp::Direction::LeftToRight, o.solver);
    const auto [t21, sol21] = qfp::transmit(o.p_inc, dev, qfp::Direction::RightToLeft, o.solver);

    qfp::SweepRecord rec;
    rec.p_inc = o.p_inc;
    rec.length = o.length;
    rec.dw1 = o.dw1;
    rec.dw2 = o.dw2;
    rec.gamma1 = o.gamma1;
    rec.gamma2 = o.gamma2;
    rec.converged_12 = sol12.converged;
    rec.converged_21 = sol21.converged;
    rec.iterations = sol12.iterations + sol21.iterations;
    rec.residual = std::max(sol12.residual, sol21.residual);
    if (sol12.converged) {
        rec.p1 = sol12.p1;
        rec.p2 = sol12.p2;
        rec.R1 = sol12.R1;
        rec.R2 = sol12.R2;
        rec.t12 = t12;
    }
    if (sol21.converged)
        rec.t21 = t21;
    if (sol12.converged && sol21.converged) {
        const double sum = t12 + t21;
        const double r = (sum > 0.0) ? std::abs(t12 - t21) / sum : 0.0;
        rec.r_factor = r;
        rec.l_factor = t12 * r;
    }
    int rc = emit_record(o, rec, qfp::kCsvHeader, qfp::to_csv_row(rec));
    if (o.strict && !(sol12.converged && sol21.converged))
        rc = 2;
    return rc;
}

int run_profile(const CommonOptions& o) {
    const qfp::DeviceConfig dev = device_from(o);
    const qfp::IntensityProfile prof =
        qfp::intracavity_profile(o.p_inc, dev, o.samples, o.solver);

    std::ostringstream body;
    body << "z,p_intr\n";
    for (std::size_t i = 0; i < prof.positions.size(); ++i)
        body << qfp::format_double(prof.positions[i]) << ','
             << qfp::format_double(prof.intensities[i]) << '\n';

    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "error: cannot write " << o.out << "\n";
            return 1;
        }
        f << body.str();
    } else {
        std::cout << body.str();
    }
    std::cerr << "average intracavity intensity = "
              << qfp::format_double(prof.average)
              << (prof.converged ? "" : " (UNCONVERGED)") << "\n";
    if (o.strict && !prof.converged)
        return 2;
    return 0;
}

int run_sweep_cmd(const CommonOptions& o) {
    if (o.config_path.empty())
        throw qfp::InvalidParameterError("sweep requires --config with axis definitions");
    const qfp::ConfigFile cfg = qfp::ConfigFile::parse_file(o.config_path);

    qfp::SweepSpec spec;
    spec.fixed = qfp::FixedParams{o.p_inc, o.length, o.dw1, o.dw2, o.gamma1, o.gamma2};
    spec.solver = o.solver;
    spec.workers = o.workers;

    for (const char* prefix : {"axis1", "axis2"}) {
        const auto name = cfg.get(std::string(prefix));
        if (!name)
            continue;
        qfp::SweepAxis ax;
        ax.param = qfp::sweep_param_from_string(*name);
        const auto lo = cfg.get_double(std::string(prefix) + "_min");
        const auto hi = cfg.get_double(std::string(prefix) + "_max");
        const auto n = cfg.get_int(std::string(prefix) + "_count");
        if (!lo || !hi || !n)
            throw qfp::InvalidParameterError(std::string(prefix) +
                                             " needs _min, _max and _count");
        ax.min = *lo;
        ax.max = *hi;
        ax.count = static_cast<int>(*n);
        if (const auto sp = cfg.get(std::string(prefix) + "_spacing")) {
            if (*sp == "log")
                ax.log_spacing = true;
            else if (*sp != "linear")
                throw qfp::InvalidParameterError("axis spacing must be linear or log");
        }
        spec.axes.push_back(ax);
    }
    if (spec.axes.empty())
        throw qfp::InvalidParameterError("config defines no sweep axes (axis1 = ...)");

    if (const auto outs = cfg.get("outputs")) {
        spec.outputs = qfp::SweepOutputs{false, false, false, false, false};
        std::istringstream ss(*outs);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok == "transmit") spec.outputs.transmit = true;
            else if (tok == "rectify") spec.outputs.rectify = true;
            else if (tok == "profile_average") spec.outputs.profile_average = true;
            else if (tok == "p1") spec.outputs.p1 = true;
            else if (tok == "p2") spec.outputs.p2 = true;
            else throw qfp::InvalidParameterError("unknown output: " + tok);
        }
    }

    const auto records = qfp::run_sweep(spec);

    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << o.out << "\n";
            return 1;
        }
        qfp::write_csv(f, records);
    } else {
        qfp::write_csv(std::cout, records);
    }
    std::cerr << "sweep: " << records.size() << " grid points\n";

    if (o.strict) {
        for (const auto& r : records)
            if (!r.converged_12 || !r.converged_21)
                return 2;
    }
    return 0;
}

int run_search(const CommonOptions& o, const qfp::DesignBounds& bounds) {
    const qfp::DesignSearchResult res =
        qfp::design_search(o.p_inc, o.dw2, bounds, o.solver);
    if (!res.found) {
        std::cerr << "search: no converged grid point\n";
        return o.strict ? 2 : 0;
    }
    std::ostringstream row;
    row << qfp::format_double(res.length) << ',' << qfp::format_double(res.dw1)
        << ',' << qfp::format_double(res.r_factor) << ','
        << qfp::format_double(res.l_factor);
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "error: cannot write " << o.out << "\n";
            return 1;
        }
        f << "L,dw1,r_factor,l_factor\n" << row.str() << '\n';
    } else {
        std::cout << row.str() << '\n';
    }
    return 0;
}

// Built-in self checks: closed-form limits, the Bloch-route reflectance,
// the truncated round-trip series against the closed forms, and the solver
// residual certificate.
int run_validate() {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "PASS  " : "FAIL  ") << name << "\n";
        if (!ok)
            ++failures;
    };
    const double pi = std::numbers::pi;

    const qfp::EmitterParams res1{1.0, 0.0};
    check("reflectance(0) = 1 at resonance",
          std::abs(qfp::reflectance(0.0, res1) - 1.0) < 1e-15);
    check("reflectance(p=1/4) = 1/2 at resonance",
          std::abs(qfp::reflectance(0.25, res1) - 0.5) < 1e-15);
    check("phase shift at resonance = -pi",
          std::abs(qfp::phase_shift(res1) + pi) < 1e-15);

    bool bloch_ok = true;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ug(0.1, 10.0), uw(-10.0, 10.0),
        up(1e-6, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const qfp::EmitterParams em{ug(rng), uw(rng)};
        const double p = up(rng);
        const double a = qfp::reflectance(p, em);
        const double b = qfp::reflectance_from_bloch(p, em);
        if (std::abs(a - b) > 1e-12 * a)
            bloch_ok = false;
    }
    check("Bloch-route reflectance matches closed form (1000 samples)", bloch_ok);

    check("single-mirror limit T = 1 - R1",
          std::abs(qfp::transmittance_formula(0.3, 0.0, -pi, 0.77) - 0.7) < 1e-12);

    // 64-term round-trip series vs closed-form output amplitude.
    bool series_ok = true;
    std::uniform_real_distribution<double> ur(0.0, 0.9), uth(-3 * pi / 2, -pi / 2),
        ul(0.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double R1 = ur(rng), R2 = ur(rng);
        const auto mp = qfp::MirrorPair::from_reflectances(R1, R2, uth(rng), uth(rng));
        const qfp::CavityGeometry geom{ul(rng)};
        const double kl = geom.phase_kl();
        std::complex<double> sum = 0.0;
        const std::complex<double> loop = std::polar(mp.r1 * mp.r2, 2.0 * (kl + mp.theta_plus()));
        std::complex<double> term = mp.t1 * mp.t2;
        for (int n = 0; n < 64; ++n) {
            sum += term;
            term *= loop;
        }
        const auto closed = qfp::output_amplitude(1.0, mp, geom, geom.length_wavelengths);
        const double tail = std::pow(mp.r1 * mp.r2, 64) / (1.0 - mp.r1 * mp.r2);
        if (std::abs(sum - closed) > tail + 1e-12)
            series_ok = false;
    }
    check("truncated series (N=64) within geometric tail of closed form", series_ok);

    // Residual certificate on a mid-power solve.
    qfp::DeviceConfig dev;
    dev.geometry.length_wavelengths = 0.5;
    qfp::SolverSettings s;
    const auto sol = qfp::solve_steady_state(0.1, dev, s);
    bool cert = sol.converged;
    if (cert) {
        const auto [n1, n2] = qfp::fixed_point_map(sol.p1, sol.p2, 0.1, dev);
        cert = std::abs(n1 - sol.p1) <= std::max(s.rel_tol * sol.p1, s.abs_tol) &&
               std::abs(n2 - sol.p2) <= std::max(s.rel_tol * sol.p2, s.abs_tol);
    }
    check("solver residual certificate (p_inc=0.1, L=0.5, resonant)", cert);

    const auto cont = qfp::solve_with_continuation(0.1, dev, s);
    check("continuation agrees with plain solve",
          cont.converged && std::abs(cont.p1 - sol.p1) < 1e-8 * sol.p1 &&
              std::abs(cont.p2 - sol.p2) < 1e-8 * sol.p2);

    std::cout << (failures == 0 ? "all checks passed\n"
                                : "some checks FAILED\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two saturable two-level mirrors in a 1D waveguide: "
                 "nonlinear Fabry-Perot transport and rectification"};
    app.require_subcommand(1);

    CommonOptions o_transmit, o_rectify, o_profile, o_sweep, o_search;
    qfp::DesignBounds bounds;

    CLI::App* c_transmit = app.add_subcommand("transmit", "directional transmittance");
    add_common_options(c_transmit, o_transmit);
    CLI::App* c_rectify = app.add_subcommand("rectify", "both directions plus rectification metrics");
    add_common_options(c_rectify, o_rectify);
    CLI::App* c_profile = app.add_subcommand("profile", "intracavity intensity profile");
    add_common_options(c_profile, o_profile);
    CLI::App* c_sweep = app.add_subcommand("sweep", "grid sweep to CSV");
    add_common_options(c_sweep, o_sweep);
    CLI::App* c_search = app.add_subcommand("search", "locate the best rectifier design");
    add_common_options(c_search, o_search);
    c_search->add_option("--length-min", bounds.length_min, "lower bound on L");
    c_search->add_option("--length-max", bounds.length_max, "upper bound on L");
    c_search->add_option("--dw1-min", bounds.dw1_min, "lower bound on dw1");
    c_search->add_option("--dw1-max", bounds.dw1_max, "upper bound on dw1");
    CLI::App* c_validate = app.add_subcommand("validate", "run built-in self checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (c_transmit->parsed()) {
            merge_config(o_transmit);
            return run_transmit(o_transmit);
        }
        if (c_rectify->parsed()) {
            merge_config(o_rectify);
            return run_rectify(o_rectify);
        }
        if (c_profile->parsed()) {
            merge_config(o_profile);
            return run_profile(o_profile);
        }
        if (c_sweep->parsed()) {
            merge_config(o_sweep);
            return run_sweep_cmd(o_sweep);
        }
        if (c_search->parsed()) {
            merge_config(o_search);
            return run_search(o_search, bounds);
        }
        if (c_validate->parsed())
            return run_validate();
    } catch (const qfp::InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
