// slinv: forward spectra, inverse solves and dataset flipping from the shell.

#include "slinv/errors.hpp"
#include "slinv/forward.hpp"
#include "slinv/io.hpp"
#include "slinv/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace slinv;

enum ExitCode { ok = 0, validation = 2, numerical = 3 };

struct ForwardArgs {
    std::string q{"zero"};
    double h{0.0};
    double H{0.0};
    int count{201};
    std::string bc_right{"robin"};
    std::string out;
};

struct SolveArgs {
    std::string data;
    int equations{8};
    int augment{5000};
    int mesh_size{201};
    bool no_flip{false};
    std::string diff{"cheb"};
    double cond_threshold{10.0};
    std::string omega_method{"fit"};
    std::string seed_potential;
    std::string out;
};

void add_config_flags(CLI::App* cmd, SolveArgs& a)
{
    cmd->add_option("--equations", a.equations, "Number of equations in each truncated system (N + 1)")
        ->capture_default_str()
        ->check(CLI::Range(1, 200));
    cmd->add_option("--augment", a.augment, "Extend the data with asymptotic values up to this index")
        ->capture_default_str();
    cmd->add_option("--mesh-size", a.mesh_size, "Points per half-interval solve and in the output")
        ->capture_default_str()
        ->check(CLI::Range(21, 100000));
    cmd->add_flag("--no-flip", a.no_flip, "Solve on the whole interval instead of two halves");
    cmd->add_option("--diff", a.diff, "Differentiation of g0")
        ->capture_default_str()
        ->check(CLI::IsMember({"spline6", "cheb"}));
    cmd->add_option("--cond-threshold", a.cond_threshold, "Condition bound for the boundary systems")
        ->capture_default_str();
    cmd->add_option("--omega-method", a.omega_method, "Source of omega")
        ->capture_default_str()
        ->check(CLI::IsMember({"fit", "h0"}));
}

pipeline::SolveConfig make_config(const SolveArgs& a)
{
    pipeline::SolveConfig c;
    c.N = a.equations - 1;
    c.M = a.augment;
    c.mesh_size = a.mesh_size;
    c.flip = !a.no_flip;
    c.diff = recovery::diff_method_from_string(a.diff);
    c.cond_threshold = a.cond_threshold;
    c.omega_method = pipeline::omega_method_from_string(a.omega_method);
    return c;
}

int run_forward(const ForwardArgs& a)
{
    const Potential q = io::resolve_potential(a.q);
    const bool dirichlet = a.bc_right == "dirichlet";
    forward::ForwardOptions opts;
    io::SpectralFile file;
    file.problem = dirichlet ? io::ProblemKind::robin_dirichlet : io::ProblemKind::robin_robin;

    const auto robin = forward::solve_forward({q, a.h, a.H, forward::RightBoundary::robin, a.count}, opts);
    file.rho = robin.rho;
    if (dirichlet) {
        file.mu = forward::solve_forward({q, a.h, a.H, forward::RightBoundary::dirichlet, a.count}, opts).rho;
    } else {
        file.alpha = robin.alpha;
    }
    file.meta = {{"generator", "slinv forward"},
                 {"potential", a.q},
                 {"h", a.h},
                 {"H", a.H},
                 {"tolerances",
                  {{"lambda_relative", opts.lambda_tolerance},
                   {"max_step", opts.max_step},
                   {"oscillation_step", opts.oscillation_step}}}};
    if (a.out.empty()) {
        std::cout << io::to_json(file).dump(2) << '\n';
    } else {
        io::write_spectral_file(a.out, file);
    }
    return ok;
}

int run_solve(const SolveArgs& a, bool two_spectra)
{
    const io::SpectralFile file = io::read_spectral_file(a.data);
    const pipeline::SolveConfig cfg = make_config(a);
    const pipeline::Result res = two_spectra ? pipeline::solve_problem2(io::to_two_spectra(file), cfg)
                                             : pipeline::solve_problem1(io::to_dataset(file), cfg);

    std::optional<Potential> reference;
    if (!a.seed_potential.empty()) {
        reference = io::resolve_potential(a.seed_potential);
    }
    std::optional<double> l1;
    if (reference) {
        l1 = io::l1_error(res.reconstruction, *reference);
    }
    const auto diag = io::diagnostics_json(res, l1).dump(2);
    const Potential* ref = reference ? &*reference : nullptr;
    if (a.out.empty()) {
        io::write_reconstruction_csv(std::cout, res.reconstruction, ref);
        std::cerr << diag << '\n';
    } else {
        std::ofstream csv(a.out + ".csv");
        std::ofstream json(a.out + ".json");
        if (!csv || !json) {
            throw InvalidArgument("cannot write outputs with prefix '" + a.out + "'");
        }
        io::write_reconstruction_csv(csv, res.reconstruction, ref);
        json << diag << '\n';
    }
    std::fprintf(stderr, "solved in %.2f s\n", res.diagnostics.seconds);
    return ok;
}

int run_flip(const SolveArgs& a)
{
    io::SpectralFile file = io::read_spectral_file(a.data);
    const auto flipped = pipeline::flip_dataset(io::to_dataset(file), make_config(a));
    file.alpha = flipped.alpha;
    file.meta["flipped"] = !file.meta.value("flipped", false);
    if (a.out.empty()) {
        std::cout << io::to_json(file).dump(2) << '\n';
    } else {
        io::write_spectral_file(a.out, file);
    }
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Inverse Sturm-Liouville solver"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML file with option defaults (flags take precedence)");

    ForwardArgs fa;
    auto* fwd = app.add_subcommand("forward", "Compute eigenvalues and norming constants of a potential");
    fwd->add_option("--q", fa.q, "Builtin potential or two-column CSV file")->capture_default_str();
    fwd->add_option("--h", fa.h, "Robin constant at 0")->capture_default_str();
    fwd->add_option("--H", fa.H, "Robin constant at pi")->capture_default_str();
    fwd->add_option("--count", fa.count, "Number of eigenpairs")->capture_default_str()->check(CLI::PositiveNumber);
    fwd->add_option("--bc-right", fa.bc_right,
                    "robin: one spectrum with norming constants; dirichlet: Robin and Dirichlet spectra")
        ->capture_default_str()
        ->check(CLI::IsMember({"robin", "dirichlet"}));
    fwd->add_option("--out", fa.out, "Output JSON file (stdout when omitted)");

    SolveArgs s1;
    auto* solve1 = app.add_subcommand("solve1", "Recover q, h, H from eigenvalues and norming constants");
    SolveArgs s2;
    auto* solve2 = app.add_subcommand("solve2", "Recover q, h, H from two spectra");
    for (auto [cmd, args] : {std::pair{solve1, &s1}, std::pair{solve2, &s2}}) {
        cmd->add_option("data", args->data, "Spectral data JSON")->required()->check(CLI::ExistingFile);
        add_config_flags(cmd, *args);
        cmd->add_option("--seed-potential", args->seed_potential,
                        "Reference potential (builtin or CSV) for error columns and the L1 error");
        cmd->add_option("--out", args->out, "Output prefix for <out>.csv and <out>.json");
    }

    SolveArgs fl;
    auto* flip = app.add_subcommand("flip", "Norming constants of the reflected problem");
    flip->add_option("data", fl.data, "Robin-Robin spectral data JSON")->required()->check(CLI::ExistingFile);
    add_config_flags(flip, fl);
    flip->add_option("--out", fl.out, "Output JSON file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : validation;
    }

    try {
        if (*fwd) {
            return run_forward(fa);
        }
        if (*solve1) {
            return run_solve(s1, false);
        }
        if (*solve2) {
            return run_solve(s2, true);
        }
        return run_flip(fl);
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return validation;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return validation;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical;
    }
}
