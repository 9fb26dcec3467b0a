#include "msf/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "msf/error.hpp"
#include "msf/io.hpp"
#include "msf/report.hpp"
#include "msf/verify_bench.hpp"

namespace msf::cli {
namespace {

struct FactorFlags {
    double eps_tail = FactorConfig{}.eps_tail;
    double tol_analytic = CompletionTolerances{}.analytic;
    double tol_paraunitary = CompletionTolerances{}.paraunitary;
    int max_order = 0;
    int threads = 0;
};

void add_factor_flags(CLI::App& cmd, FactorFlags& flags)
{
    cmd.add_option("--eps-tail", flags.eps_tail, "Relative tail threshold for the truncation order")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--tol-analytic", flags.tol_analytic, "Anti-analytic residual tolerance per completion")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--tol-paraunitary", flags.tol_paraunitary, "Paraunitarity tolerance per completion")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-order", flags.max_order, "Upper bound on the truncation order (0: grid/2)")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--threads", flags.threads, "Worker threads (overrides MSF_THREADS)")->check(CLI::PositiveNumber);
}

FactorConfig factor_config(const FactorFlags& flags, const CLI::App& cmd)
{
    FactorConfig config;
    config.eps_tail = flags.eps_tail;
    config.max_order = flags.max_order;
    config.tolerances.analytic = flags.tol_analytic;
    config.tolerances.paraunitary = flags.tol_paraunitary;
    if (cmd.count("--threads") > 0) {
        config.threads = flags.threads;
    } else if (const char* env = std::getenv("MSF_THREADS")) {
        try {
            config.threads = std::stoi(env);
        } catch (const std::exception&) {
            config.threads = 0;
        }
        if (config.threads < 1) throw Error(ErrorCode::InvalidArgument, "MSF_THREADS must be a positive integer");
    }
    return config;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    f << text << '\n';
}

bool has_magic(const std::string& path, std::string_view magic)
{
    std::ifstream f(path, std::ios::binary);
    char buf[4] = {};
    f.read(buf, 4);
    return f && std::string_view(buf, 4) == magic;
}

// A factor file may hold samples (MSFG) or coefficients (MSFC).
GridSamples read_factor(const std::string& path, int grid)
{
    if (!has_magic(path, "MSFC")) return io::read_grid(path);
    const LaurentMatrixPoly p = io::read_coefficients(path);
    if (p.count() > grid)
        throw Error(ErrorCode::GridTooSmall, "factor coefficients do not fit the density grid");
    return to_grid(p, grid);
}

// Tolerance violations of individual completions count as numerical failures.
void check_steps(const FactorReport& report, const FactorConfig& config)
{
    for (const auto& s : report.steps) {
        if (s.order == 0) continue;
        const bool ok = s.paraunitary_residual <= config.tolerances.paraunitary &&
                        s.analytic_residual <= config.tolerances.analytic;
        if (!ok) {
            ErrorContext ctx;
            if (report.algorithm == "classic") {
                ctx.stage = s.stage;
            } else {
                ctx.level = s.stage;
                ctx.block = s.block;
            }
            throw Error(report.algorithm == "classic" ? ErrorCode::StageFailed : ErrorCode::LevelFailed,
                        "completion residuals exceed tolerance (paraunitary " +
                            std::to_string(s.paraunitary_residual) + ", analytic " +
                            std::to_string(s.analytic_residual) + ")",
                        ctx);
        }
    }
}

std::optional<double> try_outer_check(const GridSamples& factor, std::ostream& err)
{
    try {
        return outer_check(factor);
    } catch (const Error& e) {
        err << "warning: " << e.what() << '\n';
        return std::nullopt;
    }
}

}  // namespace

GridSamples normalize_gauge(const GridSamples& factor)
{
    const int r = factor.dim();
    const CMatrix c0 = all_coefficients(factor).coeff(0);
    const Eigen::HouseholderQR<CMatrix> qr(c0.adjoint());
    CMatrix v = qr.householderQ() * CMatrix::Identity(r, r);
    const CMatrix upper = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < r; ++i) {
        const Complex d = upper(i, i);
        if (std::abs(d) > 0.0) v.col(i) *= d / std::abs(d);
    }
    GridSamples out(r, factor.size());
    for (int j = 0; j < factor.size(); ++j) out.node(j).noalias() = factor.node(j) * v;
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Matrix spectral factorization on a uniform grid", "msf"};
    app.require_subcommand(1);

    // generate
    GeneratorConfig gen;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Write a random density A(z) A(z)^H as MSFG");
    generate->add_option("--r", gen.r, "Matrix dimension")->required()->check(CLI::PositiveNumber);
    generate->add_option("--order", gen.n, "Polynomial order n of A")->required()->check(CLI::NonNegativeNumber);
    generate->add_option("--grid", gen.grid, "Grid size N_g (power of two)")->required();
    generate->add_option("--seed", gen.seed, "RNG seed");
    generate->add_option("--lower", gen.lower, "Lower bound of the entry distribution");
    generate->add_option("--upper", gen.upper, "Upper bound of the entry distribution");
    generate->add_flag("--real", gen.real_only, "Draw real entries only");
    generate->add_option("--out", gen_out, "Output MSFG path")->required();

    // factorize
    std::string fac_in, fac_grid_out, fac_coeff_out, fac_report;
    std::string fac_algorithm = "doubling";
    bool fac_normalize = false;
    FactorFlags fac_flags;
    auto* fac = app.add_subcommand("factorize", "Compute S+ for a density file");
    fac->add_option("--in", fac_in, "Density (MSFG)")->required();
    fac->add_option("--algorithm", fac_algorithm, "classic | doubling")
        ->check(CLI::IsMember({"classic", "doubling"}));
    fac->add_option("--out", fac_grid_out, "Factor samples (MSFG)");
    fac->add_option("--out-coeffs", fac_coeff_out, "Factor coefficients (MSFC)");
    fac->add_option("--report", fac_report, "JSON report path ('-' for stdout)");
    fac->add_flag("--normalize", fac_normalize, "Fix the constant unitary gauge");
    add_factor_flags(*fac, fac_flags);

    // verify
    std::string ver_density, ver_factor, ver_report;
    auto* ver = app.add_subcommand("verify", "Recompute C1, C2 and the outer check");
    ver->add_option("--density", ver_density, "Density (MSFG)")->required();
    ver->add_option("--factor", ver_factor, "Factor (MSFG or MSFC)")->required();
    ver->add_option("--report", ver_report, "JSON output path ('-' for stdout)");

    // bench
    BenchmarkConfig bench;
    std::vector<std::string> bench_algorithms{"classic", "doubling"};
    std::string bench_out;
    bool bench_no_warmup = false;
    FactorFlags bench_flags;
    auto* bn = app.add_subcommand("bench", "Time the algorithms on generated densities");
    bn->add_option("--dims", bench.dims, "Matrix dimensions r")->delimiter(',')->check(CLI::PositiveNumber);
    bn->add_option("--order", bench.n, "Polynomial order n")->check(CLI::NonNegativeNumber);
    bn->add_option("--grid", bench.grid, "Grid size N_g");
    bn->add_option("--seed", bench.seed, "RNG seed");
    bn->add_flag("--real", bench.real_only, "Draw real entries only");
    bn->add_option("--algorithms", bench_algorithms, "classic,doubling")
        ->delimiter(',')
        ->check(CLI::IsMember({"classic", "doubling"}));
    bn->add_option("--repetitions", bench.repetitions, "Timed runs per algorithm")->check(CLI::PositiveNumber);
    bn->add_flag("--no-warmup", bench_no_warmup, "Skip the warm-up run");
    bn->add_option("--out", bench_out, "JSON output path ('-' for stdout)");
    add_factor_flags(*bn, bench_flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    std::string failure_path;
    try {
        if (generate->parsed()) {
            const GridSamples s = generate_density(gen);
            io::write_grid(gen_out, s);
            return exit_ok;
        }
        if (fac->parsed()) {
            failure_path = fac_report;
            const FactorConfig config = factor_config(fac_flags, *fac);
            const GridSamples density = io::read_grid(fac_in);
            FactorResult result = factorize(parse_algorithm(fac_algorithm), density, config);
            check_steps(result.report, config);
            if (fac_normalize) {
                result.factor = normalize_gauge(result.factor);
                result.report.c1 = metric_c1(density, result.factor);
                result.report.c2 = metric_c2(result.factor);
            }
            if (!fac_grid_out.empty()) io::write_grid(fac_grid_out, result.factor);
            if (!fac_coeff_out.empty()) io::write_coefficients(fac_coeff_out, all_coefficients(result.factor));
            const auto outer = try_outer_check(result.factor, err);
            nlohmann::json doc = to_json(result.report, outer);
            doc["normalized"] = fac_normalize;
            if (!fac_report.empty()) write_text(fac_report, doc.dump(2), out);
            return exit_ok;
        }
        if (ver->parsed()) {
            const GridSamples density = io::read_grid(ver_density);
            const GridSamples factor = read_factor(ver_factor, density.size());
            const double c1 = metric_c1(density, factor);
            const double c2 = metric_c2(factor);
            nlohmann::json doc = {{"status", "ok"}, {"metrics", verify_json(c1, c2, try_outer_check(factor, err))}};
            write_text(ver_report, doc.dump(2), out);
            return exit_ok;
        }
        if (bn->parsed()) {
            bench.factor = factor_config(bench_flags, *bn);
            bench.algorithms.clear();
            for (const auto& a : bench_algorithms) bench.algorithms.push_back(parse_algorithm(a));
            bench.warmup = !bench_no_warmup;
            const BenchmarkReport report = benchmark(bench);
            write_text(bench_out, to_json(report).dump(2), out);
            return exit_ok;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (!failure_path.empty()) {
            try {
                write_text(failure_path, to_json(e).dump(2), out);
            } catch (const Error&) {
            }
        }
        return is_usage_error(e.code()) ? exit_usage : exit_numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_usage;
}

}  // namespace msf::cli
