#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "supres/degrade.hpp"
#include "supres/imgio.hpp"
#include "supres/metrics.hpp"
#include "supres/solver.hpp"
#include "supres/tuning.hpp"
#include "supres/whiteness.hpp"

namespace {

using namespace supres;

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

ImageFormat output_format(const std::filesystem::path& path) {
    if (auto f = format_from_extension(path)) return *f;
    throw InvalidArgument("unrecognised output extension on '" +
                          path.string() + "'; use .pgm or .pfm");
}

MuGrid parse_grid(const std::string& s) {
    MuGrid g;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &g.log_lo, &g.log_hi, &g.count) !=
        3)
        throw InvalidArgument("bad --grid '" + s + "'; expected lo:hi:count");
    (void)g.values();  // validates
    return g;
}

struct DegradeArgs {
    std::string input, out, preset;
    int band = 1;
    double psf_sigma = 1.0;
    int decim = 1;
    double noise_sigma = 0.0;
    std::uint64_t seed = 1;
};

int run_degrade(const DegradeArgs& a) {
    GaussianPsfSpec psf{a.band, a.psf_sigma};
    DecimationFactors f{a.decim, a.decim};
    double sigma = a.noise_sigma;
    if (!a.preset.empty()) {
        const auto p = preset_by_name(a.preset);
        if (!p)
            throw InvalidArgument("unknown preset '" + a.preset +
                                  "'; available: test1, test2");
        psf = p->psf;
        f = p->factors;
        sigma = p->sigma;
    }
    const ImageGrid x = read_image(a.input);
    const DegradeResult res = degrade(x, psf, f, NoiseSpec{sigma, a.seed});
    write_image(res.b, a.out, output_format(a.out));

    ExperimentMeta meta;
    meta.band = psf.band;
    meta.psf_sigma = psf.sigma_psf;
    meta.decim_r = f.d_r;
    meta.decim_c = f.d_c;
    meta.noise_sigma = sigma;
    meta.seed = a.seed;
    write_meta(meta, a.out + ".meta");
    return 0;
}

struct SolveSetup {
    DecimationFactors factors;
    SpectralSolveContext ctx;
};

// Builds the operator and context from the sidecar's degradation parameters
// only; this path never sees a noise level.
SolveSetup make_setup(const std::string& lr_path, const std::string& meta_text,
                      double epsilon) {
    const SolveInputs si = parse_meta_sigma_free(meta_text);
    if (!si.decim_r || !si.decim_c)
        throw InvalidArgument("sidecar missing decim_r/decim_c");
    if (!si.band || !si.psf_sigma)
        throw InvalidArgument("sidecar missing band/psf_sigma");
    const ImageGrid b = read_image(lr_path);
    DecimationFactors f{*si.decim_r, *si.decim_c};
    const Eigen::Index hr_rows = b.rows() * f.d_r;
    const Eigen::Index hr_cols = b.cols() * f.d_c;
    const DegradationOperator op = make_degradation_operator(
        gaussian_kernel(GaussianPsfSpec{*si.band, *si.psf_sigma}), hr_rows,
        hr_cols, f);
    const RegularizerStack reg =
        build_difference_regularizer(hr_rows, hr_cols, epsilon);
    const AliasGroups groups = build_alias_groups(hr_rows, hr_cols, f);
    return SolveSetup{f, prepare_context(b, op, reg, groups)};
}

struct SolveArgs {
    std::string input, meta, out, grid = "-3:6:200";
    double mu = 0.0;
    bool rwp = false;
    double dp_sigma = 0.0;
    bool have_mu = false, have_dp = false;
    double epsilon = 1e-8;
    double dp_tau = 1.0;
};

int run_solve(const SolveArgs& a) {
    const std::string meta_text = read_text_file(a.meta);
    SolveSetup setup = make_setup(a.input, meta_text, a.epsilon);
    const MuGrid grid = parse_grid(a.grid);

    double mu_star = a.mu;
    if (a.rwp) {
        const WhitenessTable tbl = build_whiteness_table(setup.ctx);
        const SelectionReport rep = select_rwp(setup.ctx, tbl, grid);
        if (rep.boundary_minimum)
            std::cerr << "warning: whiteness minimum at grid boundary; "
                         "widen --grid\n";
        mu_star = rep.mu_star;
        // Diagnostics only: the true sigma, when recorded, turns the
        // selected residual norm into tau*(mu*). Selection is already done.
        const auto sigma = parse_meta(meta_text).noise_sigma;
        double tau = std::numeric_limits<double>::quiet_NaN();
        if (sigma && *sigma > 0.0)
            tau = tau_of_mu(mu_star, setup.ctx, *sigma);
        std::cout << "mu_star=" << fmt_g(mu_star) << " tau_star=" << fmt_g(tau)
                  << " W=" << fmt_g(*rep.w_star) << "\n";
    } else if (a.have_dp) {
        const SelectionReport rep =
            select_dp(setup.ctx, a.dp_sigma, a.dp_tau, grid);
        mu_star = rep.mu_star;
        std::cout << "mu_star=" << fmt_g(mu_star)
                  << " tau_star=" << fmt_g(*rep.tau_star) << "\n";
    } else {
        if (!(mu_star > 0.0))
            throw NonPositiveMu("solve: --mu must be positive");
        std::cout << "mu_star=" << fmt_g(mu_star) << "\n";
    }

    const ImageGrid x = solve(mu_star, setup.ctx);
    write_image(x, a.out, output_format(a.out));
    return 0;
}

struct SweepArgs {
    std::string input, meta, out, truth, grid = "-3:6:200";
    double epsilon = 1e-8;
    std::string isnr_convention = "paper";
};

int run_sweep(const SweepArgs& a) {
    const std::string meta_text = read_text_file(a.meta);
    SolveSetup setup = make_setup(a.input, meta_text, a.epsilon);
    const MuGrid grid = parse_grid(a.grid);
    const WhitenessTable tbl = build_whiteness_table(setup.ctx);

    const auto sigma = parse_meta(meta_text).noise_sigma;
    const double n = double(setup.ctx.b_lr.rows()) *
                     double(setup.ctx.b_lr.cols());

    WhitenessCurve curve;
    for (double mu : grid.values()) {
        CurvePoint p;
        p.mu = mu;
        p.value = fast_whiteness(mu, tbl);
        if (sigma && *sigma > 0.0)
            p.tau = residual_norm_lr(mu, tbl) / (std::sqrt(n) * *sigma);
        curve.points.push_back(p);
    }

    if (a.truth.empty()) {
        write_curve(curve, a.out);
        return 0;
    }
    const ImageGrid x_true = read_image(a.truth);
    const IsnrConvention conv = a.isnr_convention == "squared"
                                    ? IsnrConvention::squared
                                    : IsnrConvention::paper;
    const ImageGrid b_interp =
        bicubic_upsample(setup.ctx.b_lr, setup.factors);
    CurveMetrics cm;
    for (const CurvePoint& p : curve.points) {
        const ImageGrid x = solve(p.mu, setup.ctx);
        cm.psnr.push_back(psnr(x_true, x));
        cm.isnr.push_back(isnr(x_true, x, b_interp, conv));
        cm.ssim.push_back(ssim(x_true, x));
    }
    write_curve(curve, cm, a.out);
    return 0;
}

struct MetricsArgs {
    std::string truth, est, lr;
    int decim = 1;
    std::string isnr_convention = "paper";
};

int run_metrics(const MetricsArgs& a) {
    const ImageGrid x_true = read_image(a.truth);
    const ImageGrid x_est = read_image(a.est);
    const ImageGrid b = read_image(a.lr);
    const DecimationFactors f{a.decim, a.decim};
    const IsnrConvention conv = a.isnr_convention == "squared"
                                    ? IsnrConvention::squared
                                    : IsnrConvention::paper;
    const ImageGrid b_interp = bicubic_upsample(b, f);
    if (b_interp.rows() != x_true.rows() || b_interp.cols() != x_true.cols())
        throw ShapeMismatch("metrics: LR shape times --decim != truth shape");

    std::cout << "est psnr=" << fmt4(psnr(x_true, x_est))
              << " isnr=" << fmt4(isnr(x_true, x_est, b_interp, conv))
              << " ssim=" << fmt4(ssim(x_true, x_est)) << "\n";
    std::cout << "bicubic psnr=" << fmt4(psnr(x_true, b_interp))
              << " ssim=" << fmt4(ssim(x_true, b_interp)) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Single-image super-resolution by closed-form frequency-domain "
        "Tikhonov solves, with residual-whiteness or discrepancy-based "
        "selection of the regularisation parameter"};
    app.require_subcommand(1);

    DegradeArgs da;
    auto* deg = app.add_subcommand(
        "degrade", "Blur, decimate and add seeded Gaussian noise");
    deg->add_option("--input", da.input, "HR input image (.pgm/.pfm)")
        ->required();
    deg->add_option("--out", da.out, "LR output image (.pgm/.pfm)")
        ->required();
    auto* preset_opt =
        deg->add_option("--preset", da.preset, "named setting: test1|test2");
    deg->add_option("--band", da.band, "Gaussian PSF support (odd pixels)")
        ->excludes(preset_opt);
    deg->add_option("--psf-sigma", da.psf_sigma, "Gaussian PSF std (pixels)")
        ->excludes(preset_opt);
    deg->add_option("--decim", da.decim, "decimation factor (rows and cols)")
        ->excludes(preset_opt);
    deg->add_option("--noise-sigma", da.noise_sigma, "AWGN std")
        ->excludes(preset_opt);
    deg->add_option("--seed", da.seed, "noise seed (default 1)");

    SolveArgs sa;
    auto* sol = app.add_subcommand(
        "solve", "Reconstruct the HR image for a fixed or selected mu");
    sol->add_option("--input", sa.input, "LR observation")->required();
    sol->add_option("--meta", sa.meta, "experiment sidecar")->required();
    sol->add_option("--out", sa.out, "HR reconstruction (.pgm/.pfm)")
        ->required();
    auto* mu_opt = sol->add_option("--mu", sa.mu, "fixed regularisation mu");
    auto* rwp_opt = sol->add_flag("--rwp", sa.rwp,
                                  "select mu by residual whiteness (no sigma)");
    auto* dp_opt = sol->add_option(
        "--dp", sa.dp_sigma, "select mu by discrepancy principle with this sigma");
    mu_opt->excludes(rwp_opt)->excludes(dp_opt);
    rwp_opt->excludes(dp_opt);
    sol->add_option("--epsilon", sa.epsilon, "Tikhonov epsilon (default 1e-8)");
    sol->add_option("--grid", sa.grid, "log10 mu grid lo:hi:count");
    sol->add_option("--tau", sa.dp_tau, "discrepancy coefficient (default 1)");

    SweepArgs wa;
    auto* swp = app.add_subcommand(
        "sweep", "Export (mu, tau, W) and optional quality metrics as CSV");
    swp->add_option("--input", wa.input, "LR observation")->required();
    swp->add_option("--meta", wa.meta, "experiment sidecar")->required();
    swp->add_option("--truth", wa.truth, "HR ground truth (adds metric columns)");
    swp->add_option("--out", wa.out, "output CSV path")->required();
    swp->add_option("--grid", wa.grid, "log10 mu grid lo:hi:count");
    swp->add_option("--epsilon", wa.epsilon, "Tikhonov epsilon (default 1e-8)");
    swp->add_option("--isnr-convention", wa.isnr_convention,
                    "paper|squared (default paper)");

    MetricsArgs ma;
    auto* met = app.add_subcommand(
        "metrics", "Quality of a reconstruction vs the bicubic baseline");
    met->add_option("--truth", ma.truth, "HR ground truth")->required();
    met->add_option("--est", ma.est, "HR estimate")->required();
    met->add_option("--lr", ma.lr, "LR observation")->required();
    met->add_option("--decim", ma.decim, "decimation factor")->required();
    met->add_option("--isnr-convention", ma.isnr_convention,
                    "paper|squared (default paper)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*deg) return run_degrade(da);
        if (*sol) {
            sa.have_mu = mu_opt->count() > 0;
            sa.have_dp = dp_opt->count() > 0;
            if (!sa.have_mu && !sa.rwp && !sa.have_dp)
                throw supres::InvalidArgument(
                    "solve: pick one of --mu, --rwp, --dp");
            return run_solve(sa);
        }
        if (*swp) return run_sweep(wa);
        if (*met) return run_metrics(ma);
    } catch (const supres::UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
