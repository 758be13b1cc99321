#include "supres/tuning.hpp"

#include <algorithm>
#include <cmath>

namespace supres {

std::vector<double> MuGrid::values() const {
    if (count < 1) throw InvalidArgument("MuGrid: count must be >= 1");
    if (count == 1) return {std::pow(10.0, log_lo)};
    if (!(log_lo < log_hi))
        throw InvalidArgument("MuGrid: need log_lo < log_hi");
    std::vector<double> v(std::size_t(count));
    const double step = (log_hi - log_lo) / (count - 1);
    for (int i = 0; i < count; ++i)
        v[std::size_t(i)] = std::pow(10.0, log_lo + i * step);
    return v;
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::RWP: return "RWP";
        case Strategy::DP: return "DP";
        case Strategy::FIXED: return "FIXED";
    }
    return "FIXED";
}

namespace {

// Golden-section minimisation of f over [lo, hi] (log10-mu coordinates),
// shrinking the bracket to `tol`.
template <typename F>
double golden_section(F&& f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

SelectionReport select_rwp(const SpectralSolveContext& ctx,
                           const WhitenessTable& tbl, const MuGrid& grid) {
    (void)ctx;  // selection is sigma-free and needs only the table
    const std::vector<double> mus = grid.values();
    SelectionReport rep;
    rep.strategy = Strategy::RWP;
    rep.curve.points.reserve(mus.size());

    std::size_t best = 0;
    double best_w = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < mus.size(); ++k) {
        const double w = fast_whiteness(mus[k], tbl);
        rep.curve.points.push_back({mus[k], w, std::numeric_limits<double>::quiet_NaN()});
        if (w < best_w) {
            best_w = w;
            best = k;
        }
    }

    rep.boundary_minimum = (best == 0 || best + 1 == mus.size());
    if (rep.boundary_minimum) {
        rep.mu_star = mus[best];
    } else {
        const double lo = std::log10(mus[best - 1]);
        const double hi = std::log10(mus[best + 1]);
        const double refined = golden_section(
            [&](double t) { return fast_whiteness(std::pow(10.0, t), tbl); },
            lo, hi, 1e-3);
        rep.mu_star = std::pow(10.0, refined);
    }
    rep.w_star = fast_whiteness(rep.mu_star, tbl);
    return rep;
}

SelectionReport select_dp(const SpectralSolveContext& ctx, double sigma,
                          double tau, const MuGrid& grid) {
    if (!(sigma > 0.0))
        throw NonPositiveSigma("select_dp: sigma must be positive");
    if (!(tau > 0.0)) throw InvalidArgument("select_dp: tau must be positive");

    const WhitenessTable tbl = build_whiteness_table(ctx);
    const double n = double(ctx.b_lr.rows()) * double(ctx.b_lr.cols());
    const double target = tau * std::sqrt(n) * sigma;

    const std::vector<double> mus = grid.values();
    const double mu_lo = mus.front(), mu_hi = mus.back();
    const double r_lo = residual_norm_lr(mu_lo, tbl);   // largest residual
    const double r_hi = residual_norm_lr(mu_hi, tbl);   // smallest residual
    SelectionReport rep;
    rep.strategy = Strategy::DP;
    rep.curve.points.push_back({mu_lo, r_lo, r_lo / (std::sqrt(n) * sigma)});
    rep.curve.points.push_back({mu_hi, r_hi, r_hi / (std::sqrt(n) * sigma)});

    // The residual norm is non-increasing in mu, so the target must lie
    // between the bracket's endpoint norms.
    if (target > r_lo || target < r_hi)
        throw TargetUnreachable(
            "select_dp: target residual norm " + std::to_string(target) +
            " outside [" + std::to_string(r_hi) + ", " + std::to_string(r_lo) +
            "]; sigma over- or under-estimated");

    double lo = std::log10(mu_lo), hi = std::log10(mu_hi);
    double mu = mu_lo, r = r_lo;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        mu = std::pow(10.0, mid);
        r = residual_norm_lr(mu, tbl);
        rep.curve.points.push_back({mu, r, r / (std::sqrt(n) * sigma)});
        if (std::abs(r - target) <= 1e-6 * target) break;
        if (r > target)
            lo = mid;  // residual too large: increase mu
        else
            hi = mid;
    }
    rep.mu_star = mu;
    rep.tau_star = r / (std::sqrt(n) * sigma);
    std::sort(rep.curve.points.begin(), rep.curve.points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.mu < b.mu; });
    rep.curve.points.erase(
        std::unique(rep.curve.points.begin(), rep.curve.points.end(),
                    [](const CurvePoint& a, const CurvePoint& b) {
                        return a.mu == b.mu;
                    }),
        rep.curve.points.end());
    return rep;
}

double tau_of_mu(double mu, const SpectralSolveContext& ctx, double sigma) {
    if (!(sigma > 0.0))
        throw NonPositiveSigma("tau_of_mu: sigma must be positive");
    const ImageGrid x = solve(mu, ctx);
    const ImageGrid r = residual_lr(x, ctx.b_lr, ctx.op);
    const double n = double(r.rows()) * double(r.cols());
    return std::sqrt(r.square().sum()) / (std::sqrt(n) * sigma);
}

}  // namespace supres
