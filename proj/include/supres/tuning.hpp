#pragma once

#include <optional>
#include <string>

#include "supres/whiteness.hpp"

namespace supres {

// log10-spaced evaluation grid for mu. count == 1 collapses to {10^log_lo}.
struct MuGrid {
    double log_lo = -3.0;
    double log_hi = 6.0;
    int count = 200;

    static MuGrid defaults() { return MuGrid{}; }
    std::vector<double> values() const;
};

enum class Strategy { RWP, DP, FIXED };

std::string strategy_name(Strategy s);

struct SelectionReport {
    double mu_star = 0.0;
    // tau requires the true noise level; selection strategies that do not
    // know sigma leave it empty.
    std::optional<double> tau_star;
    std::optional<double> w_star;
    Strategy strategy = Strategy::FIXED;
    WhitenessCurve curve;
    // Minimiser landed on the first or last grid point: the grid is likely
    // too narrow (or the whiteness curve is flat).
    bool boundary_minimum = false;
};

// Residual whiteness principle: evaluate W(mu) over the grid, take the
// minimiser (smallest mu among ties), then refine by golden-section search
// in log10(mu) between its two grid neighbours down to a 1e-3 bracket.
// Knows nothing about the noise level.
SelectionReport select_rwp(const SpectralSolveContext& ctx,
                           const WhitenessTable& tbl,
                           const MuGrid& grid = MuGrid::defaults());

// Discrepancy principle: bisection on log10(mu) for
// ||r(mu)||_2 = tau * sqrt(n) * sigma, to 1e-6 relative or 100 iterations.
SelectionReport select_dp(const SpectralSolveContext& ctx, double sigma,
                          double tau = 1.0,
                          const MuGrid& grid = MuGrid::defaults());

// Diagnostic tau(mu) = ||S K x*(mu) - b||_2 / (sqrt(n) sigma), computed by
// actually solving at mu. Requires the true sigma, so it never participates
// in RWP selection.
double tau_of_mu(double mu, const SpectralSolveContext& ctx, double sigma);

}  // namespace supres
