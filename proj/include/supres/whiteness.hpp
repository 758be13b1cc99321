#pragma once

#include "supres/solver.hpp"

namespace supres {

// Sample auto-correlation with periodic wrap, lags (l, m) in
// [0, rows) x [0, cols):  a(l,m) = (1/n) * sum_{i,j} e(i,j) e(i+l, j+m).
// Computed via the FFT; the direct double sum is kept as a test oracle.
ImageGrid autocorrelation(const ImageGrid& e);

// Scale-invariant whiteness of a signal, computed from its spectrum:
//   W = sum |e_hat|^4 / (sum |e_hat|^2)^2.
// Flat spectra (white noise) minimise it at 1/n; a single active bin
// (constant image) maximises it at 1.
double whiteness_measure(const ImageGrid& e);

// Per-alias-group precomputation that makes the residual whiteness function
// W(mu) evaluable in O(n) per mu:
//   eta_g = (1/d) sum_{i in g} |otf_i|^2 psi_i
//   rho_g = sum_{i in g} bH_i
//   nu_g  = sum_{i in g} otf_i psi_i z_reg_i
// The group sum of the HR residual spectrum is then
// (nu_g - rho_g) / (1 + eta_g mu).
struct WhitenessTable {
    int d = 1;
    Eigen::Index total_bins = 0;  // N = n * d
    Eigen::ArrayXd eta;
    Eigen::ArrayXcd rho;
    Eigen::ArrayXcd nu;
    Eigen::ArrayXcd delta;  // nu - rho
};

WhitenessTable build_whiteness_table(const SpectralSolveContext& ctx);

// Residual whiteness W(mu) =
//   sum_{i=1..N} |(nu_i - rho_i)/(1 + eta_i mu)|^4
//   / ( sum_{i=1..N} |(nu_i - rho_i)/(1 + eta_i mu)|^2 )^2
// with each group's value counted d times (the sums run over HR bins).
double fast_whiteness(double mu, const WhitenessTable& tbl);

// ||S K x*(mu) - b||_2 from the same per-group coefficients, O(n) per call.
double residual_norm_lr(double mu, const WhitenessTable& tbl);

// One sampled point of a selection curve: the whiteness value (or residual
// norm, for discrepancy-based selection) and the tau diagnostic at mu. tau
// is NaN when the noise level is unknown.
struct CurvePoint {
    double mu = 0.0;
    double value = 0.0;
    double tau = std::numeric_limits<double>::quiet_NaN();
};

struct WhitenessCurve {
    std::vector<CurvePoint> points;  // mu strictly increasing
};

}  // namespace supres
