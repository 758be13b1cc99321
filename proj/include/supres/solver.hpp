#pragma once

#include "supres/linops.hpp"

namespace supres {

// Everything mu-independent that the closed-form minimiser of
//   mu/2 ||S K x - b||^2 + 1/2 sum_k ||L_k x - v_k||^2  (+ eps/2 ||x||^2)
// needs: the spectra of S^H b and of the regulariser targets, the
// per-frequency Psi weights and the per-alias-group omega sums. Built once
// in O(N log N), then reused for every mu.
struct SpectralSolveContext {
    DegradationOperator op;
    RegularizerStack reg;
    AliasGroups groups;
    ImageGrid b_lr;
    Spectrum bH;         // F S^H b; entries repeat within each alias group
    Spectrum z_reg;      // sum_k conj(gamma_k) * F v_k
    ImageGrid psi;       // 1 / (sum_k |gamma_k|^2 + epsilon)
    Eigen::ArrayXd omega;  // per group: sum_{i in g} |otf_i|^2 psi_i
};

SpectralSolveContext prepare_context(const ImageGrid& b,
                                     const DegradationOperator& op,
                                     const RegularizerStack& reg,
                                     const AliasGroups& groups);

// Closed-form minimiser x*(mu). Per HR frequency i with group g:
//   z_i = mu * conj(otf_i) * bH_i + z_reg_i
//   u_i = psi_i * z_i
//   s_g = sum_{i in g} otf_i * u_i
//   xhat_i = u_i - mu * psi_i * conj(otf_i) * s_g / (d + mu * omega_g)
// and x = real(idft2(xhat)).
ImageGrid solve(double mu, const SpectralSolveContext& ctx);

// LR residual S K x - b.
ImageGrid residual_lr(const ImageGrid& x, const ImageGrid& b,
                      const DegradationOperator& op);

}  // namespace supres
