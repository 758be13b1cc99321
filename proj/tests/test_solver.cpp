#include <doctest.h>

#include "supres/solver.hpp"
#include "support/oracles.hpp"

using namespace supres;
using namespace supres::testing;

namespace {

double rel_err(const ImageGrid& got, const ImageGrid& want) {
    const double denom = std::sqrt(want.square().sum());
    return std::sqrt((got - want).square().sum()) / (denom > 0 ? denom : 1.0);
}

ImageGrid delta_kernel() {
    ImageGrid d(1, 1);
    d(0, 0) = 1.0;
    return d;
}

}  // namespace

TEST_CASE("prepare_context: identity blur and epsilon-only stack give omega = d/eps") {
    std::mt19937_64 rng(41);
    const double eps = 1e-4;
    const DecimationFactors f{2, 2};
    const auto op = make_degradation_operator(delta_kernel(), 0, 0, 8, 8, f);
    RegularizerStack reg;
    reg.epsilon = eps;
    const auto groups = build_alias_groups(8, 8, f);
    const ImageGrid b = random_grid(rng, 4, 4);
    const auto ctx = prepare_context(b, op, reg, groups);
    for (Eigen::Index g = 0; g < ctx.omega.size(); ++g)
        CHECK(ctx.omega(g) == doctest::Approx(4.0 / eps).epsilon(1e-12));
}

TEST_CASE("prepare_context: zero targets give a zero regulariser spectrum") {
    std::mt19937_64 rng(42);
    const auto p = make_random_problem(rng, 8, 8, {2, 2},
                                       RegChoice::difference, false);
    CHECK(p.ctx.z_reg.abs().maxCoeff() == 0.0);
}

TEST_CASE("prepare_context: F S^H b replicates within alias groups") {
    std::mt19937_64 rng(43);
    const DecimationFactors f{2, 2};
    const ImageGrid b = random_grid(rng, 4, 4);
    const auto op = make_degradation_operator(random_psf(rng, 3), 8, 8, f);
    const auto reg = build_difference_regularizer(8, 8, 1e-8);
    const auto groups = build_alias_groups(8, 8, f);
    const auto ctx = prepare_context(b, op, reg, groups);
    const Spectrum want = dft2(upsample_zero(b, f));
    CHECK(std::sqrt((ctx.bH - want).abs2().sum()) < 1e-12);
    for (Eigen::Index g = 0; g < groups.group_count(); ++g) {
        const auto ref = ctx.bH.data()[groups.members[std::size_t(g) * 4]];
        for (int j = 1; j < 4; ++j)
            CHECK(std::abs(ctx.bH.data()[groups.members[std::size_t(g) * 4 + j]] -
                           ref) < 1e-12);
    }
}

TEST_CASE("solve: fidelity dominates as mu grows (d=1, identity blur)") {
    std::mt19937_64 rng(44);
    const DecimationFactors f{1, 1};
    const auto op = make_degradation_operator(delta_kernel(), 0, 0, 8, 8, f);
    const auto reg = build_difference_regularizer(8, 8, 1e-8);
    const auto groups = build_alias_groups(8, 8, f);
    const ImageGrid b = random_grid(rng, 8, 8);
    const auto ctx = prepare_context(b, op, reg, groups);
    CHECK(rel_err(solve(1e9, ctx), b) < 1e-6);
}

TEST_CASE("solve: d=1 reduces to the classic Tikhonov filter") {
    std::mt19937_64 rng(45);
    const DecimationFactors f{1, 1};
    const auto op = make_degradation_operator(random_psf(rng, 3), 8, 8, f);
    const auto reg = build_difference_regularizer(8, 8, 1e-8);
    const auto groups = build_alias_groups(8, 8, f);
    const ImageGrid b = random_grid(rng, 8, 8);
    const auto ctx = prepare_context(b, op, reg, groups);

    const double mu = 3.7;
    const Spectrum bt = dft2(b);
    const ImageGrid gsq = gamma_sq(reg, 8, 8);
    Spectrum xt(8, 8);
    for (Eigen::Index i = 0; i < 64; ++i) {
        const auto lam = op.otf.data()[i];
        xt.data()[i] = mu * std::conj(lam) * bt.data()[i] /
                       (mu * std::norm(lam) + gsq.data()[i] + reg.epsilon);
    }
    CHECK(rel_err(solve(mu, ctx), idft2(xt)) < 1e-12);
}

TEST_CASE("solve matches the dense oracle on a 12x12 d=2 problem") {
    std::mt19937_64 rng(46);
    const auto p = make_random_problem(rng, 12, 12, {2, 2},
                                       RegChoice::difference_plus_random, true);
    for (double mu : {1e-2, 1.0, 1e2}) {
        const ImageGrid fast = solve(mu, p.ctx);
        const ImageGrid dense = dense_solve(mu, p.b, p.op, p.reg);
        CHECK(rel_err(fast, dense) < 1e-8);
    }
}

TEST_CASE("oracle equivalence over random instances") {
    std::mt19937_64 rng(47);
    const RegChoice choices[] = {RegChoice::difference,
                                 RegChoice::random_single,
                                 RegChoice::difference_plus_random};
    for (int rep = 0; rep < 12; ++rep) {
        const int d = 1 + (rep % 2);
        const Eigen::Index hr = d * (2 + Eigen::Index(rng() % 7));
        const auto p =
            make_random_problem(rng, hr, hr, {d, d}, choices[rep % 3],
                                rep % 2 == 0);
        for (double mu : {1e-2, 1.0, 1e2})
            CHECK(rel_err(solve(mu, p.ctx), dense_solve(mu, p.b, p.op, p.reg)) <
                  1e-8);
    }
}

TEST_CASE("dense oracle: all-identity operators give x = b/(2+eps)") {
    std::mt19937_64 rng(48);
    const DecimationFactors f{1, 1};
    const double eps = 1e-8;
    const auto op = make_degradation_operator(delta_kernel(), 0, 0, 4, 4, f);
    RegularizerStack reg;
    reg.epsilon = eps;
    const ImageGrid b = random_grid(rng, 4, 4);
    reg.blocks.push_back(make_regularizer_block(delta_kernel(), 0, 0, 4, 4,
                                                ImageGrid::Zero(4, 4)));
    const ImageGrid x = dense_solve(1.0, b, op, reg);
    CHECK(rel_err(x, ImageGrid(b / (2.0 + eps))) < 1e-12);
}

TEST_CASE("dense oracle: v = x_true with L = I recovers x_true as mu -> 0") {
    std::mt19937_64 rng(49);
    const auto op = make_degradation_operator(delta_kernel(), 0, 0, 4, 4,
                                              DecimationFactors{1, 1});
    const ImageGrid x_true = random_grid(rng, 4, 4);
    RegularizerStack reg;
    reg.epsilon = 1e-8;
    reg.blocks.push_back(
        make_regularizer_block(delta_kernel(), 0, 0, 4, 4, x_true));
    const ImageGrid b = random_grid(rng, 4, 4);
    CHECK(rel_err(dense_solve(1e-12, b, op, reg), x_true) < 1e-6);
}

TEST_CASE("residual_lr basics") {
    std::mt19937_64 rng(50);
    const DecimationFactors f{2, 2};
    const auto op = make_degradation_operator(random_psf(rng, 3), 8, 8, f);
    const ImageGrid x_true = random_grid(rng, 8, 8);
    const ImageGrid b = downsample(apply_blur(x_true, op), f);

    const ImageGrid r0 = residual_lr(ImageGrid::Zero(8, 8), b, op);
    CHECK((r0 + b).abs().maxCoeff() < 1e-15);

    const ImageGrid r = residual_lr(x_true, b, op);
    CHECK(std::sqrt(r.square().sum()) < 1e-12);

    // zero interpolation gives null contribution to the norm
    const ImageGrid r1 = residual_lr(random_grid(rng, 8, 8), b, op);
    CHECK(std::abs(std::sqrt(r1.square().sum()) -
                   std::sqrt(upsample_zero(r1, f).square().sum())) < 1e-15);
}

TEST_CASE("residual norm is non-increasing in mu") {
    std::mt19937_64 rng(51);
    for (int rep = 0; rep < 3; ++rep) {
        const auto p = make_random_problem(rng, 12, 12, {2, 2},
                                           RegChoice::difference, false);
        double prev = std::numeric_limits<double>::infinity();
        for (double lg = -3.0; lg <= 4.0; lg += 0.5) {
            const ImageGrid r =
                residual_lr(solve(std::pow(10.0, lg), p.ctx), p.b, p.op);
            const double norm = std::sqrt(r.square().sum());
            CHECK(norm <= prev * (1.0 + 1e-12));
            prev = norm;
        }
    }
}

TEST_CASE("the gradient of the augmented objective vanishes at the solution") {
    std::mt19937_64 rng(52);
    for (int rep = 0; rep < 3; ++rep) {
        const auto p = make_random_problem(rng, 10, 10, {2, 2},
                                           RegChoice::difference_plus_random,
                                           true);
        for (double mu : {1e-1, 1.0, 1e2}) {
            const ImageGrid x = solve(mu, p.ctx);
            const Eigen::VectorXd g =
                dense_objective_gradient(mu, x, p.b, p.op, p.reg);
            const double scale =
                (1.0 + mu) * std::max(1.0, std::sqrt(x.square().sum()));
            CHECK(g.norm() <= 1e-6 * scale);
        }
    }
}

TEST_CASE("Woodbury inversion identity (diagonal A1, A3)") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 5; ++rep) {
        std::uniform_real_distribution<double> d1(1.0, 2.0), d2(-1.0, 1.0);
        Eigen::MatrixXd A1 = Eigen::MatrixXd::Zero(5, 5);
        for (int i = 0; i < 5; ++i) A1(i, i) = d1(rng);
        Eigen::MatrixXd A3 = Eigen::MatrixXd::Zero(3, 3);
        for (int i = 0; i < 3; ++i) A3(i, i) = d1(rng);
        Eigen::MatrixXd A2(5, 3), A4(3, 5);
        for (int i = 0; i < A2.size(); ++i) A2.data()[i] = d2(rng);
        for (int i = 0; i < A4.size(); ++i) A4.data()[i] = d2(rng);

        const Eigen::MatrixXd lhs = (A1 + A2 * A3 * A4).inverse();
        const Eigen::MatrixXd A1i = A1.inverse();
        const Eigen::MatrixXd rhs =
            A1i - A1i * A2 * (A3.inverse() + A4 * A1i * A2).inverse() * A4 * A1i;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("solve rejects non-positive mu") {
    std::mt19937_64 rng(54);
    const auto p =
        make_random_problem(rng, 4, 4, {1, 1}, RegChoice::difference, false);
    CHECK_THROWS_AS((void)solve(0.0, p.ctx), NonPositiveMu);
    CHECK_THROWS_AS((void)solve(-1.0, p.ctx), NonPositiveMu);
}
