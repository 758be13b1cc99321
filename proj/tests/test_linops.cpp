#include <doctest.h>

#include "supres/linops.hpp"
#include "support/oracles.hpp"

using namespace supres;
using namespace supres::testing;

TEST_CASE("downsample keeps the top-left phase samples") {
    ImageGrid x(4, 4);
    for (int i = 0; i < 16; ++i) x.data()[i] = i;
    const ImageGrid y = downsample(x, {2, 2});
    REQUIRE(y.rows() == 2);
    REQUIRE(y.cols() == 2);
    CHECK(y(0, 0) == 0.0);
    CHECK(y(0, 1) == 2.0);
    CHECK(y(1, 0) == 8.0);
    CHECK(y(1, 1) == 10.0);
}

TEST_CASE("downsample with unit factors is the identity") {
    std::mt19937_64 rng(21);
    const ImageGrid x = random_grid(rng, 5, 7);
    CHECK(((downsample(x, {1, 1}) - x).abs().maxCoeff()) == 0.0);
}

TEST_CASE("downsample rejects non-divisible shapes") {
    CHECK_THROWS_AS((void)downsample(ImageGrid::Zero(5, 4), {2, 2}),
                    ShapeMismatch);
}

TEST_CASE("S S^H = I exactly") {
    std::mt19937_64 rng(22);
    const ImageGrid y = random_grid(rng, 4, 4);
    const ImageGrid back = downsample(upsample_zero(y, {2, 2}), {2, 2});
    CHECK((back - y).abs().maxCoeff() == 0.0);
}

TEST_CASE("upsample_zero zero-interleaves and preserves the norm") {
    const ImageGrid ones = ImageGrid::Constant(2, 2, 1.0);
    const ImageGrid up = upsample_zero(ones, {2, 2});
    REQUIRE(up.rows() == 4);
    CHECK(up(0, 0) == 1.0);
    CHECK(up(0, 2) == 1.0);
    CHECK(up(1, 1) == 0.0);
    CHECK(up.sum() == 4.0);

    std::mt19937_64 rng(23);
    const ImageGrid y = random_grid(rng, 3, 5, -1.0, 1.0);
    const ImageGrid up2 = upsample_zero(y, {2, 3});
    CHECK(std::abs(up2.square().sum() - y.square().sum()) < 1e-15);
}

TEST_CASE("S and S^H are adjoint") {
    std::mt19937_64 rng(24);
    const DecimationFactors f{2, 3};
    const ImageGrid x = random_grid(rng, 6, 6, -1.0, 1.0);
    const ImageGrid y = random_grid(rng, 3, 2, -1.0, 1.0);
    const double lhs = (downsample(x, f) * y).sum();
    const double rhs = (x * upsample_zero(y, f)).sum();
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("spectrum of an upsampled image replicates across alias groups") {
    std::mt19937_64 rng(25);
    const DecimationFactors f{2, 2};
    const ImageGrid y = random_grid(rng, 4, 4);
    const Spectrum bH = dft2(upsample_zero(y, f));
    const AliasGroups groups = build_alias_groups(8, 8, f);
    for (Eigen::Index g = 0; g < groups.group_count(); ++g) {
        const auto ref = bH.data()[groups.members[std::size_t(g) * groups.d]];
        for (int j = 1; j < groups.d; ++j) {
            const auto v =
                bH.data()[groups.members[std::size_t(g) * groups.d + j]];
            CHECK(std::abs(v - ref) < 1e-12);
        }
    }
}

TEST_CASE("apply_blur with a delta kernel returns the input unchanged") {
    std::mt19937_64 rng(26);
    ImageGrid delta(1, 1);
    delta(0, 0) = 1.0;
    const auto op = make_degradation_operator(delta, 0, 0, 6, 6, {1, 1});
    const ImageGrid x = random_grid(rng, 6, 6);
    CHECK((apply_blur(x, op) - x).abs().maxCoeff() == 0.0);
}

TEST_CASE("apply_blur preserves constants for sum-one kernels") {
    std::mt19937_64 rng(27);
    const auto op =
        make_degradation_operator(random_psf(rng, 3), 8, 8, {2, 2});
    const ImageGrid c = ImageGrid::Constant(8, 8, 0.42);
    CHECK((apply_blur(c, op) - c).abs().maxCoeff() < 1e-12);
    // OTF at DC equals the kernel sum.
    CHECK(std::abs(op.otf(0, 0) - std::complex<double>(1.0, 0.0)) < 1e-12);
}

TEST_CASE("apply_blur matches brute-force periodic convolution") {
    std::mt19937_64 rng(28);
    for (int rep = 0; rep < 5; ++rep) {
        const ImageGrid kernel = random_psf(rng, 3);
        const auto op = make_degradation_operator(kernel, 8, 8, {1, 1});
        const ImageGrid x = random_grid(rng, 8, 8, -1.0, 1.0);
        const ImageGrid direct = direct_convolve(op.psf, x);
        const ImageGrid fast = apply_blur(x, op);
        CHECK(std::sqrt((fast - direct).square().sum()) <
              1e-10 * std::sqrt(direct.square().sum()));
    }
}

TEST_CASE("blur and difference operators commute with periodic shifts") {
    std::mt19937_64 rng(29);
    const auto op = make_degradation_operator(random_psf(rng, 3), 8, 8, {1, 1});
    const RegularizerStack reg = build_difference_regularizer(8, 8, 1e-8);
    const ImageGrid x = random_grid(rng, 8, 8, -1.0, 1.0);
    const Eigen::Index dr = 3, dc = 5;
    CHECK((apply_blur(circshift(x, dr, dc), op) -
           circshift(apply_blur(x, op), dr, dc))
              .abs()
              .maxCoeff() < 1e-12);
    for (const auto& blk : reg.blocks) {
        const ImageGrid lx = circular_convolve(blk.kernel_hr, x);
        const ImageGrid lshift =
            circular_convolve(blk.kernel_hr, circshift(x, dr, dc));
        CHECK((lshift - circshift(lx, dr, dc)).abs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("alias groups partition the HR frequency grid") {
    std::mt19937_64 rng(30);
    for (int rep = 0; rep < 4; ++rep) {
        const int nr = 2 + int(rng() % 3), nc = 2 + int(rng() % 3);
        const DecimationFactors f{1 + int(rng() % 3), 1 + int(rng() % 3)};
        const AliasGroups g =
            build_alias_groups(nr * f.d_r, nc * f.d_c, f);
        std::vector<int> seen(std::size_t(nr * f.d_r) * nc * f.d_c, 0);
        for (auto idx : g.members) seen[std::size_t(idx)]++;
        for (int count : seen) CHECK(count == 1);
        // membership criterion: congruent indices mod the LR shape
        for (Eigen::Index grp = 0; grp < g.group_count(); ++grp)
            for (int j = 0; j < g.d; ++j) {
                const auto flat = g.members[std::size_t(grp) * g.d + j];
                const Eigen::Index p = flat / g.hr_cols, q = flat % g.hr_cols;
                CHECK(p % g.lr_rows == grp / g.lr_cols);
                CHECK(q % g.lr_cols == grp % g.lr_cols);
            }
    }
}

TEST_CASE("d=1 yields singleton groups") {
    const AliasGroups g = build_alias_groups(4, 5, {1, 1});
    CHECK(g.d == 1);
    CHECK(g.group_count() == 20);
    for (int i = 0; i < 20; ++i) CHECK(g.members[std::size_t(i)] == i);
}

TEST_CASE("grouping permutation exposes the I_n (x) J_d block structure") {
    // n_r = n_c = 3, d_r = d_c = 2: reordering rows/cols group-by-group
    // must turn the same-group indicator into 9 contiguous 4x4 blocks.
    const AliasGroups g = build_alias_groups(6, 6, {2, 2});
    REQUIRE(g.group_count() == 9);
    REQUIRE(g.d == 4);
    for (Eigen::Index a = 0; a < 36; ++a)
        for (Eigen::Index b = 0; b < 36; ++b) {
            const auto ia = g.members[std::size_t(a)];
            const auto ib = g.members[std::size_t(b)];
            const bool same_group = g.group_of[std::size_t(ia)] ==
                                    g.group_of[std::size_t(ib)];
            const bool same_block = (a / 4) == (b / 4);
            CHECK(same_group == same_block);
        }
}

TEST_CASE("difference regulariser annihilates constants") {
    const RegularizerStack reg = build_difference_regularizer(6, 8, 1e-8);
    const ImageGrid c = ImageGrid::Constant(6, 8, 0.9);
    for (const auto& blk : reg.blocks)
        CHECK(circular_convolve(blk.kernel_hr, c).abs().maxCoeff() < 1e-12);
}

TEST_CASE("difference regulariser spectrum is 4 sin^2(pi w / N) per axis") {
    const Eigen::Index N = 8;
    const RegularizerStack reg = build_difference_regularizer(N, N, 1e-8);
    const Spectrum& gh = reg.blocks[0].gamma;  // horizontal: varies along cols
    for (Eigen::Index w = 0; w < N; ++w) {
        const double want = 4.0 * std::pow(std::sin(M_PI * double(w) / N), 2);
        CHECK(std::abs(std::norm(gh(0, w)) - want) < 1e-12);
        CHECK(std::abs(std::norm(gh(3, w)) - want) < 1e-12);
    }
    const Spectrum& gv = reg.blocks[1].gamma;
    for (Eigen::Index w = 0; w < N; ++w) {
        const double want = 4.0 * std::pow(std::sin(M_PI * double(w) / N), 2);
        CHECK(std::abs(std::norm(gv(w, 2)) - want) < 1e-12);
    }
}

TEST_CASE("psi at DC is 1/epsilon for the difference regulariser") {
    const RegularizerStack reg = build_difference_regularizer(4, 4, 1e-8);
    const ImageGrid psi = regularizer_psi(reg, 4, 4);
    CHECK(psi(0, 0) == doctest::Approx(1e8).epsilon(1e-12));
}

TEST_CASE("a constant image is not annihilated by S K (assumption A3)") {
    std::mt19937_64 rng(31);
    const auto op = make_degradation_operator(random_psf(rng, 3), 8, 8, {2, 2});
    const ImageGrid ones = ImageGrid::Constant(8, 8, 1.0);
    const ImageGrid sk1 = downsample(apply_blur(ones, op), op.factors);
    CHECK(std::sqrt(sk1.square().sum()) > 0.5);
}
