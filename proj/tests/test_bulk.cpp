// Bulk algebra: Yang-Baxter equation, commuting transfer family, Theta
// charge, quantum determinant in operator and scalar form.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyc6v/bulk.hpp"
#include "cyc6v/linalg.hpp"

using namespace cyc6v;

namespace {

ChainConfig sample(int p, int pp, int N, std::uint64_t seed,
                   SampleMode mode = SampleMode::general) {
    return random_generic_config(p, pp, N, seed, mode).first;
}

}  // namespace

TEST_CASE("Yang-Baxter equation for the monodromy matrix") {
    for (std::uint64_t seed : {1ull, 2ull}) {
        const auto cfg = sample(3, 2, 2, seed);
        CHECK(ybe_residual(cfg, cx(1.3, 0.4), cx(0.7, -0.2)) < 1e-12);
        CHECK(ybe_residual(cfg, cx(0.5, 0.9), cx(1.1, 0.1)) < 1e-12);
    }
    const auto cfg5 = sample(5, 2, 1, 3);
    CHECK(ybe_residual(cfg5, cx(0.9, 0.2), cx(1.4, -0.5)) < 1e-12);
}

TEST_CASE("bulk transfer matrices commute and commute with Theta") {
    const auto cfg = sample(3, 2, 2, 5);
    const Mat T1 = bulk_transfer(cfg, cx(1.2, 0.3));
    const Mat T2 = bulk_transfer(cfg, cx(0.6, -0.8));
    CHECK(rel_residual(commutator(T1, T2), T1 * T2, T2 * T1) < 1e-13);
    const Mat Th = theta_operator(cfg);
    CHECK(rel_residual(commutator(T1, Th), T1 * Th, Th * T1) < 1e-13);
}

TEST_CASE("quantum determinant: both operator orderings, central, scalar") {
    const auto cfg = sample(3, 2, 2, 8);
    const cx lambda(1.15, 0.35);
    const Mat Q1 = qdet_operator(cfg, lambda, false);
    const Mat Q2 = qdet_operator(cfg, lambda, true);
    CHECK(rel_residual(Q1 - Q2, Q1, Q2) < 1e-12);

    // central: proportional to the identity
    const cx scalar = Q1.trace() / static_cast<double>(cfg.dim());
    const Mat R = Q1 - scalar * Mat::identity(cfg.dim());
    CHECK(rel_residual(R, Q1, Q1) < 1e-12);

    // commutes with the transfer matrix at another point
    const Mat T = bulk_transfer(cfg, cx(0.7, 0.6));
    CHECK(rel_residual(commutator(Q1, T), Q1 * T, T * Q1) < 1e-12);

    // matches all three factorized scalar forms
    const cx s_mu = qdet_scalar_mu(cfg, lambda);
    const cx s_pr = qdet_scalar_product(cfg, lambda);
    const cx s_ad = qdet_scalar_ad(cfg, lambda);
    CHECK(std::abs(s_mu - s_pr) / std::abs(s_pr) < 1e-12);
    CHECK(std::abs(s_ad - s_pr) / std::abs(s_pr) < 1e-12);
    CHECK(std::abs(scalar - s_pr) / std::abs(s_pr) < 1e-12);
}

TEST_CASE("scalar qdet forms agree for p = 5 and across modes") {
    for (auto mode : {SampleMode::general, SampleMode::sov, SampleMode::sov_double}) {
        const auto cfg = sample(5, 2, 2, 13, mode);
        for (cx lambda : {cx(0.85, 0.4), cx(1.6, -0.2)}) {
            const cx s_mu = qdet_scalar_mu(cfg, lambda);
            const cx s_pr = qdet_scalar_product(cfg, lambda);
            const cx s_ad = qdet_scalar_ad(cfg, lambda);
            CHECK(std::abs(s_mu - s_pr) / std::abs(s_pr) < 1e-12);
            CHECK(std::abs(s_ad - s_pr) / std::abs(s_pr) < 1e-12);
        }
    }
}

TEST_CASE("monodromy is the ordered product of embedded Lax blocks") {
    const auto cfg = sample(3, 2, 2, 21);
    const cx lambda(1.05, 0.25);
    const AuxOperator M = monodromy(cfg, lambda);
    // independent reconstruction on the doubled space C^2 x H
    const cx arg = lambda / cfg.root.qh;
    Mat F = aux_to_full(lax_embedded(cfg, arg, cfg.N));
    for (int n = cfg.N - 1; n >= 1; --n) F = F * aux_to_full(lax_embedded(cfg, arg, n));
    const Mat G = aux_to_full(M);
    CHECK(rel_residual(F - G, F, G) < 1e-13);
}

TEST_CASE("R-matrix degenerates correctly") {
    const auto r = root_of_unity(3, 2);
    // at lambda = 1 the R-matrix is proportional to the permutation operator
    const Mat R1 = r_matrix(r, cx(1.0));
    Mat P(4, 4);
    P(0, 0) = P(3, 3) = P(1, 2) = P(2, 1) = 1.0;
    const cx s = r.q - 1.0 / r.q;
    const Mat D = R1 - s * P;
    CHECK(rel_residual(D, R1, R1) < 1e-14);
    CHECK_THROWS((void)r_matrix(r, cx(0.0)));
}
