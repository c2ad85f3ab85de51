#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyc6v/reductions.hpp"
#include "cyc6v/representation.hpp"

using namespace cyc6v;

namespace {
constexpr double rtol_exact = 1e-12;
constexpr double rtol_identity = 1e-10;
constexpr double rtol_spectral = 1e-8;
}  // namespace

TEST_CASE("sine-Gordon single-site dictionary") {
    AnnulusRng rng(41);
    for (int t = 0; t < 5; ++t) {
        const cx kappa = rng.draw(), r = rng.draw(), s = rng.draw(), xi = rng.draw();
        const cx lambda = rng.draw(0.7, 1.4);
        CHECK(sg_single_site_residual(3, 2, kappa, r, s, xi, lambda) < rtol_exact);
        CHECK(sg_single_site_residual(5, 2, kappa, r, s, xi, lambda) < rtol_exact);
    }
    CHECK_THROWS_AS(sg_single_site_residual(3, 2, cx(0.0), cx(1.0), cx(1.0), cx(1.0), cx(1.0)),
                    std::invalid_argument);
}

TEST_CASE("sine-Gordon monodromy and boundary dictionary") {
    AnnulusRng rng(17);
    for (int N = 1; N <= 3; ++N) {
        CAPTURE(N);
        const SineGordonChain sg = random_sg_chain(N, 100 + static_cast<std::uint64_t>(N));
        const cx lambda = rng.draw(0.7, 1.4);
        const SgReport rep = sg_identities(3, 2, sg, lambda);
        CHECK(rep.monodromy_residual < rtol_exact);
        CHECK(rep.hat_residual < rtol_exact);
        CHECK(rep.u_minus_residual < rtol_exact);
        CHECK(rep.transfer_residual < rtol_exact);
        // the minus-boundary flip carries a global sign on the whole double-row
        // monodromy for odd chains
        CHECK(rep.boundary_sign == (N % 2 == 0 ? 1.0 : -1.0));
    }
    // parity exponents: even chains alternate starting with -1, odd with +1
    CHECK(sg_exponent(0, 1) == -1);
    CHECK(sg_exponent(0, 2) == 1);
    CHECK(sg_exponent(1, 1) == 1);
    CHECK(sg_exponent(1, 2) == -1);
}

TEST_CASE("sine-Gordon dictionary at p = 5") {
    const SineGordonChain sg = random_sg_chain(2, 23);
    const SgReport rep = sg_identities(5, 2, sg, cx(1.11, 0.18));
    CHECK(rep.monodromy_residual < rtol_exact);
    CHECK(rep.transfer_residual < rtol_exact);
}

TEST_CASE("XXZ spin-s Lax identity at the root of unity") {
    AnnulusRng rng(7);
    for (int p : {3, 5}) {
        CAPTURE(p);
        for (int t = 0; t < 5; ++t) {
            const XxzReport rep = xxz_lax_identity(p, 2, rng.draw(0.7, 1.4));
            CHECK(rep.lax_residual < rtol_exact);
            CHECK(rep.lax_residual_conjugate < rtol_exact);
            CHECK(rep.sz_spectrum_gap == 0.0);
            CHECK(rep.comm_residual < rtol_exact);
        }
    }
}

TEST_CASE("chiral-Potts curve constraints and automorphism") {
    for (int p : {3, 5}) {
        CAPTURE(p);
        const ChiralPottsReport rep = chiral_potts_constraints(p, 2, 2, 31);
        CHECK(rep.modulus_residual < rtol_identity);
        CHECK(rep.constraint_ab < rtol_identity);
        CHECK(rep.constraint_curve < rtol_identity);
        CHECK(rep.curve_q_max < rtol_identity);
        CHECK(rep.curve_r_max < rtol_identity);
        CHECK(rep.involution_residual == 0.0);
        REQUIRE(rep.superintegrable.size() == 2);
        for (double s : rep.superintegrable) CHECK(s > 0.0);
    }

    // swap twice is the identity on any quadruple
    const CurvePoint pt{cx(1.1, 0.2), cx(0.7, -0.3), cx(0.9, 0.1), cx(1.3, 0.4)};
    const CurvePoint back = delta_automorphism(delta_automorphism(pt));
    CHECK(back.a == pt.a);
    CHECK(back.b == pt.b);
    CHECK(back.c == pt.c);
    CHECK(back.d == pt.d);

    // unit modulus: points with x^p = y^p = 1 lie on the curve for any s
    {
        const int p = 3;
        const RootOfUnity root = root_of_unity(p, 2);
        const cx s(1.17, 0.21);
        const CurvePoint unit{root.qp(2) * s, root.qp(4), 1.0, s};
        CHECK(curve_residual(unit, p, cx(1.0), cx(0.0)) < rtol_exact);
    }
}

TEST_CASE("B_- family: simple spectrum, functional form, central average") {
    for (int N : {1, 2}) {
        CAPTURE(N);
        auto [cfg, gen] = random_generic_config(3, 2, N, 9, SampleMode::general);
        const BMinusReport rep = b_minus_general_diag(cfg, cx(1.13, 0.19), 3);
        CHECK(std::abs(rep.b_norm) > 0.0);
        CHECK(rep.simple);
        CHECK(rep.eig_residual < rtol_spectral);
        CHECK(rep.fit_residual < rtol_spectral);
        CHECK(rep.zero_gap > 1e-3);
        CHECK(rep.centrality_residual < rtol_spectral);
        CHECK(rep.average_residual < rtol_spectral);
        CHECK(rep.leading_residual < rtol_spectral);
        CHECK(rep.sov_mu_residual == -1.0);  // only defined under the constraint
    }
}

TEST_CASE("B_- zeros match the site mu data under the quasi-nilpotency constraint") {
    for (std::uint64_t seed : {5ull, 12ull}) {
        CAPTURE(seed);
        auto [cfg, gen] = random_generic_config(3, 2, 2, seed, SampleMode::sov);
        const BMinusReport rep = b_minus_general_diag(cfg, cx(0.93, 0.34), 3);
        CHECK(rep.simple);
        CHECK(rep.fit_residual < rtol_spectral);
        CHECK(rep.sov_mu_residual < rtol_spectral);
        CHECK(rep.sov_mu_residual >= 0.0);
    }
}
