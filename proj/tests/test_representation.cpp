// Weyl algebra at a root of unity, site parameter derivation, boundary
// re-parametrization, embeddings and generic sampling.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cyc6v/linalg.hpp"
#include "cyc6v/representation.hpp"

using namespace cyc6v;

TEST_CASE("root of unity bookkeeping") {
    const auto r = root_of_unity(5, 2);
    CHECK(r.l == 2);
    CHECK(std::abs(r.q - std::polar(1.0, -2.0 * M_PI / 5.0)) < 1e-15);
    CHECK(std::abs(r.qh * r.qh - r.q) < 1e-15);
    CHECK(std::abs(r.qp(5) - cx(1.0)) < 1e-14);     // q^p = 1
    CHECK(std::abs(r.qp(-3) - 1.0 / r.qp(3)) < 1e-14);
    CHECK(std::abs(r.qph(2) - r.q) < 1e-14);
    CHECK_THROWS(root_of_unity(4, 2));  // p must be odd
    CHECK_THROWS(root_of_unity(9, 3));  // p' must be even and coprime
}

TEST_CASE("Weyl pair: u v = q v u, u^p = v^p = 1") {
    for (auto [p, pp] : {std::pair{3, 2}, {5, 2}, {7, 4}}) {
        const auto r = root_of_unity(p, pp);
        auto [u, v] = weyl_pair(r);
        const Mat lhs = u * v, rhs = r.q * (v * u);
        CHECK(rel_residual(lhs - rhs, lhs, rhs) < 1e-14);
        Mat up = Mat::identity(static_cast<std::size_t>(p));
        Mat vp = Mat::identity(static_cast<std::size_t>(p));
        for (int k = 0; k < p; ++k) { up = up * u; vp = vp * v; }
        const Mat I = Mat::identity(static_cast<std::size_t>(p));
        CHECK(rel_residual(up - I, up, I) < 1e-13);
        CHECK(rel_residual(vp - I, vp, I) < 1e-13);
    }
}

TEST_CASE("embed places commuting factors on distinct sites") {
    const auto r = root_of_unity(3, 2);
    auto [u, v] = weyl_pair(r);
    const Mat U1 = embed(u, 1, 3), V2 = embed(v, 2, 3), U3 = embed(u, 3, 3);
    CHECK(commutator(U1, V2).max_abs() < 1e-15);
    CHECK(commutator(U1, U3).max_abs() < 1e-15);
    // same site keeps the local algebra
    const Mat V1 = embed(v, 1, 3);
    const Mat lhs = U1 * V1, rhs = r.q * (V1 * U1);
    CHECK(rel_residual(lhs - rhs, lhs, rhs) < 1e-14);
    // slot 1 is the rightmost kron factor
    const Mat direct = kron(kron(Mat::identity(3), Mat::identity(3)), u);
    CHECK(rel_residual(U1 - direct, U1, direct) == 0.0);
}

TEST_CASE("derived site quantities satisfy their defining relations") {
    const auto r = root_of_unity(5, 2);
    const auto s = derive_site(r, cx(1.1, 0.3), cx(0.7, -0.2), cx(0.9, 0.5),
                               cx(-0.4, 0.8), cx(1.3, -0.6), cx(0.2, 1.0));
    CHECK(std::abs(s.gamma - s.a * s.c / s.alpha) < 1e-14);
    CHECK(std::abs(s.delta - s.b * s.d / s.beta) < 1e-14);
    CHECK(std::abs(s.k_site * s.k_site - s.a * s.b * s.c * s.d) < 1e-14);
    CHECK(std::abs(s.mu_plus * s.mu_plus + r.q * s.a * s.beta / (s.alpha * s.b)) < 1e-13);
    CHECK(std::abs(s.mu_minus * s.mu_minus + r.q * s.c * s.beta / (s.alpha * s.d)) < 1e-13);
}

TEST_CASE("boundary (alpha_-, beta_-) re-parametrization") {
    BoundaryParams bp;
    bp.zeta_m = cx(0.8, 0.45);
    bp.kappa_m = cx(1.2, -0.3);
    solve_alpha_beta(bp);
    const cx am = bp.alpha_m, bm = bp.beta_m;
    const cx s1 = (am - 1.0 / am) * (bm + 1.0 / bm);
    const cx s2 = (am + 1.0 / am) * (bm - 1.0 / bm);
    CHECK(std::abs(s1 * bp.kappa_m - (bp.zeta_m - 1.0 / bp.zeta_m)) < 1e-12);
    CHECK(std::abs(s2 * bp.kappa_m - (bp.zeta_m + 1.0 / bp.zeta_m)) < 1e-12);
}

TEST_CASE("generic sampling is deterministic and passes its own audit") {
    auto [cfg1, rep1] = random_generic_config(3, 2, 2, 42, SampleMode::general);
    auto [cfg2, rep2] = random_generic_config(3, 2, 2, 42, SampleMode::general);
    CHECK(rep1.all_ok());
    CHECK(cfg1.sites[0].a == cfg2.sites[0].a);
    CHECK(cfg1.boundary.zeta_p == cfg2.boundary.zeta_p);
    CHECK(rep1.esov_margin == rep2.esov_margin);
    auto [cfg3, rep3] = random_generic_config(3, 2, 2, 43, SampleMode::general);
    CHECK(cfg3.sites[0].a != cfg1.sites[0].a);
    (void)rep3;
}

TEST_CASE("sov sampling enforces the cyclicity constraints") {
    auto [cfg, rep] = random_generic_config(5, 2, 1, 7, SampleMode::sov);
    CHECK(rep.all_ok());
    const auto& s = cfg.sites[0];
    const int j = cfg.j[0];
    CHECK(std::abs(s.b + cfg.root.qp(2 * j - 1) * s.a) < 1e-13);
    // a0 = (-q)^N prod q^{-j_n}
    cx a0 = -cfg.root.q * cfg.root.qp(-j);
    CHECK(std::abs(cfg.a0 - a0) < 1e-13);

    auto [cfgd, repd] = random_generic_config(5, 2, 2, 11, SampleMode::sov_double);
    CHECK(repd.all_ok());
    for (int n = 0; n < 2; ++n) {
        const auto& t = cfgd.sites[static_cast<std::size_t>(n)];
        const int jn = cfgd.j[static_cast<std::size_t>(n)];
        CHECK(std::abs(t.b + cfgd.root.qp(2 * jn - 1) * t.a) < 1e-13);
        CHECK(std::abs(t.d + cfgd.root.qp(2 * jn - 1) * t.c) < 1e-13);
    }
}

TEST_CASE("mode names round-trip") {
    for (auto m : {SampleMode::general, SampleMode::sov, SampleMode::sov_double})
        CHECK(parse_mode(mode_name(m)) == m);
    CHECK_THROWS((void)parse_mode("bogus"));
}
