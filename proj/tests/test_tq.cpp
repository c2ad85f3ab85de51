// Functional-equation layer: the cyclic determinant in Z, the spectral Q
// polynomial, the inhomogeneous TQ relation, Bethe-form eigenstates and the
// homogeneous boundary manifold.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cyc6v/boundary.hpp"
#include "cyc6v/representation.hpp"
#include "cyc6v/sov_spectrum.hpp"
#include "cyc6v/tq.hpp"

using namespace cyc6v;

namespace {

constexpr double rtol_spectral = 1e-8;
constexpr double rtol_functional = 1e-6;

ChainConfig sample2(int p, int pp, int N, std::uint64_t seed) {
    auto [cfg, rep] = random_generic_config(p, pp, N, seed, SampleMode::sov_double);
    cfg.boundary.triangular_plus = true;
    return cfg;
}

}  // namespace

TEST_CASE("scalar coefficient functions and asymptotics") {
    const ChainConfig cfg = sample2(3, 2, 2, 31);
    const SovGrid g = sov_grid(cfg);
    AnnulusRng rng(11);

    // abar asymptotics: the closed form matches the large-lambda limit
    const cx lam_big = 1e5;
    cx scale = 1.0;
    for (int t = 0; t < 2 * (cfg.N + 2); ++t) scale *= lam_big;
    const cx num = abar_fn(cfg, lam_big) / scale;
    CHECK(std::abs(num - abar_inf(cfg)) / std::abs(num) < rtol_spectral);

    // F vanishes at every h = 0 grid abscissa and nowhere generic
    for (int b = 0; b < 2 * cfg.N; ++b)
        CHECK(std::abs(f_grid(cfg, g, g.zeta[static_cast<std::size_t>(b)][0])) < 1e-10);
    CHECK(std::abs(f_grid(cfg, g, cx(1.13, 0.21))) > 1e-6);

    for (int t = 0; t < 3; ++t) {
        const cx l = rng.draw(0.7, 1.4);
        // Z is exactly q-periodic
        CHECK(std::abs(z_fn(cfg.root, l * cfg.root.q) - z_fn(cfg.root, l)) <
              1e-12 * std::abs(z_fn(cfg.root, l)));
        // xbar factorization
        const cx l2 = l * l;
        CHECK(std::abs(xbar_fn(cfg, l) - (l2 - 1.0 / l2) * abar_fn(cfg, l)) <
              1e-12 * std::abs(xbar_fn(cfg, l)));
        // the TQ coefficient is even under lambda -> -lambda
        CHECK(std::abs(abar_fn(cfg, -l) - abar_fn(cfg, l)) < 1e-12 * std::abs(abar_fn(cfg, l)));
    }
}

TEST_CASE("cyclic determinant: vanishing on the grid and the Z functional equation") {
    for (auto [p, N, seed] : std::vector<std::tuple<int, int, std::uint64_t>>{{3, 1, 7}, {3, 2, 11}, {5, 1, 3}}) {
        CAPTURE(p);
        CAPTURE(N);
        const ChainConfig cfg = sample2(p, 2, N, seed);
        const SovBases bases = build_sov_bases(cfg);
        const SovGrid& g = bases.grid;
        const SpectrumReport spec = ed_spectrum(cfg, bases);
        REQUIRE(spec.simple);
        const TauPolynomial& tau = spec.entries[0].tau;

        // vanishing at the grid, nonvanishing off it
        const double ref = std::abs(dbar_det(cfg, tau, cx(1.09, 0.18)));
        for (int a = 0; a < N; ++a) {
            CHECK(std::abs(dbar_det(cfg, tau, g.zeta[static_cast<std::size_t>(a)][0])) <
                  1e-8 * ref);
            CHECK(std::abs(dbar_det(cfg, tau, g.zeta[static_cast<std::size_t>(a)][0] * 1.07)) >
                  1e-8 * ref);
        }

        const FunctionalCheck fc = dbar_det_in_z(cfg, g, tau, seed + 1000);
        CHECK(fc.fit_residual < rtol_functional);
        CHECK(fc.equation_residual < rtol_functional);
        CHECK(fc.asymptote_residual < rtol_functional);
        CHECK(fc.inversion_residual < rtol_functional);
        CHECK(fc.extrapolation_residual < 1e-4);  // limited by the approach path
    }
}

TEST_CASE("Q polynomial: grid-table agreement, degree and free-node invariance") {
    const ChainConfig cfg = sample2(3, 2, 1, 7);
    const SovBases bases = build_sov_bases(cfg);
    const SovGrid& g = bases.grid;
    const SpectrumReport spec = ed_spectrum(cfg, bases);
    const int p = cfg.root.p;

    for (const auto& e : spec.entries) {
        const QPolynomial Q = q_polynomial_from_tau(cfg, bases, e.tau);
        CHECK(Q.degree == (p - 1) * cfg.N);
        CHECK_FALSE(Q.exceptional);
        CHECK(Q.node_residual < rtol_functional);
        CHECK(Q.root_residual < rtol_functional);

        // agreement with the kernel table up to one constant per cycle and the
        // cumulative gauge prod_{k<h} (q^{1/2} zeta_a^{(0)} q^k)
        const QTable kt = q_table_from_kernel(cfg, bases, e.tau);
        for (int a = 0; a < cfg.N; ++a) {
            const auto au = static_cast<std::size_t>(a);
            cx c0 = 0.0;
            for (int h = 0; h < p; ++h) {
                cx gh = 1.0, qq = 1.0;
                for (int k = 0; k < h; ++k) {
                    gh *= cfg.root.qh * g.zeta[au][0] * qq;
                    qq *= cfg.root.q;
                }
                const cx ratio =
                    Q(g.zeta[au][static_cast<std::size_t>(h)]) /
                    (gh * kt.q[au][static_cast<std::size_t>(h)]);
                if (h == 0)
                    c0 = ratio;
                else
                    CHECK(std::abs(ratio - c0) < rtol_functional * std::abs(c0));
            }
        }

        // moving the free interpolation node leaves the polynomial unchanged
        const QPolynomial Q2 = q_polynomial_from_tau(cfg, bases, e.tau, cx(1.21, -0.43));
        const cx probe = cx(0.97, 0.36);
        const cx r = Q(probe) / Q2(probe);
        const cx r2 = Q(cx(1.31, 0.11)) / Q2(cx(1.31, 0.11));
        CHECK(std::abs(r - r2) < rtol_functional * std::abs(r));
    }
}

TEST_CASE("inhomogeneous TQ relation and its symmetries") {
    for (auto [p, N, seed] : std::vector<std::tuple<int, int, std::uint64_t>>{{3, 1, 7}, {3, 2, 11}}) {
        CAPTURE(p);
        CAPTURE(N);
        const ChainConfig cfg = sample2(p, 2, N, seed);
        const SovBases bases = build_sov_bases(cfg);
        const SovGrid& g = bases.grid;
        const SpectrumReport spec = ed_spectrum(cfg, bases);
        const cx q = cfg.root.q;

        for (const auto& e : spec.entries) {
            const QPolynomial Q = q_polynomial_from_tau(cfg, bases, e.tau);
            CHECK(tq_residual(cfg, g, e.tau, Q, seed + 5) < rtol_functional);

            // a perturbed eigenvalue candidate violates the relation
            TauPolynomial bad = e.tau;
            for (auto& v : bad.vals) v *= 1.0 + 1e-3;
            bad.X0 *= 1.0 + 1e-3;
            CHECK(tq_residual(cfg, g, bad, Q, seed + 5) > 1e3 * rtol_functional);
        }

        // r.h.s. invariance under lambda -> 1/lambda and lambda -> -lambda
        const QPolynomial Q = q_polynomial_from_tau(cfg, bases, spec.entries[0].tau);
        const cx y = Q(g_support_point(cfg));
        AnnulusRng rng(seed + 77);
        for (int t = 0; t < 3; ++t) {
            const cx l = rng.draw(0.8, 1.3);
            auto rhs = [&](cx lam) {
                return abar_fn(cfg, lam) * Q(lam / q) + abar_fn(cfg, 1.0 / lam) * Q(lam * q) +
                       g_inhomogeneity(cfg, g, lam, Q.q_inf, y);
            };
            const cx r0 = rhs(l);
            CHECK(std::abs(rhs(1.0 / l) - r0) < 1e-9 * std::abs(r0));
            CHECK(std::abs(rhs(-l) - r0) < 1e-9 * std::abs(r0));
        }
    }
}

TEST_CASE("TQ solutions satisfy the determinant conditions") {
    const ChainConfig cfg = sample2(3, 2, 1, 19);
    const SovBases bases = build_sov_bases(cfg);
    const SpectrumReport spec = ed_spectrum(cfg, bases);
    for (const auto& e : spec.entries) {
        const QPolynomial Q = q_polynomial_from_tau(cfg, bases, e.tau);
        REQUIRE(tq_residual(cfg, bases.grid, e.tau, Q, 3) < rtol_functional);
        for (double r : e.det_condition) CHECK(r < rtol_functional);
    }
}

TEST_CASE("Bethe-form eigenstates are collinear with the spectral pair") {
    for (auto [p, N, seed] : std::vector<std::tuple<int, int, std::uint64_t>>{{3, 1, 7}, {3, 2, 11}}) {
        CAPTURE(p);
        CAPTURE(N);
        const ChainConfig cfg = sample2(p, 2, N, seed);
        const SovBases bases = build_sov_bases(cfg);
        const SpectrumReport spec = ed_spectrum(cfg, bases);

        const auto& e = spec.entries[1];
        const QPolynomial Q = q_polynomial_from_tau(cfg, bases, e.tau);
        const BetheState bs = bethe_state(cfg, bases, e, Q);
        CHECK(bs.overlap_right > 1.0 - rtol_spectral);
        CHECK(bs.overlap_left > 1.0 - rtol_spectral);

        // root representative symmetry: lambda_b -> 1/lambda_b gives the same state
        {
            QPolynomial Qf = Q;
            for (auto& lb : Qf.roots_lambda) lb = 1.0 / lb;
            const BetheState bs2 = bethe_state(cfg, bases, e, Qf);
            CHECK(bs2.overlap_right > 1.0 - rtol_spectral);
        }

        // the normalized creation operator is a degree-N polynomial in L:
        // fit at N+1 abscissas and check a held-out point
        {
            AnnulusRng rng(seed + 9);
            std::vector<cx> ls(static_cast<std::size_t>(N) + 2);
            for (auto& l : ls) l = rng.draw(0.8, 1.3);
            // Lagrange in L through the first N+1 points, evaluated at the last
            const cx probe = ls.back();
            const cx Lp = probe * probe + 1.0 / (probe * probe);
            Mat pred(bases.right[0].size(), bases.right[0].size());
            for (int j = 0; j <= N; ++j) {
                cx w = 1.0;
                const cx Lj = ls[static_cast<std::size_t>(j)] * ls[static_cast<std::size_t>(j)] +
                              1.0 / (ls[static_cast<std::size_t>(j)] * ls[static_cast<std::size_t>(j)]);
                for (int k = 0; k <= N; ++k) {
                    if (k == j) continue;
                    const cx Lk = ls[static_cast<std::size_t>(k)] * ls[static_cast<std::size_t>(k)] +
                                  1.0 / (ls[static_cast<std::size_t>(k)] * ls[static_cast<std::size_t>(k)]);
                    w *= (Lp - Lk) / (Lj - Lk);
                }
                const Mat Bj = b_minus_normalized(cfg, ls[static_cast<std::size_t>(j)]);
                for (std::size_t r = 0; r < pred.rows(); ++r)
                    for (std::size_t c = 0; c < pred.cols(); ++c) pred(r, c) += w * Bj(r, c);
            }
            const Mat direct = b_minus_normalized(cfg, probe);
            double num = 0.0, den = 0.0;
            for (std::size_t r = 0; r < pred.rows(); ++r)
                for (std::size_t c = 0; c < pred.cols(); ++c) {
                    num = std::max(num, std::abs(pred(r, c) - direct(r, c)));
                    den = std::max(den, std::abs(direct(r, c)));
                }
            CHECK(num < rtol_spectral * den);
        }
    }
}

TEST_CASE("homogeneous boundary manifold: two-term TQ and root equations") {
    for (auto [p, N, seed, zp] : std::vector<std::tuple<int, int, std::uint64_t, int>>{
             {3, 1, 7, 1}, {3, 1, 9, -1}, {3, 2, 11, 1}, {5, 1, 3, 1}}) {
        CAPTURE(p);
        CAPTURE(N);
        CAPTURE(zp);
        const HomogeneousReport hr = homogeneous_case(p, 2, N, seed, zp);
        CHECK(hr.a_support == 0.0);
        CHECK(hr.transfer_zero < 1e-12);
        CHECK(hr.manifold_residual < rtol_spectral);
        CHECK(hr.simple);
        CHECK(hr.hom_tq_max < rtol_functional);
        CHECK(hr.g_residual_max < rtol_functional);
        CHECK(hr.bethe_eq_max < rtol_functional);
        CHECK(hr.max_degree <= (p - 1) * N);
    }
}
