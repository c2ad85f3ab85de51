// Spectrum characterization through the functional matrix: interpolation
// eigenvalue candidates, determinant conditions against exact
// diagonalization, Q-tables, separate eigenstates and the Newton solver.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cyc6v/boundary.hpp"
#include "cyc6v/bulk.hpp"
#include "cyc6v/linalg.hpp"
#include "cyc6v/sov_basis.hpp"
#include "cyc6v/sov_spectrum.hpp"

using namespace cyc6v;

namespace {

ChainConfig sample(int p, int pp, int N, std::uint64_t seed) {
    auto [cfg, rep] = random_generic_config(p, pp, N, seed, SampleMode::sov);
    cfg.boundary.triangular_plus = true;
    return cfg;
}

double frob(const Mat& A) {
    double s = 0.0;
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < A.cols(); ++c) s += std::norm(A(r, c));
    return std::sqrt(s);
}

double collinearity(const Vec& u, const Vec& v) {
    cx s = 0.0;
    double nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += std::conj(u[i]) * v[i];
        nu += std::norm(u[i]);
        nv += std::norm(v[i]);
    }
    return std::abs(s) / std::sqrt(nu * nv);
}

}  // namespace

TEST_CASE("separate-equation coefficients and the gauge function") {
    const ChainConfig cfg = sample(3, 2, 2, 21);
    const SovGrid g = sov_grid(cfg);
    const cx q = cfg.root.q, qh = cfg.root.qh;
    AnnulusRng rng(404);

    // coefficient a vanishes on the lower grid edge
    const double ref = std::abs(coeff_a(cfg, cx(1.21, 0.17)));
    for (int a = 0; a < cfg.N; ++a)
        CHECK(std::abs(coeff_a(cfg, g.zeta[static_cast<std::size_t>(a)][0])) < 1e-10 * ref);

    for (int t = 0; t < 3; ++t) {
        const cx lam = rng.draw(0.7, 1.4);
        // gauge relation d(lambda) = alpha(lambda) a(q/lambda)
        const cx lhs = coeff_d(cfg, lam);
        const cx rhs = gauge_alpha(cfg, lam) * coeff_a(cfg, q / lam);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
        // alpha(1/lambda) alpha(q lambda) = 1 and prod_k alpha(lambda q^k) = 1
        CHECK(std::abs(gauge_alpha(cfg, 1.0 / lam) * gauge_alpha(cfg, q * lam) - 1.0) < 1e-10);
        cx prod = 1.0;
        for (int k = 0; k < cfg.root.p; ++k) prod *= gauge_alpha(cfg, lam * cfg.root.qp(k));
        CHECK(std::abs(prod - 1.0) < 1e-10);
        // product of the two shifted coefficients reproduces the boundary
        // quantum determinant (up to the a_+ factors)
        const cx l2 = lam * lam;
        const cx lhs2 = coeff_a(cfg, lam * qh) * coeff_a(cfg, qh / lam);
        const cx rhs2 = a_sans_plus(cfg, lam * qh) * a_sans_plus(cfg, qh / lam) *
                        boundary_qdet_scalar(cfg, lam) / (l2 / (q * q) - (q * q) / l2);
        CHECK(std::abs(lhs2 - rhs2) < 1e-10 * std::abs(lhs2));
    }

    // the recursion bracket is the same through a or d coefficients on the
    // first half of the grid (the reflected half reverses the q-step)
    for (int a = 0; a < cfg.N; ++a)
        for (int h = 1; h < cfg.root.p; ++h) {
            const cx z1 = g.zeta[static_cast<std::size_t>(a)][static_cast<std::size_t>(h)];
            const cx z0 = g.zeta[static_cast<std::size_t>(a)][static_cast<std::size_t>(h - 1)];
            const cx ba = coeff_a(cfg, z1) * coeff_a(cfg, 1.0 / z0);
            const cx bd = coeff_d(cfg, z1) * coeff_d(cfg, 1.0 / z0);
            CHECK(std::abs(ba - bd) < 1e-10 * std::max(std::abs(ba), 1.0));
        }
}

TEST_CASE("interpolation polynomial pins values, symmetry and asymptotics") {
    const ChainConfig cfg = sample(3, 2, 2, 23);
    const SovGrid g = sov_grid(cfg);
    const cx I(0.0, 1.0);
    std::vector<cx> vals = {cx(0.83, -0.41), cx(-1.27, 0.59)};
    const TauPolynomial tau = tau_from_values(cfg, vals);

    for (int a = 0; a < cfg.N; ++a) {
        const cx v = tau(g.zeta[static_cast<std::size_t>(a)][0]);
        CHECK(std::abs(v - vals[static_cast<std::size_t>(a)]) < 1e-10 * std::abs(v));
    }
    const TransferSpecialValues sv = transfer_special_values(cfg);
    CHECK(std::abs(tau(cfg.root.qh) - sv.at_qh) < 1e-10 * std::abs(sv.at_qh));
    CHECK(std::abs(tau(I * cfg.root.qh) - sv.at_iqh) < 1e-10 * std::abs(sv.at_iqh));

    for (cx lam : {cx(1.19, 0.23), cx(0.71, -0.48)}) {
        const cx t = tau(lam);
        CHECK(std::abs(tau(1.0 / lam) - t) < 1e-12 * std::abs(t));
        CHECK(std::abs(tau(-lam) - t) < 1e-12 * std::abs(t));
    }
    const cx big(9.3e3, 2.1e3);
    const cx lim = tau(big) / std::pow(big, 2.0 * (cfg.N + 2));
    CHECK(std::abs(lim - tau.tau_inf) < 1e-5 * std::abs(tau.tau_inf));
}

TEST_CASE("functional matrix: structure, determinant symmetries, dual equality") {
    const ChainConfig cfg = sample(5, 2, 1, 25);
    const int p = cfg.root.p;
    std::vector<cx> vals = {cx(-0.64, 0.92)};
    const TauPolynomial tau = tau_from_values(cfg, vals);
    const cx lam(1.08, 0.31);

    const Mat D = d_tau_matrix(cfg, lam, tau);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) {
            const cx lr = cfg.root.qp(r) * lam;
            const auto sr = static_cast<std::size_t>(r), sc = static_cast<std::size_t>(c);
            if (c == r)
                CHECK(std::abs(D(sr, sc) - tau(lr)) < 1e-12 * std::abs(D(sr, sc)));
            else if (c == (r + p - 1) % p)
                CHECK(std::abs(D(sr, sc) + coeff_a(cfg, lr)) < 1e-12 * std::abs(D(sr, sc)));
            else if (c == (r + 1) % p)
                CHECK(std::abs(D(sr, sc) + coeff_a(cfg, 1.0 / lr)) < 1e-12 * std::abs(D(sr, sc)));
            else
                CHECK(std::abs(D(sr, sc)) == 0.0);
        }

    const cx det = determinant(D);
    CHECK(std::abs(determinant(d_tau_matrix(cfg, cfg.root.q * lam, tau)) - det) <
          1e-10 * std::abs(det));
    CHECK(std::abs(determinant(d_tau_matrix(cfg, 1.0 / lam, tau)) - det) < 1e-10 * std::abs(det));
    // the dual (hat) matrix has the same determinant
    CHECK(std::abs(determinant(d_tau_matrix(cfg, lam, tau, true)) - det) < 1e-10 * std::abs(det));
}

TEST_CASE("ED spectrum satisfies the determinant conditions two-sidedly") {
    int case_id = 0;
    for (auto [p, N, seed] : {std::tuple<int, int, std::uint64_t>{3, 1, 7}, {3, 2, 11}, {5, 1, 3}}) {
        ++case_id;
        const ChainConfig cfg = sample(p, 2, N, seed);
        const SovBases bases = build_sov_bases(cfg);
        const SpectrumReport sr = ed_spectrum(cfg, bases, 1);

        CHECK(sr.simple);
        CHECK(sr.entries.size() == cfg.dim());
        for (const auto& e : sr.entries) {
            CHECK(e.interp_residual < 1e-8);
            for (int a = 0; a < N; ++a) {
                CHECK(e.det_condition[static_cast<std::size_t>(a)] < 1e-6);
                CHECK(std::abs(d_tau_condition(cfg, bases, e.tau, a, true)) < 1e-6);
            }
        }
        // non-eigenvalues fail by a clear margin: perturb each entry
        if (case_id <= 2) {
            for (double eps : {1e-2, 1e-1}) {
                std::vector<cx> vals = sr.entries[0].vals;
                vals[0] *= (1.0 + eps);
                const TauPolynomial bad = tau_from_values(cfg, vals);
                double worst = 0.0;
                for (int a = 0; a < N; ++a)
                    worst = std::max(worst, std::abs(d_tau_condition(cfg, bases, bad, a)));
                CHECK(worst > 1e-3);
            }
        }
        // distinct value sets for distinct eigenvectors (completeness at this point)
        for (std::size_t i = 0; i < sr.entries.size(); ++i)
            for (std::size_t k = i + 1; k < sr.entries.size(); ++k) {
                double d = 0.0;
                for (int a = 0; a < N; ++a)
                    d = std::max(d, std::abs(sr.entries[i].vals[static_cast<std::size_t>(a)] -
                                             sr.entries[k].vals[static_cast<std::size_t>(a)]));
                CHECK(d > 1e-6);
            }
    }
}

TEST_CASE("Q tables: kernel and recursion forms agree") {
    for (auto [p, N, seed] : {std::tuple<int, int, std::uint64_t>{3, 2, 11}, {5, 1, 3}}) {
        const ChainConfig cfg = sample(p, 2, N, seed);
        const SovBases bases = build_sov_bases(cfg);
        const SovGrid& g = bases.grid;
        const SpectrumReport sr = ed_spectrum(cfg, bases, 1);

        for (std::size_t k : {std::size_t{0}, sr.entries.size() - 1}) {
            const TauPolynomial& tau = sr.entries[k].tau;
            for (bool hat : {false, true}) {
                const QTable qk = q_table_from_kernel(cfg, bases, tau, hat);
                const QTable qr = q_table_from_recursion(cfg, bases, tau, hat);
                for (int a = 0; a < N; ++a) {
                    const auto sa = static_cast<std::size_t>(a);
                    CHECK(qk.quality[sa] < 1e-8);
                    CHECK(qk.gap[sa] > 1e-3);  // rank p-1
                    CHECK(std::abs(qk.q[sa][0] - 1.0) == 0.0);  // pinned exactly
                    double scale = 0.0;
                    for (int h = 0; h < p; ++h)
                        scale = std::max(scale, std::abs(qr.q[sa][static_cast<std::size_t>(h)]));
                    for (int h = 0; h < p; ++h)
                        CHECK(std::abs(qk.q[sa][static_cast<std::size_t>(h)] -
                                       qr.q[sa][static_cast<std::size_t>(h)]) < 1e-6 * scale);
                }
            }
            // first step of the upward recursion
            const QTable q = q_table_from_recursion(cfg, bases, tau, false);
            for (int a = 0; a < N; ++a) {
                const auto sa = static_cast<std::size_t>(a);
                const cx z0 = g.zeta[sa][0];
                CHECK(std::abs(q.q[sa][1] - tau(z0) / coeff_a(cfg, 1.0 / z0)) <
                      1e-10 * std::abs(q.q[sa][1]));
            }
        }
    }
}

TEST_CASE("separate eigenstates: residuals, ED overlap, Baxter equation") {
    for (auto [p, N, seed] : {std::tuple<int, int, std::uint64_t>{3, 1, 7}, {3, 2, 11}}) {
        const ChainConfig cfg = sample(p, 2, N, seed);
        const SovBases bases = build_sov_bases(cfg);
        const SovGrid& g = bases.grid;
        const SpectrumReport sr = ed_spectrum(cfg, bases, 1);
        const std::size_t P = cfg.dim();

        AnnulusRng rng(777);
        std::vector<cx> lams = {rng.draw(0.8, 1.25), rng.draw(0.8, 1.25), rng.draw(0.8, 1.25)};
        std::vector<Mat> Ts;
        for (cx l : lams) Ts.push_back(transfer(cfg, l));

        std::vector<Vec> rights(P), lefts(P);
        for (std::size_t k = 0; k < P; ++k) {
            const TauPolynomial& tau = sr.entries[k].tau;
            const QTable q = q_table_from_kernel(cfg, bases, tau, false);
            const QTable qhat = q_table_from_kernel(cfg, bases, tau, true);
            const Vec v = right_eigenstate(bases, q);
            const Vec w = left_eigenstate(bases, qhat);
            rights[k] = v;
            lefts[k] = w;

            for (std::size_t t = 0; t < lams.size(); ++t) {
                const cx tv = tau(lams[t]);
                const Vec rv = cyc6v::apply(Ts[t], v) - tv * v;
                CHECK(norm2(rv) < 1e-6 * frob(Ts[t]) * norm2(v));
                const Vec rw = apply_left(w, Ts[t]) - tv * w;
                CHECK(norm2(rw) < 1e-6 * frob(Ts[t]) * norm2(w));
            }
            CHECK(collinearity(v, sr.entries[k].right) > 1.0 - 1e-8);
            CHECK(collinearity(w, sr.entries[k].left) > 1.0 - 1e-8);

            // separate (Baxter) equation on the actual wave functions,
            // including the cyclic closure constant at the border
            for (std::size_t i = 0; i < P; ++i) {
                const std::vector<int> h = kappa_tuple(static_cast<int>(i), p, N);
                for (int n = 0; n < N; ++n) {
                    const auto sn = static_cast<std::size_t>(n);
                    const cx xi = g.xi[sn][static_cast<std::size_t>(h[sn])];
                    std::vector<int> hm = h, hp = h;
                    hm[sn] = (h[sn] + p - 1) % p;
                    hp[sn] = (h[sn] + 1) % p;
                    auto psi = [&](const std::vector<int>& t2) {
                        return dot(bases.left[static_cast<std::size_t>(kappa_index(t2, p))], v);
                    };
                    cx lower = coeff_a(cfg, xi), upper = coeff_a(cfg, 1.0 / xi);
                    if (h[sn] == 0) lower /= bases.wrap[sn];
                    if (h[sn] == p - 1) upper *= bases.wrap[sn];
                    const cx lhs = tau(xi) * psi(h);
                    const cx rhs = lower * psi(hm) + upper * psi(hp);
                    CHECK(std::abs(lhs - rhs) < 1e-8 * (std::abs(lhs) + std::abs(rhs) + norm2(v)));
                }
            }
        }
        // pairwise biorthogonality of the assembled states
        for (std::size_t i = 0; i < P; ++i)
            for (std::size_t k = 0; k < P; ++k) {
                const cx ov = dot(lefts[i], rights[k]);
                const double nn = norm2(lefts[i]) * norm2(rights[k]);
                if (i == k)
                    CHECK(std::abs(ov) > 1e-6 * nn);
                else
                    CHECK(std::abs(ov) < 1e-8 * nn);
            }
    }
}

TEST_CASE("orthogonality through the degenerate-interpolation system") {
    const ChainConfig cfg = sample(3, 2, 2, 11);
    const SovBases bases = build_sov_bases(cfg);
    const SpectrumReport sr = ed_spectrum(cfg, bases, 1);

    for (auto [i, k] : {std::pair<std::size_t, std::size_t>{0, 1}, {2, 5}, {3, 8}}) {
        const QTable qhat_i = q_table_from_kernel(cfg, bases, sr.entries[i].tau, true);
        const QTable q_k = q_table_from_kernel(cfg, bases, sr.entries[k].tau, false);
        const OrthogonalityReport rep =
            orthogonality_relation(cfg, bases, sr.entries[i].tau, qhat_i, sr.entries[k].tau, q_k);
        CHECK(rep.division_residual < 1e-10);
        CHECK(rep.system_residual < 1e-8);
        CHECK(rep.state_overlap < 1e-8);
    }
}

TEST_CASE("Newton iteration on the determinant conditions") {
    const ChainConfig cfg = sample(3, 2, 1, 7);
    const SovBases bases = build_sov_bases(cfg);
    const SpectrumReport sr = ed_spectrum(cfg, bases, 1);
    const std::size_t P = cfg.dim();

    auto match = [&](const std::vector<cx>& vals) -> int {
        for (std::size_t k = 0; k < P; ++k) {
            double d = 0.0;
            for (std::size_t a = 0; a < vals.size(); ++a)
                d = std::max(d, std::abs(vals[a] - sr.entries[k].vals[a]) /
                                (std::abs(sr.entries[k].vals[a]) + 1.0));
            if (d < 1e-6) return static_cast<int>(k);
        }
        return -1;
    };

    // exact seeds converge immediately, perturbed seeds reconverge
    for (std::size_t k = 0; k < P; ++k) {
        NewtonResult r = newton_solve(cfg, bases, sr.entries[k].vals);
        CHECK(r.converged);
        CHECK(r.iterations <= 2);
        CHECK(match(r.vals) == static_cast<int>(k));

        std::vector<cx> seed = sr.entries[k].vals;
        seed[0] *= (1.0 + cx(7e-3, -5e-3));
        r = newton_solve(cfg, bases, seed);
        CHECK(r.converged);
        CHECK(match(r.vals) == static_cast<int>(k));
    }

    // random seeds: every converged run lands on a true eigenvalue, and
    // together they recover the whole spectrum
    AnnulusRng rng(31337);
    std::vector<bool> found(P, false);
    int converged = 0;
    for (int t = 0; t < 200; ++t) {
        std::vector<cx> seed = {rng.draw(0.2, 4.0)};
        const NewtonResult r = newton_solve(cfg, bases, seed, 60);
        if (!r.converged) continue;
        ++converged;
        const int id = match(r.vals);
        CHECK(id >= 0);
        if (id >= 0) found[static_cast<std::size_t>(id)] = true;
    }
    CHECK(converged > 50);
    CHECK(std::all_of(found.begin(), found.end(), [](bool b) { return b; }));
}
