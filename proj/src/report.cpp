#include "cyc6v/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cyc6v {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double frob(const Mat& A) { return A.frobenius_norm(); }

double op_residual(const Mat& A, const Mat& B) { return rel_residual(A - B, A, B); }

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

// Collects CheckRecords with per-check wall timing.
class Collector {
  public:
    explicit Collector(std::vector<CheckRecord>& out) : out_(out) {}

    template <typename F>
    void add(const std::string& id, double tolerance, const std::string& context, F&& f) {
        const auto t0 = Clock::now();
        CheckRecord rec;
        rec.id = id;
        rec.tolerance = tolerance;
        rec.context = context;
        rec.residual = f();
        rec.pass = rec.residual <= tolerance;
        rec.wall_time_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        out_.push_back(std::move(rec));
    }

    // A qualitative condition that must hold with a stated margin: the
    // residual is 0 when it holds and 1 when it fails.
    void require(const std::string& id, bool ok, const std::string& context) {
        add(id, 0.5, context, [&] { return ok ? 0.0 : 1.0; });
    }

  private:
    std::vector<CheckRecord>& out_;
};

SampleMode effective_mode(const RunSpec& spec, SampleMode suite_default) {
    return spec.mode.empty() ? suite_default : parse_mode(spec.mode);
}

ChainConfig make_cfg(const RunSpec& spec, SampleMode mode, bool triangular) {
    auto [cfg, rep] = random_generic_config(spec.p, spec.p_prime, spec.N, spec.seed, mode);
    cfg.boundary.triangular_plus = triangular;
    return cfg;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// bulk suite
// ---------------------------------------------------------------------------

void run_bulk(const RunSpec& spec, std::vector<CheckRecord>& out) {
    Collector cc(out);
    const ChainConfig cfg = make_cfg(spec, effective_mode(spec, SampleMode::general), false);
    const double ti = spec.tol.rtol_identity;
    AnnulusRng rng(spec.seed + 101);

    cc.add("YBdef", ti, "single-site Yang-Baxter residual on C^2 x C^2 x C^p", [&] {
        ChainConfig one = cfg;
        one.N = 1;
        one.sites.resize(1);
        one.j.assign(1, cfg.j.empty() ? 0 : cfg.j[0]);
        double r = 0.0;
        for (int t = 0; t < 2; ++t)
            r = std::max(r, ybe_residual(one, rng.draw(0.6, 1.5), rng.draw(0.6, 1.5)));
        return r;
    });

    cc.add("YB-monodromy", ti,
           "full-chain Yang-Baxter residual and the ordered Lax-product reconstruction", [&] {
               double r = 0.0;
               for (int t = 0; t < 2; ++t)
                   r = std::max(r, ybe_residual(cfg, rng.draw(0.6, 1.5), rng.draw(0.6, 1.5)));
               const cx lambda = rng.draw(0.7, 1.4);
               const AuxOperator M = monodromy(cfg, lambda);
               const cx arg = lambda / cfg.root.qh;
               Mat F = aux_to_full(lax_embedded(cfg, arg, cfg.N));
               for (int n = cfg.N - 1; n >= 1; --n)
                   F = F * aux_to_full(lax_embedded(cfg, arg, n));
               return std::max(r, op_residual(F, aux_to_full(M)));
           });

    cc.add("Inverse-M", ti, "hat monodromy equals the signed sigma^y conjugation of M(1/lambda)",
           [&] {
               const cx l = rng.draw(0.7, 1.4);
               const AuxOperator H = hat_monodromy(cfg, l);
               Mat sy(2, 2);
               sy(0, 1) = cx(0.0, -1.0);
               sy(1, 0) = cx(0.0, 1.0);
               const Mat Sy = kron(sy, Mat::identity(cfg.dim()));
               const Mat Mt = aux_to_full(aux_transpose(monodromy(cfg, 1.0 / l)));
               const double s = (cfg.N % 2 == 0) ? 1.0 : -1.0;
               return op_residual(aux_to_full(H), s * (Sy * Mt * Sy));
           });
}

// ---------------------------------------------------------------------------
// boundary suite
// ---------------------------------------------------------------------------

void run_boundary(const RunSpec& spec, std::vector<CheckRecord>& out) {
    Collector cc(out);
    const ChainConfig cfg = make_cfg(spec, effective_mode(spec, SampleMode::general), false);
    const double ti = spec.tol.rtol_identity;
    const cx q = cfg.root.q;
    AnnulusRng rng(spec.seed + 202);
    const cx l1 = rng.draw(0.7, 1.4), m1 = rng.draw(0.7, 1.4);
    const cx l2 = rng.draw(0.7, 1.4), m2 = rng.draw(0.7, 1.4);

    cc.add("bYB", ti, "reflection equation for the scalar K, U_- and V_+ families", [&] {
        double r = 0.0;
        AuxOperator Kl, Km;
        const Mat KA = k_matrix(cfg.root, l1, cfg.boundary.zeta_m, cfg.boundary.kappa_m,
                                cfg.boundary.tau_m);
        const Mat KB = k_matrix(cfg.root, m1, cfg.boundary.zeta_m, cfg.boundary.kappa_m,
                                cfg.boundary.tau_m);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Mat a(1, 1), b(1, 1);
                a(0, 0) = KA(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                b(0, 0) = KB(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                Kl.block(i, j) = a;
                Km.block(i, j) = b;
            }
        r = std::max(r, reflection_residual(cfg.root, Kl, Km, l1, m1));
        r = std::max(r, reflection_residual_minus(cfg, l1, m1));
        r = std::max(r, reflection_residual_minus(cfg, l2, m2));
        r = std::max(r, reflection_residual_vplus(cfg, l1, m1));
        r = std::max(r, reflection_residual_vplus(cfg, l2, m2));
        return r;
    });

    cc.add("OpenCytransfer", ti, "open transfer matrices commute at distinct points", [&] {
        const Mat T1 = transfer(cfg, l1);
        const Mat T2 = transfer(cfg, m2);
        return rel_residual(commutator(T1, T2), T1 * T2, T2 * T1);
    });

    cc.add("symmetry-transfer", ti, "T(lambda) = T(1/lambda) = T(-lambda)", [&] {
        const Mat T = transfer(cfg, l2);
        return std::max(op_residual(T, transfer(cfg, 1.0 / l2)),
                        op_residual(T, transfer(cfg, -l2)));
    });

    cc.add("Sym-B-C-", ti, "B_- and C_- pick the rho prefactor under lambda -> 1/lambda", [&] {
        const AuxOperator U = u_minus(cfg, l1);
        const AuxOperator Ui = u_minus(cfg, 1.0 / l1);
        const cx s2 = l1 * l1;
        const cx rho = -(s2 * q - 1.0 / (q * s2)) / (s2 / q - q / s2);
        return std::max(op_residual(Ui.B, rho * U.B), op_residual(Ui.C, rho * U.C));
    });

    cc.add("Sym-A-D-", ti, "D_- as the two-term combination of A_-(1/lambda) and A_-(lambda)",
           [&] {
               const AuxOperator U = u_minus(cfg, l1);
               const AuxOperator Ui = u_minus(cfg, 1.0 / l1);
               const cx s2 = l1 * l1;
               const Mat D = ((s2 / q - q / s2) / (s2 - 1.0 / s2)) * Ui.A +
                             ((q - 1.0 / q) / (s2 - 1.0 / s2)) * U.A;
               return op_residual(U.D, D);
           });

    cc.add("T-diag-A", ti, "diagonal transfer part through the A_- symmetric form", [&] {
        const AuxOperator U = u_minus(cfg, l2);
        const AuxOperator Ui = u_minus(cfg, 1.0 / l2);
        const Mat FA = a_sans_plus(cfg, l2) * U.A + a_sans_plus(cfg, 1.0 / l2) * Ui.A;
        return op_residual(FA, t_diag(cfg, l2));
    });

    cc.add("T-diag-D", ti, "diagonal transfer part through the D_- symmetric form", [&] {
        const AuxOperator U = u_minus(cfg, l2);
        const AuxOperator Ui = u_minus(cfg, 1.0 / l2);
        const Mat FD = d_sans_plus(cfg, l2) * U.D + d_sans_plus(cfg, 1.0 / l2) * Ui.D;
        return op_residual(FD, t_diag(cfg, l2));
    });

    cc.add("B-T-Diag", ti, "diagonal K_+ (kappa_+ = 0) reduces T to its diagonal part", [&] {
        ChainConfig diag = cfg;
        diag.boundary.kappa_p = 0.0;
        return op_residual(transfer(diag, l1), t_diag(diag, l1));
    });

    cc.add("Bound-q-detU_1", ti, "boundary quantum determinant (first ordering) is scalar", [&] {
        const Mat Q1 = boundary_qdet_operator(cfg, l1, false);
        return op_residual(Q1, boundary_qdet_scalar(cfg, l1) * Mat::identity(cfg.dim()));
    });

    cc.add("Bound-q-detU_2", ti, "both operator orderings of the boundary determinant agree",
           [&] {
               const Mat Q1 = boundary_qdet_operator(cfg, l1, false);
               const Mat Q2 = boundary_qdet_operator(cfg, l1, true);
               return op_residual(Q1, Q2);
           });

    cc.add("B-q-detU_-exp", ti, "boundary determinant is central in the reflection algebra", [&] {
        const Mat Q1 = boundary_qdet_operator(cfg, l1, false);
        const AuxOperator U = u_minus(cfg, m1);
        double r = 0.0;
        for (const Mat* G : {&U.A, &U.B, &U.C, &U.D})
            r = std::max(r, rel_residual(commutator(Q1, *G), Q1 * (*G), (*G) * Q1));
        return r;
    });

    cc.add("OpenCyU-identities", ti, "U_- identities at q^{1/2} and i q^{1/2}", [&] {
        const double s = (cfg.N % 2 == 0) ? 1.0 : -1.0;
        const Mat I = Mat::identity(cfg.dim());
        double r = 0.0;
        const AuxOperator U1 = u_minus(cfg, cfg.root.qh);
        const cx c1 = s * qdet_scalar_ad(cfg, cx(1.0));
        r = std::max(r, op_residual(U1.A, c1 * I));
        r = std::max(r, op_residual(U1.D, c1 * I));
        r = std::max(r, rel_residual(U1.B, std::abs(c1)));
        r = std::max(r, rel_residual(U1.C, std::abs(c1)));
        const AuxOperator U2 = u_minus(cfg, cx(0.0, 1.0) * cfg.root.qh);
        const cx zr = (cfg.boundary.zeta_m + 1.0 / cfg.boundary.zeta_m) /
                      (cfg.boundary.zeta_m - 1.0 / cfg.boundary.zeta_m);
        const cx c2 = cx(0.0, 1.0) * zr * qdet_scalar_ad(cfg, cx(0.0, 1.0));
        r = std::max(r, op_residual(U2.A, c2 * I));
        r = std::max(r, op_residual(U2.D, -c2 * I));
        r = std::max(r, rel_residual(U2.B, std::abs(c2)));
        r = std::max(r, rel_residual(U2.C, std::abs(c2)));
        return r;
    });

    cc.add("set-tau", ti, "scalar transfer values at q^{1/2} and i q^{1/2}", [&] {
        const TransferSpecialValues v = transfer_special_values(cfg);
        const Mat I = Mat::identity(cfg.dim());
        return std::max(op_residual(transfer(cfg, cfg.root.qh), v.at_qh * I),
                        op_residual(transfer(cfg, cx(0.0, 1.0) * cfg.root.qh), v.at_iqh * I));
    });

    cc.add("asymp-T", 1e-4, "leading asymptotics of T at lambda = 10^3 (finite-point approach)",
           [&] {
               const cx big(1.0e3, 0.0);
               const Mat T = transfer(cfg, big);
               const cx lim = T.trace() / static_cast<double>(cfg.dim()) /
                              std::pow(big, 2.0 * (cfg.N + 2));
               const cx ti_val = tau_infinity(cfg);
               return std::abs(lim - ti_val) / std::abs(ti_val);
           });

    cc.add("tau_inf-Tri-K+", 1e-4,
           "triangular-K_+ asymptotics at lambda = 10^3 (finite-point approach)", [&] {
               ChainConfig tri = cfg;
               tri.boundary.triangular_plus = true;
               const cx big(1.0e3, 0.0);
               const Mat T = transfer(tri, big);
               const cx lim = T.trace() / static_cast<double>(tri.dim()) /
                              std::pow(big, 2.0 * (tri.N + 2));
               const cx ti_val = tau_infinity(tri);
               return std::abs(lim - ti_val) / std::abs(ti_val);
           });

    cc.add("OpenCybYB-AB", ti, "A_- B_- exchange relation and the calibrated D-tilde", [&] {
        double r = std::max(exchange_ab_residual(cfg, l1, m1), exchange_ab_residual(cfg, l2, m2));
        const auto [x, y] = calibrate_dtilde(cfg, l1, m1);
        const cx s2 = l1 * l1;
        const cx xref = s2 - 1.0 / s2;
        const cx yref = -(q - 1.0 / q);
        r = std::max(r, std::abs(x - xref) / std::abs(xref));
        r = std::max(r, std::abs(y - yref) / std::abs(yref));
        return r;
    });

    cc.add("Def-alfa-beta", ti, "(alpha_-, beta_-) re-parametrization of (zeta_-, kappa_-)", [&] {
        const auto& bp = cfg.boundary;
        const cx a = bp.alpha_m, b = bp.beta_m;
        const cx S1 = (bp.zeta_m - 1.0 / bp.zeta_m) / bp.kappa_m;
        const cx S2 = (bp.zeta_m + 1.0 / bp.zeta_m) / bp.kappa_m;
        const cx r1 = (a - 1.0 / a) * (b + 1.0 / b) - S1;
        const cx r2 = (a + 1.0 / a) * (b - 1.0 / b) - S2;
        return std::max(std::abs(r1) / std::abs(S1), std::abs(r2) / std::abs(S2));
    });

    cc.add("B-g_PM", ti, "sans-serif coefficient factorizations through g_- and k", [&] {
        const cx qh = cfg.root.qh;
        const cx a1 = a_sans_minus(cfg, l1);
        const cx a2 = g_minus(cfg, l1) * bulk_a(cfg, l1 / qh) * bulk_d(cfg, 1.0 / (qh * l1));
        const cx d1 = d_sans_minus(cfg, l1);
        const cx d2 = k_fn(cfg.root, l1) * a_sans_minus(cfg, q / l1);
        return std::max(std::abs(a1 - a2) / std::abs(a1), std::abs(d1 - d2) / std::abs(d1));
    });
}

// ---------------------------------------------------------------------------
// sov suite
// ---------------------------------------------------------------------------

void run_sov(const RunSpec& spec, std::vector<CheckRecord>& out) {
    Collector cc(out);
    const ChainConfig cfg = make_cfg(spec, effective_mode(spec, SampleMode::sov), false);
    const double ti = spec.tol.rtol_identity;
    const double ts = spec.tol.rtol_spectral;
    const int p = cfg.root.p, N = cfg.N;
    AnnulusRng rng(spec.seed + 303);

    cc.add("Quasi-nilp", ti, "per-site quasi-nilpotency constraint on the Lax couplings", [&] {
        double r = 0.0;
        for (int n = 0; n < N; ++n) {
            const auto& s = cfg.sites[static_cast<std::size_t>(n)];
            const cx want = -cfg.root.qp(2 * cfg.j[static_cast<std::size_t>(n)] - 1) * s.a;
            r = std::max(r, std::abs(s.b - want) / std::abs(s.b));
        }
        return r;
    });

    const GenericityReport gr = genericity_report(cfg);
    cc.require("E-SOV", gr.esov_ok, "grid separation margin " + fmt(gr.esov_margin));
    cc.require("condition-SoV-2", gr.sov2_ok, "boundary exclusion margin " + fmt(gr.sov2_margin));

    cc.require("corrisp", [&] {
        for (int i = 0; i < static_cast<int>(cfg.dim()); ++i)
            if (kappa_index(kappa_tuple(i, p, N), p) != i) return false;
        return true;
    }(), "multi-index / state-index isomorphism round trip");

    cc.add("Ref-state-Con-L/R", ti, "reference states: B kernel and A, D eigen conditions", [&] {
        auto [omega, omega_bar] = reference_states(cfg);
        double r = 0.0;
        for (int t = 0; t < 2; ++t) {
            const cx lam = rng.draw(0.7, 1.4);
            const AuxOperator m = monodromy(cfg, lam * cfg.root.qh);
            const double sc = m.B.max_abs();
            r = std::max(r, norm2(apply_left(omega, m.B)) / sc);
            r = std::max(r, norm2(cyc6v::apply(m.B, omega_bar)) / sc);
            r = std::max(r, norm2(apply_left(omega, m.A) - bulk_a(cfg, lam) * omega) /
                                (m.A.max_abs() * norm2(omega)));
            r = std::max(r, norm2(apply_left(omega, m.D) - bulk_d(cfg, lam) * omega) /
                                (m.D.max_abs() * norm2(omega)));
            r = std::max(r,
                         norm2(cyc6v::apply(m.A, omega_bar) -
                               bulk_a(cfg, lam * cfg.root.q) * omega_bar) /
                             (m.A.max_abs() * norm2(omega_bar)));
            r = std::max(r,
                         norm2(cyc6v::apply(m.D, omega_bar) -
                               bulk_d(cfg, lam / cfg.root.q) * omega_bar) /
                             (m.D.max_abs() * norm2(omega_bar)));
        }
        return r;
    });

    const SovBases bases = build_sov_bases(cfg);
    const SovGrid& g = bases.grid;

    cc.add("Left-B-eigenstates", ts, "left ladder diagonalizes B_-", [&] {
        double r = 0.0;
        for (int t = 0; t < 2; ++t) {
            const cx lam = rng.draw(0.7, 1.4);
            const Mat bm = u_minus(cfg, lam).B;
            for (std::size_t i = 0; i < bases.left.size(); ++i) {
                const auto h = kappa_tuple(static_cast<int>(i), p, N);
                const cx ev = b_eigenvalue(cfg, g, h, lam);
                r = std::max(r, norm2(apply_left(bases.left[i], bm) - ev * bases.left[i]) /
                                    (norm2(bases.left[i]) * std::abs(ev)));
            }
        }
        return r;
    });

    cc.add("EigenValue-B_", ts, "right ladder diagonalizes B_- with the closed eigenvalue", [&] {
        double r = 0.0;
        for (int t = 0; t < 2; ++t) {
            const cx lam = rng.draw(0.7, 1.4);
            const Mat bm = u_minus(cfg, lam).B;
            for (std::size_t i = 0; i < bases.right.size(); ++i) {
                const auto h = kappa_tuple(static_cast<int>(i), p, N);
                const cx ev = b_eigenvalue(cfg, g, h, lam);
                r = std::max(r, norm2(cyc6v::apply(bm, bases.right[i]) - ev * bases.right[i]) /
                                    (norm2(bases.right[i]) * std::abs(ev)));
            }
        }
        return r;
    });

    const Mat gram = gram_matrix(bases);

    cc.add("T2M_jj", ts, "Gram diagonal matches the closed-form Vandermonde ratio", [&] {
        double r = 0.0;
        for (std::size_t i = 0; i < bases.left.size(); ++i) {
            const auto h = kappa_tuple(static_cast<int>(i), p, N);
            const cx want = gram_diagonal(g, h);
            r = std::max(r, std::abs(gram(i, i) - want) / std::abs(want));
        }
        return r;
    });

    cc.add("T2F1", ts, "Gram matrix is diagonal (off-diagonal elements vanish)", [&] {
        double r = 0.0;
        const double scale = gram.max_abs();
        for (std::size_t i = 0; i < gram.rows(); ++i)
            for (std::size_t j = 0; j < gram.cols(); ++j)
                if (i != j) r = std::max(r, std::abs(gram(i, j)) / scale);
        return r;
    });

    cc.add("T2F2", ts, "Gram-diagonal ratio under a single-site raise", [&] {
        double r = 0.0;
        for (int a = 0; a < N; ++a) {
            std::vector<int> h(static_cast<std::size_t>(N), 1);
            std::vector<int> hp = h;
            hp[static_cast<std::size_t>(a)] += 1;
            const auto ih = static_cast<std::size_t>(kappa_index(h, p));
            const auto ip = static_cast<std::size_t>(kappa_index(hp, p));
            const cx ratio = gram(ip, ip) / gram(ih, ih);
            cx expect = 1.0;
            for (int b = 0; b < N; ++b) {
                if (b == a) continue;
                const auto sa = static_cast<std::size_t>(a), sb = static_cast<std::size_t>(b);
                expect *= (g.X[sa][static_cast<std::size_t>(h[sa])] -
                           g.X[sb][static_cast<std::size_t>(h[sb])]) /
                          (g.X[sa][static_cast<std::size_t>(hp[sa])] -
                           g.X[sb][static_cast<std::size_t>(h[sb])]);
            }
            r = std::max(r, std::abs(ratio - expect) / std::abs(expect));
        }
        return r;
    });

    cc.add("Decmp-Id", ts, "decomposition of the identity over the separated basis",
           [&] { return identity_decomposition_residual(bases); });

    cc.add("T2-Sov-Sc-p1", ts, "separate scalar products reduce to the determinant formula", [&] {
        double r = 0.0;
        for (int t = 0; t < 3; ++t) {
            SeparateTable alpha(static_cast<std::size_t>(N), std::vector<cx>(static_cast<std::size_t>(p)));
            SeparateTable beta = alpha;
            for (int a = 0; a < N; ++a)
                for (int h = 0; h < p; ++h) {
                    alpha[static_cast<std::size_t>(a)][static_cast<std::size_t>(h)] = rng.draw();
                    beta[static_cast<std::size_t>(a)][static_cast<std::size_t>(h)] = rng.draw();
                }
            const Vec lv = assemble_separate_left(bases, alpha);
            const Vec rv = assemble_separate_right(bases, beta);
            const cx direct = dot(lv, rv);
            const cx formula = separate_scalar_product(g, alpha, beta);
            r = std::max(r, std::abs(direct - formula) / std::abs(formula));
        }
        return r;
    });

    cc.add("SOV D-", ts, "interpolation formulas for A_- (left) and D_- (right) actions", [&] {
        double r = 0.0;
        const std::vector<std::vector<int>> tuples = {std::vector<int>(static_cast<std::size_t>(N), 1),
                                                      std::vector<int>(static_cast<std::size_t>(N), 0),
                                                      std::vector<int>(static_cast<std::size_t>(N), p - 1)};
        for (const auto& h : tuples)
            for (int t = 0; t < 2; ++t) {
                const cx lam = rng.draw(0.7, 1.4);
                r = std::max(r, a_minus_interpolation_residual(cfg, bases, h, lam));
                r = std::max(r, d_minus_interpolation_residual(cfg, bases, h, lam));
            }
        return r;
    });
}

// ---------------------------------------------------------------------------
// spectrum suite
// ---------------------------------------------------------------------------

void run_spectrum(const RunSpec& spec, std::vector<CheckRecord>& out) {
    Collector cc(out);
    const ChainConfig cfg = make_cfg(spec, effective_mode(spec, SampleMode::sov), true);
    const double ti = spec.tol.rtol_identity;
    const double ts = spec.tol.rtol_spectral;
    const double tf = spec.tol.rtol_functional;
    const int p = cfg.root.p, N = cfg.N;
    AnnulusRng rng(spec.seed + 404);

    const SovBases bases = build_sov_bases(cfg);
    const SovGrid& g = bases.grid;
    const SpectrumReport sr = ed_spectrum(cfg, bases, 1);

    cc.require("cond-simple", sr.simple && sr.entries.size() == cfg.dim(),
               "spectrum simple with exactly p^N = " + std::to_string(cfg.dim()) + " entries");

    cc.require("Simplicity", [&] {
        for (std::size_t i = 0; i < sr.entries.size(); ++i)
            for (std::size_t k = i + 1; k < sr.entries.size(); ++k) {
                double d = 0.0;
                for (int a = 0; a < N; ++a)
                    d = std::max(d, std::abs(sr.entries[i].vals[static_cast<std::size_t>(a)] -
                                             sr.entries[k].vals[static_cast<std::size_t>(a)]));
                if (d <= 1e-6) return false;
            }
        return true;
    }(), "pairwise distinct grid-value sets (margin 1e-6)");

    cc.add("FrbtD-matrix", ti, "entries of the functional matrix at a random point", [&] {
        const TauPolynomial& tau = sr.entries[0].tau;
        const cx lam = rng.draw(0.9, 1.3);
        const Mat D = d_tau_matrix(cfg, lam, tau);
        double r = 0.0, scale = D.max_abs();
        for (int row = 0; row < p; ++row)
            for (int col = 0; col < p; ++col) {
                const cx lr = cfg.root.qp(row) * lam;
                const auto sr2 = static_cast<std::size_t>(row), sc = static_cast<std::size_t>(col);
                cx want = 0.0;
                if (col == row)
                    want = tau(lr);
                else if (col == (row + p - 1) % p)
                    want = -coeff_a(cfg, lr);
                else if (col == (row + 1) % p)
                    want = -coeff_a(cfg, 1.0 / lr);
                r = std::max(r, std::abs(D(sr2, sc) - want) / scale);
            }
        return r;
    });

    cc.add("Form-detD", ts, "determinant symmetries: q-periodic, inversion, hat duality", [&] {
        const TauPolynomial& tau = sr.entries[0].tau;
        const cx lam = rng.draw(0.9, 1.3);
        const cx det = determinant(d_tau_matrix(cfg, lam, tau));
        double r = 0.0;
        r = std::max(r, std::abs(determinant(d_tau_matrix(cfg, cfg.root.q * lam, tau)) - det) /
                            std::abs(det));
        r = std::max(r,
                     std::abs(determinant(d_tau_matrix(cfg, 1.0 / lam, tau)) - det) / std::abs(det));
        r = std::max(r, std::abs(determinant(d_tau_matrix(cfg, lam, tau, true)) - det) /
                            std::abs(det));
        return r;
    });

    cc.add("finite D_tau", tf, "scaled determinant conditions vanish on every eigenvalue", [&] {
        double r = 0.0;
        for (const auto& e : sr.entries) {
            for (double d : e.det_condition) r = std::max(r, d);
            r = std::max(r, e.interp_residual);
        }
        return r;
    });

    cc.add("OpenCyleft-B-eigen-cond", tf, "dual (hat) determinant conditions on every eigenvalue",
           [&] {
               double r = 0.0;
               for (const auto& e : sr.entries)
                   for (int a = 0; a < N; ++a)
                       r = std::max(r, std::abs(d_tau_condition(cfg, bases, e.tau, a, true)));
               return r;
           });

    cc.require("OpenCyI-Functional-eq", [&] {
        for (double eps : {1e-2, 1e-1}) {
            std::vector<cx> vals = sr.entries[0].vals;
            vals[0] *= (1.0 + eps);
            const TauPolynomial bad = tau_from_values(cfg, vals);
            double worst = 0.0;
            for (int a = 0; a < N; ++a)
                worst = std::max(worst, std::abs(d_tau_condition(cfg, bases, bad, a)));
            if (worst <= 1e-3) return false;
        }
        return true;
    }(), "perturbed candidates violate the conditions by at least 1e-3");

    // kernel eigenstates: assembled separate states against the transfer matrix
    std::vector<QTable> qts, qhats;
    qts.reserve(sr.entries.size());
    qhats.reserve(sr.entries.size());
    for (const auto& e : sr.entries) {
        qts.push_back(q_table_from_kernel(cfg, bases, e.tau, false));
        qhats.push_back(q_table_from_kernel(cfg, bases, e.tau, true));
    }
    const cx lam_t = rng.draw(0.8, 1.25);
    const Mat T = transfer(cfg, lam_t);
    const double tnorm = frob(T);

    cc.add("OpenCyeigenT-r-D", tf, "right kernel eigenstates of the transfer matrix", [&] {
        double r = 0.0;
        for (std::size_t k = 0; k < sr.entries.size(); ++k) {
            const Vec v = right_eigenstate(bases, qts[k]);
            const cx tv = sr.entries[k].tau(lam_t);
            r = std::max(r, norm2(cyc6v::apply(T, v) - tv * v) / (tnorm * norm2(v)));
        }
        return r;
    });

    cc.add("OpenCyeigenT-l-D", tf, "left kernel eigenstates of the transfer matrix", [&] {
        double r = 0.0;
        for (std::size_t k = 0; k < sr.entries.size(); ++k) {
            const Vec w = left_eigenstate(bases, qhats[k]);
            const cx tv = sr.entries[k].tau(lam_t);
            r = std::max(r, norm2(apply_left(w, T) - tv * w) / (tnorm * norm2(w)));
        }
        return r;
    });

    cc.add("OpenCyC:T-eigenstates-", ts, "collinearity of separate and ED eigenvector pairs",
           [&] {
               double r = 0.0;
               for (std::size_t k = 0; k < sr.entries.size(); ++k) {
                   const Vec v = right_eigenstate(bases, qts[k]);
                   const Vec w = left_eigenstate(bases, qhats[k]);
                   r = std::max(r, 1.0 - collinearity(v, sr.entries[k].right));
                   r = std::max(r, 1.0 - collinearity(w, sr.entries[k].left));
               }
               return r;
           });

    cc.add("Recurence-tau-L/R", tf, "kernel and recursion Q-tables agree (both variants)", [&] {
        double r = 0.0;
        for (std::size_t k : {std::size_t{0}, sr.entries.size() - 1}) {
            for (bool hat : {false, true}) {
                const QTable qk = hat ? qhats[k] : qts[k];
                const QTable qr = q_table_from_recursion(cfg, bases, sr.entries[k].tau, hat);
                for (int a = 0; a < N; ++a) {
                    const auto sa = static_cast<std::size_t>(a);
                    double scale = 0.0;
                    for (int h = 0; h < p; ++h)
                        scale = std::max(scale, std::abs(qr.q[sa][static_cast<std::size_t>(h)]));
                    for (int h = 0; h < p; ++h)
                        r = std::max(r, std::abs(qk.q[sa][static_cast<std::size_t>(h)] -
                                                 qr.q[sa][static_cast<std::size_t>(h)]) /
                                            scale);
                }
            }
        }
        return r;
    });

    cc.add("SOVBax1", ts, "separate Baxter equation on the eigen-wavefunction", [&] {
        const std::size_t k0 = 0;
        const TauPolynomial& tau = sr.entries[k0].tau;
        const Vec v = right_eigenstate(bases, qts[k0]);
        double r = 0.0;
        for (std::size_t i = 0; i < cfg.dim(); ++i) {
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
                r = std::max(r, std::abs(lhs - rhs) /
                                    (std::abs(lhs) + std::abs(rhs) + norm2(v)));
            }
        }
        return r;
    });

    cc.add("Deg-sp-cond", ts, "degenerate-interpolation orthogonality of distinct eigenstates",
           [&] {
               double r = 0.0;
               const std::size_t last = sr.entries.size() - 1;
               const std::vector<std::pair<std::size_t, std::size_t>> pairs = {
                   {0, last}, {0, last / 2 == 0 ? last : last / 2}};
               for (auto [i, k] : pairs) {
                   if (i == k) continue;
                   const OrthogonalityReport rep = orthogonality_relation(
                       cfg, bases, sr.entries[i].tau, qhats[i], sr.entries[k].tau, qts[k]);
                   r = std::max({r, rep.system_residual, rep.division_residual, rep.state_overlap});
               }
               return r;
           });
}

// ---------------------------------------------------------------------------
// tq suite
// ---------------------------------------------------------------------------

void run_tq(const RunSpec& spec, std::vector<CheckRecord>& out) {
    Collector cc(out);
    const ChainConfig cfg = make_cfg(spec, effective_mode(spec, SampleMode::sov_double), true);
    const double ti = spec.tol.rtol_identity;
    const double ts = spec.tol.rtol_spectral;
    const double tf = spec.tol.rtol_functional;
    const int p = cfg.root.p, N = cfg.N;
    const cx q = cfg.root.q;
    AnnulusRng rng(spec.seed + 505);

    cc.add("Double-nilp", ti, "second quasi-nilpotency constraint on the Lax couplings", [&] {
        double r = 0.0;
        for (int n = 0; n < N; ++n) {
            const auto& s = cfg.sites[static_cast<std::size_t>(n)];
            double best = 1e300;
            for (int k = 0; k < p; ++k)
                best = std::min(best,
                                std::abs(s.d + cfg.root.qp(2 * k - 1) * s.c) / std::abs(s.d));
            r = std::max(r, best);
        }
        return r;
    });

    const SovBases bases = build_sov_bases(cfg);
    const SovGrid& g = bases.grid;
    const SpectrumReport sr = ed_spectrum(cfg, bases, 1);
    const FunctionalCheck fc = dbar_det_in_z(cfg, g, sr.entries[0].tau, spec.seed + 1000);

    cc.add("Func-EQ-1", tf,
           "cyclic determinant: Z-polynomial fit, functional identity, asymptote, inversion",
           [&] {
               return std::max({fc.fit_residual, fc.equation_residual, fc.asymptote_residual,
                                fc.inversion_residual});
           });

    cc.add("functional equation", 1e-4,
           "Richardson-extrapolated limit values at the two divergent-entry points",
           [&] { return fc.extrapolation_residual; });

    std::vector<QPolynomial> Qs;
    Qs.reserve(sr.entries.size());
    for (const auto& e : sr.entries) Qs.push_back(q_polynomial_from_tau(cfg, bases, e.tau));

    cc.add("Q-form", tf, "Q polynomials: node and root residuals, degree (p-1)N", [&] {
        double r = 0.0;
        for (const auto& Q : Qs) {
            r = std::max({r, Q.node_residual, Q.root_residual});
            if (!Q.exceptional && Q.degree != (p - 1) * N) r = std::max(r, 1.0);
        }
        return r;
    });

    cc.add("Q-condition", tf, "free interpolation node leaves the Q polynomial unchanged", [&] {
        const QPolynomial Q2 =
            q_polynomial_from_tau(cfg, bases, sr.entries[0].tau, cx(1.21, -0.43));
        const cx pr1 = Qs[0](cx(0.97, 0.36)) / Q2(cx(0.97, 0.36));
        const cx pr2 = Qs[0](cx(1.31, 0.11)) / Q2(cx(1.31, 0.11));
        return std::abs(pr1 - pr2) / std::abs(pr1);
    });

    cc.add("Inho-Baxter-EQ", tf, "inhomogeneous TQ relation on every eigenvalue", [&] {
        double r = 0.0;
        for (std::size_t k = 0; k < sr.entries.size(); ++k)
            r = std::max(r, tq_residual(cfg, g, sr.entries[k].tau, Qs[k], spec.seed + 5));
        return r;
    });

    cc.require("OpenCyt-Q-relation", [&] {
        TauPolynomial bad = sr.entries[0].tau;
        for (auto& v : bad.vals) v *= 1.0 + 1e-3;
        bad.X0 *= 1.0 + 1e-3;
        return tq_residual(cfg, g, bad, Qs[0], spec.seed + 5) > 1e3 * tf;
    }(), "perturbed eigenvalue candidate violates the TQ relation by 1e3 x tolerance");

    cc.add("Bethe-like-eigenstates", ts, "Bethe-form states are collinear with the ED pairs",
           [&] {
               double r = 0.0;
               for (std::size_t k : {std::size_t{0}, sr.entries.size() - 1}) {
                   const BetheState bs = bethe_state(cfg, bases, sr.entries[k], Qs[k]);
                   r = std::max(r, 1.0 - bs.overlap_right);
                   r = std::max(r, 1.0 - bs.overlap_left);
               }
               return r;
           });

    cc.add("OpenCyboundary-", ts, "normalized creation operator is degree N in L", [&] {
        std::vector<cx> ls(static_cast<std::size_t>(N) + 2);
        for (auto& l : ls) l = rng.draw(0.8, 1.3);
        const cx probe = ls.back();
        auto big_l = [](cx l) { return l * l + 1.0 / (l * l); };
        const cx Lp = big_l(probe);
        const std::size_t d = cfg.dim();
        Mat pred(d, d);
        for (int jn = 0; jn <= N; ++jn) {
            cx w = 1.0;
            const cx Lj = big_l(ls[static_cast<std::size_t>(jn)]);
            for (int k = 0; k <= N; ++k) {
                if (k == jn) continue;
                w *= (Lp - big_l(ls[static_cast<std::size_t>(k)])) /
                     (Lj - big_l(ls[static_cast<std::size_t>(k)]));
            }
            const Mat Bj = b_minus_normalized(cfg, ls[static_cast<std::size_t>(jn)]);
            for (std::size_t rr = 0; rr < d; ++rr)
                for (std::size_t ccn = 0; ccn < d; ++ccn) pred(rr, ccn) += w * Bj(rr, ccn);
        }
        const Mat direct = b_minus_normalized(cfg, probe);
        return op_residual(pred, direct);
    });

    const HomogeneousReport hr = homogeneous_case(spec.p, spec.p_prime, spec.N, spec.seed, 1);

    cc.add("Condition-global-boundary", ts,
           "boundary manifold: a-support zero, transfer zero, asymptotic constraint", [&] {
               return std::max({hr.a_support, hr.transfer_zero, hr.manifold_residual});
           });

    cc.add("Baxter-hom-eq", tf,
           "homogeneous TQ relation, vanishing inhomogeneity and per-root Bethe equations", [&] {
               double r = std::max({hr.hom_tq_max, hr.g_residual_max, hr.bethe_eq_max});
               if (!hr.simple || hr.max_degree > (p - 1) * N) r = std::max(r, 1.0);
               return r;
           });
}

// ---------------------------------------------------------------------------
// reductions suite
// ---------------------------------------------------------------------------

void run_reductions(const RunSpec& spec, std::vector<CheckRecord>& out) {
    Collector cc(out);
    const double ti = spec.tol.rtol_identity;
    const double ts = spec.tol.rtol_spectral;
    AnnulusRng rng(spec.seed + 606);

    cc.add("YB-Lax-sG-t2", ti, "single-site sine-Gordon Lax dictionary", [&] {
        double r = 0.0;
        for (int t = 0; t < 3; ++t)
            r = std::max(r, sg_single_site_residual(spec.p, spec.p_prime, rng.draw(), rng.draw(),
                                                    rng.draw(), rng.draw(), rng.draw(0.7, 1.4)));
        return r;
    });

    const SineGordonChain sg = random_sg_chain(spec.N, spec.seed + 17);
    const SgReport sgr = sg_identities(spec.p, spec.p_prime, sg, rng.draw(0.8, 1.3));

    cc.add("YB-monodromy-sG-t2", ti, "sine-Gordon monodromy and hat-monodromy dictionary",
           [&] { return std::max(sgr.monodromy_residual, sgr.hat_residual); });

    cc.add("Baundary-identities-sG-t2", ti, "sine-Gordon boundary operators and transfer matrix",
           [&] { return std::max(sgr.u_minus_residual, sgr.transfer_residual); });

    cc.add("boundary-par-sG-t2", 0.25, "calibrated relative sign is (-1)^x, x = N mod 2", [&] {
        const double expect = (sg.x == 0) ? 1.0 : -1.0;
        return std::abs(sgr.boundary_sign - expect);
    });

    const XxzReport xr = xxz_lax_identity(spec.p, spec.p_prime, rng.draw(0.8, 1.3));

    cc.add("S_+-u-v-identification", ti, "spin-s Lax identity in both root conventions",
           [&] { return std::max(xr.lax_residual, xr.lax_residual_conjugate); });

    cc.add("S_z-v-identification", ti, "S^z spectrum and sl2-type commutation relations",
           [&] { return std::max(xr.sz_spectrum_gap, xr.comm_residual); });

    const ChiralPottsReport cp = chiral_potts_constraints(spec.p, spec.p_prime, spec.N,
                                                          spec.seed + 31);

    cc.add("chPFaxVcurve-eq", ti, "curve membership of the drawn points and their images", [&] {
        return std::max({cp.modulus_residual, cp.curve_q_max, cp.curve_r_max});
    });

    cc.add("restriction1-chP", ti, "coupling constraints of the curve-restricted chain",
           [&] { return std::max(cp.constraint_ab, cp.constraint_curve); });

    {
        std::string ctx = "automorphism involution; superintegrable distances:";
        for (double d : cp.superintegrable) ctx += " " + fmt(d);
        cc.add("SuperCH-P", ti, ctx, [&] { return cp.involution_residual; });
    }

    const ChainConfig gen = make_cfg(spec, SampleMode::general, false);
    const BMinusReport br = b_minus_general_diag(gen, cx(1.13, 0.19), spec.seed + 9);

    cc.add("B-non-nilpotent", ts,
           "B_- simple spectrum, functional form, leading coefficient, central average", [&] {
               double r = std::max({br.leading_residual, br.fit_residual, br.eig_residual,
                                    br.centrality_residual, br.average_residual});
               if (!br.simple) r = std::max(r, 1.0);
               return r;
           });

    {
        RunSpec s2 = spec;
        s2.mode.clear();
        const ChainConfig sv = make_cfg(s2, SampleMode::sov, false);
        const BMinusReport bs = b_minus_general_diag(sv, cx(1.13, 0.19), spec.seed + 9);
        cc.add("B-eigen-value", ts,
               "p-th powers of the B_- zeros match the site mu data under the constraint",
               [&] { return bs.sov_mu_residual; });
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// orchestration
// ---------------------------------------------------------------------------

void validate(const RunSpec& spec) {
    static const std::vector<std::string> suites = {"bulk",     "boundary",   "sov", "spectrum",
                                                    "tq",       "reductions", "all"};
    if (std::find(suites.begin(), suites.end(), spec.suite) == suites.end())
        throw std::invalid_argument("unknown suite: " + spec.suite);
    if (spec.p < 3 || spec.p % 2 == 0)
        throw std::invalid_argument("p must be odd and >= 3 (got " + std::to_string(spec.p) + ")");
    if (spec.p_prime < 2 || spec.p_prime % 2 != 0)
        throw std::invalid_argument("p_prime must be even and >= 2 (got " +
                                    std::to_string(spec.p_prime) + ")");
    if (std::gcd(spec.p, spec.p_prime) != 1)
        throw std::invalid_argument("p and p_prime must be coprime");
    if (spec.N < 1) throw std::invalid_argument("N must be >= 1");

    double dim = 1.0;
    for (int n = 0; n < spec.N; ++n) dim *= spec.p;
    if (dim > 243.0 && !spec.allow_large)
        throw std::invalid_argument("p^N exceeds 243; pass --allow-large to proceed");

    if (!spec.mode.empty()) {
        const SampleMode m = parse_mode(spec.mode);  // throws on unknown mode
        if (spec.suite == "all")
            throw std::invalid_argument("suite 'all' selects per-suite modes; drop --mode");
        if (spec.suite == "tq" && m != SampleMode::sov_double)
            throw std::invalid_argument("suite 'tq' requires mode sov_double");
        if ((spec.suite == "sov" || spec.suite == "spectrum") && m == SampleMode::general)
            throw std::invalid_argument("suite '" + spec.suite +
                                        "' requires an SoV mode (sov or sov_double)");
    }
}

Report run(const RunSpec& spec) {
    validate(spec);vp
    Report rep;
    rep.p = spec.p;
    rep.p_prime = spec.p_prime;
    rep.N = spec.N;
    rep.seed = spec.seed;
    rep.version = report_version();

    if (spec.suite == "all") {
        rep.mode = "per-suite";
        run_bulk(spec, rep.checks);
        run_boundary(spec, rep.checks);
        run_sov(spec, rep.checks);
        run_spectrum(spec, rep.checks);
        run_tq(spec, rep.checks);
        run_reductions(spec, rep.checks);
    } else {
        SampleMode def = SampleMode::general;
        if (spec.suite == "sov" || spec.suite == "spectrum") def = SampleMode::sov;
        if (spec.suite == "tq") def = SampleMode::sov_double;
        rep.mode = spec.mode.empty() ? mode_name(def) : spec.mode;
        if (spec.suite == "bulk") run_bulk(spec, rep.checks);
        if (spec.suite == "boundary") run_boundary(spec, rep.checks);
        if (spec.suite == "sov") run_sov(spec, rep.checks);
        if (spec.suite == "spectrum") run_spectrum(spec, rep.checks);
        if (spec.suite == "tq") run_tq(spec, rep.checks);
        if (spec.suite == "reductions") run_reductions(spec, rep.checks);
    }
    for (const auto& c : rep.checks) (c.pass ? rep.n_pass : rep.n_fail)++;
    return rep;
}

SpectrumListing spectrum_listing(const RunSpec& spec) {
    RunSpec s = spec;
    s.suite = "spectrum";
    validate(s);
    const ChainConfig cfg = make_cfg(s, effective_mode(s, SampleMode::sov), true);
    const SovBases bases = build_sov_bases(cfg);
    const SpectrumReport sr = ed_spectrum(cfg, bases, 1);
    SpectrumListing out;
    out.lambda_ref = sr.lambda_ref;
    for (const auto& e : sr.entries) {
        out.eigenvalues.push_back(e.tau(sr.lambda_ref));
        double worst = 0.0;
        for (double d : e.det_condition) worst = std::max(worst, d);
        out.det_residuals.push_back(worst);
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

std::string format_complex(cx z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", std::real(z), std::imag(z));
    return buf;
}

cx parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("complex value must be \"re,im\": " + s);
    std::size_t used1 = 0, used2 = 0;
    const double re = std::stod(s.substr(0, comma), &used1);
    const double im = std::stod(s.substr(comma + 1), &used2);
    if (used1 != comma || used2 != s.size() - comma - 1)
        throw std::invalid_argument("trailing characters in complex value: " + s);
    return cx(re, im);
}

namespace {

std::string dnum(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void reject_unknown(const ordered_json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
}

const ordered_json& need(const ordered_json& obj, const std::string& key,
                         const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw std::invalid_argument("missing required key '" + key + "' in " + where);
    return *it;
}

ordered_json parse_text(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        // recover line/column from the byte offset
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw std::invalid_argument("parse error at line " + std::to_string(line) + ", column " +
                                    std::to_string(col) + ": " + e.what());
    }
}

}  // namespace

std::string report_to_json(const Report& rep) {
    ordered_json j;
    j["meta"] = {{"p", rep.p},      {"p_prime", rep.p_prime}, {"N", rep.N},
                 {"seed", rep.seed}, {"mode", rep.mode},       {"version", rep.version}};
    j["checks"] = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["residual"] = dnum(c.residual);
        jc["tolerance"] = dnum(c.tolerance);
        jc["pass"] = c.pass;
        jc["wall_time_ms"] = c.wall_time_ms;
        jc["context"] = c.context;
        j["checks"].push_back(std::move(jc));
    }
    j["summary"] = {{"pass", rep.n_pass}, {"fail", rep.n_fail}};
    return j.dump(2) + "\n";
}

void save_report(const Report& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << report_to_json(rep);
}

std::string config_to_json(const ChainConfig& cfg) {
    ordered_json j;
    j["p"] = cfg.root.p;
    j["p_prime"] = cfg.root.p_prime;
    j["N"] = cfg.N;
    j["seed"] = cfg.seed;
    j["mode"] = mode_name(cfg.mode);
    j["a0"] = format_complex(cfg.a0);
    j["j"] = cfg.j;
    j["sites"] = ordered_json::array();
    for (const auto& s : cfg.sites) {
        ordered_json js;
        js["alpha"] = format_complex(s.alpha);
        js["beta"] = format_complex(s.beta);
        js["a"] = format_complex(s.a);
        js["b"] = format_complex(s.b);
        js["c"] = format_complex(s.c);
        js["d"] = format_complex(s.d);
        j["sites"].push_back(std::move(js));
    }
    const auto& bp = cfg.boundary;
    j["boundary"] = ordered_json{{"zeta_m", format_complex(bp.zeta_m)},
                                 {"kappa_m", format_complex(bp.kappa_m)},
                                 {"tau_m", format_complex(bp.tau_m)},
                                 {"zeta_p", format_complex(bp.zeta_p)},
                                 {"kappa_p", format_complex(bp.kappa_p)},
                                 {"tau_p", format_complex(bp.tau_p)},
                                 {"triangular_plus", bp.triangular_plus}};
    return j.dump(2) + "\n";
}

ChainConfig config_from_json(const std::string& text) {
    const ordered_json j = parse_text(text);
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
    reject_unknown(j, {"p", "p_prime", "N", "seed", "mode", "a0", "j", "sites", "boundary"},
                   "config");
    const int p = need(j, "p", "config").get<int>();
    const int pp = need(j, "p_prime", "config").get<int>();
    const int N = need(j, "N", "config").get<int>();

    ChainConfig cfg;
    cfg.root = root_of_unity(p, pp);
    cfg.N = N;
    cfg.seed = need(j, "seed", "config").get<std::uint64_t>();
    cfg.mode = parse_mode(need(j, "mode", "config").get<std::string>());
    cfg.a0 = parse_complex(need(j, "a0", "config").get<std::string>());
    cfg.j = need(j, "j", "config").get<std::vector<int>>();
    if (static_cast<int>(cfg.j.size()) != N)
        throw std::invalid_argument("key 'j' must list exactly N integers");

    const ordered_json& sites = need(j, "sites", "config");
    if (!sites.is_array() || static_cast<int>(sites.size()) != N)
        throw std::invalid_argument("key 'sites' must list exactly N site objects");
    for (const auto& js : sites) {
        reject_unknown(js, {"alpha", "beta", "a", "b", "c", "d"}, "site");
        cfg.sites.push_back(derive_site(
            cfg.root, parse_complex(need(js, "alpha", "site").get<std::string>()),
            parse_complex(need(js, "beta", "site").get<std::string>()),
            parse_complex(need(js, "a", "site").get<std::string>()),
            parse_complex(need(js, "b", "site").get<std::string>()),
            parse_complex(need(js, "c", "site").get<std::string>()),
            parse_complex(need(js, "d", "site").get<std::string>())));
    }

    const ordered_json& jb = need(j, "boundary", "config");
    reject_unknown(jb, {"zeta_m", "kappa_m", "tau_m", "zeta_p", "kappa_p", "tau_p",
                        "triangular_plus"},
                   "boundary");
    auto& bp = cfg.boundary;
    bp.zeta_m = parse_complex(need(jb, "zeta_m", "boundary").get<std::string>());
    bp.kappa_m = parse_complex(need(jb, "kappa_m", "boundary").get<std::string>());
    bp.tau_m = parse_complex(need(jb, "tau_m", "boundary").get<std::string>());
    bp.zeta_p = parse_complex(need(jb, "zeta_p", "boundary").get<std::string>());
    bp.kappa_p = parse_complex(need(jb, "kappa_p", "boundary").get<std::string>());
    bp.tau_p = parse_complex(need(jb, "tau_p", "boundary").get<std::string>());
    bp.triangular_plus = need(jb, "triangular_plus", "boundary").get<bool>();
    solve_alpha_beta(bp);
    return cfg;
}

void save_config(const ChainConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << config_to_json(cfg);
}

ChainConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

}  // namespace cyc6v
