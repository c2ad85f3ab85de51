#include "cyc6v/sov_spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cyc6v/boundary.hpp"
#include "cyc6v/bulk.hpp"
#include "cyc6v/linalg.hpp"

namespace cyc6v {

namespace {

using ECMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;
using ECVec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>;

double msign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

cx zeta_ratio(cx z) { return (z + 1.0 / z) / (z - 1.0 / z); }

void require_sov_triangular(const ChainConfig& cfg, const char* who) {
    if (cfg.mode == SampleMode::general)
        throw GenericityError(std::string(who) + ": requires a quasi-nilpotent configuration");
    if (!cfg.boundary.triangular_plus)
        throw GenericityError(std::string(who) + ": requires the triangular K_+ boundary");
}

// Solve a small dense complex linear system A x = b.
std::vector<cx> dense_solve(const std::vector<std::vector<cx>>& A, const std::vector<cx>& b) {
    const auto n = static_cast<Eigen::Index>(b.size());
    ECMat M(n, n);
    ECVec rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        rhs(i) = b[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j)
            M(i, j) = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    ECVec x = M.partialPivLu().solve(rhs);
    std::vector<cx> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = x(i);
    return out;
}

double sup_norm_row(const Mat& A, std::size_t r) {
    double m = 0.0;
    for (std::size_t c = 0; c < A.cols(); ++c) m = std::max(m, std::abs(A(r, c)));
    return m;
}

// Euclidean (conjugated) collinearity of two nonzero vectors.
double overlap_cos(const Vec& u, const Vec& v) {
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

// --- scalar coefficients -----------------------------------------------------

cx coeff_a(const ChainConfig& cfg, cx lambda) {
    return a_sans_plus(cfg, lambda) * a_sans_minus(cfg, lambda);
}

cx coeff_d(const ChainConfig& cfg, cx lambda) {
    return d_sans_plus(cfg, lambda) * d_sans_minus(cfg, lambda);
}

cx gauge_alpha(const ChainConfig& cfg, cx lambda) {
    const cx q = cfg.root.q;
    auto s = [&](cx z) {
        const cx z2 = z * z;
        return (z2 * q - 1.0 / (q * z2)) / (z2 - 1.0 / z2);
    };
    return s(lambda) * k_fn(cfg.root, lambda) / s(q / lambda);
}

// --- TauPolynomial -----------------------------------------------------------

cx TauPolynomial::at_big_lambda(cx L) const {
    const cx X = Xq;
    const std::size_t n = X0.size();
    cx sum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        cx t = (L * L - X * X) / (X0[a] * X0[a] - X * X) * vals[a];
        for (std::size_t b = 0; b < n; ++b)
            if (b != a) t *= (L - X0[b]) / (X0[a] - X0[b]);
        sum += t;
    }
    cx prod_all = 1.0, prod_m = 1.0, prod_p = 1.0;
    for (std::size_t b = 0; b < n; ++b) {
        prod_all *= (L - X0[b]);
        prod_m *= (L - X0[b]) / (X - X0[b]);
        prod_p *= (L - X0[b]) / (X + X0[b]);
    }
    const double sgn = msign(N);
    sum += sgn * (L + X) / 2.0 * prod_m * detm1;
    sum += sgn * (L - X) / 2.0 * prod_p * ratio * detmi;
    sum += (L * L - X * X) * tau_inf * prod_all;
    return sum;
}

cx TauPolynomial::operator()(cx lambda) const {
    return at_big_lambda(lambda * lambda + 1.0 / (lambda * lambda));
}

TauPolynomial tau_from_values(const ChainConfig& cfg, std::vector<cx> vals) {
    if (static_cast<int>(vals.size()) != cfg.N)
        throw std::invalid_argument("tau_from_values: needs one value per site");
    const SovGrid g = sov_grid(cfg);
    TauPolynomial t;
    t.N = cfg.N;
    t.Xq = g.Xq;
    t.X0.resize(static_cast<std::size_t>(cfg.N));
    for (int a = 0; a < cfg.N; ++a)
        t.X0[static_cast<std::size_t>(a)] = g.X[static_cast<std::size_t>(a)][0];
    t.vals = std::move(vals);
    t.tau_inf = tau_infinity(cfg);
    t.detm1 = qdet_scalar_ad(cfg, cx(1.0));
    t.detmi = qdet_scalar_ad(cfg, cx(0.0, 1.0));
    t.ratio = zeta_ratio(cfg.boundary.zeta_p) * zeta_ratio(cfg.boundary.zeta_m);
    return t;
}

// --- functional matrix -------------------------------------------------------

Mat d_tau_matrix(const ChainConfig& cfg, cx lambda, const TauPolynomial& tau,
                 bool hat, cx corner_twist) {
    const int p = cfg.root.p;
    const auto sp = static_cast<std::size_t>(p);
    Mat D(sp, sp);
    for (int k = 0; k < p; ++k) {
        const cx lk = cfg.root.qp(k) * lambda;
        const auto r = static_cast<std::size_t>(k);
        const auto cm = static_cast<std::size_t>((k + p - 1) % p);
        const auto cp = static_cast<std::size_t>((k + 1) % p);
        D(r, r) = tau(lk);
        D(r, cm) = -(hat ? coeff_d(cfg, lk) : coeff_a(cfg, lk));
        D(r, cp) = -(hat ? coeff_d(cfg, 1.0 / lk) : coeff_a(cfg, 1.0 / lk));
    }
    D(sp - 1, 0) *= corner_twist;
    D(0, sp - 1) /= corner_twist;
    return D;
}

cx d_tau_condition(const ChainConfig& cfg, const SovBases& bases,
                   const TauPolynomial& tau, int a, bool hat) {
    const auto sa = static_cast<std::size_t>(a);
    const cx twist = hat ? cx(1.0) / bases.wrap[sa] : bases.wrap[sa];
    const Mat D = d_tau_matrix(cfg, bases.grid.zeta[sa][0], tau, hat, twist);
    cx scale = 1.0;
    for (std::size_t r = 0; r < D.rows(); ++r) scale *= sup_norm_row(D, r);
    return determinant(D) / scale;
}

// --- exact diagonalization ---------------------------------------------------

SpectrumReport ed_spectrum(const ChainConfig& cfg, const SovBases& bases, std::uint64_t seed) {
    require_sov_triangular(cfg, "ed_spectrum");
    const SovGrid& g = bases.grid;
    const int N = cfg.N;
    const std::size_t P = cfg.dim();

    AnnulusRng rng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    SpectrumReport rep;
    EigResult eig;
    for (int attempt = 0;; ++attempt) {
        rep.lambda_ref = rng.draw(0.8, 1.25);
        eig = general_eig(transfer(cfg, rep.lambda_ref));
        if (!eig.degenerate) break;
        if (attempt >= 5)
            throw GenericityError("ed_spectrum: transfer spectrum not simple after 5 redraws");
    }
    rep.simple = true;

    // sample matrices at the grid points and at two independent check points
    std::vector<Mat> Tz;
    Tz.reserve(static_cast<std::size_t>(N));
    for (int a = 0; a < N; ++a)
        Tz.push_back(transfer(cfg, g.zeta[static_cast<std::size_t>(a)][0]));
    const cx lam_check1 = rng.draw(0.8, 1.25), lam_check2 = rng.draw(0.8, 1.25);
    const Mat Tc1 = transfer(cfg, lam_check1);
    const Mat Tc2 = transfer(cfg, lam_check2);

    rep.entries.resize(P);
    for (std::size_t k = 0; k < P; ++k) {
        SpectrumEntry& e = rep.entries[k];
        e.right.resize(P);
        e.left.resize(P);
        for (std::size_t i = 0; i < P; ++i) {
            e.right[i] = eig.right(i, k);
            e.left[i] = eig.left(k, i);
        }
        const cx wv = dot(e.left, e.right);
        auto rayleigh = [&](const Mat& T) { return dot(e.left, cyc6v::apply(T, e.right)) / wv; };
        e.vals.resize(static_cast<std::size_t>(N));
        for (int a = 0; a < N; ++a) e.vals[static_cast<std::size_t>(a)] = rayleigh(Tz[static_cast<std::size_t>(a)]);
        e.tau = tau_from_values(cfg, e.vals);

        double res = std::abs(e.tau(rep.lambda_ref) - eig.eigenvalues[k]);
        res = std::max(res, std::abs(e.tau(lam_check1) - rayleigh(Tc1)));
        res = std::max(res, std::abs(e.tau(lam_check2) - rayleigh(Tc2)));
        double scale = std::abs(eig.eigenvalues[k]) + std::abs(e.tau(lam_check1)) + 1.0;
        e.interp_residual = res / scale;

        e.det_condition.resize(static_cast<std::size_t>(N));
        for (int a = 0; a < N; ++a)
            e.det_condition[static_cast<std::size_t>(a)] = std::abs(d_tau_condition(cfg, bases, e.tau, a));
    }
    return rep;
}

// --- Q-tables ------------------------------------------------------------------

QTable q_table_from_kernel(const ChainConfig& cfg, const SovBases& bases,
                           const TauPolynomial& tau, bool hat) {
    const SovGrid& g = bases.grid;
    const int p = g.p, N = g.N;
    QTable out;
    out.q.assign(static_cast<std::size_t>(N), std::vector<cx>(static_cast<std::size_t>(p)));
    out.quality.resize(static_cast<std::size_t>(N));
    out.gap.resize(static_cast<std::size_t>(N));
    for (int a = 0; a < N; ++a) {
        const auto sa = static_cast<std::size_t>(a);
        const cx twist = hat ? cx(1.0) / bases.wrap[sa] : bases.wrap[sa];
        const Mat D = d_tau_matrix(cfg, g.zeta[sa][0], tau, hat, twist);
        const KernelResult kr = kernel_vector(D);
        out.quality[sa] = kr.quality;
        out.gap[sa] = kr.second_quality;
        if (std::abs(kr.vec[0]) == 0.0)
            throw std::runtime_error("q_table_from_kernel: vanishing leading component");
        for (int h = 1; h < p; ++h)
            out.q[sa][static_cast<std::size_t>(h)] = kr.vec[static_cast<std::size_t>(h)] / kr.vec[0];
        out.q[sa][0] = 1.0;
    }
    return out;
}

QTable q_table_from_recursion(const ChainConfig& cfg, const SovBases& bases,
                              const TauPolynomial& tau, bool hat) {
    const SovGrid& g = bases.grid;
    const int p = g.p, N = g.N;
    QTable out;
    out.q.assign(static_cast<std::size_t>(N), std::vector<cx>(static_cast<std::size_t>(p)));
    out.quality.assign(static_cast<std::size_t>(N), 0.0);
    out.gap.assign(static_cast<std::size_t>(N), 0.0);
    for (int a = 0; a < N; ++a) {
        const auto sa = static_cast<std::size_t>(a);
        std::vector<cx> q(static_cast<std::size_t>(p));
        if (!hat) {
            // the plain system is triangular from the bottom: the lowering
            // coefficient vanishes at zeta_a^{(0)}, so the three-term relation
            // solves upward from q^{(0)} = 1
            std::vector<cx> t(static_cast<std::size_t>(p));
            t[0] = 1.0;  // t^{(0)}; t^{(-1)} = 0
            for (int h = 1; h <= p - 1; ++h) {
                const cx zh1 = g.zeta[sa][static_cast<std::size_t>(h - 1)];
                cx val = tau(zh1) * t[static_cast<std::size_t>(h - 1)];
                if (h >= 2) {
                    const cx zh2 = g.zeta[sa][static_cast<std::size_t>(h - 2)];
                    val -= coeff_a(cfg, zh1) * coeff_a(cfg, 1.0 / zh2) *
                           t[static_cast<std::size_t>(h - 2)];
                }
                t[static_cast<std::size_t>(h)] = val;
            }
            cx denom = 1.0;
            q[0] = 1.0;
            for (int h = 1; h <= p - 1; ++h) {
                denom *= coeff_a(cfg, 1.0 / g.zeta[sa][static_cast<std::size_t>(h - 1)]);
                q[static_cast<std::size_t>(h)] = t[static_cast<std::size_t>(h)] / denom;
            }
        } else {
            // the dual system is triangular from the top: the raising
            // coefficient vanishes at 1/zeta_a^{(p-1)}, so it solves downward
            q[static_cast<std::size_t>(p - 1)] = 1.0;
            const cx ztop = g.zeta[sa][static_cast<std::size_t>(p - 1)];
            q[static_cast<std::size_t>(p - 2)] = tau(ztop) / coeff_d(cfg, ztop);
            for (int k = p - 2; k >= 1; --k) {
                const cx zk = g.zeta[sa][static_cast<std::size_t>(k)];
                q[static_cast<std::size_t>(k - 1)] =
                    (tau(zk) * q[static_cast<std::size_t>(k)] -
                     coeff_d(cfg, 1.0 / zk) * q[static_cast<std::size_t>(k + 1)]) /
                    coeff_d(cfg, zk);
            }
            const cx q0 = q[0];
            for (auto& v : q) v /= q0;
            q[0] = 1.0;
        }
        out.q[sa] = std::move(q);
    }
    return out;
}

Vec right_eigenstate(const SovBases& bases, const QTable& q) {
    return assemble_separate_right(bases, q.q);
}

Vec left_eigenstate(const SovBases& bases, const QTable& qhat) {
    return assemble_separate_left(bases, qhat.q);
}

// --- orthogonality -------------------------------------------------------------

OrthogonalityReport orthogonality_relation(const ChainConfig& cfg, const SovBases& bases,
                                           const TauPolynomial& tau, const QTable& qhat_tau,
                                           const TauPolynomial& tau2, const QTable& q_tau2) {
    const SovGrid& g = bases.grid;
    const int p = g.p, N = g.N;
    const auto sn = static_cast<std::size_t>(N);

    // coefficients of (tau - tau2) as a polynomial in L of degree N + 1,
    // recovered from N + 2 interpolation nodes
    const std::size_t m = sn + 2;
    std::vector<std::vector<cx>> V(m, std::vector<cx>(m));
    std::vector<cx> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        const cx L = cx(0.37 + 0.83 * static_cast<double>(i), 0.29 - 0.11 * static_cast<double>(i));
        cx pw = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            V[i][j] = pw;
            pw *= L;
        }
        rhs[i] = tau.at_big_lambda(L) - tau2.at_big_lambda(L);
    }
    const std::vector<cx> c = dense_solve(V, rhs);  // c[k] = coefficient of L^k

    // exact division by (L^2 - X^2): quotient x of degree N - 1, remainder r
    const cx X2 = tau.Xq * tau.Xq;
    std::vector<cx> quot(sn, cx(0.0));  // quot[k] = coefficient of L^k, k = 0..N-1
    for (int k = static_cast<int>(sn) - 1; k >= 0; --k) {
        const auto sk = static_cast<std::size_t>(k);
        cx v = c[sk + 2];
        if (sk + 2 < sn) v += X2 * quot[sk + 2];
        quot[sk] = v;
    }
    double cmax = 0.0;
    for (const auto& ck : c) cmax = std::max(cmax, std::abs(ck));
    cx r0 = c[0], r1 = c[1];
    if (sn >= 1) r0 += X2 * quot[0];
    if (sn >= 2) r1 += X2 * quot[1];
    OrthogonalityReport rep;
    rep.division_residual = (std::abs(r0) + std::abs(r1)) / std::max(cmax, 1e-300);

    // M_{a,b} = sum_h qhat_tau[a][h] q_tau2[a][h] (X_a^{(h)})^{b-1}
    std::vector<std::vector<cx>> M(sn, std::vector<cx>(sn, cx(0.0)));
    double mnorm = 0.0;
    for (std::size_t a = 0; a < sn; ++a) {
        for (int h = 0; h < p; ++h) {
            const auto sh = static_cast<std::size_t>(h);
            const cx w = qhat_tau.q[a][sh] * q_tau2.q[a][sh];
            cx pw = 1.0;
            for (std::size_t b = 0; b < sn; ++b) {
                M[a][b] += w * pw;
                pw *= g.X[a][sh];
            }
        }
        for (std::size_t b = 0; b < sn; ++b) mnorm += std::norm(M[a][b]);
    }
    mnorm = std::sqrt(mnorm);
    double xnorm = 0.0, res = 0.0;
    for (const auto& xb : quot) xnorm += std::norm(xb);
    xnorm = std::sqrt(xnorm);
    for (std::size_t a = 0; a < sn; ++a) {
        cx s = 0.0;
        for (std::size_t b = 0; b < sn; ++b) s += M[a][b] * quot[b];
        res = std::max(res, std::abs(s));
    }
    rep.system_residual = res / std::max(mnorm * xnorm, 1e-300);

    // direct overlap of the assembled states
    const Vec lhs = left_eigenstate(bases, qhat_tau);
    const Vec rhs_state = right_eigenstate(bases, q_tau2);
    rep.state_overlap = std::abs(dot(lhs, rhs_state)) / std::max(norm2(lhs) * norm2(rhs_state), 1e-300);
    return rep;
}

// --- Newton solver ---------------------------------------------------------------

NewtonResult newton_solve(const ChainConfig& cfg, const SovBases& bases,
                          std::vector<cx> vals, int max_iter, double tol) {
    const auto sn = static_cast<std::size_t>(cfg.N);
    if (vals.size() != sn) throw std::invalid_argument("newton_solve: wrong seed size");

    auto evaluate = [&](const std::vector<cx>& v) {
        const TauPolynomial t = tau_from_values(cfg, v);
        std::vector<cx> F(sn);
        for (int a = 0; a < cfg.N; ++a)
            F[static_cast<std::size_t>(a)] = d_tau_condition(cfg, bases, t, a);
        return F;
    };
    auto supnorm = [](const std::vector<cx>& F) {
        double s = 0.0;
        for (const auto& f : F) s = std::max(s, std::abs(f));
        return s;
    };

    NewtonResult out;
    std::vector<cx> F = evaluate(vals);
    out.residual = supnorm(F);
    for (int it = 0; it < max_iter; ++it) {
        if (out.residual < tol) {
            out.converged = true;
            break;
        }
        std::vector<std::vector<cx>> J(sn, std::vector<cx>(sn));
        for (std::size_t b = 0; b < sn; ++b) {
            const double step = 1e-6 * std::max(1.0, std::abs(vals[b]));
            std::vector<cx> vp = vals, vm = vals;
            vp[b] += step;
            vm[b] -= step;
            const std::vector<cx> Fp = evaluate(vp), Fm = evaluate(vm);
            for (std::size_t a = 0; a < sn; ++a) J[a][b] = (Fp[a] - Fm[a]) / (2.0 * step);
        }
        std::vector<cx> mF(sn);
        for (std::size_t a = 0; a < sn; ++a) mF[a] = -F[a];
        const std::vector<cx> delta = dense_solve(J, mF);
        for (std::size_t a = 0; a < sn; ++a) vals[a] += delta[a];
        F = evaluate(vals);
        out.residual = supnorm(F);
        out.iterations = it + 1;
    }
    if (out.residual < tol) out.converged = true;
    out.vals = std::move(vals);
    return out;
}

}  // namespace cyc6v
