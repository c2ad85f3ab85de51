#include "cyc6v/tq.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cyc6v/boundary.hpp"
#include "cyc6v/representation.hpp"

namespace cyc6v {

namespace {

using ECM = Eigen::MatrixXcd;
using ECV = Eigen::VectorXcd;

cx cpow_int(cx base, int k) {
    cx out = 1.0;
    for (int t = 0; t < k; ++t) out *= base;
    return out;
}

// lambda^2 + 1/lambda^2
cx big_l(cx lambda) {
    const cx l2 = lambda * lambda;
    return l2 + 1.0 / l2;
}

// q^{2N} (equals q^{-2(p-1)N} since q^p = 1)
cx q_2n(const ChainConfig& cfg) { return cfg.root.qp(2 * cfg.N); }

double sgn_n(const ChainConfig& cfg) { return (cfg.N % 2) ? -1.0 : 1.0; }

// cumulative gauge between the grid Q tables and the polynomial normalization:
// g_{a,h} = prod_{k<h} (q^{1/2} zeta_a^{(0)} q^k)
cx gauge_g(const ChainConfig& cfg, const SovGrid& g, int a, int h) {
    cx out = 1.0, qq = 1.0;
    const cx f = cfg.root.qh * g.zeta[static_cast<std::size_t>(a)][0];
    for (int k = 0; k < h; ++k) {
        out *= f * qq;
        qq *= cfg.root.q;
    }
    return out;
}

// Richardson/Neville extrapolation of f(point (1+eps)) to eps = 0 through
// three geometrically spaced eps values.
cx limit_at(const std::function<cx(cx)>& f, cx point) {
    const double eps[3] = {1e-4, 1e-5, 1e-6};
    cx v[3];
    for (int i = 0; i < 3; ++i) v[i] = f(point * (1.0 + eps[i]));
    // Neville over the nodes eps[i] evaluated at 0.
    cx t01 = (eps[0] * v[1] - eps[1] * v[0]) / (eps[0] - eps[1]);
    cx t12 = (eps[1] * v[2] - eps[2] * v[1]) / (eps[1] - eps[2]);
    return (eps[0] * t12 - eps[2] * t01) / (eps[0] - eps[2]);
}

}  // namespace

// --- scalar functions ---------------------------------------------------------

cx abar_fn(const ChainConfig& cfg, cx lambda) {
    return lambda / cfg.root.qh * coeff_a(cfg, lambda);
}

cx xbar_fn(const ChainConfig& cfg, cx lambda) {
    const cx l2 = lambda * lambda;
    return (l2 - 1.0 / l2) * abar_fn(cfg, lambda);
}

cx abar_inf(const ChainConfig& cfg) {
    const auto& b = cfg.boundary;
    cx prod_bc = 1.0;
    for (const auto& s : cfg.sites) prod_bc *= s.b * s.c;
    const cx num = b.alpha_m * b.beta_m * b.zeta_p * b.kappa_m * prod_bc;
    const cx den = cfg.root.qp(1 + cfg.N) * (b.zeta_p - 1.0 / b.zeta_p) *
                   (b.zeta_m - 1.0 / b.zeta_m);
    return sgn_n(cfg) * num / den;
}

cx z_fn(const RootOfUnity& root, cx lambda) {
    const cx l2p = cpow_int(lambda, 2 * root.p);
    return l2p + 1.0 / l2p;
}

cx f_grid(const ChainConfig& cfg, const SovGrid& g, cx lambda) {
    const int p = cfg.root.p;
    const cx lp = cpow_int(lambda, p);
    cx out = 1.0;
    for (int b = 0; b < 2 * g.N; ++b) {
        const cx zp = cpow_int(g.zeta[static_cast<std::size_t>(b)][0], p);
        out *= (lp / zp - zp / lp);
    }
    return out;
}

cx dbar_det(const ChainConfig& cfg, const TauPolynomial& tau, cx lambda) {
    const int p = cfg.root.p;
    Mat D(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    cx lk = lambda;
    for (int r = 0; r < p; ++r) {
        const auto ru = static_cast<std::size_t>(r);
        D(ru, ru) = tau(lk);
        D(ru, static_cast<std::size_t>((r + p - 1) % p)) -= abar_fn(cfg, lk);
        D(ru, static_cast<std::size_t>((r + 1) % p)) -= abar_fn(cfg, 1.0 / lk);
        lk *= cfg.root.q;
    }
    return determinant(D);
}

// --- functional equation in Z ---------------------------------------------------

FunctionalCheck dbar_det_in_z(const ChainConfig& cfg, const SovGrid& g,
                              const TauPolynomial& tau, std::uint64_t seed) {
    FunctionalCheck out;
    const int p = cfg.root.p, N = cfg.N;
    const int M = N + 3;  // number of coefficients (degree N+2)
    AnnulusRng rng(seed);

    // least-squares fit at N+4 sample points
    const int nS = N + 4;
    ECM V(nS, M);
    ECV rhs(nS);
    for (int i = 0; i < nS; ++i) {
        const cx l = rng.draw(0.7, 1.4);
        const cx Z = z_fn(cfg.root, l);
        cx pw = 1.0;
        for (int j = 0; j < M; ++j) {
            V(i, j) = pw;
            pw *= Z;
        }
        rhs(i) = dbar_det(cfg, tau, l);
    }
    ECV cz = V.colPivHouseholderQr().solve(rhs);
    out.fit.resize(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) out.fit[static_cast<std::size_t>(j)] = cz(j);

    auto fit_at = [&](cx Z) {
        cx v = 0.0, pw = 1.0;
        for (int j = 0; j < M; ++j) {
            v += cz(j) * pw;
            pw *= Z;
        }
        return v;
    };

    // held-out residual at 5 fresh points + inversion symmetry
    for (int i = 0; i < 5; ++i) {
        const cx l = rng.draw(0.7, 1.4);
        const cx dv = dbar_det(cfg, tau, l);
        out.fit_residual =
            std::max(out.fit_residual, std::abs(fit_at(z_fn(cfg.root, l)) - dv) / std::abs(dv));
        out.inversion_residual =
            std::max(out.inversion_residual,
                     std::abs(dbar_det(cfg, tau, 1.0 / l) - dv) / std::abs(dv));
    }

    // limit values at the divergent-entry points; Z(q^{1/2}) = 2, Z(iq^{1/2}) = -2
    auto det_fn = [&](cx l) { return dbar_det(cfg, tau, l); };
    const cx qh = cfg.root.qh;
    const cx det_qh = fit_at(cx(2.0)), det_iqh = fit_at(cx(-2.0));
    const cx rich_qh = limit_at(det_fn, qh);
    const cx rich_iqh = limit_at(det_fn, cx(0.0, 1.0) * qh);
    // normalize by the overall polynomial scale at |Z| = 2: the limit values
    // themselves may vanish for particular eigenvalues
    double zscale = 0.0;
    {
        double pw = 1.0;
        for (int j = 0; j < M; ++j) {
            zscale += std::abs(cz(j)) * pw;
            pw *= 2.0;
        }
    }
    out.extrapolation_residual =
        std::max(std::abs(det_qh - rich_qh), std::abs(det_iqh - rich_iqh)) / zscale;

    // asymptotic coefficient
    const cx tip = cpow_int(tau.tau_inf, p);
    const cx aip = cpow_int(abar_inf(cfg), p);
    out.asymptote_residual = std::abs(cz(M - 1) - (tip - aip)) / std::abs(tip - aip);

    // three-term functional identity at 10 random lambda
    const cx f_qh = f_grid(cfg, g, qh), f_iqh = f_grid(cfg, g, cx(0.0, 1.0) * qh);
    for (int i = 0; i < 10; ++i) {
        const cx l = rng.draw(0.7, 1.4);
        const cx lp = cpow_int(l, p);
        const cx fl = f_grid(cfg, g, l);
        const cx t1 = fl * det_qh * (lp + 1.0 / lp) * (lp + 1.0 / lp) / (4.0 * f_qh);
        const cx t2 = fl * det_iqh * (lp - 1.0 / lp) * (lp - 1.0 / lp) / (-4.0 * f_iqh);
        const cx t3 = (tip - aip) * fl * (lp * lp - 1.0 / (lp * lp)) * (lp * lp - 1.0 / (lp * lp));
        const cx lhs = dbar_det(cfg, tau, l);
        const double mx = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), std::abs(t3)});
        out.equation_residual = std::max(out.equation_residual, std::abs(lhs - t1 - t2 - t3) / mx);
    }
    return out;
}

// --- spectral Q polynomial -------------------------------------------------------

cx QPolynomial::at_big_l(cx L) const {
    cx v = 0.0, pw = 1.0;
    for (const cx& c : coeffs) {
        v += c * pw;
        pw *= L;
    }
    return v;
}

cx QPolynomial::operator()(cx lambda) const { return at_big_l(big_l(lambda)); }

QPolynomial q_polynomial_from_tau(const ChainConfig& cfg, const SovBases& bases,
                                  const TauPolynomial& tau, cx free_node, double sign) {
    const SovGrid& g = bases.grid;
    const int p = cfg.root.p, N = cfg.N;
    const int Mn = (p - 1) * N + 1;
    QPolynomial out;

    // interpolation nodes: for each cycle a the abscissas h = 0..p-2, plus one
    // free node fixing the normalization Q(free) = 1.
    std::vector<cx> node_w(static_cast<std::size_t>(Mn));
    for (int n = 0; n < N; ++n)
        for (int h = 0; h <= p - 2; ++h)
            node_w[static_cast<std::size_t>(n * (p - 1) + h)] =
                g.X[static_cast<std::size_t>(n)][static_cast<std::size_t>(h)];
    node_w[static_cast<std::size_t>(Mn - 1)] = big_l(free_node);

    // three-term recursion along each cycle
    std::vector<std::vector<cx>> C(static_cast<std::size_t>(N),
                                   std::vector<cx>(static_cast<std::size_t>(p)));
    for (int a = 0; a < N; ++a) {
        const auto au = static_cast<std::size_t>(a);
        C[au][0] = 1.0;
        C[au][1] = tau(g.zeta[au][0]) / (sign * abar_fn(cfg, 1.0 / g.zeta[au][0]));
        for (int h = 1; h <= p - 2; ++h) {
            const auto hu = static_cast<std::size_t>(h);
            const cx zh = g.zeta[au][hu];
            C[au][hu + 1] = tau(zh) / (sign * abar_fn(cfg, 1.0 / zh)) * C[au][hu] -
                            abar_fn(cfg, zh) / abar_fn(cfg, 1.0 / zh) * C[au][hu - 1];
        }
    }

    auto lagrange = [&](int j, cx L) {
        cx v = 1.0;
        for (int c = 0; c < Mn; ++c)
            if (c != j)
                v *= (L - node_w[static_cast<std::size_t>(c)]) /
                     (node_w[static_cast<std::size_t>(j)] - node_w[static_cast<std::size_t>(c)]);
        return v;
    };

    // N x N closure: the polynomial through the Mn nodes must reproduce the
    // h = p-1 values of each cycle.
    ECM A = ECM::Zero(N, N);
    ECV r(N);
    for (int a = 0; a < N; ++a) {
        const auto au = static_cast<std::size_t>(a);
        const cx XA = g.X[au][static_cast<std::size_t>(p - 1)];
        A(a, a) += C[au][static_cast<std::size_t>(p - 1)];
        for (int n = 0; n < N; ++n)
            for (int h = 1; h <= p - 1; ++h)
                A(a, n) -= lagrange(n * (p - 1) + h - 1, XA) *
                           C[static_cast<std::size_t>(n)][static_cast<std::size_t>(h - 1)];
        r(a) = lagrange(Mn - 1, XA);
    }
    Eigen::JacobiSVD<ECM> asvd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.system_quality = asvd.singularValues()(N - 1) / asvd.singularValues()(0);
    if (out.system_quality < 1e-10) out.exceptional = true;
    ECV Q0 = A.colPivHouseholderQr().solve(r);

    // node values (normalization Q(free_node) = 1)
    std::vector<cx> node_q(static_cast<std::size_t>(Mn));
    for (int n = 0; n < N; ++n)
        for (int h = 1; h <= p - 1; ++h)
            node_q[static_cast<std::size_t>(n * (p - 1) + h - 1)] =
                C[static_cast<std::size_t>(n)][static_cast<std::size_t>(h - 1)] * Q0(n);
    node_q[static_cast<std::size_t>(Mn - 1)] = 1.0;
    // Q(zeta_a^{(0)}) must not vanish for the grid tables to be meaningful.
    for (int n = 0; n < N; ++n)
        if (std::abs(Q0(n)) < 1e-13)
            throw GenericityError("q_polynomial_from_tau: vanishing cycle normalization");

    // coefficient form via the node Vandermonde
    ECM Vw(Mn, Mn);
    ECV qv(Mn);
    for (int i = 0; i < Mn; ++i) {
        cx pw = 1.0;
        for (int j = 0; j < Mn; ++j) {
            Vw(i, j) = pw;
            pw *= node_w[static_cast<std::size_t>(i)];
        }
        qv(i) = node_q[static_cast<std::size_t>(i)];
    }
    ECV cf = Vw.colPivHouseholderQr().solve(qv);
    out.coeffs.resize(static_cast<std::size_t>(Mn));
    double cmax = 0.0;
    for (int j = 0; j < Mn; ++j) {
        out.coeffs[static_cast<std::size_t>(j)] = cf(j);
        cmax = std::max(cmax, std::abs(cf(j)));
    }
    out.nodes_w = node_w;
    out.nodes_q = node_q;
    out.q_inf = cf(Mn - 1);
    out.q_0 = out.at_big_l(-(cfg.root.q + 1.0 / cfg.root.q));

    // effective degree and roots
    int deg = Mn - 1;
    while (deg > 0 && std::abs(out.coeffs[static_cast<std::size_t>(deg)]) < 1e-10 * cmax) --deg;
    out.degree = deg;
    if (deg < Mn - 1) out.exceptional = true;
    if (deg > 0) {
        ECM comp = ECM::Zero(deg, deg);
        const cx lead = out.coeffs[static_cast<std::size_t>(deg)];
        for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -out.coeffs[static_cast<std::size_t>(i)] / lead;
        Eigen::ComplexEigenSolver<ECM> es(comp);
        for (int i = 0; i < deg; ++i) {
            const cx L = es.eigenvalues()(i);
            out.roots_L.push_back(L);
            out.roots_lambda.push_back(std::sqrt((L + std::sqrt(L * L - 4.0)) / 2.0));
            out.root_residual = std::max(out.root_residual, std::abs(out.at_big_l(L)) / cmax);
        }
    }
    for (int i = 0; i < Mn; ++i)
        out.node_residual = std::max(
            out.node_residual,
            std::abs(out.at_big_l(node_w[static_cast<std::size_t>(i)]) -
                     node_q[static_cast<std::size_t>(i)]) /
                std::max(1.0, std::abs(node_q[static_cast<std::size_t>(i)])));
    return out;
}

// --- inhomogeneous TQ relation ---------------------------------------------------

cx g_support_point(const ChainConfig& cfg) {
    return (cfg.N % 2) ? cfg.root.qh : cx(0.0, 1.0) * cfg.root.qh;
}

cx g_inhomogeneity(const ChainConfig& cfg, const SovGrid& g, cx lambda, cx x, cx y) {
    const cx q = cfg.root.q;
    const cx Xq = q + 1.0 / q;
    const cx L = big_l(lambda);
    const cx xhat = (tau_infinity(cfg) - q_2n(cfg) * abar_inf(cfg)) * x;
    const cx pt = g_support_point(cfg);
    const cx q22 = q * q + 1.0 / (q * q);
    // point-term constant and support sign, calibrated against the spectrum
    const cx Cpt = (cfg.N % 2) ? cx(-1.0, 0.0) / q22 : cx(0.0, 1.0) / q22;
    const double s = (cfg.N % 2) ? 1.0 : -1.0;
    const cx point = Cpt * coeff_a(cfg, pt) * y / f_grid(cfg, g, pt) * (L + s * Xq);
    return f_grid(cfg, g, lambda) * (xhat * (L * L - Xq * Xq) + point);
}

double tq_residual(const ChainConfig& cfg, const SovGrid& g, const TauPolynomial& tau,
                   const QPolynomial& Q, std::uint64_t seed) {
    AnnulusRng rng(seed);
    const cx q = cfg.root.q;
    const cx y = Q(g_support_point(cfg));
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        cx l = rng.draw(0.7, 1.4);
        // stay away from the poles of the coefficient functions
        while (std::abs(l * l - 1.0 / (l * l)) < 0.1 || std::abs(l * l * q * q - 1.0) < 0.05 ||
               std::abs(l * l / (q * q) - 1.0) < 0.05)
            l = rng.draw(0.7, 1.4);
        const cx lhs = tau(l) * Q(l);
        const cx t1 = abar_fn(cfg, l) * Q(l / q);
        const cx t2 = abar_fn(cfg, 1.0 / l) * Q(l * q);
        const cx G = g_inhomogeneity(cfg, g, l, Q.q_inf, y);
        const double mx = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), std::abs(G)});
        worst = std::max(worst, std::abs(lhs - t1 - t2 - G) / mx);
    }
    return worst;
}

// --- Bethe-form eigenstates ------------------------------------------------------

Mat b_minus_normalized(const ChainConfig& cfg, cx lambda) {
    const auto& b = cfg.boundary;
    cx prod_ab = 1.0;
    for (const auto& s : cfg.sites) prod_ab *= s.alpha * s.beta;
    const cx l2 = lambda * lambda;
    const cx den = b.kappa_m * std::exp(b.tau_m) * (l2 / cfg.root.q - cfg.root.q / l2) * prod_ab;
    const cx scale = (b.zeta_m - 1.0 / b.zeta_m) / den;
    Mat B = u_minus(cfg, lambda).B;
    B *= scale;
    return B;
}

BetheState bethe_state(const ChainConfig& cfg, const SovBases& bases,
                       const SpectrumEntry& entry, const QPolynomial& Q) {
    const SovGrid& g = bases.grid;
    const int p = cfg.root.p, N = cfg.N;
    BetheState out;
    out.lambdas = Q.roots_lambda;

    // right reference: coefficient table 1/g_{a,h}
    SeparateTable beta(static_cast<std::size_t>(N), std::vector<cx>(static_cast<std::size_t>(p)));
    // left reference: same gauge times the accumulated a/d ratios
    SeparateTable alpha(static_cast<std::size_t>(N), std::vector<cx>(static_cast<std::size_t>(p)));
    for (int a = 0; a < N; ++a) {
        const auto au = static_cast<std::size_t>(a);
        cx acc = 1.0;
        for (int h = 0; h < p; ++h) {
            const cx gh = gauge_g(cfg, g, a, h);
            beta[au][static_cast<std::size_t>(h)] = 1.0 / gh;
            alpha[au][static_cast<std::size_t>(h)] = acc / gh;
            const cx zinv = 1.0 / g.zeta[au][static_cast<std::size_t>(h)];
            acc *= coeff_a(cfg, zinv) / coeff_d(cfg, zinv);
        }
    }
    Vec rv = assemble_separate_right(bases, beta);
    Vec lv = assemble_separate_left(bases, alpha);
    for (const cx& lb : out.lambdas) {
        const Mat B = b_minus_normalized(cfg, lb);
        rv = cyc6v::apply(B, rv);
        lv = cyc6v::apply_left(lv, B);
    }
    out.right = rv;
    out.left = lv;

    auto collin = [](const Vec& u, const Vec& v) {
        cx s = 0.0;
        double nu = 0.0, nv = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            s += std::conj(u[i]) * v[i];
            nu += std::norm(u[i]);
            nv += std::norm(v[i]);
        }
        return std::abs(s) / std::sqrt(nu * nv);
    };
    out.overlap_right = collin(rv, entry.right);
    out.overlap_left = collin(lv, entry.left);
    return out;
}

// --- homogeneous special manifold -------------------------------------------------

namespace {

// Direct coefficient extraction for a two-term (homogeneous) TQ relation:
// the null vector of tau(l) Q(l) - sign [abar(l) Q(l/q) + abar(1/l) Q(lq)]
// sampled over random points.  Returns a QPolynomial in coefficient form.
QPolynomial hom_q_polynomial(const ChainConfig& cfg, const TauPolynomial& tau, double sign,
                             std::uint64_t seed) {
    const cx q = cfg.root.q;
    const int D = (cfg.root.p - 1) * cfg.N;
    const int nS = 4 * (D + 2);
    ECM A(nS, D + 1);
    AnnulusRng rng(seed);
    for (int r = 0; r < nS; ++r) {
        cx l = rng.draw(0.7, 1.4);
        while (std::abs(l * l - 1.0 / (l * l)) < 0.1) l = rng.draw(0.7, 1.4);
        const cx L0 = big_l(l), Lm = big_l(l / q), Lp = big_l(l * q);
        const cx t = tau(l), am = sign * abar_fn(cfg, l), ap = sign * abar_fn(cfg, 1.0 / l);
        cx P0 = 1.0, Pm = 1.0, Pp = 1.0;
        for (int k = 0; k <= D; ++k) {
            A(r, k) = t * P0 - am * Pm - ap * Pp;
            P0 *= L0;
            Pm *= Lm;
            Pp *= Lp;
        }
    }
    Eigen::JacobiSVD<ECM> svd(A, Eigen::ComputeThinV);
    const ECV v = svd.matrixV().col(D);
    QPolynomial out;
    out.system_quality = svd.singularValues()(D) / svd.singularValues()(0);
    out.coeffs.resize(static_cast<std::size_t>(D) + 1);
    double cmax = 0.0;
    for (int k = 0; k <= D; ++k) {
        out.coeffs[static_cast<std::size_t>(k)] = v(k);
        cmax = std::max(cmax, std::abs(v(k)));
    }
    int deg = D;
    while (deg > 0 && std::abs(out.coeffs[static_cast<std::size_t>(deg)]) < 1e-8 * cmax) --deg;
    out.degree = deg;
    out.exceptional = deg < D;
    out.q_inf = out.coeffs[static_cast<std::size_t>(deg)];
    out.q_0 = out.at_big_l(-(q + 1.0 / q));
    if (deg > 0) {
        ECM comp = ECM::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i)
            comp(i, deg - 1) = -out.coeffs[static_cast<std::size_t>(i)] / out.q_inf;
        Eigen::ComplexEigenSolver<ECM> es(comp);
        for (int i = 0; i < deg; ++i) {
            const cx L = es.eigenvalues()(i);
            out.roots_L.push_back(L);
            out.roots_lambda.push_back(std::sqrt((L + std::sqrt(L * L - 4.0)) / 2.0));
            out.root_residual = std::max(out.root_residual, std::abs(out.at_big_l(L)) / cmax);
        }
    }
    return out;
}

}  // namespace

HomogeneousReport homogeneous_case(int p, int p_prime, int N, std::uint64_t seed,
                                   int z_plus) {
    if (z_plus != 1 && z_plus != -1)
        throw std::invalid_argument("homogeneous_case: z_plus must be +1 or -1");
    HomogeneousReport out;
    ChainConfig cfg = random_generic_config(p, p_prime, N, seed, SampleMode::sov_double).first;
    cfg.boundary.triangular_plus = true;
    auto& b = cfg.boundary;
    b.zeta_p = cx(0.0, 1.0) * static_cast<double>(z_plus);
    // solve kappa_+ from tau_inf = (-1)^N q^{2N} abar_inf (the asymptotic
    // prefactor of the inhomogeneity vanishes identically)
    cx prod_ab = 1.0, prod_bc = 1.0;
    for (const auto& s : cfg.sites) {
        prod_ab *= s.alpha * s.beta;
        prod_bc *= s.b * s.c;
    }
    b.kappa_p = cfg.root.qp(((N - 1) % (2 * p) + 2 * p) % (2 * p)) * b.zeta_p * b.alpha_m *
                b.beta_m * (prod_bc / prod_ab) * std::exp(b.tau_p - b.tau_m);
    out.cfg = cfg;

    const cx q = cfg.root.q, qh = cfg.root.qh;
    const cx iqh = cx(0.0, 1.0) * qh;
    const double sgn = sgn_n(cfg);
    out.a_support = std::abs(coeff_a(cfg, iqh));
    const cx ai = abar_inf(cfg);
    out.manifold_residual = std::abs(tau_infinity(cfg) - sgn * q_2n(cfg) * ai) / std::abs(ai);

    // the transfer matrix vanishes identically at the support point
    {
        const Mat Tz = transfer(cfg, iqh);
        const Mat Tr = transfer(cfg, cx(1.1, 0.23));
        double nz = 0.0, nr = 0.0;
        for (std::size_t i = 0; i < Tz.rows(); ++i)
            for (std::size_t j = 0; j < Tz.cols(); ++j) {
                nz = std::max(nz, std::abs(Tz(i, j)));
                nr = std::max(nr, std::abs(Tr(i, j)));
            }
        out.transfer_zero = nz / nr;
    }

    SovBases bases = build_sov_bases(cfg);
    SpectrumReport spec = ed_spectrum(cfg, bases);
    out.simple = spec.simple;
    const SovGrid& g = bases.grid;
    const cx Xq = q + 1.0 / q;
    AnnulusRng rng(seed + 0x9e3779b9ull);

    for (const auto& e : spec.entries) {
        QPolynomial Q = hom_q_polynomial(cfg, e.tau, sgn, 991 + seed);
        out.max_degree = std::max(out.max_degree, Q.degree);

        // homogeneous TQ over random lambda
        for (int i = 0; i < 10; ++i) {
            cx l = rng.draw(0.7, 1.4);
            while (std::abs(l * l - 1.0 / (l * l)) < 0.1) l = rng.draw(0.7, 1.4);
            const cx lhs = e.tau(l) * Q(l);
            const cx t1 = sgn * abar_fn(cfg, l) * Q(l / q);
            const cx t2 = sgn * abar_fn(cfg, 1.0 / l) * Q(l * q);
            const double mx = std::max({std::abs(lhs), std::abs(t1), std::abs(t2)});
            out.hom_tq_max = std::max(out.hom_tq_max, std::abs(lhs - t1 - t2) / mx);
        }

        // the inhomogeneity vanishes identically in its arguments: both the
        // asymptotic prefactor and the point-term factor a(i q^{1/2}) are zero
        for (int i = 0; i < 4; ++i) {
            const cx l = rng.draw(0.7, 1.4);
            const cx x = rng.draw(0.5, 2.0), y = rng.draw(0.5, 2.0);
            const cx L = big_l(l);
            const cx xhat = (tau_infinity(cfg) - sgn * q_2n(cfg) * ai) * x;
            const cx Cpt = (N % 2) ? -cx(0.0, 1.0) / Xq : cx(0.0, 1.0) / (q * q + 1.0 / (q * q));
            const cx point = Cpt * coeff_a(cfg, iqh) * y / f_grid(cfg, g, iqh) * (L - Xq);
            const cx G = f_grid(cfg, g, l) * (xhat * (L * L - Xq * Xq) + point);
            const double scale =
                std::abs(f_grid(cfg, g, l)) *
                (std::abs(tau_infinity(cfg) * x) * std::abs(L * L - Xq * Xq) +
                 std::abs(y * (L - Xq)));
            out.g_residual_max = std::max(out.g_residual_max, std::abs(G) / scale);
        }

        // ordinary two-term equations at every root; normalized by the
        // coefficient-level magnitude of each term so that roots whose whole
        // q-orbit lies in the root set (both terms at roundoff) do not divide
        // noise by noise
        for (const cx& lb : Q.roots_lambda) {
            const cx t1 = abar_fn(cfg, lb) * Q(lb / q);
            const cx t2 = abar_fn(cfg, 1.0 / lb) * Q(lb * q);
            double qs = 0.0;
            {
                const double Lm = std::max(std::abs(big_l(lb / q)), std::abs(big_l(lb * q)));
                double pw = 1.0;
                for (const cx& c : Q.coeffs) { qs += std::abs(c) * pw; pw *= Lm; }
            }
            const double scale =
                (std::abs(abar_fn(cfg, lb)) + std::abs(abar_fn(cfg, 1.0 / lb))) * qs;
            out.bethe_eq_max = std::max(out.bethe_eq_max, std::abs(t1 + t2) / scale);
        }
    }
    return out;
}

}  // namespace cyc6v
