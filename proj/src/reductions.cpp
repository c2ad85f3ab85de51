#include "cyc6v/reductions.hpp"

#include <Eigen/Dense>

#include "cyc6v/linalg.hpp"
#include "cyc6v/representation.hpp"

namespace cyc6v {

namespace {

const cx I_UNIT(0.0, 1.0);

double fro(const Mat& A) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) s += std::norm(A(i, j));
    return std::sqrt(s);
}

double aux_fro(const AuxOperator& X) {
    return std::sqrt(fro(X.A) * fro(X.A) + fro(X.B) * fro(X.B) + fro(X.C) * fro(X.C) +
                     fro(X.D) * fro(X.D));
}

AuxOperator aux_diff(const AuxOperator& X, const AuxOperator& Y, cx s) {
    AuxOperator D;
    D.A = X.A + (-s) * Y.A;
    D.B = X.B + (-s) * Y.B;
    D.C = X.C + (-s) * Y.C;
    D.D = X.D + (-s) * Y.D;
    return D;
}

// X sigma^x in the auxiliary space: swap the block columns.
AuxOperator aux_sigma_x_right(const AuxOperator& X) {
    AuxOperator Y;
    Y.A = X.B;
    Y.B = X.A;
    Y.C = X.D;
    Y.D = X.C;
    return Y;
}

// sigma^x X in the auxiliary space: swap the block rows.
AuxOperator aux_sigma_x_left(const AuxOperator& X) {
    AuxOperator Y;
    Y.A = X.C;
    Y.B = X.D;
    Y.C = X.A;
    Y.D = X.B;
    return Y;
}

AuxOperator aux_negate(const AuxOperator& X) {
    AuxOperator Y = X;
    Y.A *= -1.0;
    Y.B *= -1.0;
    Y.C *= -1.0;
    Y.D *= -1.0;
    return Y;
}

Mat diag_inverse(const Mat& V) {
    Mat R(V.rows(), V.cols());
    for (std::size_t i = 0; i < V.rows(); ++i) R(i, i) = 1.0 / V(i, i);
    return R;
}

}  // namespace

// --- lattice sine-Gordon ------------------------------------------------------

SineGordonChain random_sg_chain(int N, std::uint64_t seed) {
    AnnulusRng rng(seed);
    SineGordonChain sg;
    sg.x = N % 2;
    for (int n = 1; n <= N; ++n)
        sg.sites.push_back({rng.draw(), rng.draw(), rng.draw(), rng.draw()});
    sg.boundary.zeta_m = rng.draw();
    sg.boundary.kappa_m = rng.draw();
    sg.boundary.tau_m = rng.draw();
    sg.boundary.zeta_p = rng.draw();
    sg.boundary.kappa_p = rng.draw();
    sg.boundary.tau_p = rng.draw();
    return sg;
}

int sg_exponent(int x, int n) { return (1 - 2 * x) * (1 - 2 * (n % 2)); }

ChainConfig sg_to_chain(int p, int p_prime, const SineGordonChain& sg) {
    ChainConfig cfg;
    cfg.root = root_of_unity(p, p_prime);
    cfg.N = static_cast<int>(sg.sites.size());
    for (int n = 1; n <= cfg.N; ++n) {
        const auto& s = sg.sites[static_cast<std::size_t>(n - 1)];
        const int e = sg_exponent(sg.x, n);
        const cx rs = e == 1 ? s.r * s.s : 1.0 / (s.r * s.s);
        const cx sr = e == 1 ? s.s / s.r : s.r / s.s;
        const cx re = e == 1 ? s.r : 1.0 / s.r;
        const cx a = s.kappa * s.kappa * rs;
        const cx b = sr;
        const cx c = 1.0 / sr;
        const cx d = s.kappa * s.kappa / rs;
        const cx alpha = s.kappa * re / (I_UNIT * s.xi);
        const cx beta = s.kappa * s.xi / (I_UNIT * re);
        cfg.sites.push_back(derive_site(cfg.root, alpha, beta, a, b, c, d));
        cfg.j.push_back(0);
    }
    // boundary map: the minus parameters flip with (-1)^x, the plus ones are
    // untouched
    cfg.boundary = sg.boundary;
    if (sg.x == 1) {
        cfg.boundary.tau_m = -sg.boundary.tau_m;
        cfg.boundary.kappa_m = -sg.boundary.kappa_m;
        cfg.boundary.zeta_m = 1.0 / sg.boundary.zeta_m;
    }
    solve_alpha_beta(cfg.boundary);
    cfg.a0 = 1.0;
    cfg.mode = SampleMode::general;
    return cfg;
}

AuxOperator sg_lax(const RootOfUnity& root, const Mat& U, const Mat& V, cx lambda, cx kappa,
                   cx r, cx s) {
    if (lambda == cx(0.0)) throw std::invalid_argument("sg_lax: pole at lambda = 0");
    const cx qh = root.qh;
    const Mat Ui = U.transpose();  // Weyl shifts are real permutations
    const Mat Vi = diag_inverse(V);
    AuxOperator L;
    L.A = U * ((kappa * kappa * r * s / qh) * V + (qh * s / r) * Vi);
    L.B = (kappa / I_UNIT) * ((lambda * r) * V + (-1.0 / (lambda * r)) * Vi);
    L.C = (kappa / I_UNIT) * ((lambda / r) * Vi + (-r / lambda) * V);
    L.D = Ui * ((qh * r / s) * V + (kappa * kappa / (s * r * qh)) * Vi);
    return L;
}

AuxOperator sg_monodromy(int p, int p_prime, const SineGordonChain& sg, cx lambda) {
    const RootOfUnity root = root_of_unity(p, p_prime);
    const int N = static_cast<int>(sg.sites.size());
    auto [u, v] = weyl_pair(root);
    auto site_lax = [&](int n) {
        const auto& s = sg.sites[static_cast<std::size_t>(n - 1)];
        const int e = sg_exponent(sg.x, n);
        const Mat Un = embed(e == 1 ? u : u.transpose(), n, N);
        const Mat Vn = embed(e == 1 ? v : diag_inverse(v), n, N);
        return sg_lax(root, Un, Vn, lambda / (root.qh * s.xi), s.kappa, s.r, s.s);
    };
    AuxOperator M = site_lax(N);
    for (int n = N - 1; n >= 1; --n) M = aux_mul(M, site_lax(n));
    return M;
}

double sg_single_site_residual(int p, int p_prime, cx kappa, cx r, cx s, cx xi, cx lambda) {
    if (kappa == cx(0.0) || r == cx(0.0) || s == cx(0.0) || xi == cx(0.0))
        throw std::invalid_argument("sg_single_site_residual: zero parameter");
    // direct (exponent +1) parameter map
    ChainConfig cfg;
    cfg.root = root_of_unity(p, p_prime);
    cfg.N = 1;
    cfg.sites.push_back(derive_site(cfg.root, -I_UNIT * kappa * r / xi, -I_UNIT * kappa * xi / r,
                                    kappa * kappa * r * s, s / r, r / s,
                                    kappa * kappa / (r * s)));
    cfg.j.push_back(0);
    cfg.a0 = 1.0;

    auto [u, v] = weyl_pair(cfg.root);
    const AuxOperator lhs = sg_lax(cfg.root, u, v, lambda / xi, kappa, r, s);
    const AuxOperator rhs = aux_sigma_x_right(lax(cfg, lambda, 1));
    return aux_fro(aux_diff(lhs, rhs, 1.0)) / aux_fro(rhs);
}

SgReport sg_identities(int p, int p_prime, const SineGordonChain& sg, cx lambda) {
    for (const auto& s : sg.sites)
        if (s.kappa == cx(0.0) || s.r == cx(0.0) || s.s == cx(0.0) || s.xi == cx(0.0))
            throw std::invalid_argument("sg_identities: zero parameter");
    const ChainConfig cfg = sg_to_chain(p, p_prime, sg);
    const RootOfUnity& root = cfg.root;
    const int N = cfg.N;
    SgReport rep;

    // monodromy identity M^sG = M (sigma^x)^x
    const AuxOperator Msg = sg_monodromy(p, p_prime, sg, lambda);
    const AuxOperator M = monodromy(cfg, lambda);
    const AuxOperator rhsM = sg.x == 1 ? aux_sigma_x_right(M) : M;
    rep.monodromy_residual = aux_fro(aux_diff(Msg, rhsM, 1.0)) / aux_fro(rhsM);

    // hat monodromy: Mhat^sG = (-sigma^x)^x Mhat
    const double hs = (N % 2 == 0) ? 1.0 : -1.0;
    const AuxOperator Msg_inv = sg_monodromy(p, p_prime, sg, 1.0 / lambda);
    AuxOperator Hsg;
    Hsg.A = hs * Msg_inv.D;
    Hsg.B = (-hs) * Msg_inv.B;
    Hsg.C = (-hs) * Msg_inv.C;
    Hsg.D = hs * Msg_inv.A;
    const AuxOperator H = hat_monodromy(cfg, lambda);
    const AuxOperator rhsH = sg.x == 1 ? aux_negate(aux_sigma_x_left(H)) : H;
    rep.hat_residual = aux_fro(aux_diff(Hsg, rhsH, 1.0)) / aux_fro(rhsH);

    // boundary monodromy and transfer built entirely from the sG side
    const Mat Kmsg =
        k_matrix(root, lambda, sg.boundary.zeta_m, sg.boundary.kappa_m, sg.boundary.tau_m);
    const AuxOperator Usg = aux_mul(Msg, aux_mul_scalar_left(Kmsg, Hsg));
    const AuxOperator U = u_minus(cfg, lambda);
    const double rp = aux_fro(aux_diff(Usg, U, 1.0));
    const double rm = aux_fro(aux_diff(Usg, U, -1.0));
    rep.boundary_sign = rp <= rm ? 1.0 : -1.0;
    rep.u_minus_residual = std::min(rp, rm) / aux_fro(U);

    const Mat Kpsg = k_matrix(root, lambda * root.q, sg.boundary.zeta_p, sg.boundary.kappa_p,
                              sg.boundary.tau_p);
    Mat Tsg = Kpsg(0, 0) * Usg.A + Kpsg(0, 1) * Usg.C + Kpsg(1, 0) * Usg.B + Kpsg(1, 1) * Usg.D;
    const Mat T = transfer(cfg, lambda);
    Tsg = Tsg + (-rep.boundary_sign) * T;
    rep.transfer_residual = fro(Tsg) / fro(T);
    return rep;
}

// --- XXZ spin-s reduction -----------------------------------------------------

namespace {

struct XxzBuild {
    double residual;
    Mat Sz, Sp, Sm;  // in the cyclic basis
    RootOfUnity root;
};

XxzBuild xxz_try(int p, int p_prime_eff, double sgn, cx lambda) {
    const RootOfUnity root = root_of_unity(p, p_prime_eff);
    const int s2 = p - 1;  // 2s
    const int l = (p - 1) / 2;

    // spin generators in the canonical basis, f(j) = i(q^j - q^{-j})/2
    Mat Sz(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    Mat Sp(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    Mat Sm(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    Mat La(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    Mat Ld(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    for (int a = 0; a < p; ++a) {
        Sz(static_cast<std::size_t>(a), static_cast<std::size_t>(a)) = double(s2 - 2 * a);
        const cx za = lambda * root.qp(s2 - a);  // q^{s + S^z/2}
        const cx zd = lambda * root.qp(a);       // q^{s - S^z/2}
        La(static_cast<std::size_t>(a), static_cast<std::size_t>(a)) = (za - 1.0 / za) / 2.0;
        Ld(static_cast<std::size_t>(a), static_cast<std::size_t>(a)) = (zd - 1.0 / zd) / 2.0;
    }
    for (int j = 1; j <= s2; ++j) {
        const cx f = I_UNIT * (root.qp(j) - root.qp(-j)) / 2.0;
        Sp(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j)) = f;
        Sm(static_cast<std::size_t>(j), static_cast<std::size_t>(j - 1)) = f;
    }

    // basis reindexing: canonical column a (0-based) is the v-eigenvector
    // with eigenvalue q^{-a}
    Mat P(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    for (int a = 0; a < p; ++a) {
        const int i = ((l - a) % p + p) % p;
        P(static_cast<std::size_t>(i), static_cast<std::size_t>(a)) = 1.0;
    }
    const Mat Pt = P.transpose();
    auto conj = [&](const Mat& X) { return P * X * Pt; };

    // fixed-coupling chain site (sgn selects the q^{1/2} branch)
    const cx qh = sgn * root.qh;
    ChainConfig cfg;
    cfg.root = root;
    cfg.N = 1;
    cfg.sites.push_back(derive_site(root, 0.5, 0.5, 1.0 / (2.0 * I_UNIT * qh),
                                    I_UNIT * qh / 2.0, 1.0 / (2.0 * I_UNIT * qh),
                                    I_UNIT * qh / 2.0));
    cfg.j.push_back(0);
    cfg.a0 = 1.0;
    const AuxOperator L = lax(cfg, lambda / root.q, 1);

    AuxOperator LX;
    LX.A = conj(La);
    LX.B = conj(Sm);
    LX.C = conj(Sp);
    LX.D = conj(Ld);
    XxzBuild out{aux_fro(aux_diff(LX, L, 1.0)) / aux_fro(L), conj(Sz), conj(Sp), conj(Sm), root};
    return out;
}

}  // namespace

XxzReport xxz_lax_identity(int p, int p_prime, cx lambda) {
    const XxzBuild best = xxz_try(p, p_prime, 1.0, lambda);
    const XxzBuild conj = xxz_try(p, 2 * p - p_prime, 1.0, lambda);
    XxzReport rep;
    rep.lax_residual = best.residual;
    rep.lax_residual_conjugate = conj.residual;

    // S^z spectrum is {2s, 2s-2, ..., -2s}
    std::vector<double> want;
    for (int a = 0; a < p; ++a) want.push_back(double(p - 1 - 2 * a));
    std::vector<double> got;
    for (int i = 0; i < p; ++i)
        got.push_back(best.Sz(static_cast<std::size_t>(i), static_cast<std::size_t>(i)).real());
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (int i = 0; i < p; ++i)
        rep.sz_spectrum_gap = std::max(rep.sz_spectrum_gap, std::abs(want[static_cast<std::size_t>(i)] - got[static_cast<std::size_t>(i)]));

    // [S^z, S^pm] = pm 2 S^pm
    const Mat cp = best.Sz * best.Sp + (-1.0) * (best.Sp * best.Sz) + (-2.0) * best.Sp;
    const Mat cm = best.Sz * best.Sm + (-1.0) * (best.Sm * best.Sz) + 2.0 * best.Sm;
    rep.comm_residual = std::max(fro(cp) / fro(best.Sp), fro(cm) / fro(best.Sm));
    return rep;
}

// --- chiral-Potts curve -------------------------------------------------------

CurvePoint delta_automorphism(const CurvePoint& pnt) { return {pnt.b, pnt.a, pnt.d, pnt.c}; }

cx pow_int(cx z, int n) {
    cx r = 1.0, b = z;
    for (int m = n; m > 0; m >>= 1) {
        if (m & 1) r *= b;
        b *= b;
    }
    return r;
}

double curve_residual(const CurvePoint& pnt, int p, cx k, cx kp) {
    const cx xp = pow_int(pnt.x(), p), yp = pow_int(pnt.y(), p), sp = pow_int(pnt.s(), p);
    double worst = 0.0;
    {
        const cx lhs = xp + yp, rhs = k * (1.0 + xp * yp);
        const double sc = std::max({std::abs(xp), std::abs(yp), std::abs(k), std::abs(k * xp * yp)});
        worst = std::max(worst, std::abs(lhs - rhs) / sc);
    }
    {
        const cx lhs = k * xp, rhs = 1.0 - kp / sp;
        const double sc = std::max({std::abs(lhs), 1.0, std::abs(kp / sp)});
        worst = std::max(worst, std::abs(lhs - rhs) / sc);
    }
    {
        const cx lhs = k * yp, rhs = 1.0 - kp * sp;
        const double sc = std::max({std::abs(lhs), 1.0, std::abs(kp * sp)});
        worst = std::max(worst, std::abs(lhs - rhs) / sc);
    }
    return worst;
}

ChiralPottsReport chiral_potts_constraints(int p, int p_prime, int N, std::uint64_t seed) {
    const RootOfUnity root = root_of_unity(p, p_prime);
    AnnulusRng rng(seed);
    ChiralPottsReport rep;
    rep.k = rng.draw(0.6, 1.5);
    rep.kp = std::sqrt(1.0 - rep.k * rep.k);
    rep.modulus_residual = std::abs(rep.k * rep.k + rep.kp * rep.kp - 1.0);
    const cx c0 = rng.draw();

    for (int n = 0; n < N; ++n) {
        // a curve point from a free s-coordinate, p-th roots taken principal
        const cx s = rng.draw(0.8, 1.25);
        const cx sp = pow_int(s, p);
        const cx x = std::exp(std::log((1.0 - rep.kp / sp) / rep.k) / double(p));
        const cx y = std::exp(std::log((1.0 - rep.kp * sp) / rep.k) / double(p));
        CurvePoint qn{x * s, y, 1.0, s};
        rep.curve_q_max = std::max(rep.curve_q_max, curve_residual(qn, p, rep.k, rep.kp));
        const CurvePoint rn = delta_automorphism(qn);
        rep.curve_r_max = std::max(rep.curve_r_max, curve_residual(rn, p, rep.k, rep.kp));
        const CurvePoint back = delta_automorphism(rn);
        rep.involution_residual = std::max(
            rep.involution_residual, std::abs(back.a - qn.a) + std::abs(back.b - qn.b) +
                                         std::abs(back.c - qn.c) + std::abs(back.d - qn.d));

        // chain couplings in the restricted regime solving both constraints
        const cx alpha = rng.draw();
        const cx a = c0 * alpha / (root.qh * x);
        const cx c = root.qh * c0 * alpha / y;
        const cx beta = a * c / alpha;
        {
            const double sc = std::max(std::abs(alpha * beta), std::abs(a * c));
            rep.constraint_ab = std::max(rep.constraint_ab, std::abs(alpha * beta - a * c) / sc);
        }
        {
            const cx t1 = pow_int(c0 * alpha / (root.qh * a), p);
            const cx t2 = pow_int(root.qh * c0 * alpha / c, p);
            const cx t3 = rep.k * (1.0 + pow_int(c0 * c0 * alpha * alpha / (c * a), p));
            const double sc = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
            rep.constraint_curve = std::max(rep.constraint_curve, std::abs(t1 + t2 - t3) / sc);
        }
        rep.superintegrable.push_back(std::abs(pow_int(x, p) - (1.0 + rep.kp) / rep.k));
    }
    return rep;
}

// --- general diagonalizability of B_- ----------------------------------------

BMinusReport b_minus_general_diag(const ChainConfig& cfg, cx lambda_ref, std::uint64_t seed) {
    const int N = cfg.N, p = cfg.root.p;
    const cx q = cfg.root.q;
    BMinusReport rep;
    cx prod_ab = 1.0;
    for (const auto& s : cfg.sites) prod_ab *= s.alpha * s.beta;
    rep.b_norm = (N % 2 == 0 ? 1.0 : -1.0) * cfg.boundary.kappa_m *
                 std::exp(cfg.boundary.tau_m) * prod_ab;
    if (rep.b_norm == cx(0.0))
        throw std::invalid_argument("b_minus_general_diag: nilpotent B_- family");

    auto bmat = [&](cx lam) { return u_minus(cfg, lam).B; };
    const Mat Bref = bmat(lambda_ref);
    const EigResult eig = general_eig(Bref);
    rep.eig_residual = eig.residual;

    // simplicity at the reference point
    double scale = 0.0;
    for (const cx& e : eig.eigenvalues) scale = std::max(scale, std::abs(e));
    rep.min_gap = scale;
    const std::size_t dim = eig.eigenvalues.size();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            rep.min_gap =
                std::min(rep.min_gap, std::abs(eig.eigenvalues[i] - eig.eigenvalues[j]));
    rep.min_gap /= scale;
    rep.simple = !eig.degenerate && rep.min_gap > 1e-6;

    // eigenvalue function along lambda for one eigenvector via the
    // biorthogonal pair, and its functional-form fit
    //   b(lambda) = b_norm (lambda^2/q - q/lambda^2) prod_a (Lambda - t_a)
    AnnulusRng rng(seed);
    auto ray = [&](std::size_t k, cx lam) {
        Vec v(dim), w(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = eig.right(i, k);
            w[i] = eig.left(k, i);
        }
        return dot(w, cyc6v::apply(bmat(lam), v));
    };
    cx leading = 0.0;
    auto fit_tuple = [&](std::size_t k, double& residual) {
        const int nS = N + 3;
        Eigen::MatrixXcd A(nS, N + 1);
        Eigen::VectorXcd r(nS);
        for (int i = 0; i < nS; ++i) {
            const cx lam = rng.draw(0.7, 1.4);
            const cx L = lam * lam + 1.0 / (lam * lam);
            cx pw = 1.0;
            for (int m = 0; m <= N; ++m) {
                A(i, m) = pw;
                pw *= L;
            }
            r(i) = ray(k, lam) / (lam * lam / q - q / (lam * lam));
        }
        Eigen::VectorXcd cf = A.colPivHouseholderQr().solve(r);
        leading = cf(N);
        // held-out residual
        for (int t = 0; t < 2; ++t) {
            const cx lam = rng.draw(0.7, 1.4);
            const cx L = lam * lam + 1.0 / (lam * lam);
            cx pred = cf(N);
            for (int m = N - 1; m >= 0; --m) pred = pred * L + cf(m);
            pred *= lam * lam / q - q / (lam * lam);
            const cx g = ray(k, lam);
            residual = std::max(residual, std::abs(pred - g) / std::abs(g));
        }
        // roots t_a of the Lambda polynomial
        std::vector<cx> roots;
        if (N == 1) {
            roots.push_back(-cf(0) / cf(1));
        } else {
            Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(N, N);
            for (int i = 1; i < N; ++i) comp(i, i - 1) = 1.0;
            for (int i = 0; i < N; ++i) comp(i, N - 1) = -cf(i) / cf(N);
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
            for (int i = 0; i < N; ++i) roots.push_back(es.eigenvalues()(i));
        }
        return roots;
    };
    const std::vector<cx> tval = fit_tuple(0, rep.fit_residual);
    rep.leading = leading;
    {
        const cx zr = cfg.boundary.zeta_m - 1.0 / cfg.boundary.zeta_m;
        const cx want = rep.b_norm / ((N % 2 == 0 ? 1.0 : -1.0) * zr);
        rep.leading_residual = std::abs(leading - want) / std::abs(want);
    }

    // p-th power data: t = B^2 + B^{-2} -> T = B^{2p} + B^{-2p}
    std::vector<cx> B2, Tbig;
    for (const cx& t : tval) {
        const cx b2 = (t + std::sqrt(t * t - 4.0)) / 2.0;
        B2.push_back(b2);
        Tbig.push_back(pow_int(b2, p) + pow_int(1.0 / b2, p));
    }
    rep.zero_gap = 1e300;
    for (std::size_t i = 0; i < Tbig.size(); ++i)
        for (std::size_t j = i + 1; j < Tbig.size(); ++j)
            rep.zero_gap = std::min(rep.zero_gap,
                                    std::abs(Tbig[i] - Tbig[j]) /
                                        std::max(std::abs(Tbig[i]), std::abs(Tbig[j])));
    if (Tbig.size() < 2) rep.zero_gap = 1.0;

    // average value: prod_{a=1}^p B_-(lambda q^a) is scalar and matches the
    // p-power product form
    const cx lam_c = rng.draw(0.8, 1.3);
    Mat prod = bmat(lam_c * cfg.root.qp(1));
    for (int a = 2; a <= p; ++a) prod = prod * bmat(lam_c * cfg.root.qp(a));
    cx scalar = 0.0;
    for (std::size_t i = 0; i < dim; ++i) scalar += prod(i, i);
    scalar /= double(dim);
    Mat dev = prod;
    for (std::size_t i = 0; i < dim; ++i) dev(i, i) -= scalar;
    rep.centrality_residual = fro(dev) / fro(prod);

    const cx l2p = pow_int(lam_c * lam_c, p);
    cx pred = pow_int(leading, p) * (l2p - 1.0 / l2p);
    for (const cx& T : Tbig) pred *= l2p + 1.0 / l2p - T;
    rep.average_residual = std::abs(scalar - pred) / std::abs(pred);

    // under the quasi-nilpotency constraint the B-zero p-powers match the
    // site mu_+ data: B_a^p = q^{p/2} mu_{a,+}^p (sign of B_a undetermined)
    if (cfg.mode != SampleMode::general) {
        rep.sov_mu_residual = 0.0;
        std::vector<cx> targets;
        for (const auto& s : cfg.sites)
            targets.push_back(cfg.root.qph(p) * pow_int(s.mu_plus, p));
        std::vector<bool> used(targets.size(), false);
        for (const cx& b2 : B2) {
            const cx bp = pow_int(std::sqrt(b2), p);
            double best = 1e300;
            std::size_t arg = 0;
            for (std::size_t m = 0; m < targets.size(); ++m) {
                if (used[m]) continue;
                const double d =
                    std::min({std::abs(bp - targets[m]), std::abs(bp + targets[m]),
                              std::abs(1.0 / bp - targets[m]), std::abs(1.0 / bp + targets[m])}) /
                    std::abs(targets[m]);
                if (d < best) {
                    best = d;
                    arg = m;
                }
            }
            used[arg] = true;
            rep.sov_mu_residual = std::max(rep.sov_mu_residual, best);
        }
    }
    return rep;
}

}  // namespace cyc6v
