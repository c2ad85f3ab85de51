#include "cyc6v/boundary.hpp"

namespace cyc6v {

namespace {

double msign(int N) { return (N % 2 == 0) ? 1.0 : -1.0; }  // (-1)^N

// conjugated Frobenius inner product <A, B> (calibration least squares only;
// everything physical in the library is bilinear)
cx fdot(const Mat& A, const Mat& B) {
    cx s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) s += std::conj(A(i, j)) * B(i, j);
    return s;
}

}  // namespace

Mat k_matrix(const RootOfUnity& root, cx lambda, cx zeta, cx kappa, cx tau) {
    if (lambda == cx(0.0)) throw std::invalid_argument("k_matrix: pole at lambda = 0");
    if (zeta == cx(0.0) || zeta == cx(1.0) || zeta == cx(-1.0))
        throw std::invalid_argument("k_matrix: pole at zeta in {0, +1, -1}");
    const cx q = root.q, qh = root.qh;
    const cx pref = 1.0 / (zeta - 1.0 / zeta);
    const cx off = lambda * lambda / q - q / (lambda * lambda);
    Mat K(2, 2);
    K(0, 0) = pref * (lambda * zeta / qh - qh / (lambda * zeta));
    K(0, 1) = pref * kappa * std::exp(tau) * off;
    K(1, 0) = pref * kappa * std::exp(-tau) * off;
    K(1, 1) = pref * (qh * zeta / lambda - lambda / (zeta * qh));
    return K;
}

Mat k_minus(const ChainConfig& cfg, cx lambda) {
    const auto& b = cfg.boundary;
    return k_matrix(cfg.root, lambda, b.zeta_m, b.kappa_m, b.tau_m);
}

Mat k_plus(const ChainConfig& cfg, cx lambda) {
    const auto& b = cfg.boundary;
    Mat K = k_matrix(cfg.root, lambda * cfg.root.q, b.zeta_p, b.kappa_p, b.tau_p);
    if (b.triangular_plus) {
        // gamma -> +infinity renormalization kappa_+ -> e^{-gamma} kappa_+,
        // e^{tau_+} -> e^{tau_+ - gamma}: the upper entry vanishes exactly
        // while the lower one keeps its finite limit.
        K(0, 1) = 0.0;
    }
    return K;
}

AuxOperator hat_monodromy(const ChainConfig& cfg, cx lambda) {
    if (lambda == cx(0.0)) throw std::invalid_argument("hat_monodromy: pole at lambda = 0");
    const AuxOperator M = monodromy(cfg, 1.0 / lambda);
    const cx s = msign(cfg.N);
    AuxOperator H;
    H.A = s * M.D;
    H.B = (-s) * M.B;
    H.C = (-s) * M.C;
    H.D = s * M.A;
    return H;
}

AuxOperator u_minus(const ChainConfig& cfg, cx lambda) {
    const AuxOperator M = monodromy(cfg, lambda);
    const AuxOperator H = hat_monodromy(cfg, lambda);
    return aux_mul(aux_mul_scalar_right(M, k_minus(cfg, lambda)), H);
}

AuxOperator u_plus_t(const ChainConfig& cfg, cx lambda) {
    const AuxOperator Mt = aux_transpose(monodromy(cfg, lambda));
    const AuxOperator Ht = aux_transpose(hat_monodromy(cfg, lambda));
    return aux_mul(aux_mul_scalar_right(Mt, k_plus(cfg, lambda).transpose()), Ht);
}

// Calibrated: with our argument conventions the partner solution of the
// reflection equation is U_+^{t} evaluated at 1/lambda (equivalently
// -1/lambda); the -lambda map does not solve it here.
AuxOperator v_plus(const ChainConfig& cfg, cx lambda) { return u_plus_t(cfg, 1.0 / lambda); }

Mat transfer(const ChainConfig& cfg, cx lambda) {
    const AuxOperator U = u_minus(cfg, lambda);
    const Mat Kp = k_plus(cfg, lambda);
    // tr_a{K_+ U_-} = a_+ A_- + b_+ C_- + c_+ B_- + d_+ D_-
    return Kp(0, 0) * U.A + Kp(0, 1) * U.C + Kp(1, 0) * U.B + Kp(1, 1) * U.D;
}

Mat t_diag(const ChainConfig& cfg, cx lambda) {
    const AuxOperator U = u_minus(cfg, lambda);
    const Mat Kp = k_plus(cfg, lambda);
    return Kp(0, 0) * U.A + Kp(1, 1) * U.D;
}

cx k_fn(const RootOfUnity& root, cx lambda) {
    const cx l2 = lambda * lambda, q2 = root.q * root.q;
    return (l2 - 1.0 / l2) / (l2 / q2 - q2 / l2);
}

cx g_minus(const ChainConfig& cfg, cx lambda) {
    const auto& b = cfg.boundary;
    const cx qh = cfg.root.qh;
    const cx num = (lambda * b.alpha_m / qh - qh / (lambda * b.alpha_m)) *
                   (lambda * b.beta_m / qh + qh / (lambda * b.beta_m));
    const cx den = (b.alpha_m - 1.0 / b.alpha_m) * (b.beta_m + 1.0 / b.beta_m);
    return num / den;
}

cx a_sans_minus(const ChainConfig& cfg, cx lambda) {
    const cx qh = cfg.root.qh;
    return g_minus(cfg, lambda) * bulk_a(cfg, lambda / qh) * bulk_d(cfg, 1.0 / (qh * lambda));
}

cx d_sans_minus(const ChainConfig& cfg, cx lambda) {
    return k_fn(cfg.root, lambda) * a_sans_minus(cfg, cfg.root.q / lambda);
}

cx a_sans_plus(const ChainConfig& cfg, cx lambda) {
    const cx q = cfg.root.q, qh = cfg.root.qh, zp = cfg.boundary.zeta_p;
    const cx l2 = lambda * lambda;
    return (l2 * q - 1.0 / (q * l2)) * (lambda * zp / qh - qh / (lambda * zp)) /
           ((l2 - 1.0 / l2) * (zp - 1.0 / zp));
}

cx d_sans_plus(const ChainConfig& cfg, cx lambda) {
    const cx q = cfg.root.q, qh = cfg.root.qh, zp = cfg.boundary.zeta_p;
    const cx l2 = lambda * lambda;
    return (l2 * q - 1.0 / (q * l2)) * (zp * qh / lambda - lambda / (qh * zp)) /
           ((l2 - 1.0 / l2) * (zp - 1.0 / zp));
}

Mat boundary_qdet_operator(const ChainConfig& cfg, cx lambda, bool second_ordering) {
    const cx q = cfg.root.q, qh = cfg.root.qh;
    const cx pref = (lambda / q) * (lambda / q) - (q / lambda) * (q / lambda);
    const AuxOperator Up = u_minus(cfg, lambda * qh);
    const AuxOperator Um = u_minus(cfg, qh / lambda);
    Mat P = second_ordering ? (Up.D * Um.D + Up.C * Um.B) : (Up.A * Um.A + Up.B * Um.C);
    return pref * P;
}

cx boundary_qdet_scalar(const ChainConfig& cfg, cx lambda) {
    const cx q = cfg.root.q, qh = cfg.root.qh;
    const cx l2 = lambda * lambda, q2 = q * q;
    return (l2 / q2 - q2 / l2) * a_sans_minus(cfg, lambda * qh) * a_sans_minus(cfg, qh / lambda);
}

cx tau_infinity(const ChainConfig& cfg) {
    const auto& b = cfg.boundary;
    const cx den = (b.zeta_p - 1.0 / b.zeta_p) * (b.zeta_m - 1.0 / b.zeta_m);
    cx pab = 1.0, pdg = 1.0;
    for (const auto& s : cfg.sites) {
        pab *= s.alpha * s.beta;
        pdg *= s.delta * s.gamma;
    }
    if (b.triangular_plus)
        return b.kappa_p * b.kappa_m * std::exp(b.tau_m - b.tau_p) * pab / den;
    return b.kappa_p * b.kappa_m *
           (std::exp(b.tau_p - b.tau_m) * pdg + std::exp(b.tau_m - b.tau_p) * pab) / den;
}

TransferSpecialValues transfer_special_values(const ChainConfig& cfg) {
    const auto& b = cfg.boundary;
    const cx X = cfg.root.q + 1.0 / cfg.root.q;
    TransferSpecialValues v;
    v.detq_m1 = qdet_scalar_ad(cfg, cx(1.0));
    v.detq_mi = qdet_scalar_ad(cfg, cx(0.0, 1.0));
    v.at_qh = msign(cfg.N) * X * v.detq_m1;
    // The sign of the i q^{1/2} value was calibrated against the dense
    // construction: it is -1 for every N (not (-1)^N) in our conventions.
    v.at_iqh = -X * ((b.zeta_p + 1.0 / b.zeta_p) / (b.zeta_p - 1.0 / b.zeta_p)) *
               ((b.zeta_m + 1.0 / b.zeta_m) / (b.zeta_m - 1.0 / b.zeta_m)) * v.detq_mi;
    return v;
}

double reflection_residual(const RootOfUnity& root, const AuxOperator& Ul, const AuxOperator& Um,
                           cx lambda, cx mu) {
    const std::size_t qdim = Ul.A.rows();
    const Mat U1 = aux_embed_1(Ul), U2 = aux_embed_2(Um);
    const Mat R_lm = r_embed_12(r_matrix(root, lambda / mu), qdim);
    const Mat R_pr = r_embed_12(r_matrix(root, lambda * mu / root.q), qdim);
    const Mat lhs = R_lm * U1 * R_pr * U2;
    const Mat rhs = U2 * R_pr * U1 * R_lm;
    return rel_residual(lhs - rhs, lhs, rhs);
}

double reflection_residual_minus(const ChainConfig& cfg, cx lambda, cx mu) {
    return reflection_residual(cfg.root, u_minus(cfg, lambda), u_minus(cfg, mu), lambda, mu);
}

double reflection_residual_vplus(const ChainConfig& cfg, cx lambda, cx mu) {
    return reflection_residual(cfg.root, v_plus(cfg, lambda), v_plus(cfg, mu), lambda, mu);
}

Mat dtilde_minus(const ChainConfig& cfg, cx lambda) {
    const cx q = cfg.root.q, l2 = lambda * lambda;
    const AuxOperator U = u_minus(cfg, lambda);
    return (l2 - 1.0 / l2) * U.D - (q - 1.0 / q) * U.A;
}

namespace {

struct ExchangePieces {
    Mat target;   // A_-(l2) B_-(l1) - f B_-(l1) A_-(l2) - g B_-(l2) A_-(l1)
    Mat basis_d;  // G B_-(l2) D_-(l1)
    Mat basis_a;  // G B_-(l2) A_-(l1)
    double scale = 1.0;
};

ExchangePieces exchange_pieces(const ChainConfig& cfg, cx l1, cx l2) {
    const cx q = cfg.root.q;
    const AuxOperator U1 = u_minus(cfg, l1);
    const AuxOperator U2 = u_minus(cfg, l2);
    const cx f = (l1 * q / l2 - l2 / (l1 * q)) * (l1 * l2 / q - q / (l1 * l2)) /
                 ((l1 / l2 - l2 / l1) * (l1 * l2 - 1.0 / (l1 * l2)));
    const cx g = (l1 * l1 / q - q / (l1 * l1)) * (q - 1.0 / q) /
                 ((l2 / l1 - l1 / l2) * (l1 * l1 - 1.0 / (l1 * l1)));
    const cx G = -(q - 1.0 / q) / ((l1 * l1 - 1.0 / (l1 * l1)) * (l1 * l2 - 1.0 / (l1 * l2)));
    ExchangePieces ep{U2.A * U1.B - f * (U1.B * U2.A) - g * (U2.B * U1.A),
                      G * (U2.B * U1.D), G * (U2.B * U1.A), 1.0};
    ep.scale = std::max((U2.A * U1.B).frobenius_norm(), ep.target.frobenius_norm());
    return ep;
}

}  // namespace

std::pair<cx, cx> calibrate_dtilde(const ChainConfig& cfg, cx lambda1, cx lambda2) {
    const ExchangePieces ep = exchange_pieces(cfg, lambda1, lambda2);
    // 2x2 normal equations for target = x basis_d + y basis_a
    const cx g11 = fdot(ep.basis_d, ep.basis_d), g12 = fdot(ep.basis_d, ep.basis_a);
    const cx g21 = fdot(ep.basis_a, ep.basis_d), g22 = fdot(ep.basis_a, ep.basis_a);
    const cx r1 = fdot(ep.basis_d, ep.target), r2 = fdot(ep.basis_a, ep.target);
    const cx det = g11 * g22 - g12 * g21;
    return {(r1 * g22 - g12 * r2) / det, (g11 * r2 - r1 * g21) / det};
}

double exchange_ab_residual(const ChainConfig& cfg, cx lambda1, cx lambda2) {
    const ExchangePieces ep = exchange_pieces(cfg, lambda1, lambda2);
    const cx q = cfg.root.q, l2 = lambda1 * lambda1;
    const cx x = l2 - 1.0 / l2;
    const cx y = -(q - 1.0 / q);
    const Mat R = ep.target - x * ep.basis_d - y * ep.basis_a;
    return rel_residual(R, ep.scale);
}

}  // namespace cyc6v
