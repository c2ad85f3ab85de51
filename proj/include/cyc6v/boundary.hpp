// Scalar K-matrices, boundary monodromy U_-, transposed U_+ construction,
// the open transfer matrix, the boundary quantum determinant and the
// symmetry identities of the reflection algebra.

#pragma once

#include "cyc6v/bulk.hpp"

namespace cyc6v {

// Most general scalar 2x2 solution of the reflection equation.
Mat k_matrix(const RootOfUnity& root, cx lambda, cx zeta, cx kappa, cx tau);

// K_-(lambda) = K(lambda; zeta_-, ...); K_+(lambda) = K(lambda q; zeta_+, ...).
// With boundary.triangular_plus the (1,2) entry of K_+ is exactly 0 (the
// gamma -> +infinity renormalization implemented directly).
Mat k_minus(const ChainConfig& cfg, cx lambda);
Mat k_plus(const ChainConfig& cfg, cx lambda);

// M_hat(lambda) = (-1)^N sigma^y M^{t_aux}(1/lambda) sigma^y.
AuxOperator hat_monodromy(const ChainConfig& cfg, cx lambda);

// U_-(lambda) = M(lambda) K_-(lambda) M_hat(lambda), blocks A_-, B_-, C_-, D_-.
AuxOperator u_minus(const ChainConfig& cfg, cx lambda);

// U_+^{t}(lambda) = M^{t}(lambda) K_+^{t}(lambda) M_hat^{t}(lambda); its
// blocks are laid out as [[A_+, C_+], [B_+, D_+]].
AuxOperator u_plus_t(const ChainConfig& cfg, cx lambda);

// V_+(lambda) = U_+^{t}(1/lambda), also a solution of the reflection
// equation (the argument map was calibrated numerically; see v_plus impl).
AuxOperator v_plus(const ChainConfig& cfg, cx lambda);

// T(lambda) = tr_a{ K_+(lambda) M(lambda) K_-(lambda) M_hat(lambda) }
//           = a_+ A_- + d_+ D_- + b_+ C_- + c_+ B_-.
Mat transfer(const ChainConfig& cfg, cx lambda);

// Diagonal part a_+ A_- + d_+ D_-.
Mat t_diag(const ChainConfig& cfg, cx lambda);

// --- scalar coefficient functions ------------------------------------------

// k(lambda) = (lambda^2 - 1/lambda^2) / (lambda^2/q^2 - q^2/lambda^2)
cx k_fn(const RootOfUnity& root, cx lambda);

cx g_minus(const ChainConfig& cfg, cx lambda);
// A_-(lambda) = g_-(lambda) a(lambda q^{-1/2}) d(1/(q^{1/2} lambda))
cx a_sans_minus(const ChainConfig& cfg, cx lambda);
// D_-(lambda) = k(lambda) A_-(q/lambda)
cx d_sans_minus(const ChainConfig& cfg, cx lambda);
// sans-serif a_+ / d_+ coefficients of the symmetric diagonal forms
cx a_sans_plus(const ChainConfig& cfg, cx lambda);
cx d_sans_plus(const ChainConfig& cfg, cx lambda);

// --- boundary quantum determinant ------------------------------------------

// Operator form; first ordering uses A_- A_- + B_- C_-, second D_- D_- + C_- B_-.
Mat boundary_qdet_operator(const ChainConfig& cfg, cx lambda, bool second_ordering = false);
// Scalar: (lambda^2/q^2 - q^2/lambda^2) A_-(lambda q^{1/2}) A_-(q^{1/2}/lambda).
cx boundary_qdet_scalar(const ChainConfig& cfg, cx lambda);

// --- asymptotics and special values -----------------------------------------

// tau_infinity = lim lambda^{-2(N+2)} T(lambda); closed form (general or the
// triangular variant when boundary.triangular_plus).
cx tau_infinity(const ChainConfig& cfg);

struct TransferSpecialValues {
    cx at_qh;       // T(q^{1/2})  = (-1)^N X det_q M(1)
    cx at_iqh;      // T(i q^{1/2}) with the zeta_+/zeta_- ratio prefactor
    cx detq_m1;     // det_q M(1)
    cx detq_mi;     // det_q M(i)
};
TransferSpecialValues transfer_special_values(const ChainConfig& cfg);

// --- residuals ---------------------------------------------------------------

// Reflection-equation residual for a generic aux-operator family:
// |R12(l/m) U1(l) R12(lm/q) U2(m) - U2(m) R12(lm/q) U1(l) R12(l/m)| / scale.
double reflection_residual(const RootOfUnity& root, const AuxOperator& Ul, const AuxOperator& Um,
                           cx lambda, cx mu);
double reflection_residual_minus(const ChainConfig& cfg, cx lambda, cx mu);
double reflection_residual_vplus(const ChainConfig& cfg, cx lambda, cx mu);

// D-tilde combination entering the A_- B_- exchange relation; the closed form
// was calibrated numerically (see calibrate_dtilde) and frozen:
//   Dtilde_-(l) = (l^2 - 1/l^2) D_-(l) - (q - 1/q) A_-(l),
// which by the D_- <-> A_- symmetry equals (l^2/q - q/l^2) A_-(1/l).
Mat dtilde_minus(const ChainConfig& cfg, cx lambda);

// Least-squares coefficients (x, y) with Dtilde_-(l1) = x D_-(l1) + y A_-(l1)
// fixed by requiring the exchange relation to hold exactly.
std::pair<cx, cx> calibrate_dtilde(const ChainConfig& cfg, cx lambda1, cx lambda2);

// Residual of the A_- B_- exchange relation with the frozen Dtilde_-.
double exchange_ab_residual(const ChainConfig& cfg, cx lambda1, cx lambda2);

}  // namespace cyc6v
