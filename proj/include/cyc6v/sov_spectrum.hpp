// Spectral characterization of the open transfer matrix in the separated
// basis: the interpolation-form eigenvalue candidates tau(lambda), the p x p
// functional matrix D_tau whose determinant conditions select the spectrum,
// Q-tables (kernel and recursion forms), separate-variable eigenstates, the
// degenerate-orthogonality relation and a Newton solver on the determinant
// conditions.  Exact diagonalization is used as the independent oracle.
#pragma once

#include <cstdint>
#include <vector>

#include "cyc6v/sov_basis.hpp"

namespace cyc6v {

// --- scalar coefficient functions --------------------------------------------

// a(lambda) = a_+(lambda) A_-(lambda): coefficient of the lowering term in the
// separate (Baxter-type) equations.  Vanishes at zeta_a^{(0)}.
cx coeff_a(const ChainConfig& cfg, cx lambda);

// d(lambda) = d_+(lambda) D_-(lambda): coefficient in the dual (hat) system.
cx coeff_d(const ChainConfig& cfg, cx lambda);

// gauge function alpha with d(lambda) = gauge_alpha(lambda) a(q/lambda);
// satisfies alpha(1/lambda) alpha(q lambda) = 1 and prod_k alpha(lambda q^k) = 1.
cx gauge_alpha(const ChainConfig& cfg, cx lambda);

// --- eigenvalue candidates ----------------------------------------------------

// Polynomial in L = lambda^2 + lambda^{-2} interpolated through its values at
// the grid points zeta_a^{(0)}, the two special points lambda = q^{1/2} and
// lambda = i q^{1/2} (pinned by quantum determinants) and the leading
// asymptotics tau_inf.
struct TauPolynomial {
    int N = 0;
    cx Xq;                 // q + 1/q
    std::vector<cx> X0;    // X_a^{(0)}, a = 1..N
    std::vector<cx> vals;  // candidate values tau(zeta_a^{(0)})
    cx tau_inf;            // leading coefficient
    cx detm1, detmi;       // det_q M(1), det_q M(i)
    cx ratio;              // (zeta_+ + 1/zeta_+)(zeta_- + 1/zeta_-) /
                           // ((zeta_+ - 1/zeta_+)(zeta_- - 1/zeta_-))

    cx at_big_lambda(cx L) const;
    cx operator()(cx lambda) const;
};

TauPolynomial tau_from_values(const ChainConfig& cfg, std::vector<cx> vals);

// --- functional matrix --------------------------------------------------------

// p x p matrix: row k has tau(q^k lambda) on the diagonal, -f(q^k lambda) at
// column k-1 and -f(1/(q^k lambda)) at column k+1 (cyclically), where f is
// coeff_a (or coeff_d when hat).  corner_twist multiplies the (p-1, 0) entry
// and divides the (0, p-1) entry; it carries the cyclic-closure constant of
// the separated basis when the matrix is evaluated on the grid.
Mat d_tau_matrix(const ChainConfig& cfg, cx lambda, const TauPolynomial& tau,
                 bool hat = false, cx corner_twist = cx(1.0));

// Scaled determinant F_a = det D_tau(zeta_a^{(0)}) / prod_k (row-k sup norm),
// with corner_twist = bases.wrap[a] (or its inverse when hat).  a = 0..N-1.
cx d_tau_condition(const ChainConfig& cfg, const SovBases& bases,
                   const TauPolynomial& tau, int a, bool hat = false);

// --- exact-diagonalization oracle ---------------------------------------------

struct SpectrumEntry {
    std::vector<cx> vals;               // tau(zeta_a^{(0)}), a = 1..N
    TauPolynomial tau;
    Vec right, left;                    // biorthogonal eigenvector pair
    double interp_residual = 0.0;       // |tau(lambda) - Rayleigh| at check points
    std::vector<double> det_condition;  // |F_a| per a
};

struct SpectrumReport {
    cx lambda_ref;
    bool simple = false;
    std::vector<SpectrumEntry> entries;  // p^N entries
};

// Diagonalizes T(lambda_ref) at a random |lambda| in [0.8, 1.25] (up to 5
// redraws if the spectrum is flagged degenerate) and extracts every
// eigenvalue function by Rayleigh quotients on the biorthogonal pairs.
SpectrumReport ed_spectrum(const ChainConfig& cfg, const SovBases& bases,
                           std::uint64_t seed = 1);

// --- Q-tables and eigenstates ---------------------------------------------------

struct QTable {
    SeparateTable q;              // q[a][h], a = 0..N-1, h = 0..p-1, q[a][0] = 1
    std::vector<double> quality;  // sigma_min / sigma_max per a (kernel form)
    std::vector<double> gap;      // sigma_{second} / sigma_max per a
};

// Null vector of D_tau(zeta_a^{(0)}) (or of the hat matrix), normalized to
// q[a][0] = 1.  The matrix must be rank p-1 for the table to be meaningful.
QTable q_table_from_kernel(const ChainConfig& cfg, const SovBases& bases,
                           const TauPolynomial& tau, bool hat = false);

// Three-term recursion t^{(h)} = tau(zeta_a^{(h-1)}) t^{(h-1)}
//   - a(zeta_a^{(h-1)}) a(1/zeta_a^{(h-2)}) t^{(h-2)}, then
// q[a][h] = t^{(h)} / prod_{b<h} a(1/zeta_a^{(b)}) (d in the hat variant).
QTable q_table_from_recursion(const ChainConfig& cfg, const SovBases& bases,
                              const TauPolynomial& tau, bool hat = false);

// Separate-state assembly (the Vandermonde weight is included by the basis).
Vec right_eigenstate(const SovBases& bases, const QTable& q);
Vec left_eigenstate(const SovBases& bases, const QTable& qhat);

// --- orthogonality of distinct eigenstates -------------------------------------

struct OrthogonalityReport {
    double system_residual = 0.0;    // |M x| / (|M| |x|) for the N x N system
    double division_residual = 0.0;  // remainder of (tau - tau') / (L^2 - X^2)
    double state_overlap = 0.0;      // normalized |<tau|tau'>|
};

OrthogonalityReport orthogonality_relation(const ChainConfig& cfg, const SovBases& bases,
                                           const TauPolynomial& tau, const QTable& qhat_tau,
                                           const TauPolynomial& tau2, const QTable& q_tau2);

// --- determinant-condition solver -----------------------------------------------

struct NewtonResult {
    bool converged = false;
    int iterations = 0;
    std::vector<cx> vals;
    double residual = 0.0;  // sup norm of the scaled determinant conditions
};

// Newton iteration on F_a(vals) = d_tau_condition(..., a) with a central
// finite-difference Jacobian (step 1e-6 per component scale).
NewtonResult newton_solve(const ChainConfig& cfg, const SovBases& bases,
                          std::vector<cx> vals, int max_iter = 100, double tol = 1e-10);

}  // namespace cyc6v
