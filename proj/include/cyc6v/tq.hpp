// Functional characterization of the transfer-matrix spectrum: the cyclic
// determinant built from tau and the shifted A-coefficient, its polynomial
// functional equation in Z = lambda^{2p} + lambda^{-2p}, extraction of the
// spectral Q polynomial, the inhomogeneous TQ relation, Bethe-form
// eigenstates, and the special boundary manifold where the TQ relation
// becomes homogeneous.
#pragma once

#include <cstdint>

#include "cyc6v/sov_spectrum.hpp"

namespace cyc6v {

// --- scalar functions ---------------------------------------------------------

// abar(lambda) = lambda q^{-1/2} a(lambda); the natural TQ coefficient.
cx abar_fn(const ChainConfig& cfg, cx lambda);
// xbar(lambda) = (lambda^2 - 1/lambda^2) abar(lambda).
cx xbar_fn(const ChainConfig& cfg, cx lambda);
// Closed-form asymptotic coefficient lim lambda^{-2(N+2)} abar(lambda).
cx abar_inf(const ChainConfig& cfg);
// Z(lambda) = lambda^{2p} + lambda^{-2p}; invariant under lambda -> q lambda.
cx z_fn(const RootOfUnity& root, cx lambda);
// F(lambda) = prod_{b=0}^{2N-1} (lambda^p / zeta_b^p - zeta_b^p / lambda^p)
// over the h = 0 grid abscissas; vanishes exactly on the SoV grid.
cx f_grid(const ChainConfig& cfg, const SovGrid& g, cx lambda);

// p x p cyclic determinant: row r at lambda q^r carries tau on the diagonal
// and -abar(lambda q^r), -abar(1/(lambda q^r)) on the adjacent columns.
cx dbar_det(const ChainConfig& cfg, const TauPolynomial& tau, cx lambda);

// --- functional equation in Z ---------------------------------------------------

struct FunctionalCheck {
    std::vector<cx> fit;                  // polynomial coefficients in Z, degree N+2
    double fit_residual = 0.0;            // held-out relative residual of the fit
    double equation_residual = 0.0;       // three-term functional identity residual
    double asymptote_residual = 0.0;      // leading coefficient vs tau_inf^p - abar_inf^p
    double inversion_residual = 0.0;      // dbar_det(1/lambda) vs dbar_det(lambda)
    double extrapolation_residual = 0.0;  // fit vs Richardson limit at the two
                                          // divergent-entry points
};
// Samples dbar_det at random points, fits the degree-(N+2) polynomial in Z
// and verifies the functional identity, the limit values at q^{1/2} and
// i q^{1/2} (approach along lambda = (1+eps) point, Richardson-extrapolated),
// and the asymptotic coefficient.
FunctionalCheck dbar_det_in_z(const ChainConfig& cfg, const SovGrid& g,
                              const TauPolynomial& tau, std::uint64_t seed);

// --- spectral Q polynomial -------------------------------------------------------

struct QPolynomial {
    std::vector<cx> coeffs;        // monomial coefficients in L = lambda^2 + 1/lambda^2
    std::vector<cx> nodes_w;       // interpolation abscissas (grid L values + free node)
    std::vector<cx> nodes_q;       // Q at the abscissas
    std::vector<cx> roots_L;       // roots in L
    std::vector<cx> roots_lambda;  // one lambda representative per root
    cx q_inf;                      // leading coefficient
    cx q_0;                        // Q(i q^{1/2})
    int degree = 0;
    bool exceptional = false;      // near-singular reduced system (degree-drop case)
    double system_quality = 0.0;   // reciprocal condition estimate of the N x N system
    double node_residual = 0.0;    // coefficient form vs node values
    double root_residual = 0.0;    // max |Q(root)| / coefficient scale

    cx at_big_l(cx L) const;
    cx operator()(cx lambda) const;
};

// Builds Q on the grid by the three-term recursion in each cycle, closes the
// N x N linear system through the free interpolation node, and converts to
// coefficient form.  'sign' multiplies the abar terms of the underlying
// three-term relation (+1 is the generic spectral system).
QPolynomial q_polynomial_from_tau(const ChainConfig& cfg, const SovBases& bases,
                                  const TauPolynomial& tau,
                                  cx free_node = cx(0.83, 0.31), double sign = 1.0);

// --- inhomogeneous TQ relation ---------------------------------------------------

// The special point carrying the point term of the inhomogeneity:
// i q^{1/2} for N even, q^{1/2} for N odd (calibrated against the spectrum).
cx g_support_point(const ChainConfig& cfg);

// G(lambda | x, y): quadratic-in-L inhomogeneity; x multiplies the
// asymptotic prefactor (tau_inf - q^{2N} abar_inf), y is Q at the support point.
cx g_inhomogeneity(const ChainConfig& cfg, const SovGrid& g, cx lambda, cx x, cx y);

// max over 20 random lambda of the normalized residual of
// tau(lambda) Q(lambda) = abar(lambda) Q(lambda/q) + abar(1/lambda) Q(lambda q) + G.
double tq_residual(const ChainConfig& cfg, const SovGrid& g, const TauPolynomial& tau,
                   const QPolynomial& Q, std::uint64_t seed);

// --- Bethe-form eigenstates ------------------------------------------------------

// Normalized creation operator: (zeta_- - 1/zeta_-) B_-(lambda) /
// (kappa_- e^{tau_-} (lambda^2/q - q/lambda^2) prod alpha_n beta_n);
// a degree-N polynomial in L.
Mat b_minus_normalized(const ChainConfig& cfg, cx lambda);

struct BetheState {
    std::vector<cx> lambdas;  // one representative per Q root
    Vec right, left;
    double overlap_right = 0.0;  // collinearity with the ED eigenvector pair
    double overlap_left = 0.0;
};
BetheState bethe_state(const ChainConfig& cfg, const SovBases& bases,
                       const SpectrumEntry& entry, const QPolynomial& Q);

// --- homogeneous special manifold -------------------------------------------------

struct HomogeneousReport {
    ChainConfig cfg;                  // the constructed boundary-constrained config
    double a_support = 0.0;           // |a(i q^{1/2})| (exactly 0 by construction)
    double transfer_zero = 0.0;       // norm of T(i q^{1/2}) relative to a generic point
    double manifold_residual = 0.0;   // |tau_inf - (-1)^N q^{2N} abar_inf| relative
    bool simple = false;
    double hom_tq_max = 0.0;          // homogeneous TQ residual over all eigenvalues
    double g_residual_max = 0.0;      // |G| at random lambda with random arguments
    double bethe_eq_max = 0.0;        // per-root two-term cancellation residual
    int max_degree = 0;               // largest observed Q degree
};

// Draws a quasi-nilpotent config, sets zeta_+ = i z_plus and solves kappa_+
// from the vanishing of the asymptotic prefactor, then certifies that the TQ
// relation closes without inhomogeneity on the whole spectrum.
HomogeneousReport homogeneous_case(int p, int p_prime, int N, std::uint64_t seed,
                                   int z_plus);

}  // namespace cyc6v
