// Parameter dictionaries mapping the cyclic six-vertex chain onto related
// integrable models: the lattice sine-Gordon chain with open boundaries, the
// inhomogeneous chiral-Potts parameter curve, the XXZ spin-s chain at roots
// of unity, and the general diagonalizability report for the B_- family.

#pragma once

#include "cyc6v/boundary.hpp"

namespace cyc6v {

// --- lattice sine-Gordon ------------------------------------------------------

struct SineGordonSite {
    cx kappa, r, s, xi;  // local couplings and inhomogeneity
};

struct SineGordonChain {
    std::vector<SineGordonSite> sites;  // sites 1..N
    BoundaryParams boundary;            // sine-Gordon boundary parameters
    int x = 0;                          // N mod 2
};

// Deterministic sample of a sine-Gordon chain (all parameters in the annulus).
SineGordonChain random_sg_chain(int N, std::uint64_t seed);

// Per-site exponent (1-2x)(1-2y) with y = n mod 2 (n is the 1-based site index).
int sg_exponent(int x, int n);

// Couplings of the equivalent cyclic chain: site n from (kappa, r, s, xi) via
// the exponentiated map, boundary parameters via
//   tau_eps = eps^x tau_eps^sG, kappa_eps = eps^x kappa_eps^sG,
//   zeta_eps = (zeta_eps^sG)^{eps^x}.
ChainConfig sg_to_chain(int p, int p_prime, const SineGordonChain& sg);

// Sine-Gordon Lax operator with explicit Weyl generators U, V (local or
// embedded blocks).
AuxOperator sg_lax(const RootOfUnity& root, const Mat& U, const Mat& V, cx lambda, cx kappa,
                   cx r, cx s);

// M^sG(lambda) = L^sG_N(lambda q^{-1/2}/xi_N) ... L^sG_1(lambda q^{-1/2}/xi_1)
// with generators u_n^{e_n}, v_n^{e_n}.
AuxOperator sg_monodromy(int p, int p_prime, const SineGordonChain& sg, cx lambda);

// Single-site identity residual: |L^sG(lambda/xi) - L(lambda) sigma^x| / scale
// under the direct (exponent +1) parameter map.
double sg_single_site_residual(int p, int p_prime, cx kappa, cx r, cx s, cx xi, cx lambda);

struct SgReport {
    double monodromy_residual = 0.0;  // |M^sG - M (sigma^x)^x|
    double hat_residual = 0.0;        // |Mhat^sG - (-sigma^x)^x Mhat|
    double u_minus_residual = 0.0;    // |U_-^sG - sign U_-|
    double transfer_residual = 0.0;   // |T^sG - sign T|
    double boundary_sign = 1.0;       // calibrated sign between the two chains
};

// All monodromy/boundary identities at one spectral point.
SgReport sg_identities(int p, int p_prime, const SineGordonChain& sg, cx lambda);

// --- XXZ spin-s reduction -----------------------------------------------------

struct XxzReport {
    double lax_residual = 0.0;            // |L^XXZ - L(lambda/q)|, q = exp(-i pi p'/p)
    double lax_residual_conjugate = 0.0;  // same with q = exp(+i pi p'/p)
    double sz_spectrum_gap = 0.0;         // max distance of spec(S^z) from {2s,...,-2s}
    double comm_residual = 0.0;           // |[S^z, S^pm] -+ 2 S^pm| / scale
};

// Lax identity of the spin-(p-1)/2 chain at the fixed coupling point.  The
// identity is covariant under q -> 1/q, so it is checked (and holds) in both
// root-of-unity sign conventions.
XxzReport xxz_lax_identity(int p, int p_prime, cx lambda);

// --- chiral-Potts curve -------------------------------------------------------

struct CurvePoint {
    cx a, b, c, d;
    cx x() const { return a / d; }
    cx y() const { return b / c; }
    cx s() const { return d / c; }
    cx t() const { return x() * y(); }
};

// Swap automorphism (a,b,c,d) -> (b,a,d,c).
CurvePoint delta_automorphism(const CurvePoint& pnt);

// p-th power by repeated squaring.
cx pow_int(cx z, int n);

// Membership residual of a point on the modulus-k curve (three defining
// equations, each normalized by its largest term).
double curve_residual(const CurvePoint& pnt, int p, cx k, cx kp);

struct ChiralPottsReport {
    cx k, kp;                             // moduli, k^2 + kp^2 = 1
    double modulus_residual = 0.0;        // |k^2 + kp^2 - 1|
    double constraint_ab = 0.0;           // max_n |alpha beta - a c| / scale
    double constraint_curve = 0.0;        // max_n curve-form constraint residual
    double curve_q_max = 0.0;             // membership of the free points q_n
    double curve_r_max = 0.0;             // membership of r_n = Delta(q_n)
    double involution_residual = 0.0;     // Delta(Delta(q)) = q
    std::vector<double> superintegrable;  // |x_{q_n}^p - (1+kp)/k| per site
};

// Constructive parametrization: draws modulus and per-site curve points,
// builds chain couplings in the restricted regime b_n = -a_n/q, d_n = -c_n/q
// satisfying both constraints, and reports all residuals.
ChiralPottsReport chiral_potts_constraints(int p, int p_prime, int N, std::uint64_t seed);

// --- general diagonalizability of B_- ----------------------------------------

struct BMinusReport {
    cx b_norm;                         // (-1)^N kappa_- e^{tau_-} prod alpha beta
    cx leading;                        // fitted leading coefficient of b(lambda)
    double leading_residual = 0.0;     // vs b_norm / ((-1)^N (zeta_- - 1/zeta_-))
    bool simple = false;               // distinct eigenvalues at lambda_ref
    double min_gap = 0.0;              // smallest pairwise eigenvalue gap / scale
    double eig_residual = 0.0;         // ED residual
    double fit_residual = 0.0;         // functional-form fit at held-out points
    double zero_gap = 0.0;             // min distance between the p-power zeros
    double centrality_residual = 0.0;  // |prod_a B_-(lambda q^a) - scalar I|
    double average_residual = 0.0;     // scalar vs the p-power product form
    double sov_mu_residual = -1.0;     // B_a^p vs q^{p/2} mu_{a,+}^p (sov mode)
};

BMinusReport b_minus_general_diag(const ChainConfig& cfg, cx lambda_ref, std::uint64_t seed);

}  // namespace cyc6v
