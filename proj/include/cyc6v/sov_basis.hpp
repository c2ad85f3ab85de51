// SoV grid, B_- eigenvalue functions, reference states, left/right
// B_--eigenbases (ladder construction), Gram matrix, identity decomposition,
// separate states and the interpolation formulas for A_- and D_-.

#pragma once

#include "cyc6v/boundary.hpp"
#include "cyc6v/linalg.hpp"

namespace cyc6v {

struct SovGrid {
    int p = 0, N = 0;
    // index a = 0..2N-1 (xi repeats: xi[a] = xi[a-N] for a >= N)
    std::vector<std::vector<cx>> xi;    // xi[a][h] = mu_{a,+} q^{h+1/2}
    std::vector<std::vector<cx>> zeta;  // zeta[a][h] = xi[a][h]^{phi_a}
    std::vector<std::vector<cx>> X;     // X[a][h] = zeta^2 + zeta^{-2}
    cx Xq;                              // X = q + 1/q

    int phi(int a) const { return a < N ? 1 : -1; }
};

SovGrid sov_grid(const ChainConfig& cfg);

// state-index isomorphism: kappa(h) = sum_a h_a p^{a-1}, 0-based
int kappa_index(const std::vector<int>& h, int p);
std::vector<int> kappa_tuple(int i, int p, int N);

// a_h(lambda) and the B_- eigenvalue b_h(lambda)
cx a_h_fn(const ChainConfig& cfg, const SovGrid& g, const std::vector<int>& h, cx lambda);
cx b_eigenvalue(const ChainConfig& cfg, const SovGrid& g, const std::vector<int>& h, cx lambda);

// reference covector <Omega| = (x) <j_n - 1| and vector |Omega-bar> = (x) |j_n>
std::pair<Vec, Vec> reference_states(const ChainConfig& cfg);

struct SovBases {
    SovGrid grid;
    std::vector<Vec> left;    // covectors, indexed by kappa(h)
    std::vector<Vec> right;   // vectors
    cx norm;                  // the common normalization n (principal sqrt)
    // Cyclicity constants: raising a left state past h_n = p-1 returns the
    // h_n = 0 state scaled by wrap[n]; right states scale by 1/wrap[n].
    std::vector<cx> wrap;
};

// Ladder construction (left by increasing sum(h), right by decreasing).
// Throws GenericityError if the config is not in an SoV mode.
SovBases build_sov_bases(const ChainConfig& cfg);

// Gram matrix G(i, j) = <h_i | h_j>.
Mat gram_matrix(const SovBases& b);

// Closed-form diagonal prod_{b<a} 1 / (X_a^{(h_a)} - X_b^{(h_b)}).
cx gram_diagonal(const SovGrid& g, const std::vector<int>& h);

// | I - sum_h prod_{b<a}(X_a - X_b) |h><h| | / sqrt(dim)
double identity_decomposition_residual(const SovBases& b);

// Separate states: coefficient tables alpha[a][h], a = 0..N-1, h = 0..p-1.
using SeparateTable = std::vector<std::vector<cx>>;

cx separate_scalar_product(const SovGrid& g, const SeparateTable& alpha,
                           const SeparateTable& beta);
Vec assemble_separate_left(const SovBases& b, const SeparateTable& alpha);
Vec assemble_separate_right(const SovBases& b, const SeparateTable& beta);

// Residual of the interpolation formula for <h| A_-(lambda) (left basis)
// and for D_-(lambda) |h> (right basis) against the dense action.
double a_minus_interpolation_residual(const ChainConfig& cfg, const SovBases& b,
                                      const std::vector<int>& h, cx lambda);
double d_minus_interpolation_residual(const ChainConfig& cfg, const SovBases& b,
                                      const std::vector<int>& h, cx lambda);

}  // namespace cyc6v
