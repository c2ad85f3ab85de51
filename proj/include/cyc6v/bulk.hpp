// 6-vertex R-matrix, Bazhanov-Stroganov Lax operator, bulk monodromy,
// bulk transfer matrix and the quantum determinant.

#pragma once

#include "cyc6v/representation.hpp"

namespace cyc6v {

// 2x2 auxiliary-space matrix of quantum-space operators.
struct AuxOperator {
    Mat A, B, C, D;

    const Mat& block(int i, int j) const {
        return i == 0 ? (j == 0 ? A : B) : (j == 0 ? C : D);
    }
    Mat& block(int i, int j) { return i == 0 ? (j == 0 ? A : B) : (j == 0 ? C : D); }
};

// 2x2 block product (auxiliary-space matrix multiplication).
AuxOperator aux_mul(const AuxOperator& X, const AuxOperator& Y);

// Multiply by a scalar 2x2 matrix (K-matrix) from the left/right.
AuxOperator aux_mul_scalar_left(const Mat& k2, const AuxOperator& X);
AuxOperator aux_mul_scalar_right(const AuxOperator& X, const Mat& k2);

// Auxiliary transpose: swap B and C blocks.
AuxOperator aux_transpose(const AuxOperator& X);

// Realize on C^2 x H as a 2d x 2d matrix (d = quantum dimension).
Mat aux_to_full(const AuxOperator& X);

// Embeddings on C^2 x C^2 x H (dimension 4d) for the Yang-Baxter and
// reflection-equation residuals; auxiliary space 1 is the leftmost factor.
Mat aux_embed_1(const AuxOperator& X);
Mat aux_embed_2(const AuxOperator& X);
Mat r_embed_12(const Mat& r4, std::size_t qdim);

// The standard 6-vertex R-matrix (4x4).
Mat r_matrix(const RootOfUnity& root, cx lambda);

// Bazhanov-Stroganov Lax operator at site n (1-based), local p x p blocks.
AuxOperator lax(const ChainConfig& cfg, cx lambda, int n);

// Local Lax with blocks embedded in the full p^N quantum space.
AuxOperator lax_embedded(const ChainConfig& cfg, cx lambda, int n);

// M_a(lambda) = L_N(lambda q^{-1/2}) ... L_1(lambda q^{-1/2}).
AuxOperator monodromy(const ChainConfig& cfg, cx lambda);

// tau_2(lambda) = A(lambda) + D(lambda).
Mat bulk_transfer(const ChainConfig& cfg, cx lambda);

// Theta = prod_n v_n.
Mat theta_operator(const ChainConfig& cfg);

// Bulk scalar coefficient functions a(lambda), d(lambda).
cx bulk_a(const ChainConfig& cfg, cx lambda);
cx bulk_d(const ChainConfig& cfg, cx lambda);

// Quantum determinant: operator form (first = AD - BC ordering,
// second = DA - CB ordering) and the three scalar forms.
Mat qdet_operator(const ChainConfig& cfg, cx lambda, bool second_ordering = false);
cx qdet_scalar_mu(const ChainConfig& cfg, cx lambda);        // k_n / mu_{n,h} product
cx qdet_scalar_product(const ChainConfig& cfg, cx lambda);   // (-q)^N product form
cx qdet_scalar_ad(const ChainConfig& cfg, cx lambda);        // a(lambda) d(lambda/q)

// Yang-Baxter residual |R12 M1 M2 - M2 M1 R12| / scale on C^2 x C^2 x H.
double ybe_residual(const ChainConfig& cfg, cx lambda, cx mu);

}  // namespace cyc6v
