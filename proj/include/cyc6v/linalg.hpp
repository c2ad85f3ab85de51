// Dense complex linear-algebra contract: determinants, kernel vectors,
// general (non-normal) eigendecomposition, tolerance policy.
//
// The LU determinant is hand-rolled (it is tiny and we want full control of
// the pivot bookkeeping); SVD and the dense non-normal eigensolver are
// delegated to Eigen behind this interface.

#pragma once

#include <algorithm>
#include <numeric>

#include "cyc6v/matrix.hpp"

namespace cyc6v {

struct ToleranceProfile {
    double rtol_identity = 1e-10;    // exact algebraic identities
    double rtol_spectral = 1e-8;     // eigen-residuals, SoV basis checks
    double rtol_functional = 1e-6;   // determinant conditions, TQ residuals
    double svd_gap_min = 1e6;        // required sigma_{second}/sigma_min ratio
};

// det via LU with partial pivoting: product of pivots times pivot sign.
cx determinant(Mat A);

struct KernelResult {
    std::vector<cx> vec;       // right singular vector of sigma_min
    double quality = 0.0;      // sigma_min / sigma_max
    double second_quality = 0.0;  // sigma_{second smallest} / sigma_max
};

KernelResult kernel_vector(const Mat& A);

struct EigResult {
    std::vector<cx> eigenvalues;
    Mat right;        // columns v_k
    Mat left;         // rows w_k, biorthogonal: w_j . v_k = delta_jk
    bool degenerate = false;          // some eigenvalue cluster detected
    std::vector<int> cluster_id;      // cluster index per eigenvalue
    double residual = 0.0;            // max_k |A v_k - lambda_k v_k| / |A|
};

// Dense non-normal eigendecomposition with biorthogonal left vectors.
// Eigenvalues within 1e-7 * |A|_F of each other are flagged as a cluster.
EigResult general_eig(const Mat& A);

// --- small vector helpers -------------------------------------------------

using Vec = std::vector<cx>;

inline Vec apply(const Mat& A, const Vec& x) {
    if (A.cols() != x.size()) throw std::invalid_argument("apply: size mismatch");
    Vec y(A.rows(), cx(0.0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        cx s = 0.0;
        for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// covector acting from the left: (w A)_j ; no conjugation anywhere, all
// pairings in the SoV analysis are bilinear.
inline Vec apply_left(const Vec& w, const Mat& A) {
    if (A.rows() != w.size()) throw std::invalid_argument("apply_left: size mismatch");
    Vec y(A.cols(), cx(0.0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const cx wi = w[i];
        if (wi == cx(0.0)) continue;
        for (std::size_t j = 0; j < A.cols(); ++j) y[j] += wi * A(i, j);
    }
    return y;
}

inline cx dot(const Vec& w, const Vec& v) {
    cx s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
    return s;
}

inline double norm2(const Vec& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline Vec& operator*=(Vec& v, cx s) {
    for (auto& x : v) x *= s;
    return v;
}

inline Vec operator-(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vec operator+(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec operator*(cx s, Vec v) { return v *= s, v; }

}  // namespace cyc6v
