#include "cyc6v/linalg.hpp"

#include <Eigen/Dense>

namespace cyc6v {

namespace {

Eigen::MatrixXcd to_eigen(const Mat& A) {
    Eigen::MatrixXcd E(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) E(static_cast<long>(i), static_cast<long>(j)) = A(i, j);
    return E;
}

}  // namespace

cx determinant(Mat A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = A.rows();
    cx det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        // partial pivoting: largest |entry| in column k at or below the diagonal
        std::size_t piv = k;
        double best = std::abs(A(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > best) { best = std::abs(A(i, k)); piv = i; }
        if (best == 0.0) return cx(0.0);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            det = -det;
        }
        det *= A(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cx f = A(i, k) / A(k, k);
            if (f == cx(0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return det;
}

KernelResult kernel_vector(const Mat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("kernel_vector: matrix not square");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(A), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const long n = s.size();
    KernelResult r;
    r.vec.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) r.vec[static_cast<std::size_t>(i)] = svd.matrixV()(i, n - 1);
    const double smax = s(0);
    r.quality = smax > 0.0 ? s(n - 1) / smax : 0.0;
    r.second_quality = (n >= 2 && smax > 0.0) ? s(n - 2) / smax : 1.0;
    return r;
}

EigResult general_eig(const Mat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("general_eig: matrix not square");
    const std::size_t n = A.rows();
    Eigen::MatrixXcd E = to_eigen(A);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(E, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) throw std::runtime_error("general_eig: QR iteration failed");

    EigResult r;
    r.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) r.eigenvalues[k] = es.eigenvalues()(static_cast<long>(k));

    Eigen::MatrixXcd V = es.eigenvectors();
    // Left eigenvectors as rows of V^{-1}: biorthogonal w_j . v_k = delta_jk
    // by construction whenever V is invertible (simple spectrum).
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(V);
    Eigen::MatrixXcd W = lu.solve(Eigen::MatrixXcd::Identity(static_cast<long>(n), static_cast<long>(n)));

    r.right = Mat(n, n);
    r.left = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r.right(i, j) = V(static_cast<long>(i), static_cast<long>(j));
            r.left(i, j) = W(static_cast<long>(i), static_cast<long>(j));
        }

    // degeneracy clusters: eigenvalues within 1e-7 * |A|_F of each other
    const double anorm = A.frobenius_norm();
    const double tol = 1e-7 * (anorm > 0.0 ? anorm : 1.0);
    r.cluster_id.assign(n, -1);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const cx za = r.eigenvalues[a], zb = r.eigenvalues[b];
        return std::real(za) != std::real(zb) ? std::real(za) < std::real(zb)
                                              : std::imag(za) < std::imag(zb);
    });
    int cluster = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (t > 0 && std::abs(r.eigenvalues[order[t]] - r.eigenvalues[order[t - 1]]) < tol) {
            r.cluster_id[order[t]] = r.cluster_id[order[t - 1]];
            r.degenerate = true;
        } else {
            r.cluster_id[order[t]] = cluster++;
        }
    }

    // residual certificate
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double res = 0.0, vn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cx s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += A(i, j) * r.right(j, k);
            s -= r.eigenvalues[k] * r.right(i, k);
            res += std::norm(s);
            vn += std::norm(r.right(i, k));
        }
        worst = std::max(worst, std::sqrt(res / (vn > 0.0 ? vn : 1.0)));
    }
    r.residual = worst / (anorm > 0.0 ? anorm : 1.0);
    return r;
}

}  // namespace cyc6v
