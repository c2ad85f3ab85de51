// Dense complex matrix type used throughout the library.
//
// All operators (Weyl generators, monodromy blocks, transfer matrices) are
// small dense complex matrices (dimension <= a few hundred), so a plain
// row-major buffer is the right carrier.  The hot kernels (mul, kron) have
// OpenMP-parallel implementations; bit-identical serial reference versions
// live in cyc6v::serial and are cross-checked in the tests and timed in the
// benchmark tool.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyc6v {

using cx = std::complex<double>;

// Hard cap on matrix dimensions; guards against accidental huge kron chains.
inline std::size_t& max_dimension() {
    static std::size_t cap = 4096;
    return cap;
}

class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, cx(0.0, 0.0)) {
        if (r > max_dimension() || c > max_dimension())
            throw std::length_error("Mat: dimension " + std::to_string(r) + "x" +
                                    std::to_string(c) + " exceeds cap " +
                                    std::to_string(max_dimension()));
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    cx* data() { return a_.data(); }
    const cx* data() const { return a_.data(); }

    Mat& operator+=(const Mat& o) {
        check_same_shape(o, "+=");
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same_shape(o, "-=");
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(cx s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Mat operator+(Mat x, const Mat& y) { return x += y; }
    friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
    friend Mat operator*(cx s, Mat x) { return x *= s; }
    friend Mat operator*(Mat x, cx s) { return x *= s; }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& x : a_) s += std::norm(x);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : a_) m = std::max(m, std::abs(x));
        return m;
    }

    cx trace() const {
        cx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    void check_same_shape(const Mat& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("Mat: shape mismatch in ") + what);
    }

  private:
    std::size_t rows_, cols_;
    std::vector<cx> a_;
};

// Serial reference kernels, kept for testing and benchmarking against the
// OpenMP versions below.
namespace serial {

inline Mat mul(const Mat& A, const Mat& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("mul: inner dimension mismatch");
    Mat C(A.rows(), B.cols());
    const std::size_t n = A.rows(), m = B.cols(), k = A.cols();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            const cx aij = A(i, l);
            if (aij == cx(0.0)) continue;
            for (std::size_t j = 0; j < m; ++j) C(i, j) += aij * B(l, j);
        }
    return C;
}

inline Mat kron(const Mat& A, const Mat& B) {
    Mat C(A.rows() * B.rows(), A.cols() * B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            const cx aij = A(i, j);
            if (aij == cx(0.0)) continue;
            for (std::size_t k = 0; k < B.rows(); ++k)
                for (std::size_t l = 0; l < B.cols(); ++l)
                    C(i * B.rows() + k, j * B.cols() + l) = aij * B(k, l);
        }
    return C;
}

}  // namespace serial

// OpenMP-parallel kernels.  Row partitioning keeps both bit-identical to the
// serial reference (each output row is computed by exactly one thread with
// the same operation order).
inline Mat mul(const Mat& A, const Mat& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("mul: inner dimension mismatch");
    Mat C(A.rows(), B.cols());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(A.rows());
    const std::size_t m = B.cols(), k = A.cols();
#pragma omp parallel for schedule(static) if (n > 32)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            const cx aij = A(static_cast<std::size_t>(i), l);
            if (aij == cx(0.0)) continue;
            for (std::size_t j = 0; j < m; ++j) C(static_cast<std::size_t>(i), j) += aij * B(l, j);
        }
    return C;
}

inline Mat kron(const Mat& A, const Mat& B) {
    Mat C(A.rows() * B.rows(), A.cols() * B.cols());
    const std::ptrdiff_t nA = static_cast<std::ptrdiff_t>(A.rows());
#pragma omp parallel for schedule(static) if (nA * static_cast<std::ptrdiff_t>(B.rows()) > 64)
    for (std::ptrdiff_t i = 0; i < nA; ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            const cx aij = A(static_cast<std::size_t>(i), j);
            if (aij == cx(0.0)) continue;
            for (std::size_t k = 0; k < B.rows(); ++k)
                for (std::size_t l = 0; l < B.cols(); ++l)
                    C(static_cast<std::size_t>(i) * B.rows() + k, j * B.cols() + l) = aij * B(k, l);
        }
    return C;
}

inline Mat operator*(const Mat& A, const Mat& B) { return mul(A, B); }

inline Mat commutator(const Mat& A, const Mat& B) { return mul(A, B) - mul(B, A); }

// Frobenius residual of X normalized by the Frobenius norm of the largest
// operand involved (scale-invariant pass/fail, see tolerance policy).
inline double rel_residual(const Mat& X, double scale) {
    if (scale < 1e-300) scale = 1.0;
    return X.frobenius_norm() / scale;
}

inline double rel_residual(const Mat& X, const Mat& A, const Mat& B) {
    return rel_residual(X, std::max(A.frobenius_norm(), B.frobenius_norm()));
}

}  // namespace cyc6v
