#include "cyc6v/bulk.hpp"

namespace cyc6v {

AuxOperator aux_mul(const AuxOperator& X, const AuxOperator& Y) {
    AuxOperator Z;
    Z.A = X.A * Y.A + X.B * Y.C;
    Z.B = X.A * Y.B + X.B * Y.D;
    Z.C = X.C * Y.A + X.D * Y.C;
    Z.D = X.C * Y.B + X.D * Y.D;
    return Z;
}

AuxOperator aux_mul_scalar_left(const Mat& k2, const AuxOperator& X) {
    AuxOperator Z;
    Z.A = k2(0, 0) * X.A + k2(0, 1) * X.C;
    Z.B = k2(0, 0) * X.B + k2(0, 1) * X.D;
    Z.C = k2(1, 0) * X.A + k2(1, 1) * X.C;
    Z.D = k2(1, 0) * X.B + k2(1, 1) * X.D;
    return Z;
}

AuxOperator aux_mul_scalar_right(const AuxOperator& X, const Mat& k2) {
    AuxOperator Z;
    Z.A = X.A * k2(0, 0) + X.B * k2(1, 0);
    Z.B = X.A * k2(0, 1) + X.B * k2(1, 1);
    Z.C = X.C * k2(0, 0) + X.D * k2(1, 0);
    Z.D = X.C * k2(0, 1) + X.D * k2(1, 1);
    return Z;
}

AuxOperator aux_transpose(const AuxOperator& X) { return {X.A, X.C, X.B, X.D}; }

Mat aux_to_full(const AuxOperator& X) {
    const std::size_t d = X.A.rows();
    Mat F(2 * d, 2 * d);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Mat& blk = X.block(i, j);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    F(static_cast<std::size_t>(i) * d + r, static_cast<std::size_t>(j) * d + c) =
                        blk(r, c);
        }
    return F;
}

namespace {

Mat e2(int i, int j) {
    Mat m(2, 2);
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
    return m;
}

}  // namespace

Mat aux_embed_1(const AuxOperator& X) {
    const std::size_t d = X.A.rows();
    Mat F(4 * d, 4 * d);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) F += kron(kron(e2(i, j), Mat::identity(2)), X.block(i, j));
    (void)d;
    return F;
}

Mat aux_embed_2(const AuxOperator& X) {
    Mat F(4 * X.A.rows(), 4 * X.A.cols());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) F += kron(kron(Mat::identity(2), e2(i, j)), X.block(i, j));
    return F;
}

Mat r_embed_12(const Mat& r4, std::size_t qdim) { return kron(r4, Mat::identity(qdim)); }

Mat r_matrix(const RootOfUnity& root, cx lambda) {
    if (lambda == cx(0.0)) throw std::invalid_argument("r_matrix: pole at lambda = 0");
    const cx q = root.q;
    Mat R(4, 4);
    const cx corner = q * lambda - 1.0 / (q * lambda);
    const cx mid = lambda - 1.0 / lambda;
    const cx off = q - 1.0 / q;
    R(0, 0) = corner;
    R(1, 1) = mid; R(1, 2) = off;
    R(2, 1) = off; R(2, 2) = mid;
    R(3, 3) = corner;
    return R;
}

AuxOperator lax(const ChainConfig& cfg, cx lambda, int n) {
    if (lambda == cx(0.0)) throw std::invalid_argument("lax: pole at lambda = 0");
    const auto& s = cfg.sites.at(static_cast<std::size_t>(n - 1));
    auto [u, v] = weyl_pair(cfg.root);
    Mat vi(v.rows(), v.cols());
    for (std::size_t i = 0; i < v.rows(); ++i) vi(i, i) = 1.0 / v(i, i);
    const Mat uinv = u.transpose();  // u is a real permutation, so u^{-1} = u^T
    const cx qh = cfg.root.qh;

    AuxOperator L;
    L.A = lambda * s.alpha * v - (s.beta / lambda) * vi;
    L.B = u * ((s.a / qh) * v + qh * s.b * vi);
    L.C = uinv * (qh * s.c * v + (s.d / qh) * vi);
    L.D = (s.gamma / lambda) * v - (s.delta * lambda) * vi;
    return L;
}

AuxOperator lax_embedded(const ChainConfig& cfg, cx lambda, int n) {
    AuxOperator Ll = lax(cfg, lambda, n);
    AuxOperator L;
    L.A = embed(Ll.A, n, cfg.N);
    L.B = embed(Ll.B, n, cfg.N);
    L.C = embed(Ll.C, n, cfg.N);
    L.D = embed(Ll.D, n, cfg.N);
    return L;
}

AuxOperator monodromy(const ChainConfig& cfg, cx lambda) {
    const cx arg = lambda / cfg.root.qh;
    AuxOperator M = lax_embedded(cfg, arg, cfg.N);
    for (int n = cfg.N - 1; n >= 1; --n) M = aux_mul(M, lax_embedded(cfg, arg, n));
    return M;
}

Mat bulk_transfer(const ChainConfig& cfg, cx lambda) {
    AuxOperator M = monodromy(cfg, lambda);
    return M.A + M.D;
}

Mat theta_operator(const ChainConfig& cfg) {
    auto [u, v] = weyl_pair(cfg.root);
    (void)u;
    Mat T = Mat::identity(cfg.dim());
    for (int n = 1; n <= cfg.N; ++n) T = T * embed(v, n, cfg.N);
    return T;
}

cx bulk_a(const ChainConfig& cfg, cx lambda) {
    cx r = cfg.a0;
    for (const auto& s : cfg.sites)
        r *= s.beta / lambda + (s.b * s.alpha / s.a) * lambda / cfg.root.q;
    return r;
}

cx bulk_d(const ChainConfig& cfg, cx lambda) {
    cx r = 1.0 / cfg.a0;
    for (int n = 0; n < cfg.N; ++n) {
        const auto& s = cfg.sites[static_cast<std::size_t>(n)];
        r *= -(s.a * s.c / s.alpha) *
             (1.0 / lambda + cfg.root.q * (s.d * s.alpha / (s.c * s.beta)) * lambda);
    }
    return r;
}

Mat qdet_operator(const ChainConfig& cfg, cx lambda, bool second_ordering) {
    AuxOperator Mp = monodromy(cfg, lambda * cfg.root.qh);
    AuxOperator Mm = monodromy(cfg, lambda / cfg.root.qh);
    if (!second_ordering) return Mp.A * Mm.D - Mp.B * Mm.C;
    return Mp.D * Mm.A - Mp.C * Mm.B;
}

cx qdet_scalar_mu(const ChainConfig& cfg, cx lambda) {
    cx r = 1.0;
    for (const auto& s : cfg.sites)
        r *= s.k_site * (lambda / s.mu_plus - s.mu_plus / lambda) *
             (lambda / s.mu_minus - s.mu_minus / lambda);
    return r;
}

cx qdet_scalar_product(const ChainConfig& cfg, cx lambda) {
    cx r = 1.0;
    for (const auto& s : cfg.sites)
        r *= -cfg.root.q * (s.beta * s.a * s.c / s.alpha) *
             (1.0 / lambda + (s.b * s.alpha / (s.a * s.beta)) * lambda / cfg.root.q) *
             (1.0 / lambda + (s.d * s.alpha / (s.c * s.beta)) * lambda / cfg.root.q);
    return r;
}

cx qdet_scalar_ad(const ChainConfig& cfg, cx lambda) {
    return bulk_a(cfg, lambda) * bulk_d(cfg, lambda / cfg.root.q);
}

double ybe_residual(const ChainConfig& cfg, cx lambda, cx mu) {
    AuxOperator Ml = monodromy(cfg, lambda);
    AuxOperator Mm = monodromy(cfg, mu);
    const Mat M1 = aux_embed_1(Ml), M2 = aux_embed_2(Mm);
    const Mat R = r_embed_12(r_matrix(cfg.root, lambda / mu), cfg.dim());
    const Mat lhs = R * M1 * M2;
    const Mat rhs = M2 * M1 * R;
    return rel_residual(lhs - rhs, lhs, rhs);
}

}  // namespace cyc6v
