#include "cyc6v/representation.hpp"

#include <cmath>
#include <numeric>

namespace cyc6v {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

cx RootOfUnity::qp(int k) const {
    // exp(-i pi p' k / p); reduce the exponent mod 2p to keep the argument small
    int m = ((p_prime * k) % (2 * p) + 2 * p) % (2 * p);
    return std::polar(1.0, -kPi * static_cast<double>(m) / static_cast<double>(p));
}

cx RootOfUnity::qph(int k) const {
    int m = ((p_prime * k) % (4 * p) + 4 * p) % (4 * p);
    return std::polar(1.0, -kPi * static_cast<double>(m) / (2.0 * static_cast<double>(p)));
}

RootOfUnity root_of_unity(int p, int p_prime) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("root_of_unity: p must be odd and >= 3");
    if (p_prime % 2 != 0) throw std::invalid_argument("root_of_unity: p' must be even");
    if (std::gcd(p, p_prime) != 1) throw std::invalid_argument("root_of_unity: p, p' must be coprime");
    RootOfUnity r;
    r.p = p;
    r.p_prime = p_prime;
    r.l = (p - 1) / 2;
    r.q = r.qp(1);
    r.qh = r.qph(1);
    return r;
}

std::pair<Mat, Mat> weyl_pair(const RootOfUnity& root) {
    const int p = root.p, l = root.l;
    Mat u(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    Mat v(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
    // basis index i = 0..p-1 corresponds to k = i - l
    for (int i = 0; i < p; ++i) {
        v(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = root.qp(i - l);
        // u|k> = |k-1>: column i (state k) maps to row of state k-1
        int idown = (i - 1 + p) % p;
        u(static_cast<std::size_t>(idown), static_cast<std::size_t>(i)) = 1.0;
    }
    return {u, v};
}

Mat embed(const Mat& op, int site, int N) {
    if (site < 1 || site > N) throw std::out_of_range("embed: site out of range");
    const std::size_t p = op.rows();
    Mat full = Mat::identity(1);
    // slot 1 is the rightmost kron factor: full = I_{(N-site)} x op x I_{(site-1)}
    for (int s = N; s >= 1; --s) full = kron(full, s == site ? op : Mat::identity(p));
    return full;
}

SiteParams derive_site(const RootOfUnity& root, cx alpha, cx beta, cx a, cx b, cx c, cx d) {
    for (cx z : {alpha, beta, a, b, c, d})
        if (z == cx(0.0)) throw std::invalid_argument("derive_site: zero coupling");
    SiteParams s;
    s.alpha = alpha; s.beta = beta; s.a = a; s.b = b; s.c = c; s.d = d;
    s.gamma = a * c / alpha;
    s.delta = b * d / beta;
    const cx iqh = cx(0.0, 1.0) * root.qh;
    s.mu_plus = iqh * std::sqrt(a * beta / (alpha * b));
    s.mu_minus = iqh * std::sqrt(c * beta / (alpha * d));
    s.k_site = std::sqrt(a * b * c * d);
    // The three square-root branches are individually free but must cohere:
    // the local quantum-determinant factor written through (k, mu_+, mu_-)
    // equals the rational product form only up to an overall sign per site.
    // Pin the k branch by comparing both forms at one regular point.
    {
        const cx lam(1.31, 0.57);
        const cx f_mu = s.k_site * (lam / s.mu_plus - s.mu_plus / lam) *
                        (lam / s.mu_minus - s.mu_minus / lam);
        const cx q = root.q;
        const cx f_pr = -q * (beta * a * c / alpha) *
                        (1.0 / lam + (b * alpha / (a * beta)) * lam / q) *
                        (1.0 / lam + (d * alpha / (c * beta)) * lam / q);
        if (std::real(f_mu / f_pr) < 0.0) s.k_site = -s.k_site;
    }
    return s;
}

void solve_alpha_beta(BoundaryParams& bp) {
    // (alpha - 1/alpha)(beta + 1/beta) = S1, (alpha + 1/alpha)(beta - 1/beta) = S2
    // with S1 = (zeta - 1/zeta)/kappa, S2 = (zeta + 1/zeta)/kappa.
    // Sum:        2 (alpha beta - 1/(alpha beta)) = S1 + S2
    // Difference: 2 (alpha/beta - beta/alpha)     = S1 - S2
    const cx S1 = (bp.zeta_m - 1.0 / bp.zeta_m) / bp.kappa_m;
    const cx S2 = (bp.zeta_m + 1.0 / bp.zeta_m) / bp.kappa_m;
    const cx m = (S1 + S2) / 4.0;  // P - 1/P = 2m with P = alpha beta
    const cx n = (S1 - S2) / 4.0;  // R - 1/R = 2n with R = alpha / beta
    const cx P = m + std::sqrt(m * m + 1.0);
    const cx R = n + std::sqrt(n * n + 1.0);
    bp.alpha_m = std::sqrt(P * R);
    bp.beta_m = std::sqrt(P / R);
}

SampleMode parse_mode(const std::string& s) {
    if (s == "general") return SampleMode::general;
    if (s == "sov") return SampleMode::sov;
    if (s == "sov_double") return SampleMode::sov_double;
    throw std::invalid_argument("unknown mode: " + s);
}

std::string mode_name(SampleMode m) {
    switch (m) {
        case SampleMode::general: return "general";
        case SampleMode::sov: return "sov";
        default: return "sov_double";
    }
}

std::size_t ChainConfig::dim() const {
    std::size_t d = 1;
    for (int n = 0; n < N; ++n) d *= static_cast<std::size_t>(root.p);
    return d;
}

double AnnulusRng::uniform01() {
    // splitmix64: simple, fully deterministic across platforms
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

cx AnnulusRng::draw(double rmin, double rmax) {
    const double r = rmin + (rmax - rmin) * uniform01();
    const double th = 2.0 * kPi * uniform01();
    return std::polar(r, th);
}

namespace {

// relative distance of z from w, scaled by the larger magnitude
double rel_dist(cx z, cx w) {
    const double s = std::max({std::abs(z), std::abs(w), 1e-30});
    return std::abs(z - w) / s;
}

cx cpow(cx z, int k) {
    cx r = 1.0;
    bool inv = k < 0;
    for (int i = 0; i < std::abs(k); ++i) r *= z;
    return inv ? 1.0 / r : r;
}

}  // namespace

GenericityReport genericity_report(const ChainConfig& cfg) {
    const auto& root = cfg.root;
    const int p = root.p, N = cfg.N;
    GenericityReport rep;
    double m_esov = 1e300, m_sov2 = 1e300, m_simple = 1e300, m_global = 1e300;

    std::vector<cx> mup(static_cast<std::size_t>(N)), mum(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        mup[static_cast<std::size_t>(n)] = cfg.sites[static_cast<std::size_t>(n)].mu_plus;
        mum[static_cast<std::size_t>(n)] = cfg.sites[static_cast<std::size_t>(n)].mu_minus;
    }

    // (E-SOV): mu_{n,+}^p != mu_{m,+}^p for n != m; we also require the
    // SoV grid abscissas X all distinct (same exclusion set, used by every
    // interpolation formula).
    for (int n = 0; n < N; ++n)
        for (int m = n + 1; m < N; ++m)
            m_esov = std::min(m_esov, rel_dist(cpow(mup[static_cast<std::size_t>(n)], p),
                                               cpow(mup[static_cast<std::size_t>(m)], p)));
    // X-grid collisions across distinct sites
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) {
            if (n == m) continue;
            for (int h = 0; h < p; ++h)
                for (int k = 0; k < p; ++k) {
                    const cx xn = mup[static_cast<std::size_t>(n)] * root.qph(2 * h + 1);
                    const cx xm = mup[static_cast<std::size_t>(m)] * root.qph(2 * k + 1);
                    const cx Xn = xn * xn + 1.0 / (xn * xn);
                    const cx Xm = xm * xm + 1.0 / (xm * xm);
                    m_esov = std::min(m_esov, rel_dist(Xn, Xm));
                }
        }
    if (N == 1) m_esov = 1.0;  // no pairs: condition vacuous

    // (condition-SoV-2)
    const cx am = cfg.boundary.alpha_m, bm = cfg.boundary.beta_m;
    for (int n = 0; n < N; ++n) {
        const cx mu2 = mup[static_cast<std::size_t>(n)] * mup[static_cast<std::size_t>(n)];
        m_sov2 = std::min(m_sov2, rel_dist(cpow(mu2, p), cx(1.0)));
        m_sov2 = std::min(m_sov2, rel_dist(cpow(mu2, p), cx(-1.0)));
        for (int eps : {+1, -1})
            for (int h = 1; h <= p - 1; ++h) {
                m_sov2 = std::min(m_sov2, rel_dist(mu2, root.qp(-2 * h) * cpow(am * am, eps)));
                m_sov2 = std::min(m_sov2, rel_dist(mu2, -root.qp(-2 * h) * cpow(bm * bm, eps)));
                for (int m = 0; m < N; ++m) {
                    // Under the double quasi-nilpotency constraint
                    // mu_{n,-}^2 = mu_{n,+}^2 identically, so the single
                    // exclusion instance (m = n, eps = +1, h = p-1) reads
                    // q^{-2p} = 1 and is forced by the constraint manifold
                    // itself, not an accidental collision; skip it.
                    if (cfg.mode == SampleMode::sov_double && m == n && eps == 1 && h == p - 1)
                        continue;
                    m_sov2 = std::min(m_sov2,
                                      rel_dist(mu2, root.qp(-2 * eps - 2 * h) *
                                                        cpow(mum[static_cast<std::size_t>(m)] *
                                                                 mum[static_cast<std::size_t>(m)],
                                                             eps)));
                }
            }
    }

    // (cond-simple): mu_{n,+}^2 != q^{-2h} zeta_+^{+-2}
    const cx zp2 = cfg.boundary.zeta_p * cfg.boundary.zeta_p;
    for (int n = 0; n < N; ++n) {
        const cx mu2 = mup[static_cast<std::size_t>(n)] * mup[static_cast<std::size_t>(n)];
        for (int h = 1; h <= p - 1; ++h) {
            m_simple = std::min(m_simple, rel_dist(mu2, root.qp(-2 * h) * zp2));
            m_simple = std::min(m_simple, rel_dist(mu2, root.qp(-2 * h) / zp2));
        }
    }

    // distance from the special global boundary manifold (the homogeneous
    // TQ corollary constraint); generic configs must stay away from it
    {
        cx prod = 1.0;
        for (const auto& s : cfg.sites) prod *= s.b * s.c / (s.alpha * s.beta);
        const cx lhs = cfg.boundary.kappa_p *
                       std::exp(cfg.boundary.tau_m - cfg.boundary.tau_p) /
                       (cfg.boundary.zeta_p * cfg.boundary.alpha_m * cfg.boundary.beta_m);
        const cx rhs = root.qp(N - 1) * prod;
        m_global = rel_dist(lhs, rhs);
    }

    rep.esov_margin = m_esov; rep.esov_ok = m_esov >= 1e-2;
    rep.sov2_margin = m_sov2; rep.sov2_ok = m_sov2 >= 1e-2;
    rep.simple_margin = m_simple; rep.simple_ok = m_simple >= 1e-2;
    rep.global_margin = m_global; rep.global_ok = m_global >= 1e-2;
    return rep;
}

std::pair<ChainConfig, GenericityReport> random_generic_config(int p, int p_prime, int N,
                                                               std::uint64_t seed,
                                                               SampleMode mode) {
    const RootOfUnity root = root_of_unity(p, p_prime);
    AnnulusRng rng(seed * 0x100000001b3ull + 1469598103934665603ull);

    for (int attempt = 0; attempt < 1000; ++attempt) {
        ChainConfig cfg;
        cfg.root = root;
        cfg.N = N;
        cfg.mode = mode;
        cfg.seed = seed;
        cfg.j.assign(static_cast<std::size_t>(N), 0);
        for (int n = 0; n < N; ++n) {
            cx alpha = rng.draw(), beta = rng.draw();
            cx a = rng.draw(), b = rng.draw(), c = rng.draw(), d = rng.draw();
            int jn = 0;
            if (mode != SampleMode::general) {
                jn = static_cast<int>(rng.uniform01() * p) % p;
                b = -root.qp(2 * jn - 1) * a;           // (quasi-nilpotency constraint)
                if (mode == SampleMode::sov_double) d = -root.qp(2 * jn - 1) * c;
            }
            cfg.j[static_cast<std::size_t>(n)] = jn;
            cfg.sites.push_back(derive_site(root, alpha, beta, a, b, c, d));
        }
        // boundary: zeta away from {0, +-1}, kappa != 0, tau = log(annulus draw)
        BoundaryParams bp;
        auto draw_zeta = [&]() {
            for (;;) {
                cx z = rng.draw();
                if (std::abs(z - 1.0) > 0.1 && std::abs(z + 1.0) > 0.1) return z;
            }
        };
        bp.zeta_m = draw_zeta();
        bp.zeta_p = draw_zeta();
        bp.kappa_m = rng.draw();
        bp.kappa_p = rng.draw();
        bp.tau_m = std::log(rng.draw());
        bp.tau_p = std::log(rng.draw());
        bp.triangular_plus = false;
        solve_alpha_beta(bp);
        cfg.boundary = bp;

        // free normalization: fixed by the reference-state identities in SoV
        // modes, unit otherwise
        if (mode != SampleMode::general) {
            cx a0 = cpow(-root.q, N);
            for (int n = 0; n < N; ++n) a0 *= root.qp(-cfg.j[static_cast<std::size_t>(n)]);
            cfg.a0 = a0;
        } else {
            cfg.a0 = 1.0;
        }

        GenericityReport rep = genericity_report(cfg);
        if (rep.all_ok()) return {cfg, rep};
    }
    throw GenericityError("random_generic_config: resampling budget exhausted (1000 draws)");
}

}  // namespace cyc6v
