// Root-of-unity arithmetic, local Weyl-algebra generators, per-site Lax
// parameters with derived quantities, chain configuration and generic
// parameter sampling.

#pragma once

#include <cstdint>
#include <optional>

#include "cyc6v/matrix.hpp"

namespace cyc6v {

struct RootOfUnity {
    int p = 3;        // odd, >= 3; p = 2l + 1
    int p_prime = 2;  // even, coprime with p
    int l = 1;
    cx q;             // exp(-i pi p'/p)
    cx qh;            // principal half step exp(-i pi p'/(2p)), qh^2 = q

    // q^k for integer k (k may be negative)
    cx qp(int k) const;
    // q^{k/2} for integer k
    cx qph(int k) const;
};

RootOfUnity root_of_unity(int p, int p_prime);

// u, v on the p-dimensional site space with basis |k>, k = -l..l:
//   v|k> = q^k |k>,  u|k> = |k-1> (cyclic), so that u v = q v u.
// The shift direction is fixed by requiring the algebra relation u v = q v u
// (which the Yang-Baxter machinery uses); the quantum-determinant
// factorization in the tests certifies the choice.
std::pair<Mat, Mat> weyl_pair(const RootOfUnity& root);

// I x ... x op x ... x I with `site` in slot 1..N; slot 1 is the RIGHTMOST
// kron factor, matching the monodromy ordering M_a = L_N ... L_1.
Mat embed(const Mat& op, int site, int N);

struct SiteParams {
    cx alpha, beta, a, b, c, d;   // Lax couplings
    cx gamma, delta;              // gamma = a c / alpha, delta = b d / beta
    cx mu_plus, mu_minus;         // mu_{n,+-} = i q^{1/2} (a beta / (alpha b))^{1/2} etc.
    cx k_site;                    // (a b c d)^{1/2}
};

SiteParams derive_site(const RootOfUnity& root, cx alpha, cx beta, cx a, cx b, cx c, cx d);

struct BoundaryParams {
    cx zeta_m, kappa_m, tau_m;    // K_- parameters
    cx zeta_p, kappa_p, tau_p;    // K_+ parameters
    bool triangular_plus = false; // b_+(lambda) = 0 exactly
    cx alpha_m, beta_m;           // re-parametrization of (zeta_-, kappa_-)
};

// Solve the (alpha_-, beta_-) re-parametrization as two nested quadratics;
// any branch is accepted (verified downstream through branch-covariant
// combinations).
void solve_alpha_beta(BoundaryParams& bp);

enum class SampleMode { general, sov, sov_double };

SampleMode parse_mode(const std::string& s);
std::string mode_name(SampleMode m);

struct ChainConfig {
    RootOfUnity root;
    int N = 1;
    std::vector<SiteParams> sites;
    BoundaryParams boundary;
    std::vector<int> j;           // SoV constraint exponents, one per site
    cx a0;                        // free normalization of a(lambda)
    SampleMode mode = SampleMode::general;
    std::uint64_t seed = 0;

    std::size_t dim() const;      // p^N
};

struct GenericityReport {
    bool esov_ok = false;
    bool sov2_ok = false;
    bool simple_ok = false;
    bool global_ok = false;       // distance from the special global boundary manifold
    double esov_margin = 0.0;
    double sov2_margin = 0.0;
    double simple_margin = 0.0;
    double global_margin = 0.0;
    bool all_ok() const { return esov_ok && sov2_ok && simple_ok && global_ok; }
};

GenericityReport genericity_report(const ChainConfig& cfg);

struct GenericityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic sampling: parameters drawn from the annulus 0.5 <= |z| <= 2
// with uniform phases, resampled (budget 1000) until every excluded equality
// is avoided with relative margin >= 1e-2.
std::pair<ChainConfig, GenericityReport> random_generic_config(int p, int p_prime, int N,
                                                               std::uint64_t seed,
                                                               SampleMode mode);

// Deterministic stream of complex numbers from the sampling annulus.
class AnnulusRng {
  public:
    explicit AnnulusRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform01();                       // in [0,1)
    cx draw(double rmin = 0.5, double rmax = 2.0);
  private:
    std::uint64_t state_;
};

}  // namespace cyc6v
