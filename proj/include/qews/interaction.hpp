#ifndef QEWS_INTERACTION_HPP
#define QEWS_INTERACTION_HPP

// Single-electron scattering channel: maps the cavity photon state through
// one pass of a modulated wavepacket. The s-th output diagonal receives the
// (r+s)-th input diagonals weighted by the bunching harmonics b^(-r),
// sandwiched between displacement matrices.

#include "qews/fock.hpp"
#include "qews/qew.hpp"

#include <optional>

namespace qews {

// Spontaneous-emission coupling constant g; |g|^2 is the per-electron
// photon yield. The physical form is g = i e A_eff k0 L / (gamma m_e v0).
struct CouplingSpec {
    cdouble g{0.0, 0.0};

    struct Physical {
        double a_eff;   // effective vector potential amplitude, T m
        double k0;      // electron wavenumber, 1/m
        double length;  // interaction length, m
        double gamma;   // Lorentz factor
        double v0;      // electron velocity, m/s
    };
    std::optional<Physical> physical;

    static CouplingSpec from_physical(const Physical& ph);
    void check() const;  // derived g consistent to 1e-12 when physical given
};

// Dephasing mask for the s-th diagonal: the channel's s-th output diagonal
// is the s-th diagonal of M (B(s) . rho) M^dag with the elementwise mask
// B(s)[n][m] = b^(m-n-s); the index order follows the overlap convention
// b^(n) = int dk c*_k c_{k+n dk} of the bunching factors.
std::vector<cdouble> dephasing_matrix(const BunchingSpectrum& spec, int s, int cutoff);

// Exact channel application. Output is Hermitian by construction; the input
// must be Hermitian and the spectrum conjugate-symmetric. Throws
// numerical_error when the output trace drops below 1 - eps_tr.
DensityMatrix scatter(const DensityMatrix& rho_in, const BunchingSpectrum& spec,
                      const DisplacementMatrix& m, double eps_tr = 1e-8);

// Serial reference: direct evaluation of the channel sum over all output
// diagonals, no Hermitian mirroring. Kept for tests and benchmarks.
DensityMatrix scatter_reference(const DensityMatrix& rho_in, const BunchingSpectrum& spec,
                                const DisplacementMatrix& m);

// Closed-form emission state of one wavepacket into the vacuum:
// rho(n,m) = e^{-|g|^2} b^(n-m) g^n conj(g)^m / sqrt(n! m!)
// (a coherent state with its off-diagonals attenuated by the bunching).
DensityMatrix spontaneous_single(const BunchingSpectrum& spec, const CouplingSpec& coupling,
                                 int cutoff);

// One-step channel expanded to second order in g; valid for |g| <= 0.3.
DensityMatrix perturbative_update(const DensityMatrix& rho_in, const CouplingSpec& coupling,
                                  const BunchingSpectrum& spec);

}  // namespace qews

#endif
