#ifndef QEWS_PHASE_SPACE_HPP
#define QEWS_PHASE_SPACE_HPP

// Wigner quasi-distribution and quadrature-moment analysis. Conventions:
// q = (a + a^dag)/sqrt(2), p = i(a^dag - a)/sqrt(2), vacuum variance 1/2,
// W normalized so that the integral over dq dp is 1 (vacuum peak 1/pi).

#include "qews/fock.hpp"

#include <utility>
#include <vector>

namespace qews {

struct WignerGridSpec {
    double q_min = -4.0, q_max = 4.0;
    int nq = 201;
    double p_min = -4.0, p_max = 4.0;
    int np = 201;

    double dq() const { return nq > 1 ? (q_max - q_min) / (nq - 1) : 0.0; }
    double dp() const { return np > 1 ? (p_max - p_min) / (np - 1) : 0.0; }
};

struct WignerGrid {
    WignerGridSpec spec;
    std::vector<double> values;  // row-major, index iq * np + ip

    double at(int iq, int ip) const { return values[std::size_t(iq) * spec.np + ip]; }
    double q(int iq) const { return spec.q_min + iq * spec.dq(); }
    double p(int ip) const { return spec.p_min + ip * spec.dp(); }

    double integral() const;  // sum W dq dp
};

struct QuadratureMoments {
    double q_mean = 0.0, p_mean = 0.0;
    double dq2 = 0.0, dp2 = 0.0;
    double dc2 = 0.0;  // (dq2 + dp2) / 2
    double dr2 = 0.0;  // (dq2 - dp2) / 2
};

// Square grid covering +-(sqrt(2 mu) + 4) at the default 201 samples.
WignerGridSpec default_wigner_grid(double mean_photon, int samples = 201);

// Displaced-parity evaluation W(q,p) = Tr[rho D(2 alpha) P]/pi with
// alpha = (q + i p)/sqrt(2); reuses the displacement recurrence per point.
WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec);

// Serial reference evaluating the full displacement matrix product per grid
// point; kept for tests and benchmarks.
WignerGrid wigner_reference(const DensityMatrix& rho, const WignerGridSpec& spec);

QuadratureMoments moments(const DensityMatrix& rho);

// First and second moments of a sampled Wigner grid.
QuadratureMoments grid_moments(const WignerGrid& w);

// Single-emission variances vs the summed modulation phase
// (Delta q^2, Delta p^2) = 1/2 + g2 (1 - b1^2) -+ g2 (|b2| - b1^2) cos(2 phase);
// matches the emission state built with real coupling g = |g|.
std::pair<double, double> variance_closed_single(double g_mag, double b1_mag, double b2_mag,
                                                 double phase);

struct BeamVariances {
    double dq2 = 0.0, dp2 = 0.0, dc2 = 0.0, dr2 = 0.0;
};

// Multi-electron extension with per-electron beam phases phi_l; matches the
// build-up run with imaginary coupling g = i|g| and interaction-picture
// spectra.
BeamVariances variance_closed_beam(double g_mag, double b1_mag, double b2_mag,
                                   const std::vector<double>& phi_l);

// Leading-order displacement of the emission state from the origin:
// (<q>^2 + <p>^2)/2 = N_e^2 |g|^2 |b1|^2.
double offset_closed(int n_electrons, double g_mag, double b1_mag);

}  // namespace qews

#endif
