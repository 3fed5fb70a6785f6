#include "qews/phase_space.hpp"

#include <cmath>
#include <numbers>

namespace qews {

namespace {
constexpr double kPi = std::numbers::pi;
}

double WignerGrid::integral() const {
    double s = 0.0;
    for (const double v : values) s += v;
    return s * spec.dq() * spec.dp();
}

WignerGridSpec default_wigner_grid(double mean_photon, int samples) {
    const double half = std::sqrt(2.0 * std::max(mean_photon, 0.0)) + 4.0;
    WignerGridSpec spec;
    spec.q_min = -half;
    spec.q_max = half;
    spec.p_min = -half;
    spec.p_max = half;
    spec.nq = samples;
    spec.np = samples;
    return spec;
}

namespace {

// Tr[rho D(gamma) P] for gamma = 2 alpha; diagonals of D from the bounded
// recurrence, rho folded in via its pre-extracted diagonals.
double displaced_parity_trace(const std::vector<std::vector<cdouble>>& rho_diag, int dim,
                              cdouble gamma) {
    const double x = std::norm(gamma);
    double w = 0.0;
    if (x == 0.0) {
        const auto& d0 = rho_diag[0];
        double parity = 1.0;
        for (int n = 0; n < dim; ++n, parity = -parity) w += parity * d0[std::size_t(n)].real();
        return w;
    }
    const double log_abs = 0.5 * std::log(x);
    const cdouble phase = gamma / std::abs(gamma);

    std::vector<double> el(static_cast<std::size_t>(dim));
    cdouble ph_d{1.0, 0.0};
    for (int d = 0; d < dim; ++d) {
        detail::displacement_diag(x, log_abs, d, dim - d, el.data());
        const auto& rd = rho_diag[std::size_t(d)];
        double parity = 1.0;
        double acc = 0.0;
        if (d == 0) {
            for (int n = 0; n < dim; ++n, parity = -parity)
                acc += parity * rd[std::size_t(n)].real() * el[std::size_t(n)];
        } else {
            // rho(n, n+d) pairs with D(n+d, n) and the mirrored entries; the
            // two contributions combine into 2 Re(rho(n,n+d) e^{i d theta}).
            for (int n = 0; n + d < dim; ++n, parity = -parity)
                acc += parity * 2.0 * (rd[std::size_t(n)] * ph_d).real() * el[std::size_t(n)];
        }
        w += acc;
        ph_d *= phase;
    }
    return w;
}

std::vector<std::vector<cdouble>> upper_diagonals(const DensityMatrix& rho) {
    const int dim = rho.dim();
    std::vector<std::vector<cdouble>> diag(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
        auto& v = diag[std::size_t(d)];
        v.assign(std::size_t(dim), cdouble{0.0, 0.0});
        for (int n = 0; n + d < dim; ++n) v[std::size_t(n)] = rho(n, n + d);
    }
    return diag;
}

}  // namespace

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec) {
    WignerGrid grid;
    grid.spec = spec;
    grid.values.assign(std::size_t(spec.nq) * spec.np, 0.0);
    const auto diag = upper_diagonals(rho);
    const int dim = rho.dim();
    const double inv_pi = 1.0 / kPi;

#pragma omp parallel for schedule(static)
    for (int iq = 0; iq < spec.nq; ++iq) {
        const double q = spec.q_min + iq * spec.dq();
        for (int ip = 0; ip < spec.np; ++ip) {
            const double p = spec.p_min + ip * spec.dp();
            // gamma = 2 alpha = sqrt(2) (q + i p)
            const cdouble gamma{std::numbers::sqrt2 * q, std::numbers::sqrt2 * p};
            grid.values[std::size_t(iq) * spec.np + ip] =
                inv_pi * displaced_parity_trace(diag, dim, gamma);
        }
    }
    return grid;
}

WignerGrid wigner_reference(const DensityMatrix& rho, const WignerGridSpec& spec) {
    WignerGrid grid;
    grid.spec = spec;
    grid.values.assign(std::size_t(spec.nq) * spec.np, 0.0);
    const int dim = rho.dim();
    for (int iq = 0; iq < spec.nq; ++iq) {
        const double q = spec.q_min + iq * spec.dq();
        for (int ip = 0; ip < spec.np; ++ip) {
            const double p = spec.p_min + ip * spec.dp();
            const cdouble gamma{std::numbers::sqrt2 * q, std::numbers::sqrt2 * p};
            const DisplacementMatrix d = displacement_matrix(gamma, rho.cutoff());
            // Tr[rho D P] = sum_{j,k} rho(j,k) (-1)^j D(k,j)
            cdouble acc{0.0, 0.0};
            double parity = 1.0;
            for (int j = 0; j < dim; ++j, parity = -parity)
                for (int k = 0; k < dim; ++k) acc += parity * rho(j, k) * d(k, j);
            grid.values[std::size_t(iq) * spec.np + ip] = acc.real() / kPi;
        }
    }
    return grid;
}

QuadratureMoments moments(const DensityMatrix& rho) {
    const int dim = rho.dim();
    cdouble a{0.0, 0.0}, a2{0.0, 0.0};
    double n_mean = 0.0;
    for (int n = 0; n < dim; ++n) {
        n_mean += n * rho(n, n).real();
        if (n >= 1) a += std::sqrt(double(n)) * rho(n, n - 1);
        if (n >= 2) a2 += std::sqrt(double(n) * (n - 1)) * rho(n, n - 2);
    }
    QuadratureMoments m;
    m.q_mean = std::numbers::sqrt2 * a.real();
    m.p_mean = std::numbers::sqrt2 * a.imag();
    m.dq2 = 0.5 + n_mean + a2.real() - 2.0 * a.real() * a.real();
    m.dp2 = 0.5 + n_mean - a2.real() - 2.0 * a.imag() * a.imag();
    m.dc2 = 0.5 * (m.dq2 + m.dp2);
    m.dr2 = 0.5 * (m.dq2 - m.dp2);
    return m;
}

QuadratureMoments grid_moments(const WignerGrid& w) {
    double norm = 0.0, q1 = 0.0, p1 = 0.0, q2 = 0.0, p2 = 0.0;
    for (int iq = 0; iq < w.spec.nq; ++iq) {
        const double q = w.q(iq);
        for (int ip = 0; ip < w.spec.np; ++ip) {
            const double p = w.p(ip);
            const double v = w.at(iq, ip);
            norm += v;
            q1 += v * q;
            p1 += v * p;
            q2 += v * q * q;
            p2 += v * p * p;
        }
    }
    QuadratureMoments m;
    if (norm != 0.0) {
        q1 /= norm;
        p1 /= norm;
        q2 /= norm;
        p2 /= norm;
        m.q_mean = q1;
        m.p_mean = p1;
        m.dq2 = q2 - q1 * q1;
        m.dp2 = p2 - p1 * p1;
        m.dc2 = 0.5 * (m.dq2 + m.dp2);
        m.dr2 = 0.5 * (m.dq2 - m.dp2);
    }
    return m;
}

std::pair<double, double> variance_closed_single(double g_mag, double b1_mag, double b2_mag,
                                                 double phase) {
    const double g2 = g_mag * g_mag;
    const double base = 0.5 + g2 * (1.0 - b1_mag * b1_mag);
    const double osc = g2 * (b2_mag - b1_mag * b1_mag) * std::cos(2.0 * phase);
    return {base - osc, base + osc};
}

BeamVariances variance_closed_beam(double g_mag, double b1_mag, double b2_mag,
                                   const std::vector<double>& phi_l) {
    const double g2 = g_mag * g_mag;
    const double n = double(phi_l.size());
    double cos_sum = 0.0;
    for (const double phi : phi_l) cos_sum += std::cos(2.0 * phi);
    BeamVariances v;
    const double base = 0.5 + n * g2 * (1.0 - b1_mag * b1_mag);
    const double osc = g2 * (b1_mag * b1_mag - b2_mag) * cos_sum;
    v.dq2 = base - osc;
    v.dp2 = base + osc;
    v.dc2 = 0.5 * (v.dq2 + v.dp2);
    v.dr2 = 0.5 * (v.dq2 - v.dp2);
    return v;
}

double offset_closed(int n_electrons, double g_mag, double b1_mag) {
    const double ne = double(n_electrons);
    return ne * ne * g_mag * g_mag * b1_mag * b1_mag;
}

}  // namespace qews
