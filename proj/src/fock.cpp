#include "qews/fock.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qews {

bool StateDiagnostics::ok(const Tolerances& tol) const {
    return hermiticity_defect <= tol.hermiticity && trace_deficit <= tol.trace_deficit &&
           trace_re <= 1.0 + 1e-12 && min_eigenvalue >= tol.min_eigenvalue;
}

std::string StateDiagnostics::summary() const {
    std::ostringstream os;
    os << "hermiticity_defect=" << hermiticity_defect << " trace=" << trace_re
       << " trace_deficit=" << trace_deficit << " min_eigenvalue=" << min_eigenvalue;
    return os.str();
}

double DensityMatrix::trace_real() const {
    double t = 0.0;
    for (int n = 0; n < dim(); ++n) t += (*this)(n, n).real();
    return t;
}

namespace detail {

void displacement_diag(double x, double log_abs_g, int d, int count, double* el) {
    // el(n) = e^{-x/2} |g|^d sqrt(n!/(n+d)!) L_n^{(d)}(x). The prefactor is
    // folded into the Laguerre recurrence so every intermediate is a bona
    // fide matrix element magnitude (<= 1); no overflow at any cutoff.
    if (count <= 0) return;
    const double log_p0 = -0.5 * x + d * log_abs_g - 0.5 * std::lgamma(double(d) + 1.0);
    el[0] = std::exp(log_p0);
    if (count == 1) return;
    el[1] = el[0] / std::sqrt(double(d) + 1.0) * (double(d) + 1.0 - x);
    for (int n = 1; n + 1 < count; ++n) {
        const double r1 = std::sqrt(double(n + 1) / double(n + 1 + d));
        const double r12 = std::sqrt(double(n) * double(n + 1) /
                                     (double(n + d) * double(n + 1 + d)));
        el[n + 1] = ((2.0 * n + d + 1.0 - x) * r1 * el[n] -
                     double(n + d) * r12 * el[n - 1]) /
                    double(n + 1);
    }
}

}  // namespace detail

DisplacementMatrix displacement_matrix(cdouble g, int cutoff) {
    DensityMatrix::check_cutoff(cutoff);
    const int dim = cutoff + 1;
    DisplacementMatrix M;
    M.g = g;
    M.cutoff = cutoff;
    M.entries.assign(std::size_t(dim) * dim, cdouble{0.0, 0.0});

    const double x = std::norm(g);
    if (x == 0.0) {
        for (int n = 0; n < dim; ++n) M(n, n) = 1.0;
        return M;
    }
    const double log_abs_g = 0.5 * std::log(x);
    const cdouble phase = g / std::abs(g);

    std::vector<double> el(dim);
    cdouble ph_d{1.0, 0.0};  // phase^d
    double parity = 1.0;     // (-1)^d
    for (int d = 0; d < dim; ++d) {
        detail::displacement_diag(x, log_abs_g, d, dim - d, el.data());
        const cdouble ph_conj = std::conj(ph_d) * parity;
        for (int n = 0; n + d < dim; ++n) {
            M(n + d, n) = el[n] * ph_d;
            // <n| D |n+d> = (-1)^d conj(<n+d| D |n>)
            M(n, n + d) = el[n] * ph_conj;
        }
        ph_d *= phase;
        parity = -parity;
    }
    return M;
}

DensityMatrix coherent_density(cdouble g, int cutoff) {
    DensityMatrix rho(cutoff);
    const double x = std::norm(g);
    if (x == 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    const double log_abs_g = 0.5 * std::log(x);
    const cdouble phase = g / std::abs(g);
    const int dim = cutoff + 1;
    // amplitude a_n = e^{-x/2} g^n / sqrt(n!)
    std::vector<cdouble> amp(dim);
    cdouble ph{1.0, 0.0};
    for (int n = 0; n < dim; ++n) {
        amp[n] = std::exp(-0.5 * x + n * log_abs_g - 0.5 * std::lgamma(double(n) + 1.0)) * ph;
        ph *= phase;
    }
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) rho(n, m) = amp[n] * std::conj(amp[m]);
    return rho;
}

std::vector<double> photon_statistics(const DensityMatrix& rho) {
    std::vector<double> p(rho.dim());
    for (int n = 0; n < rho.dim(); ++n) p[n] = rho(n, n).real();
    return p;
}

double mean_photon(const DensityMatrix& rho) {
    double m = 0.0;
    for (int n = 1; n < rho.dim(); ++n) m += n * rho(n, n).real();
    return m;
}

double g2_zero(const DensityMatrix& rho) {
    double n1 = 0.0, n2 = 0.0;
    for (int n = 1; n < rho.dim(); ++n) {
        const double p = rho(n, n).real();
        n1 += n * p;
        n2 += double(n) * n * p;
    }
    if (n1 <= 0.0) throw std::domain_error("g2_zero: undefined for zero mean photon number");
    return (n2 - n1) / (n1 * n1);
}

StateDiagnostics validate(const DensityMatrix& rho) {
    StateDiagnostics d;
    const int dim = rho.dim();
    cdouble tr{0.0, 0.0};
    for (int n = 0; n < dim; ++n) {
        tr += rho(n, n);
        for (int m = n; m < dim; ++m) {
            const double defect = std::abs(rho(n, m) - std::conj(rho(m, n)));
            d.hermiticity_defect = std::max(d.hermiticity_defect, defect);
        }
    }
    d.trace_re = tr.real();
    d.trace_im = tr.imag();
    d.trace_deficit = 1.0 - tr.real();

    Eigen::MatrixXcd h(dim, dim);
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m)
            h(n, m) = 0.5 * (rho(n, m) + std::conj(rho(m, n)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    return d;
}

int default_cutoff(double predicted_mean) {
    const double mu = std::max(predicted_mean, 0.0);
    return int(std::ceil(mu + 8.0 * std::sqrt(mu + 1.0) + 20.0));
}

}  // namespace qews
