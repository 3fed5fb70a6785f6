#ifndef QEWS_FOCK_HPP
#define QEWS_FOCK_HPP

// Truncated Fock-space primitives: photon density matrices, displacement
// (transition) matrices and photon-counting statistics for a single cavity
// mode. States live on the levels |0>..|N_max> and are never renormalized;
// truncation loss is tracked and surfaced instead.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qews {

using cdouble = std::complex<double>;

struct Tolerances {
    double hermiticity = 1e-12;
    double trace_deficit = 1e-8;   // epsilon_tr truncation-loss budget
    double min_eigenvalue = -1e-10;
};

// Report-only diagnostics of a density matrix.
struct StateDiagnostics {
    double hermiticity_defect = 0.0;  // max |rho(n,m) - conj(rho(m,n))|
    double trace_re = 0.0;
    double trace_im = 0.0;
    double trace_deficit = 0.0;       // 1 - Re trace
    double min_eigenvalue = 0.0;

    bool ok(const Tolerances& tol = Tolerances{}) const;
    std::string summary() const;
};

// Photon density matrix on Fock levels 0..cutoff, row-major storage.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(int cutoff)
        : cutoff_(check_cutoff(cutoff)),
          entries_((cutoff + 1) * std::size_t(cutoff + 1), cdouble{0.0, 0.0}) {}

    int cutoff() const { return cutoff_; }
    int dim() const { return cutoff_ + 1; }

    cdouble& operator()(int n, int m) { return entries_[std::size_t(n) * dim() + m]; }
    const cdouble& operator()(int n, int m) const { return entries_[std::size_t(n) * dim() + m]; }

    std::vector<cdouble>& entries() { return entries_; }
    const std::vector<cdouble>& entries() const { return entries_; }

    double trace_real() const;

    static int check_cutoff(int cutoff) {
        if (cutoff < 1) throw std::invalid_argument("DensityMatrix: cutoff must be >= 1");
        return cutoff;
    }

  private:
    int cutoff_ = 0;
    std::vector<cdouble> entries_;
};

// Matrix elements <n_f| D(g) |n_i> of the photon displacement operator,
// exact on the truncated space up to rounding. Column 0 holds the
// coherent-state amplitudes e^{-|g|^2/2} g^n / sqrt(n!).
struct DisplacementMatrix {
    cdouble g{0.0, 0.0};
    int cutoff = 0;
    std::vector<cdouble> entries;  // row-major (cutoff+1)^2

    int dim() const { return cutoff + 1; }
    cdouble& operator()(int nf, int ni) { return entries[std::size_t(nf) * dim() + ni]; }
    const cdouble& operator()(int nf, int ni) const { return entries[std::size_t(nf) * dim() + ni]; }
};

// Numerical error carrying state diagnostics (e.g. truncation budget breach).
class numerical_error : public std::runtime_error {
  public:
    numerical_error(const std::string& what, StateDiagnostics diag, int step = -1)
        : std::runtime_error(what), diagnostics(diag), step(step) {}
    StateDiagnostics diagnostics;
    int step;  // electron index for build-up failures, -1 otherwise
};

DisplacementMatrix displacement_matrix(cdouble g, int cutoff);
DensityMatrix coherent_density(cdouble g, int cutoff);

std::vector<double> photon_statistics(const DensityMatrix& rho);
double mean_photon(const DensityMatrix& rho);
// <n^2 - n> / <n>^2; throws std::domain_error for zero mean.
double g2_zero(const DensityMatrix& rho);

StateDiagnostics validate(const DensityMatrix& rho);

// Cutoff heuristic keeping Poisson/thermal tails below ~1e-8 for a state
// with predicted mean photon number mu.
int default_cutoff(double predicted_mean);

namespace detail {
// Signed magnitudes el[n] = |<n+d| D(g) |n>| * sign, n = 0..count-1, for one
// sub-diagonal d >= 0 and x = |g|^2. Three-term recurrence on the scaled
// Laguerre form; all intermediates stay bounded by 1.
void displacement_diag(double x, double log_abs_g, int d, int count, double* el);
}  // namespace detail

}  // namespace qews

#endif
