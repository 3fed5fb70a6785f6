#include "qews/interaction.hpp"

#include "qews/constants.hpp"

#include <cmath>
#include <sstream>

namespace qews {

CouplingSpec CouplingSpec::from_physical(const Physical& ph) {
    using namespace constants;
    CouplingSpec c;
    c.g = cdouble{0.0, 1.0} * (elementary_charge * ph.a_eff * ph.k0 * ph.length /
                               (ph.gamma * electron_mass * ph.v0));
    c.physical = ph;
    return c;
}

void CouplingSpec::check() const {
    if (!physical) return;
    const cdouble derived = from_physical(*physical).g;
    if (std::abs(derived - g) > 1e-12 * std::max(1.0, std::abs(g)))
        throw std::invalid_argument("CouplingSpec: g inconsistent with physical block");
}

std::vector<cdouble> dephasing_matrix(const BunchingSpectrum& spec, int s, int cutoff) {
    const int dim = cutoff + 1;
    std::vector<cdouble> b(std::size_t(dim) * dim);
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) b[std::size_t(n) * dim + m] = spec.at(m - n - s);
    return b;
}

namespace {

// Sum over one input diagonal: sum_{ni} M(nf,ni) w[ni] conj(M(nf+s, ni+sigma)).
inline cdouble diag_contraction(const DisplacementMatrix& m, const cdouble* w, int dim, int nf,
                                int s, int sigma) {
    const int lo = std::max(0, -sigma);
    const int hi = std::min(dim - 1, dim - 1 - sigma);
    const cdouble* row_f = &m.entries[std::size_t(nf) * dim];
    const cdouble* row_g = &m.entries[std::size_t(nf + s) * dim + sigma];
    cdouble acc{0.0, 0.0};
    for (int ni = lo; ni <= hi; ++ni) acc += row_f[ni] * w[ni] * std::conj(row_g[ni]);
    return acc;
}

std::vector<std::vector<cdouble>> input_diagonals(const DensityMatrix& rho) {
    const int dim = rho.dim();
    std::vector<std::vector<cdouble>> diag(static_cast<std::size_t>(2 * dim - 1));
    for (int sigma = -(dim - 1); sigma <= dim - 1; ++sigma) {
        auto& d = diag[std::size_t(sigma + dim - 1)];
        d.assign(std::size_t(dim), cdouble{0.0, 0.0});
        const int lo = std::max(0, -sigma);
        const int hi = std::min(dim - 1, dim - 1 - sigma);
        for (int ni = lo; ni <= hi; ++ni) d[std::size_t(ni)] = rho(ni, ni + sigma);
    }
    return diag;
}

}  // namespace

DensityMatrix scatter(const DensityMatrix& rho_in, const BunchingSpectrum& spec,
                      const DisplacementMatrix& m, double eps_tr) {
    if (m.cutoff != rho_in.cutoff())
        throw std::invalid_argument("scatter: state and displacement cutoffs differ");
    const int dim = rho_in.dim();
    const int support = spec.support();
    const auto diag = input_diagonals(rho_in);

    DensityMatrix out(rho_in.cutoff());
    // upper diagonals only; Hermitian mirror afterwards
#pragma omp parallel for schedule(dynamic, 2)
    for (int s = 0; s < dim; ++s) {
        for (int r = -support; r <= support; ++r) {
            const cdouble b = spec.at(r);
            if (std::abs(b) < 1e-12) continue;
            const int sigma = r + s;
            if (sigma <= -dim || sigma >= dim) continue;
            const cdouble* w = diag[std::size_t(sigma + dim - 1)].data();
            for (int nf = 0; nf + s < dim; ++nf)
                out(nf, nf + s) += b * diag_contraction(m, w, dim, nf, s, sigma);
        }
    }
    for (int n = 0; n < dim; ++n)
        for (int mcol = n + 1; mcol < dim; ++mcol) out(mcol, n) = std::conj(out(n, mcol));

    const double trace = out.trace_real();
    if (trace < 1.0 - eps_tr) {
        StateDiagnostics d = validate(out);
        std::ostringstream os;
        os << "scatter: truncation budget breached (trace " << trace << " < 1 - " << eps_tr
           << "); increase the cutoff";
        throw numerical_error(os.str(), d);
    }
    return out;
}

DensityMatrix scatter_reference(const DensityMatrix& rho_in, const BunchingSpectrum& spec,
                                const DisplacementMatrix& m) {
    if (m.cutoff != rho_in.cutoff())
        throw std::invalid_argument("scatter_reference: state and displacement cutoffs differ");
    const int dim = rho_in.dim();
    DensityMatrix out(rho_in.cutoff());
    for (int nf = 0; nf < dim; ++nf) {
        for (int mf = 0; mf < dim; ++mf) {
            const int s = mf - nf;
            cdouble acc{0.0, 0.0};
            for (int r = -spec.r_max; r <= spec.r_max; ++r) {
                const cdouble b = spec.at(r);
                if (b == cdouble{0.0, 0.0}) continue;
                const int sigma = r + s;
                for (int ni = 0; ni < dim; ++ni) {
                    const int mi = ni + sigma;
                    if (mi < 0 || mi >= dim) continue;
                    acc += b * m(nf, ni) * rho_in(ni, mi) * std::conj(m(mf, mi));
                }
            }
            out(nf, mf) = acc;
        }
    }
    return out;
}

DensityMatrix spontaneous_single(const BunchingSpectrum& spec, const CouplingSpec& coupling,
                                 int cutoff) {
    DensityMatrix rho(cutoff);
    const cdouble g = coupling.g;
    const double x = std::norm(g);
    const int dim = cutoff + 1;
    std::vector<cdouble> amp(static_cast<std::size_t>(dim));  // e^{-x/2} g^n / sqrt(n!)
    if (x == 0.0) {
        amp[0] = 1.0;
    } else {
        const double log_abs_g = 0.5 * std::log(x);
        const cdouble phase = g / std::abs(g);
        cdouble ph{1.0, 0.0};
        for (int n = 0; n < dim; ++n) {
            amp[std::size_t(n)] =
                std::exp(-0.5 * x + n * log_abs_g - 0.5 * std::lgamma(double(n) + 1.0)) * ph;
            ph *= phase;
        }
    }
    for (int n = 0; n < dim; ++n)
        for (int mcol = 0; mcol < dim; ++mcol)
            rho(n, mcol) = spec.at(n - mcol) * amp[std::size_t(n)] * std::conj(amp[std::size_t(mcol)]);
    return rho;
}

DensityMatrix perturbative_update(const DensityMatrix& rho_in, const CouplingSpec& coupling,
                                  const BunchingSpectrum& spec) {
    const cdouble g = coupling.g;
    if (std::abs(g) > 0.3)
        throw std::invalid_argument("perturbative_update: valid only for |g| <= 0.3");
    const cdouble b1 = spec.at(1), b1c = spec.at(-1);
    const cdouble b2 = spec.at(2), b2c = spec.at(-2);
    const cdouble g2 = g * g, gc = std::conj(g), gc2 = gc * gc;
    const double x = std::norm(g);
    const int dim = rho_in.dim();

    auto rho = [&](int n, int mcol) -> cdouble {
        if (n < 0 || mcol < 0 || n >= dim || mcol >= dim) return {0.0, 0.0};
        return rho_in(n, mcol);
    };
    auto sq = [](int n) { return n > 0 ? std::sqrt(double(n)) : 0.0; };

    DensityMatrix out(rho_in.cutoff());
    for (int n = 0; n < dim; ++n) {
        for (int mcol = 0; mcol < dim; ++mcol) {
            cdouble acc = rho(n, mcol);
            acc += g * b1 * (sq(n) * rho(n - 1, mcol) - sq(mcol + 1) * rho(n, mcol + 1));
            acc += gc * b1c * (sq(mcol) * rho(n, mcol - 1) - sq(n + 1) * rho(n + 1, mcol));
            acc += 0.5 * g2 * b2 *
                   (sq(n) * sq(n - 1) * rho(n - 2, mcol) +
                    sq(mcol + 1) * sq(mcol + 2) * rho(n, mcol + 2));
            acc += 0.5 * gc2 * b2c *
                   (sq(n + 1) * sq(n + 2) * rho(n + 2, mcol) +
                    sq(mcol) * sq(mcol - 1) * rho(n, mcol - 2));
            acc -= x * double(n + mcol + 1) * rho(n, mcol);
            acc += x * (sq(n) * sq(mcol) * rho(n - 1, mcol - 1) +
                        sq(n + 1) * sq(mcol + 1) * rho(n + 1, mcol + 1));
            acc -= g2 * b2 * sq(n) * sq(mcol + 1) * rho(n - 1, mcol + 1);
            acc -= gc2 * b2c * sq(n + 1) * sq(mcol) * rho(n + 1, mcol - 1);
            out(n, mcol) = acc;
        }
    }
    return out;
}

}  // namespace qews
