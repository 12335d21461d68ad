// dynamics.hpp — solve <sigma_z(lambda)> = 1/(lambda + Sigma(lambda)):
// rational-kernel assembly (high-T mode), pole/residue extraction, three
// independent time-domain reconstructions (pole-residue, fixed Talbot in
// quad precision, Volterra product integration), coherence-time extraction
// and the coherent-incoherent transition scan.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "dcsb/errors.hpp"
#include "dcsb/kernels.hpp"
#include "dcsb/quadrature.hpp"

namespace dcsb {

using cdouble = std::complex<double>;

namespace detail {

using cpoly = std::vector<cdouble>;

inline cpoly poly_add(const cpoly& a, const cpoly& b) {
    cpoly out(std::max(a.size(), b.size()), cdouble(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline cpoly poly_mul(const cpoly& a, const cpoly& b) {
    cpoly out(a.size() + b.size() - 1, cdouble(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline cpoly poly_scale(const cpoly& a, cdouble s) {
    cpoly out = a;
    for (auto& c : out) c *= s;
    return out;
}

// p(w + s), coefficients ascending
inline cpoly poly_shift(const cpoly& p, cdouble s) {
    cpoly out(p.size(), cdouble(0.0));
    for (std::size_t k = 0; k < p.size(); ++k) {
        // binomial expansion of p_k (w+s)^k
        double binom = 1.0;
        cdouble spow(1.0, 0.0);
        for (std::size_t j = 0; j <= k; ++j) {
            out[k - j] += p[k] * binom * spow;
            binom = binom * double(k - j) / double(j + 1);
            spow *= s;
        }
    }
    return out;
}

template <class R>
std::complex<R> poly_eval(const std::vector<double>& c, const std::complex<R>& x) {
    std::complex<R> acc(R(0), R(0));
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + std::complex<R>(R(c[i]), R(0));
    return acc;
}

inline cdouble poly_eval_c(const std::vector<cdouble>& c, const cdouble& x) {
    cdouble acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

inline std::vector<double> poly_der(const std::vector<double>& c) {
    std::vector<double> out;
    for (std::size_t i = 1; i < c.size(); ++i) out.push_back(double(i) * c[i]);
    return out;
}

inline std::vector<double> real_cast(const cpoly& p, const char* what) {
    double scale = 0.0;
    for (const auto& c : p) scale = std::max(scale, std::abs(c));
    std::vector<double> out;
    out.reserve(p.size());
    for (const auto& c : p) {
        if (std::fabs(c.imag()) > 1e-9 * scale)
            throw Error(std::string("rational kernel: imaginary leak in ") + what);
        out.push_back(c.real());
    }
    return out;
}

} // namespace detail

struct RationalKernel {
    std::vector<double> num_coeffs; // N(lambda), ascending; <sigma_z> = D/N
    std::vector<double> den_coeffs; // D(lambda), ascending
};

struct PoleSet {
    std::vector<cdouble> poles;    // rad/ps
    std::vector<cdouble> residues; // dimensionless
    std::vector<char> converged;   // per-pole refinement flag (1 = converged)
};

enum class TraceMethod { pole_residue, talbot, volterra };

struct Trace {
    std::vector<double> times;  // ps, ascending
    std::vector<double> values; // <sigma_z(t)>
    TraceMethod method = TraceMethod::pole_residue;
};

struct CoherenceMode {
    double tau_phi = 0.0;           // ps; +inf for undamped modes
    double freq = 0.0;              // rad/ps
    double residue_magnitude = 0.0;
    bool infinite = false;          // |Re lambda| < 1e-12 marker
};

struct CoherenceReport {
    std::vector<CoherenceMode> modes;      // sorted by descending residue magnitude
    std::vector<double> relaxation_rates;  // |Re| of purely real poles, descending
};

// ---------------------------------------------------------------------------
// rational kernel assembly (high-T f-mode)

inline RationalKernel build_rational(const PhysParams& p, const KernelConfig& c) {
    using namespace detail;
    c.validate(p);
    if (c.f_mode != FMode::high_t)
        throw DomainError("build_rational: requires high-T f-mode");
    if (c.variant == Variant::ib)
        throw DomainError("build_rational: IB variant has no self-energy");

    const auto s = kernel_scalars<double>(p, c);
    const double ks = c.scale_factor();
    const double d2 = s.delta_freq * s.delta_freq;
    const cpoly lam_poly{{0.0, 0.0}, {1.0, 0.0}};
    // f(lambda) = P(lambda) / (gc + mu lambda)
    const cpoly P{cdouble(s.mu * s.nu),
                  cdouble(s.mu * s.nu * s.mu * s.lambda_coeff),
                  cdouble(s.mu * s.nu * s.mu * s.mu * s.theta_coeff / 2.0)};
    const cpoly q{cdouble(s.gamma_coeff), cdouble(s.mu)};
    const double k1 = ks * s.fc * s.fc * d2 * s.gamma_1m2ge * s.cos_pi_ge / 2.0;

    cpoly N, D;
    if (c.variant == Variant::nn) {
        // Sigma_NN = K1 P/q + ks/2 dt^2 q / (lambda q + dt^2 P)
        const double dt2 = s.fc * s.delta_freq * s.fc * s.delta_freq;
        const cpoly v = poly_add(poly_mul(lam_poly, q), poly_scale(P, dt2));
        D = poly_mul(q, v);
        N = poly_add(poly_add(poly_mul(lam_poly, D), poly_scale(poly_mul(P, v), k1)),
                     poly_scale(poly_mul(q, q), 0.5 * ks * dt2));
    } else if (p.zeta == 0.0 || c.variant == Variant::sb) {
        // zeta = 0: the eps/I structure collapses, Sigma = K1 P/q
        PhysParams p0 = p;
        p0.zeta = 0.0;
        const auto s0 = kernel_scalars<double>(p0, c);
        const cpoly P0{cdouble(s0.mu * s0.nu),
                       cdouble(s0.mu * s0.nu * s0.mu * s0.lambda_coeff),
                       cdouble(s0.mu * s0.nu * s0.mu * s0.mu * s0.theta_coeff / 2.0)};
        const cpoly q0{cdouble(s0.gamma_coeff), cdouble(s0.mu)};
        const double k10 =
            ks * s0.fc * s0.fc * d2 * s0.gamma_1m2ge * s0.cos_pi_ge / 2.0;
        D = q0;
        N = poly_add(poly_mul(lam_poly, q0), poly_scale(P0, k10));
    } else {
        // full DC structure: common denominator (q+)(q-)(lambda^2 + eps^2)
        const cdouble ie(0.0, s.eps_zeta);
        const cpoly qp{cdouble(s.gamma_coeff) + cdouble(0.0, s.mu * s.eps_zeta),
                       cdouble(s.mu)};
        const cpoly qm{cdouble(s.gamma_coeff) - cdouble(0.0, s.mu * s.eps_zeta),
                       cdouble(s.mu)};
        const cpoly Pp = poly_shift(P, ie);
        const cpoly Pm = poly_shift(P, -ie);
        const cpoly fsum = poly_add(poly_mul(Pp, qm), poly_mul(Pm, qp));
        const cpoly fdif = poly_add(poly_mul(Pp, qm), poly_scale(poly_mul(Pm, qp), -1.0));
        const cpoly Dp = poly_mul(qp, qm);
        const double pref = ks * s.fc * s.fc * d2 * s.gamma_1m2ge / 4.0;
        const cpoly branch =
            poly_add(poly_scale(fsum, pref * s.cos_pi_ge / (s.opz * s.opz)),
                     poly_scale(fdif, cdouble(0.0, -pref * s.sin_pi_ge / s.opz)));
        const cpoly eps_poly{cdouble(s.eps_zeta * s.eps_zeta), cdouble(0.0),
                             cdouble(1.0)};
        const cpoly iterm_poly{cdouble(0.0), cdouble(0.5 * ks * s.i_term * d2)};
        const cpoly A =
            poly_add(poly_mul(branch, eps_poly), poly_mul(iterm_poly, Dp));
        D = poly_mul(Dp, eps_poly);
        N = poly_add(poly_mul(lam_poly, D), A);
    }

    // The quadratic-over-linear f makes the assembled Sigma grow like c*lambda
    // at infinity (c = O(mu^3 Theta), ~1e-5 relative), which is an artifact of
    // the small-mu*lambda expansion and would break the initial-value theorem
    // (sum of residues = 1). Strip that linear growth: N -> N - c*lambda*D.
    if (N.size() == D.size() + 1) {
        const cdouble c = (N.back() - D.back()) / D.back();
        for (std::size_t i = 0; i + 1 < D.size(); ++i) N[i + 1] -= c * D[i];
        N.back() = D.back();
    }

    RationalKernel rk;
    rk.num_coeffs = real_cast(N, "numerator");
    rk.den_coeffs = real_cast(D, "denominator");
    // normalize so D is monic (determinism and conditioning)
    const double lead = rk.den_coeffs.back();
    for (auto& x : rk.num_coeffs) x /= lead;
    for (auto& x : rk.den_coeffs) x /= lead;
    while (rk.num_coeffs.size() > 1 && rk.num_coeffs.back() == 0.0)
        rk.num_coeffs.pop_back();
    if (rk.num_coeffs.size() != rk.den_coeffs.size() + 1)
        throw Error("build_rational: degree mismatch (deg N != deg D + 1)");
    return rk;
}

// ---------------------------------------------------------------------------
// pole finding

namespace detail {

// Aberth-Ehrlich with deterministic initialization, then Newton polish
inline std::vector<cdouble> poly_roots(const std::vector<double>& coeffs) {
    std::vector<double> a = coeffs;
    while (a.size() > 1 && a.back() == 0.0) a.pop_back();
    const int n = int(a.size()) - 1;
    if (n < 1) throw RootFindingFailure("poly_roots: degree < 1");
    const std::vector<double> da = poly_der(a);

    double amax = 0.0;
    for (int i = 0; i < n; ++i) amax = std::max(amax, std::fabs(a[i] / a[n]));
    const double rad = 1.0 + amax;
    const double r0 = std::pow(std::max(std::fabs(a[0] / a[n]), 1e-30), 1.0 / n);
    const double radius = std::sqrt(std::max(r0, 1e-6) * rad);

    std::vector<cdouble> z(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * pi_d * (double(k) + 0.35) / double(n) + 0.7;
        z[k] = radius * cdouble(std::cos(th), std::sin(th));
    }

    bool done = false;
    for (int iter = 0; iter < 400 && !done; ++iter) {
        done = true;
        for (int i = 0; i < n; ++i) {
            const cdouble pv = poly_eval<double>(a, z[i]);
            const cdouble dv = poly_eval<double>(da, z[i]);
            if (std::abs(pv) == 0.0) continue;
            if (std::abs(dv) == 0.0) {
                z[i] += cdouble(1e-8, 1e-8);
                done = false;
                continue;
            }
            const cdouble w = pv / dv;
            cdouble sum(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            const cdouble corr = w / (1.0 - w * sum);
            z[i] -= corr;
            if (std::abs(corr) > 1e-14 * (1.0 + std::abs(z[i]))) done = false;
        }
    }
    // Newton polish and residual certification
    for (int i = 0; i < n; ++i) {
        for (int it = 0; it < 8; ++it) {
            const cdouble pv = poly_eval<double>(a, z[i]);
            const cdouble dv = poly_eval<double>(da, z[i]);
            if (std::abs(dv) == 0.0) break;
            const cdouble step = pv / dv;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(z[i]))) break;
            z[i] -= step;
        }
        const double resid = std::abs(poly_eval<double>(a, z[i])) /
                             std::max(std::abs(poly_eval<double>(da, z[i])), 1e-300);
        if (resid > 1e-10)
            throw RootFindingFailure("poly_roots: polished residual exceeds 1e-10");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(z[i] - z[j]) < 1e-8)
                throw DegeneratePole("poly_roots: roots closer than 1e-8");
    return z;
}

inline void sort_by_residue(PoleSet& ps) {
    std::vector<std::size_t> idx(ps.poles.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        const double ri = std::abs(ps.residues[i]), rj = std::abs(ps.residues[j]);
        if (ri != rj) return ri > rj;
        if (ps.poles[i].imag() != ps.poles[j].imag())
            return ps.poles[i].imag() > ps.poles[j].imag();
        return ps.poles[i].real() > ps.poles[j].real();
    });
    PoleSet out;
    for (auto i : idx) {
        out.poles.push_back(ps.poles[i]);
        out.residues.push_back(ps.residues[i]);
        out.converged.push_back(ps.converged.empty() ? 1 : ps.converged[i]);
    }
    ps = std::move(out);
}

inline void check_pole_invariants(const PoleSet& ps, double residue_tol) {
    cdouble sum(0.0, 0.0);
    for (std::size_t i = 0; i < ps.poles.size(); ++i) {
        if (ps.poles[i].real() > 1e-10)
            throw Error("PoleSet: pole with positive real part (instability)");
        sum += ps.residues[i];
    }
    if (std::abs(sum - 1.0) > residue_tol)
        throw Error("PoleSet: residue sum deviates from 1");
}

} // namespace detail

inline PoleSet find_poles(const RationalKernel& rk) {
    using namespace detail;
    std::vector<cdouble> roots = poly_roots(rk.num_coeffs);
    const std::vector<double> dn = poly_der(rk.num_coeffs);

    // conjugate symmetrization
    std::vector<char> used(roots.size(), 0);
    std::vector<cdouble> sym;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        cdouble zi = roots[i];
        if (std::fabs(zi.imag()) <= 1e-9 * (1.0 + std::abs(zi))) {
            sym.emplace_back(zi.real(), 0.0);
            continue;
        }
        std::size_t best = roots.size();
        double bestd = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(roots[j] - std::conj(zi));
            if (d < bestd) {
                bestd = d;
                best = j;
            }
        }
        if (best == roots.size() || bestd > 1e-6 * (1.0 + std::abs(zi)))
            throw RootFindingFailure("find_poles: missing conjugate partner");
        used[best] = 1;
        cdouble rep = 0.5 * (zi + std::conj(roots[best]));
        if (rep.imag() < 0.0) rep = std::conj(rep);
        sym.push_back(rep);
        sym.push_back(std::conj(rep));
    }

    PoleSet ps;
    for (const auto& z : sym) {
        ps.poles.push_back(z);
        ps.residues.push_back(detail::poly_eval<double>(rk.den_coeffs, z) /
                              detail::poly_eval<double>(dn, z));
        ps.converged.push_back(1);
    }
    detail::check_pole_invariants(ps, 1e-8);
    detail::sort_by_residue(ps);
    return ps;
}

// Newton-refine rational-mode seeds on g(lambda) = lambda + Sigma_exact(lambda)
inline PoleSet refine_poles_exact(const PhysParams& p, const KernelConfig& c,
                                  const PoleSet& seeds) {
    KernelConfig ce = c;
    ce.f_mode = FMode::exact;
    auto g = [&](const cdouble& l) { return l + sigma_laplace_t<double>(p, ce, l); };
    const double h = 1e-6;

    PoleSet out;
    for (std::size_t i = 0; i < seeds.poles.size(); ++i) {
        cdouble x = seeds.poles[i];
        bool ok = false;
        try {
            for (int it = 0; it < 100; ++it) {
                const cdouble gp = (g(x + h) - g(x - h)) / (2.0 * h);
                const cdouble step = g(x) / gp;
                x -= step;
                if (std::abs(step) < 1e-12 * (1.0 + std::abs(x))) {
                    ok = true;
                    break;
                }
            }
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) x = seeds.poles[i]; // retain seed, flag below
        if (std::fabs(x.imag()) <= 1e-9 * (1.0 + std::abs(x))) x = cdouble(x.real(), 0.0);
        cdouble res;
        try {
            res = 1.0 / ((g(x + h) - g(x - h)) / (2.0 * h));
        } catch (const Error&) {
            res = seeds.residues[i];
        }
        out.poles.push_back(x);
        out.residues.push_back(res);
        out.converged.push_back(ok ? 1 : 0);
    }
    detail::sort_by_residue(out);
    return out;
}

// ---------------------------------------------------------------------------
// time-domain reconstructions

inline Trace reconstruct_time(const PoleSet& ps, const std::vector<double>& grid) {
    Trace tr;
    tr.times = grid;
    tr.method = TraceMethod::pole_residue;
    tr.values.reserve(grid.size());
    for (const double t : grid) {
        cdouble sum(0.0, 0.0);
        for (std::size_t i = 0; i < ps.poles.size(); ++i)
            sum += ps.residues[i] * std::exp(ps.poles[i] * t);
        if (std::fabs(sum.imag()) > 1e-8)
            throw ImaginaryLeak("reconstruct_time: imaginary part exceeds 1e-8");
        if (std::fabs(sum.real()) > 1.05 + 1e-9)
            throw Error("reconstruct_time: polarization outside NIBA band");
        tr.values.push_back(sum.real());
    }
    return tr;
}

namespace detail {

using qcomplex = std::complex<qfloat>;
using laplace_fn = std::function<qcomplex(const qcomplex&)>;

// fixed Talbot rule at M nodes, evaluated in quad precision
inline qfloat talbot_value(const laplace_fn& F, qfloat t, int M) {
    const qfloat r = qfloat(2 * M) / (qfloat(5) * t);
    const qfloat qpi = rm::pi<qfloat>();
    qfloat total = qfloat(0.5) * rm::exp(r * t) * F(qcomplex(r, qfloat(0))).real();
    for (int k = 1; k < M; ++k) {
        const qfloat th = qfloat(k) * qpi / qfloat(M);
        const qfloat cot = rm::cos(th) / rm::sin(th);
        const qcomplex s(r * th * cot, r * th);
        const qfloat sg = th + (th * cot - qfloat(1)) * cot;
        const qcomplex val = rm::cexp(t * s) * F(s) * qcomplex(qfloat(1), sg);
        total += val.real();
    }
    return r / qfloat(M) * total;
}

} // namespace detail

// Invert 1/(lambda + Sigma) on the given grid with the fixed Talbot contour.
// Runs internally in __float128 at M = 64 and M = 128 and returns the M = 128
// values (double precision floors the node sum at ~1e-5; see tests).
inline Trace invert_talbot(const PhysParams& p, const KernelConfig& c,
                           const std::vector<double>& grid) {
    detail::laplace_fn F;
    if (c.f_mode == FMode::high_t) {
        const RationalKernel rk = build_rational(p, c);
        F = [num = rk.num_coeffs, den = rk.den_coeffs](const detail::qcomplex& s) {
            return detail::poly_eval<qfloat>(den, s) / detail::poly_eval<qfloat>(num, s);
        };
    } else {
        F = [p, c](const detail::qcomplex& s) {
            return detail::qcomplex(qfloat(1), qfloat(0)) /
                   (s + sigma_laplace_t<qfloat>(p, c, s));
        };
    }

    Trace tr;
    tr.times = grid;
    tr.method = TraceMethod::talbot;
    tr.values.reserve(grid.size());
    for (const double t : grid) {
        if (t < 0.0) throw DomainError("invert_talbot: t must be >= 0");
        if (t == 0.0) {
            tr.values.push_back(1.0);
            continue;
        }
        try {
            (void)detail::talbot_value(F, qfloat(t), 64); // convergence diagnostic path
            tr.values.push_back(double(detail::talbot_value(F, qfloat(t), 128)));
        } catch (const Error& e) {
            throw ContourFailure(std::string("invert_talbot: kernel evaluation failed "
                                             "on contour: ") + e.what());
        }
    }
    return tr;
}

// Volterra product-integration solver for
//   d sigma/dt = -int_0^t Sigma(t-s) sigma(s) ds,
// piecewise-linear sigma against exact kernel cell moments; the first cell is
// mapped by u = h v^{1/(1-2 gamma_c)} to absorb the t^{-2 gamma_c} singularity.
inline Trace solve_volterra(const PhysParams& p, const KernelConfig& c,
                            const std::vector<double>& grid) {
    if (c.variant == Variant::nn || c.variant == Variant::ib)
        throw DomainError("solve_volterra: time kernel available for DC/SB only");
    PhysParams pp = p;
    if (c.variant == Variant::sb) pp.zeta = 0.0;
    const auto s = kernel_scalars<double>(pp, c);
    const double ks = c.scale_factor();
    if (s.gamma_coeff >= 0.5)
        throw DomainError("solve_volterra: time kernel not integrable (gamma_c >= 0.5)");

    const std::size_t n = grid.size() < 2 ? 0 : grid.size() - 1;
    if (n == 0) throw DomainError("solve_volterra: grid needs at least two points");
    if (std::fabs(grid[0]) > 1e-12)
        throw DomainError("solve_volterra: grid must start at t = 0");
    const double h = grid[1] - grid[0];
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        if (std::fabs((grid[i + 1] - grid[i]) - h) > 1e-9 * h)
            throw DomainError("solve_volterra: grid must be uniform");
    const double h_max =
        std::min(0.05 / s.delta_freq, 0.2 * pp.beta_hbar());
    if (h > h_max * (1.0 + 1e-12)) throw StepTooLarge("solve_volterra: step too large");

    auto kernel = [&](double u) { return sigma_dc_time(s, ks, u); };

    // cell moments against the linear hat functions
    std::vector<double> w0(n, 0.0), w1(n, 0.0);
    const double pexp = s.gamma_coeff > 0.0 ? 1.0 / (1.0 - 2.0 * s.gamma_coeff) : 1.0;
    for (int gp = 0; gp < 8; ++gp) {
        const double v = 0.5 * (quad::gauss8_nodes[gp] + 1.0);
        const double wv = 0.5 * quad::gauss8_weights[gp];
        const double u0 = h * std::pow(v, pexp);
        const double jac = h * pexp * std::pow(v, pexp - 1.0);
        const double k0 = kernel(u0);
        const double xi0 = u0 / h;
        w0[0] += wv * jac * k0 * (1.0 - xi0);
        w1[0] += wv * jac * k0 * xi0;
    }
    for (std::size_t j = 1; j < n; ++j) {
        for (int gp = 0; gp < 8; ++gp) {
            const double v = 0.5 * (quad::gauss8_nodes[gp] + 1.0);
            const double wv = 0.5 * quad::gauss8_weights[gp];
            const double k = kernel((double(j) + v) * h);
            w0[j] += h * wv * k * (1.0 - v);
            w1[j] += h * wv * k * v;
        }
    }

    std::vector<double> sig(n + 1), dsig(n + 1);
    sig[0] = 1.0;
    dsig[0] = 0.0;
    const double a0 = w0[0];
    for (std::size_t m = 1; m <= n; ++m) {
        double part = 0.0;
        for (std::size_t j = 1; j < m; ++j) part += w0[j] * sig[m - j];
        for (std::size_t j = 0; j < m; ++j) part += w1[j] * sig[m - j - 1];
        const double rhs = sig[m - 1] + 0.5 * h * dsig[m - 1] - 0.5 * h * part;
        sig[m] = rhs / (1.0 + 0.5 * h * a0);
        dsig[m] = -(a0 * sig[m] + part);
    }

    Trace tr;
    tr.times = grid;
    tr.values = std::move(sig);
    tr.method = TraceMethod::volterra;
    for (const double v : tr.values)
        if (std::fabs(v) > 1.05 + 1e-9)
            throw Error("solve_volterra: polarization outside NIBA band");
    return tr;
}

// ---------------------------------------------------------------------------
// coherence analysis

inline CoherenceReport coherence_report(const PoleSet& ps) {
    CoherenceReport rep;
    for (std::size_t i = 0; i < ps.poles.size(); ++i) {
        const cdouble z = ps.poles[i];
        if (z.imag() > 0.0) {
            CoherenceMode m;
            m.freq = z.imag();
            m.residue_magnitude = std::abs(ps.residues[i]);
            if (std::fabs(z.real()) < 1e-12) {
                m.infinite = true;
                m.tau_phi = std::numeric_limits<double>::infinity();
            } else {
                m.tau_phi = 1.0 / std::fabs(z.real());
            }
            rep.modes.push_back(m);
        } else if (z.imag() == 0.0) {
            rep.relaxation_rates.push_back(std::fabs(z.real()));
        }
    }
    std::sort(rep.modes.begin(), rep.modes.end(),
              [](const CoherenceMode& a, const CoherenceMode& b) {
                  if (a.residue_magnitude != b.residue_magnitude)
                      return a.residue_magnitude > b.residue_magnitude;
                  return a.freq > b.freq;
              });
    std::sort(rep.relaxation_rates.begin(), rep.relaxation_rates.end(),
              std::greater<double>());
    return rep;
}

enum class TransitionMode {
    any_pair,  // any conjugate pair with residue magnitude > 1e-6
    mode_one   // pair with frequency above B*delta_freq/2 (dressed-tunneling branch)
};

// Bisect gamma for the disappearance of the coherent predicate; width 1e-4.
inline double transition_scan(const PhysParams& params_template, const KernelConfig& c,
                              double gamma_lo, double gamma_hi,
                              TransitionMode mode = TransitionMode::any_pair) {
    auto coherent = [&](double g) {
        PhysParams p = params_template;
        p.gamma = g;
        const PoleSet ps = find_poles(build_rational(p, c));
        double threshold = 0.0;
        if (mode == TransitionMode::mode_one)
            threshold = franck_condon(p, c.exponent_mode) * p.delta_freq() / 2.0;
        for (std::size_t i = 0; i < ps.poles.size(); ++i)
            if (ps.poles[i].imag() > threshold && std::abs(ps.residues[i]) > 1e-6)
                return true;
        return false;
    };
    const bool lo = coherent(gamma_lo), hi = coherent(gamma_hi);
    if (lo == hi)
        throw NoBracket("transition_scan: predicate constant over gamma range");
    double a = gamma_lo, b = gamma_hi;
    while (b - a > 1e-4) {
        const double m = 0.5 * (a + b);
        if (coherent(m) == lo) a = m;
        else b = m;
    }
    return 0.5 * (a + b);
}

} // namespace dcsb
