// kernels.hpp — Laplace- and time-domain NIBA self-energies for the
// dual-coupling (DC) spin-boson model and its SB / NN / IB limits, plus the
// scalar building blocks (eps_zeta, I, Franck-Condon factor, f(lambda) in
// exact and high-temperature form).
//
// Everything is templated on the scalar type so the Talbot inversion can
// evaluate the kernels in __float128.

#pragma once

#include <complex>

#include "dcsb/bath.hpp"
#include "dcsb/errors.hpp"
#include "dcsb/real_math.hpp"
#include "dcsb/specfun.hpp"

namespace dcsb {

enum class Variant { dc, sb, nn, ib };
enum class FMode { exact, high_t };
enum class KernelScale { calibrated, paper_literal };
enum class GammaEffMode { scaled, literal };

struct KernelConfig {
    Variant variant = Variant::dc;
    FMode f_mode = FMode::high_t;
    KernelScale kernel_scale = KernelScale::calibrated;
    GammaEffMode gamma_eff_mode = GammaEffMode::scaled;
    ExponentMode exponent_mode = ExponentMode::rederived;

    double scale_factor() const {
        return kernel_scale == KernelScale::calibrated ? 2.0 : 1.0;
    }
    void validate(const PhysParams& p) const {
        if (variant == Variant::nn && p.zeta != 0.0)
            throw ConfigError("KernelConfig: NN variant requires zeta = 0");
    }
};

namespace detail {

// DomainError only at actual poles of Gamma(1-2*gc); gc slightly above 1/2
// (e.g. gamma=0.5, zeta=0.1 scaled) is a valid, finite kernel.
template <class R> void check_gamma_ratio_pole(R gc) {
    const std::complex<R> arg(R(1) - R(2) * gc, R(0));
    if (near_nonpositive_integer(arg, R(1e-10)))
        throw DomainError("kernel: Gamma(1-2*gamma_c) pole (gamma_c at a half-integer)");
}

} // namespace detail

template <class R> struct KernelScalarsT {
    R eps_zeta{};      // rad/ps
    R i_term{};        // dimensionless I
    R fc{};            // Franck-Condon factor B
    R nu{}, lambda_coeff{}, theta_coeff{};
    R gamma_eff{};     // gamma*sqrt(1+zeta^2)
    R mu{};            // ps
    // derived helpers
    R gamma_coeff{};   // gamma used inside f and nu/Lambda/Theta (mode-dependent)
    R gamma_1m2ge{};   // Gamma(1 - 2*gamma_eff)
    R cos_pi_ge{}, sin_pi_ge{};
    R opz{};           // 1 + zeta^2
    R delta_freq{};    // rad/ps
};
using KernelScalars = KernelScalarsT<double>;

inline double epsilon_zeta(const PhysParams& p) {
    const double opz = 1.0 + p.zeta * p.zeta;
    return p.zeta * p.delta_freq() / (2.0 * opz);
}

inline double i_term(const PhysParams& p, double fc) {
    const double opz = 1.0 + p.zeta * p.zeta;
    return (1.0 - 2.0 * fc) / (opz * opz) - 2.0 * (1.0 - fc) / opz + 1.0;
}

namespace detail {

// nu, Lambda, Theta of the high-T expansion; exact values at gc = 0 (the
// printed Theta has a removable defect there that would detune the free limit)
inline void high_t_coeffs(double gc, double& nu, double& lam, double& th) {
    if (gc == 0.0) {
        nu = 1.0;
        lam = 0.0;
        th = 0.0;
        return;
    }
    check_gamma_ratio_pole(gc);
    nu = std::cos(pi_d * gc) * gamma_real(1.0 + gc) * gamma_real(1.0 - 2.0 * gc) /
         gamma_real(1.0 - gc);
    const double pp = digamma(1.0 + gc), pm = digamma(1.0 - gc);
    lam = pp - pm;
    th = pm * pm - 2.0 * pm * pp - pp * pp + trigamma(1.0 + gc);
}

} // namespace detail

template <class R>
KernelScalarsT<R> kernel_scalars(const PhysParams& p, const KernelConfig& c) {
    p.validate();
    KernelScalarsT<R> s;
    const R z = R(p.zeta);
    s.opz = R(1) + z * z;
    s.mu = R(PhysParams::hbar) / (R(2) * rm::pi<R>() * R(p.kT));
    s.delta_freq = R(p.delta) / R(PhysParams::hbar);
    s.gamma_eff = R(p.gamma) * rm::sqrt(s.opz);
    s.gamma_coeff = c.gamma_eff_mode == GammaEffMode::scaled ? s.gamma_eff : R(p.gamma);
    s.eps_zeta = z * s.delta_freq / (R(2) * s.opz);
    const R wc = R(p.omega_c) / R(PhysParams::hbar);
    const R ex = c.exponent_mode == ExponentMode::rederived ? R(p.gamma) * s.opz
                                                            : R(p.gamma);
    s.fc = rm::pow(rm::pi<R>() * s.mu * wc, -ex);
    s.i_term = (R(1) - R(2) * s.fc) / (s.opz * s.opz) - R(2) * (R(1) - s.fc) / s.opz + R(1);
    detail::check_gamma_ratio_pole(double(s.gamma_eff));
    s.gamma_1m2ge =
        gamma(std::complex<R>(R(1) - R(2) * s.gamma_eff, R(0))).real();
    s.cos_pi_ge = rm::cos(rm::pi<R>() * s.gamma_eff);
    s.sin_pi_ge = rm::sin(rm::pi<R>() * s.gamma_eff);
    double nu, lam, th;
    detail::high_t_coeffs(double(s.gamma_coeff), nu, lam, th);
    s.nu = R(nu);
    s.lambda_coeff = R(lam);
    s.theta_coeff = R(th);
    return s;
}

// f(lambda), exact form: cos(pi gc) Gamma(1-2gc) mu Gamma(gc+mu lambda)/Gamma(1-gc+mu lambda)
template <class R>
std::complex<R> f_exact_t(R mu, R gc, const std::complex<R>& lam) {
    const std::complex<R> arg = gc + mu * lam;
    if (detail::near_nonpositive_integer(arg, R(1e-10)))
        throw PoleOfGamma("f_exact: gamma_c + mu*lambda at a nonpositive integer");
    detail::check_gamma_ratio_pole(gc);
    const R c = rm::cos(rm::pi<R>() * gc) *
                gamma(std::complex<R>(R(1) - R(2) * gc, R(0))).real();
    return c * mu * gamma(arg) / gamma(std::complex<R>(R(1), R(0)) - gc + mu * lam);
}

inline std::complex<double> f_exact(const PhysParams& p, double gamma_eff,
                                    const std::complex<double>& lam) {
    return f_exact_t<double>(p.mu(), gamma_eff, lam);
}

// f(lambda), high-T expansion: mu nu/(gc+mu lambda) (1 + mu Lambda lambda + mu^2 Theta lambda^2/2)
template <class R>
std::complex<R> f_high_t_t(const KernelScalarsT<R>& s, const std::complex<R>& lam) {
    const std::complex<R> poly = R(1) + s.mu * s.lambda_coeff * lam +
                                 s.mu * s.mu * s.theta_coeff / R(2) * lam * lam;
    return s.mu * s.nu * poly / (s.gamma_coeff + s.mu * lam);
}

inline std::complex<double> f_high_t(const PhysParams& p, double gamma_for_coeffs,
                                     const std::complex<double>& lam) {
    double nu, lc, th;
    detail::high_t_coeffs(gamma_for_coeffs, nu, lc, th);
    KernelScalarsT<double> s;
    s.mu = p.mu();
    s.gamma_coeff = gamma_for_coeffs;
    s.nu = nu;
    s.lambda_coeff = lc;
    s.theta_coeff = th;
    return f_high_t_t<double>(s, lam);
}

namespace detail {

template <class R>
std::complex<R> f_dispatch(const KernelScalarsT<R>& s, FMode mode,
                           const std::complex<R>& lam) {
    return mode == FMode::exact ? f_exact_t<R>(s.mu, s.gamma_coeff, lam)
                                : f_high_t_t<R>(s, lam);
}

} // namespace detail

// Sigma_DC(lambda). calibrated scale gives the exact free limit
// Sigma(gamma=0,zeta=0) = delta_freq^2/lambda.
template <class R>
std::complex<R> sigma_dc_laplace_t(const PhysParams& p, const KernelConfig& c,
                                   const std::complex<R>& lam) {
    const auto s = kernel_scalars<R>(p, c);
    const R ks = R(c.scale_factor());
    const R pref = ks * s.fc * s.fc * s.delta_freq * s.delta_freq * s.gamma_1m2ge / R(4);
    const std::complex<R> ie(R(0), s.eps_zeta);
    const std::complex<R> fp = detail::f_dispatch(s, c.f_mode, lam + ie);
    const std::complex<R> fm = detail::f_dispatch(s, c.f_mode, lam - ie);
    std::complex<R> out = pref * (s.cos_pi_ge / (s.opz * s.opz) * (fp + fm) -
                                  std::complex<R>(R(0), R(1)) * s.sin_pi_ge / s.opz *
                                      (fp - fm));
    if (p.zeta > 0.0) {
        out += ks * s.i_term * s.delta_freq * s.delta_freq * lam /
               (R(2) * (lam * lam + s.eps_zeta * s.eps_zeta));
    }
    return out;
}

template <class R>
std::complex<R> sigma_sb_laplace_t(const PhysParams& p, const KernelConfig& c,
                                   const std::complex<R>& lam) {
    PhysParams q = p;
    q.zeta = 0.0;
    return sigma_dc_laplace_t<R>(q, c, lam);
}

// Sigma_NN = Sigma_SB + ks * (1/2) * dt^2 / (lambda + dt^2 f), dt = B*delta_freq
template <class R>
std::complex<R> sigma_nn_laplace_t(const PhysParams& p, const KernelConfig& c,
                                   const std::complex<R>& lam) {
    if (p.zeta != 0.0)
        throw DomainError("sigma_nn_laplace: NN correction defined for zeta = 0 only");
    const auto s = kernel_scalars<R>(p, c);
    const R ks = R(c.scale_factor());
    const R dt2 = s.fc * s.delta_freq * s.fc * s.delta_freq;
    const std::complex<R> kcosh = dt2 * detail::f_dispatch(s, c.f_mode, lam);
    return sigma_sb_laplace_t<R>(p, c, lam) + ks * dt2 / (R(2) * (lam + kcosh));
}

inline std::complex<double> sigma_dc_laplace(const PhysParams& p, const KernelConfig& c,
                                             const std::complex<double>& lam) {
    return sigma_dc_laplace_t<double>(p, c, lam);
}
inline std::complex<double> sigma_sb_laplace(const PhysParams& p, const KernelConfig& c,
                                             const std::complex<double>& lam) {
    return sigma_sb_laplace_t<double>(p, c, lam);
}
inline std::complex<double> sigma_nn_laplace(const PhysParams& p, const KernelConfig& c,
                                             const std::complex<double>& lam) {
    return sigma_nn_laplace_t<double>(p, c, lam);
}

template <class R>
std::complex<R> sigma_laplace_t(const PhysParams& p, const KernelConfig& c,
                                const std::complex<R>& lam) {
    switch (c.variant) {
        case Variant::dc: return sigma_dc_laplace_t<R>(p, c, lam);
        case Variant::sb: return sigma_sb_laplace_t<R>(p, c, lam);
        case Variant::nn: return sigma_nn_laplace_t<R>(p, c, lam);
        default:
            throw DomainError("sigma_laplace: IB variant has no self-energy");
    }
}

// Time-domain kernel, the exact inverse transform of sigma_dc_laplace
// (exact-f mode). Carries an integrable t^{-2*gamma_c} singularity at t = 0.
// The scalar-struct overload lets inner loops reuse the precomputed scalars.
inline double sigma_dc_time(const KernelScalars& s, double ks, double t) {
    if (t < 0.0) throw DomainError("sigma_dc_time: t must be >= 0");
    const double d2 = s.delta_freq * s.delta_freq;
    if (t == 0.0) {
        if (s.gamma_coeff > 0.0)
            throw DomainError("sigma_dc_time: kernel singular at t = 0 for gamma > 0");
        return ks * 0.5 * d2 * (s.i_term + s.fc * s.fc / (s.opz * s.opz));
    }
    // (2 sinh(t/2mu))^(-2 gc), log-safe
    const double x = t / (2.0 * s.mu);
    double log_two_sinh;
    if (x < 1e-6) log_two_sinh = std::log(2.0 * x) + x * x / 6.0;
    else if (x > 350.0) log_two_sinh = x;
    else log_two_sinh = std::log(2.0 * std::sinh(x));
    const double w = std::exp(-2.0 * s.gamma_coeff * log_two_sinh);
    const double base = s.gamma_1m2ge * std::cos(pi_d * s.gamma_coeff) * w;
    const double ce = std::cos(s.eps_zeta * t), se = std::sin(s.eps_zeta * t);
    return ks * 0.5 * d2 *
           (s.i_term * ce + s.fc * s.fc * (base * s.cos_pi_ge * ce / (s.opz * s.opz) -
                                           base * s.sin_pi_ge * se / s.opz));
}

inline double sigma_dc_time(const PhysParams& p, const KernelConfig& c, double t) {
    return sigma_dc_time(kernel_scalars<double>(p, c), c.scale_factor(), t);
}

// IB-limit tunneling renormalization Omega = zeta^2 (2/pi) gamma hbar omega_c, in meV
inline double omega_ib(const PhysParams& p) {
    return p.zeta * p.zeta * (2.0 / pi_d) * p.gamma * p.omega_c;
}

} // namespace dcsb
