// acceptance harness: one PASS/FAIL line per criterion, exit code = #failures.
// argv[1] = path to the dcsb CLI binary (for the determinism criterion).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "dcsb/dynamics.hpp"

using namespace dcsb;
namespace fs = std::filesystem;
using clk = std::chrono::steady_clock;

static int g_fails = 0;

static void report(int n, bool ok, const std::string& msg) {
    std::printf("C%d %s: %s\n", n, ok ? "PASS" : "FAIL", msg.c_str());
    if (!ok) ++g_fails;
}

static PhysParams params(double g, double z) {
    PhysParams p;
    p.gamma = g;
    p.zeta = z;
    return p;
}

static std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / double(n - 1);
    return out;
}

static double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

template <class F>
static void guarded(int n, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(n, false, std::string("exception: ") + e.what());
    }
}

// 1. free limit: <sigma_z(t)> = cos(Delta_freq t) to 1e-6 on [0, 50], < 1 s
static void c1() {
    const auto t0 = clk::now();
    const PhysParams p = params(0.0, 0.0);
    const PoleSet ps = find_poles(build_rational(p, KernelConfig{}));
    const auto grid = linspace(0.0, 50.0, 2001);
    const Trace tr = reconstruct_time(ps, grid);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err = std::max(err, std::fabs(tr.values[i] - std::cos(p.delta_freq() * grid[i])));
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |sigma_z - cos| = %.3e (limit 1e-6), %.2f s",
                  err, dt);
    report(1, err <= 1e-6 && dt < 1.0, buf);
}

// 2. SB coherent-incoherent transition gamma* in [0.007, 0.017], < 10 s
static void c2() {
    const auto t0 = clk::now();
    KernelConfig c;
    c.variant = Variant::sb;
    const double gs =
        transition_scan(params(0.0, 0.0), c, 0.001, 0.1, TransitionMode::any_pair);
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "gamma* = %.5f (required [0.007, 0.017]), %.2f s",
                  gs, dt);
    report(2, gs >= 0.007 && gs <= 0.017 && dt < 10.0, buf);
}

// 3. coherence revival: DC zeta=0.1, gamma=0.1 -> pair with |res| > 1e-3 and
//    tau_phi in [50, 2000] ps
static void c3() {
    const auto t0 = clk::now();
    const PoleSet ps = find_poles(build_rational(params(0.1, 0.1), KernelConfig{}));
    double best_tau = 0.0, best_res = 0.0;
    for (std::size_t i = 0; i < ps.poles.size(); ++i)
        if (ps.poles[i].imag() > 0.0 && std::abs(ps.residues[i]) > 1e-3) {
            const double tau = 1.0 / std::fabs(ps.poles[i].real());
            if (tau > best_tau) {
                best_tau = tau;
                best_res = std::abs(ps.residues[i]);
            }
        }
    const double dt = seconds_since(t0);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "longest coherent tau_phi = %.2f ps, |res| = %.4f "
                  "(required tau in [50, 2000]), %.2f s",
                  best_tau, best_res, dt);
    report(3, best_tau >= 50.0 && best_tau <= 2000.0 && dt < 5.0, buf);
}

// 4. zeta=0.1 trend: long-lived mode tau_phi nondecreasing over
//    gamma in {0.1..0.5}; the mode never dies over (0, 0.5]
static void c4() {
    const auto t0 = clk::now();
    auto longest_tau = [](double g) {
        const PoleSet ps = find_poles(build_rational(params(g, 0.1), KernelConfig{}));
        double best = -1.0;
        for (std::size_t i = 0; i < ps.poles.size(); ++i)
            if (ps.poles[i].imag() > 0.0 && std::abs(ps.residues[i]) > 1e-6)
                best = std::max(best, 1.0 / std::fabs(ps.poles[i].real()));
        return best;
    };
    bool monotone = true, persistent = true;
    std::ostringstream taus;
    double prev = -1.0;
    for (const double g : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        const double tau = longest_tau(g);
        taus << (prev < 0 ? "" : ", ") << tau;
        if (tau < prev) monotone = false;
        prev = tau;
    }
    for (int i = 1; i <= 25; ++i)
        if (longest_tau(0.02 * i) < 0.0) persistent = false;
    const double dt = seconds_since(t0);
    report(4, monotone && persistent && dt < 30.0,
           "tau_phi(gamma=0.1..0.5) = {" + taus.str() + "} ps, coherent mode " +
               (persistent ? "persists" : "DIES") + " over (0, 0.5]");
}

// 5. transition ordering: gamma*(0.1) <= gamma*(0.05) <= gamma*(0) for mode 1
static void c5() {
    KernelConfig c;
    auto star = [&](double z) {
        return transition_scan(params(0.0, z), c, 0.001, 0.1, TransitionMode::mode_one);
    };
    const double s10 = star(0.1), s05 = star(0.05), s00 = star(0.0);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "gamma*: zeta=0.1 -> %.5f, zeta=0.05 -> %.5f, zeta=0 -> %.5f",
                  s10, s05, s00);
    report(5, s10 <= s05 && s05 <= s00, buf);
}

// 6. NN vs DC at gamma=0.1: faster oscillation, shorter coherence
static void c6() {
    KernelConfig cnn;
    cnn.variant = Variant::nn;
    const PoleSet nn = find_poles(build_rational(params(0.1, 0.0), cnn));
    const PoleSet dc = find_poles(build_rational(params(0.1, 0.1), KernelConfig{}));
    auto stats = [](const PoleSet& ps, double& fmax, double& tmax) {
        fmax = 0.0;
        tmax = 0.0;
        for (std::size_t i = 0; i < ps.poles.size(); ++i)
            if (ps.poles[i].imag() > 0.0 && std::abs(ps.residues[i]) > 1e-6) {
                fmax = std::max(fmax, ps.poles[i].imag());
                tmax = std::max(tmax, 1.0 / std::fabs(ps.poles[i].real()));
            }
    };
    double fnn, tnn, fdc, tdc;
    stats(nn, fnn, tnn);
    stats(dc, fdc, tdc);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "freq: NN %.4f vs DC %.4f rad/ps; tau: NN %.2f vs DC %.2f ps",
                  fnn, fdc, tnn, tdc);
    report(6, fnn > fdc && tnn < tdc, buf);
}

// 7. three-way oracle over t in [0, 200] on the (gamma, zeta) grid
static void c7() {
    const auto t0 = clk::now();
    double worst_pt = 0.0, worst_vt = 0.0;
    for (const double g : {0.05, 0.1, 0.3}) {
        for (const double z : {0.0, 0.05, 0.1}) {
            const PhysParams p = params(g, z);
            KernelConfig c;
            const auto coarse = linspace(0.0, 200.0, 101);
            const Trace pr =
                reconstruct_time(find_poles(build_rational(p, c)), coarse);
            const Trace tb = invert_talbot(p, c, coarse);
            for (std::size_t i = 0; i < coarse.size(); ++i)
                worst_pt = std::max(worst_pt, std::fabs(pr.values[i] - tb.values[i]));

            KernelConfig ce = c;
            ce.f_mode = FMode::exact;
            const double h = 0.005;
            const Trace vo = solve_volterra(p, c, linspace(0.0, 200.0, 40001));
            const auto sub = linspace(0.0, 200.0, 41);
            const Trace tbe = invert_talbot(p, ce, sub);
            for (std::size_t i = 0; i < sub.size(); ++i) {
                const std::size_t j = std::size_t(std::llround(sub[i] / h));
                worst_vt =
                    std::max(worst_vt, std::fabs(vo.values[j] - tbe.values[i]));
            }
        }
    }
    const double dt = seconds_since(t0);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "pole vs Talbot %.3e (limit 1e-6); Volterra vs Talbot(exact) "
                  "%.3e (limit 5e-3); %.1f s (limit 120)",
                  worst_pt, worst_vt, dt);
    report(7, worst_pt <= 1e-6 && worst_vt <= 5e-3 && dt < 120.0, buf);
}

// 8. zeta = 0 reduction identity to 1e-12 relative on 40 complex points
static void c8() {
    const PhysParams p = params(0.15, 0.0);
    KernelConfig c;
    std::mt19937 rng(88);
    std::uniform_real_distribution<double> ur(0.01, 2.0), ui(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        const cdouble l(ur(rng), ui(rng));
        const cdouble dc = sigma_dc_laplace(p, c, l);
        const cdouble sb = sigma_sb_laplace(p, c, l);
        worst = std::max(worst, std::abs(dc - sb) / std::abs(sb));
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "max relative deviation %.3e (limit 1e-12)", worst);
    report(8, worst <= 1e-12, buf);
}

// 9. structural invariants across the sweep grid + special-function identities
static void c9() {
    double worst_sum = 0.0, worst_re = -1e30;
    for (int i = 0; i < 20; ++i) {
        const double g = 0.024 * (i + 1); // 0.024 .. 0.48
        for (const double z : {0.0, 0.05, 0.1, 0.15, 0.2}) {
            const PoleSet ps = find_poles(build_rational(params(g, z), KernelConfig{}));
            cdouble sum(0.0);
            for (std::size_t k = 0; k < ps.poles.size(); ++k) {
                sum += ps.residues[k];
                worst_re = std::max(worst_re, ps.poles[k].real());
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        }
    }
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> ux(-6.0, 6.0), uy(0.1, 6.0);
    double worst_rec = 0.0, worst_ref = 0.0;
    const double pi = rm::pi<double>();
    for (int i = 0; i < 50; ++i) {
        const cdouble zc(ux(rng), uy(rng));
        worst_rec = std::max(worst_rec, std::abs(zc * gamma(zc) - gamma(zc + 1.0)) /
                                            std::abs(gamma(zc + 1.0)));
        const cdouble refl = pi / std::sin(pi * zc);
        worst_ref = std::max(
            worst_ref, std::abs(gamma(zc) * gamma(1.0 - zc) - refl) / std::abs(refl));
    }
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "max |sum(res)-1| = %.3e (1e-8); max Re(pole) = %.3e (1e-10); "
                  "gamma recurrence %.3e (1e-12), reflection %.3e (1e-10)",
                  worst_sum, worst_re, worst_rec, worst_ref);
    report(9, worst_sum <= 1e-8 && worst_re <= 1e-10 && worst_rec <= 1e-12 &&
                  worst_ref <= 1e-10,
           buf);
}

// 10. determinism: sweep CSV byte-identical across reruns and --jobs 1 vs 8
static void c10(const std::string& cli) {
    if (cli.empty()) {
        report(10, false, "CLI binary path not supplied");
        return;
    }
    const auto tmp = fs::temp_directory_path();
    auto run = [&](const std::string& out, int jobs) {
        const std::string cmd = "\"" + cli +
                                "\" sweep --gamma-range 0.05:0.45:9 "
                                "--zeta-list 0,0.1 --jobs " +
                                std::to_string(jobs) + " --out \"" + out +
                                "\" > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    auto slurp = [](const std::string& path) {
        std::ifstream is(path, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    const std::string a = (tmp / "dcsb_acc_a.csv").string();
    const std::string b = (tmp / "dcsb_acc_b.csv").string();
    const std::string c = (tmp / "dcsb_acc_c.csv").string();
    const bool ok_run = run(a, 1) == 0 && run(b, 8) == 0 && run(c, 1) == 0;
    const std::string sa = slurp(a), sb = slurp(b), sc = slurp(c);
    const bool identical = ok_run && !sa.empty() && sa == sb && sa == sc;
    for (const auto& f : {a, b, c}) {
        std::error_code ec;
        fs::remove(f, ec);
        fs::remove(f + ".meta.json", ec);
    }
    report(10, identical,
           ok_run ? (identical ? "sweep CSV byte-identical across reruns and job counts"
                               : "sweep CSV differs between runs")
                  : "CLI sweep invocation failed");
}

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    guarded(1, c1);
    guarded(2, c2);
    guarded(3, c3);
    guarded(4, c4);
    guarded(5, c5);
    guarded(6, c6);
    guarded(7, c7);
    guarded(8, c8);
    guarded(9, c9);
    guarded(10, [&] { c10(cli); });
    std::printf("%d criterion(s) failed\n", g_fails);
    return g_fails;
}
