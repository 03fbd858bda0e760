#include "regfm/hydrosim.hpp"

#include <fftw3.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "regfm/errors.hpp"

namespace regfm {

double Grid1D::dx() const { return 2.0 * M_PI / M; }
double Grid1D::x(int i) const { return i * dx(); }

double CompiledScalar::eval(const double* r) const {
    double acc = 0.0;
    for (const auto& t : terms) {
        double v = t.c;
        for (const auto& [var, e] : t.pw) {
            double y = base.empty() ? r[var] : r[var] - base[var];
            for (int k = 0; k < e; ++k) v *= y;
        }
        acc += v;
    }
    return acc;
}

namespace {

CompiledScalar compile_from_terms(const Poly& p, std::vector<double> base, int ncomp) {
    CompiledScalar cs;
    cs.ncomp = ncomp;
    cs.base = std::move(base);
    for (const auto& [m, c] : p.terms()) {
        CompiledScalar::Term t;
        t.c = c.get_d();
        t.pw = m.factors;
        cs.terms.push_back(std::move(t));
    }
    return cs;
}

}  // namespace

CompiledScalar compile_scalar(const Poly& p) { return compile_from_terms(p, {}, p.nvars()); }

CompiledScalar compile_scalar(const TruncSeries& s) {
    std::vector<double> base;
    base.reserve(s.base().size());
    for (const auto& q : s.base()) base.push_back(q.get_d());
    return compile_from_terms(s.shifted_poly(), std::move(base), s.nvars());
}

CompiledMatrix compile_matrix(const OpMatrix<Poly>& L) {
    CompiledMatrix M;
    M.n = L.n;
    M.a.reserve(L.n * L.n);
    for (int i = 0; i < L.n; ++i)
        for (int j = 0; j < L.n; ++j) M.a.push_back(compile_scalar(L.at(i, j)));
    return M;
}

namespace {

// 4th-order centred derivative on the periodic grid.
void deriv_x(const std::vector<double>& u, int M, int comp, double dx, std::vector<double>& out) {
    const double* f = u.data() + comp * M;
    double inv = 1.0 / (12.0 * dx);
    for (int i = 0; i < M; ++i) {
        int ip1 = (i + 1) % M, ip2 = (i + 2) % M;
        int im1 = (i + M - 1) % M, im2 = (i + M - 2) % M;
        out[comp * M + i] = (-f[ip2] + 8.0 * f[ip1] - 8.0 * f[im1] + f[im2]) * inv;
    }
}

struct SpectralFilter {
    int M;
    double alpha;
    int power;
    fftw_plan fwd = nullptr, bwd = nullptr;
    std::vector<double> work;
    fftw_complex* spec = nullptr;

    SpectralFilter(int M_, double alpha_, int power_) : M(M_), alpha(alpha_), power(power_) {
        work.resize(M);
        spec = fftw_alloc_complex(M / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(M, work.data(), spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(M, spec, work.data(), FFTW_ESTIMATE);
    }
    ~SpectralFilter() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(spec);
    }

    // Damp modes above 2/3 of the Nyquist index by exp(-alpha (k/kmax)^power).
    void apply(std::vector<double>& u, int ncomp) {
        int kmax = M / 2;
        int kcut = (2 * kmax) / 3;
        for (int c = 0; c < ncomp; ++c) {
            std::copy(u.begin() + c * M, u.begin() + (c + 1) * M, work.begin());
            fftw_execute(fwd);
            for (int k = kcut + 1; k <= kmax; ++k) {
                double sigma = std::exp(-alpha * std::pow((double)k / kmax, power));
                spec[k][0] *= sigma;
                spec[k][1] *= sigma;
            }
            fftw_execute(bwd);
            for (int i = 0; i < M; ++i) u[c * M + i] = work[i] / M;
        }
    }
};

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Max row-sum norm of W over the grid: an upper bound for the spectral
// radius of the quasilinear system.
double velocity_bound(const CompiledMatrix& W, const std::vector<double>& u, int M) {
    int n = W.n;
    double bound = 0.0;
    std::vector<double> state(n);
    for (int i = 0; i < M; ++i) {
        for (int c = 0; c < n; ++c) state[c] = u[c * M + i];
        for (int r = 0; r < n; ++r) {
            double row = 0.0;
            for (int cidx = 0; cidx < n; ++cidx) row += std::fabs(W.at(r, cidx).eval(state.data()));
            bound = std::max(bound, row);
        }
    }
    return bound;
}

void rhs(const CompiledMatrix& W, const std::vector<double>& u, int M, double dx,
         std::vector<double>& out, std::vector<double>& ux) {
    int n = W.n;
    for (int c = 0; c < n; ++c) deriv_x(u, M, c, dx, ux);
    std::vector<double> state(n);
    for (int i = 0; i < M; ++i) {
        for (int c = 0; c < n; ++c) state[c] = u[c * M + i];
        for (int r = 0; r < n; ++r) {
            double acc = 0.0;
            for (int c = 0; c < n; ++c) acc += W.at(r, c).eval(state.data()) * ux[c * M + i];
            out[r * M + i] = acc;
        }
    }
}

}  // namespace

Trajectory evolve(const CompiledMatrix& W, const std::vector<double>& r0, Grid1D grid,
                  const EvolveOptions& opts) {
    int M = grid.M, n = W.n;
    if (M < 16) throw MathError("evolve: grid needs at least 16 cells");
    if ((int)r0.size() != n * M) throw MathError("evolve: initial data size mismatch");
    double dx = grid.dx();

    std::vector<double> u = r0;
    std::vector<double> ux(n * M);
    for (int c = 0; c < n; ++c) deriv_x(u, M, c, dx, ux);
    double gx0 = std::max(max_abs(ux), 1e-12);

    double lam0 = std::max(velocity_bound(W, u, M), 1e-12);
    double dt0 = opts.cfl * dx / lam0;
    int nsteps = std::max(1, (int)std::ceil(opts.T / dt0 - 1e-12));
    double dt = opts.T / nsteps;

    Trajectory traj;
    traj.grid = grid;
    traj.ncomp = n;
    traj.dt = dt;
    traj.snap_dt = dt * opts.snap_stride;
    traj.cfl = opts.cfl;
    traj.filtered = opts.filter;
    traj.times.push_back(0.0);
    traj.states.push_back(u);

    SpectralFilter filter(M, opts.filter_alpha, opts.filter_power);
    std::vector<double> k1(n * M), k2(n * M), k3(n * M), k4(n * M), tmp(n * M);

    for (int step = 1; step <= nsteps; ++step) {
        double lam = velocity_bound(W, u, M);
        if (lam * std::fabs(dt) / dx > opts.cfl * 1.10 + 1e-12)
            throw CflViolationError("evolve: CFL bound exceeded at t = " +
                                    std::to_string((step - 1) * dt));
        rhs(W, u, M, dx, k1, ux);
        for (int i = 0; i < n * M; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
        rhs(W, tmp, M, dx, k2, ux);
        for (int i = 0; i < n * M; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
        rhs(W, tmp, M, dx, k3, ux);
        for (int i = 0; i < n * M; ++i) tmp[i] = u[i] + dt * k3[i];
        rhs(W, tmp, M, dx, k4, ux);
        for (int i = 0; i < n * M; ++i)
            u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (opts.filter) filter.apply(u, n);

        for (double v : u)
            if (!std::isfinite(v)) throw BlowupDetectedError("evolve: non-finite state");
        for (int c = 0; c < n; ++c) deriv_x(u, M, c, dx, ux);
        if (max_abs(ux) > opts.blowup_factor * gx0)
            throw BlowupDetectedError("evolve: gradient blow-up at t = " +
                                      std::to_string(step * dt));

        if (step % opts.snap_stride == 0 || step == nsteps) {
            traj.times.push_back(step * dt);
            traj.states.push_back(u);
        }
    }
    return traj;
}

std::vector<PdeResidualRecord> pavlov_pde_residual(const Trajectory& traj,
                                                   const std::map<int, CompiledScalar>& chain,
                                                   int alpha_lo, int alpha_hi) {
    int M = traj.grid.M, n = traj.ncomp;
    double dx = traj.grid.dx();
    int S = (int)traj.states.size();
    if (S < 3) throw MathError("pavlov_pde_residual: need at least 3 snapshots");

    // C^alpha(r(x,t)) for every needed alpha and snapshot.
    std::map<int, std::vector<std::vector<double>>> C;
    for (int a = alpha_lo - 1; a <= alpha_hi; ++a) {
        auto it = chain.find(a);
        if (it == chain.end())
            throw MathError("pavlov_pde_residual: chain entry " + std::to_string(a) + " missing");
        std::vector<std::vector<double>> field(S, std::vector<double>(M));
        std::vector<double> state(n);
        for (int s = 0; s < S; ++s)
            for (int i = 0; i < M; ++i) {
                for (int c = 0; c < n; ++c) state[c] = traj.states[s][c * M + i];
                field[s][i] = it->second.eval(state.data());
            }
        C[a] = std::move(field);
    }

    std::vector<PdeResidualRecord> out;
    for (int a = alpha_lo; a <= alpha_hi; ++a) {
        const auto& Ca = C[a];
        const auto& Cam1 = C[a - 1];
        const auto& C0 = C[0];
        double mx = 0.0, sumsq = 0.0;
        long count = 0;
        std::vector<double> dxCa(M), dxCam1(M);
        for (int s = 1; s + 1 < S; ++s) {
            double inv2dt = 1.0 / (traj.times[s + 1] - traj.times[s - 1]);
            double inv12dx = 1.0 / (12.0 * dx);
            for (int i = 0; i < M; ++i) {
                int ip1 = (i + 1) % M, ip2 = (i + 2) % M;
                int im1 = (i + M - 1) % M, im2 = (i + M - 2) % M;
                dxCa[i] = (-Ca[s][ip2] + 8 * Ca[s][ip1] - 8 * Ca[s][im1] + Ca[s][im2]) * inv12dx;
                dxCam1[i] =
                    (-Cam1[s][ip2] + 8 * Cam1[s][ip1] - 8 * Cam1[s][im1] + Cam1[s][im2]) * inv12dx;
            }
            for (int i = 0; i < M; ++i) {
                double dtC = (Cam1[s + 1][i] - Cam1[s - 1][i]) * inv2dt;
                double res = dtC - dxCa[i] + C0[s][i] * dxCam1[i];
                mx = std::max(mx, std::fabs(res));
                sumsq += res * res;
                ++count;
            }
        }
        out.push_back(PdeResidualRecord{a, M, traj.snap_dt, mx,
                                        count ? std::sqrt(sumsq / count) : 0.0});
    }
    return out;
}

namespace {

// Fourier differentiation; exact to round-off for smooth periodic data, so
// the semi-discrete flows inherit the continuum commutation relations.
struct SpectralDeriv {
    int M;
    fftw_plan fwd = nullptr, bwd = nullptr;
    std::vector<double> work;
    fftw_complex* spec = nullptr;

    explicit SpectralDeriv(int M_) : M(M_) {
        work.resize(M);
        spec = fftw_alloc_complex(M / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(M, work.data(), spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(M, spec, work.data(), FFTW_ESTIMATE);
    }
    ~SpectralDeriv() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(spec);
    }
    void apply(const std::vector<double>& u, int comp, std::vector<double>& out) {
        std::copy(u.begin() + comp * M, u.begin() + (comp + 1) * M, work.begin());
        fftw_execute(fwd);
        for (int k = 0; k <= M / 2; ++k) {
            double re = spec[k][0], im = spec[k][1];
            double w = (k == M / 2) ? 0.0 : (double)k;
            spec[k][0] = -w * im;
            spec[k][1] = w * re;
        }
        fftw_execute(bwd);
        for (int i = 0; i < M; ++i) out[comp * M + i] = work[i] / M;
    }
};

void rhs_spectral(const CompiledMatrix& W, const std::vector<double>& u, int M,
                  SpectralDeriv& der, std::vector<double>& out, std::vector<double>& ux) {
    int n = W.n;
    for (int c = 0; c < n; ++c) der.apply(u, c, ux);
    std::vector<double> state(n);
    for (int i = 0; i < M; ++i) {
        for (int c = 0; c < n; ++c) state[c] = u[c * M + i];
        for (int r = 0; r < n; ++r) {
            double acc = 0.0;
            for (int c = 0; c < n; ++c) acc += W.at(r, c).eval(state.data()) * ux[c * M + i];
            out[r * M + i] = acc;
        }
    }
}

// RK4 march by a signed offset delta in `substeps` fixed steps, no filter.
std::vector<double> short_evolve(const CompiledMatrix& W, const std::vector<double>& r0,
                                 Grid1D grid, double delta, int substeps,
                                 SpectralDeriv* der = nullptr) {
    int M = grid.M, n = W.n;
    double dx = grid.dx();
    double dt = delta / substeps;
    std::vector<double> u = r0, ux(n * M), k1(n * M), k2(n * M), k3(n * M), k4(n * M),
        tmp(n * M);
    auto eval_rhs = [&](const std::vector<double>& in, std::vector<double>& out) {
        if (der)
            rhs_spectral(W, in, M, *der, out, ux);
        else
            rhs(W, in, M, dx, out, ux);
    };
    for (int s = 0; s < substeps; ++s) {
        eval_rhs(u, k1);
        for (int i = 0; i < n * M; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
        eval_rhs(tmp, k2);
        for (int i = 0; i < n * M; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
        eval_rhs(tmp, k3);
        for (int i = 0; i < n * M; ++i) tmp[i] = u[i] + dt * k3[i];
        eval_rhs(tmp, k4);
        for (int i = 0; i < n * M; ++i)
            u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    for (double v : u)
        if (!std::isfinite(v)) throw BlowupDetectedError("short_evolve: non-finite state");
    return u;
}

void eval_field(const CompiledScalar& f, const std::vector<double>& u, int n, int M,
                std::vector<double>& out) {
    std::vector<double> state(n);
    for (int i = 0; i < M; ++i) {
        for (int c = 0; c < n; ++c) state[c] = u[c * M + i];
        out[i] = f.eval(state.data());
    }
}

}  // namespace

DkpResidual dkp_residual(const CompiledMatrix& Wy, const CompiledMatrix& Wt,
                         const CompiledScalar& V, const CompiledScalar& Wfun,
                         const std::vector<double>& r0, Grid1D grid, double delta, int substeps) {
    int M = grid.M, n = Wy.n;
    double dx = grid.dx();
    std::vector<double> yp = short_evolve(Wy, r0, grid, delta, substeps);
    std::vector<double> ym = short_evolve(Wy, r0, grid, -delta, substeps);
    std::vector<double> tp = short_evolve(Wt, r0, grid, delta, substeps);
    std::vector<double> tm = short_evolve(Wt, r0, grid, -delta, substeps);

    std::vector<double> Vyp(M), Vym(M), Vtp(M), Vtm(M), Wyp(M), Wym(M), V0(M), W0(M);
    eval_field(V, yp, n, M, Vyp);
    eval_field(V, ym, n, M, Vym);
    eval_field(V, tp, n, M, Vtp);
    eval_field(V, tm, n, M, Vtm);
    eval_field(Wfun, yp, n, M, Wyp);
    eval_field(Wfun, ym, n, M, Wym);
    eval_field(V, r0, n, M, V0);
    eval_field(Wfun, r0, n, M, W0);

    double inv2d = 1.0 / (2.0 * delta), inv12dx = 1.0 / (12.0 * dx);
    DkpResidual res{0, 0, 0, 0};
    double s1 = 0, s2 = 0;
    for (int i = 0; i < M; ++i) {
        int ip1 = (i + 1) % M, ip2 = (i + 2) % M;
        int im1 = (i + M - 1) % M, im2 = (i + M - 2) % M;
        double Wx = (-W0[ip2] + 8 * W0[ip1] - 8 * W0[im1] + W0[im2]) * inv12dx;
        double Vx = (-V0[ip2] + 8 * V0[ip1] - 8 * V0[im1] + V0[im2]) * inv12dx;
        double Vy = (Vyp[i] - Vym[i]) * inv2d;
        double Wyd = (Wyp[i] - Wym[i]) * inv2d;
        double Vt = (Vtp[i] - Vtm[i]) * inv2d;
        double r1 = Vy - Wx;
        double r2 = Wyd - Vt + V0[i] * Vx;
        res.res1_max = std::max(res.res1_max, std::fabs(r1));
        res.res2_max = std::max(res.res2_max, std::fabs(r2));
        s1 += r1 * r1;
        s2 += r2 * r2;
    }
    res.res1_l2 = std::sqrt(s1 / M);
    res.res2_l2 = std::sqrt(s2 / M);
    return res;
}

double commute_check(const CompiledMatrix& Wy, const CompiledMatrix& Wt,
                     const std::vector<double>& r0, Grid1D grid, double delta, int substeps) {
    SpectralDeriv der(grid.M);
    std::vector<double> yt = short_evolve(
        Wt, short_evolve(Wy, r0, grid, delta, substeps, &der), grid, delta, substeps, &der);
    std::vector<double> ty = short_evolve(
        Wy, short_evolve(Wt, r0, grid, delta, substeps, &der), grid, delta, substeps, &der);
    double m = 0.0;
    for (std::size_t i = 0; i < yt.size(); ++i) m = std::max(m, std::fabs(yt[i] - ty[i]));
    return m;
}

nlohmann::json trajectory_to_json(const Trajectory& traj) {
    nlohmann::json j;
    j["grid"] = {{"M", traj.grid.M}, {"domain", "[0,2pi)"}};
    j["ncomp"] = traj.ncomp;
    j["dt"] = traj.dt;
    j["snap_dt"] = traj.snap_dt;
    j["scheme"] = traj.scheme;
    j["cfl"] = traj.cfl;
    j["filtered"] = traj.filtered;
    j["times"] = traj.times;
    j["states"] = traj.states;
    return j;
}

}  // namespace regfm
