#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "regfm/poly.hpp"
#include "regfm/series.hpp"
#include "regfm/vfield.hpp"

namespace regfm {

// Periodic grid on [0, 2*pi).
struct Grid1D {
    int M = 0;
    double dx() const;
    double x(int i) const;
};

// Exact scalar compiled to a float evaluator: terms over (optionally
// base-shifted) state coordinates.
struct CompiledScalar {
    struct Term {
        double c;
        std::vector<std::pair<int, int>> pw;
    };
    int ncomp = 0;
    std::vector<double> base;  // empty: evaluate at the state directly
    std::vector<Term> terms;

    double eval(const double* r) const;
};

CompiledScalar compile_scalar(const Poly& p);
CompiledScalar compile_scalar(const TruncSeries& s);

struct CompiledMatrix {
    int n = 0;
    std::vector<CompiledScalar> a;
    const CompiledScalar& at(int i, int j) const { return a[i * n + j]; }
};

CompiledMatrix compile_matrix(const OpMatrix<Poly>& L);

struct EvolveOptions {
    double T = 0.5;
    double cfl = 0.4;
    int snap_stride = 1;
    double blowup_factor = 50.0;  // abort when max|r_x| exceeds this multiple of t=0
    bool filter = true;
    double filter_alpha = 36.0;
    int filter_power = 36;
};

// States are component-major: state[c * M + i].
struct Trajectory {
    Grid1D grid;
    int ncomp = 0;
    double dt = 0.0;       // time step of the integrator
    double snap_dt = 0.0;  // spacing of stored snapshots
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::string scheme = "rk4-cd4";
    double cfl = 0.0;
    bool filtered = false;
};

// Method of lines for r_t = W(r) r_x: classical RK4 in time, 4th-order
// central differences in space, exponential filter on the top third of the
// spectrum after every step. Throws CflViolationError / BlowupDetectedError.
Trajectory evolve(const CompiledMatrix& W, const std::vector<double>& r0, Grid1D grid,
                  const EvolveOptions& opts);

struct PdeResidualRecord {
    int alpha;
    int M;
    double dt;
    double maxNorm;
    double l2Norm;
};

// Residual of C^{a-1}_t = C^a_x - C^0 C^{a-1}_x, evaluated at interior
// snapshots with centred differences. chain maps alpha -> compiled C^alpha
// and must cover [alpha_lo - 1 .. alpha_hi] with alpha_lo >= lo+1.
std::vector<PdeResidualRecord> pavlov_pde_residual(const Trajectory& traj,
                                                   const std::map<int, CompiledScalar>& chain,
                                                   int alpha_lo, int alpha_hi);

struct DkpResidual {
    double res1_max, res1_l2;  // V_y - W_x
    double res2_max, res2_l2;  // W_y - V_t + V V_x
};

// Evolves shared initial data by +-delta in y (velocities mu o) and t
// (velocities lambda o) and measures both dKP conservation-law residuals at
// the base slice.
DkpResidual dkp_residual(const CompiledMatrix& Wy, const CompiledMatrix& Wt,
                         const CompiledScalar& V, const CompiledScalar& Wfun,
                         const std::vector<double>& r0, Grid1D grid, double delta, int substeps);

// Max-norm state discrepancy between (y then t) and (t then y) evolution by
// delta each; O(delta^3) for commuting flows, O(delta^2) otherwise.
double commute_check(const CompiledMatrix& Wy, const CompiledMatrix& Wt,
                     const std::vector<double>& r0, Grid1D grid, double delta, int substeps);

nlohmann::json trajectory_to_json(const Trajectory& traj);

}  // namespace regfm
