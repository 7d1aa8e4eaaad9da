#pragma once

#include "rmt/numerics.hpp"
#include "rmt/rng.hpp"

#include <cstdint>
#include <vector>

namespace rmt {

// Symmetrized 2N-particle configuration stored as its positive half
// s_1 < ... < s_N (all positive); s_{-k} = -s_k is structural, so the mirror
// constraint can never drift.
struct SymmetrizedConfig {
    std::vector<double> s;
    double time = 0.0;

    int n() const { return static_cast<int>(s.size()); }
    void validate() const; // throws unless 0 < s_1 < ... < s_N
};

struct DbmOptions {
    double dt = 1e-5;
    double dt_min = 1e-9;
    double collision_guard_num = 1e-3; // guard = collision_guard_num / N
    bool zero_noise = false;           // deterministic test mode
};

// Drift of the symmetrized singular-value dynamics, positive half:
//   -s_k/(2 xi) + (1/2)(1/xi - 1)/s_k + (1/2N) sum_{l != +-k} 1/(s_k - s_l).
// Throws (naming indices) if two particles sit within the guard distance.
std::vector<double> drift(const SymmetrizedConfig& cfg, double xi,
                          double collision_guard = 0.0);

// Full-index variant on an explicit 2N-vector (ascending, index -N..N with 0
// omitted); used to exercise the antisymmetry of the equation directly.
std::vector<double> drift_full(const std::vector<double>& s_full, double xi);

// Euler-Maruyama with adaptive step halving on ordering violations or
// near-collisions. Noise is drawn per positive index only; the mirrored
// indices receive the negated increments implicitly.
SymmetrizedConfig evolve(SymmetrizedConfig cfg, double xi, double t_end, CounterRng& rng,
                         const DbmOptions& opt = {});

struct Trajectory {
    double xi = 1.0;
    std::vector<double> times;
    std::vector<std::vector<double>> configs; // positive halves
    std::uint64_t accepted_steps = 0;
    std::uint64_t rejected_steps = 0;
};

Trajectory record_trajectory(SymmetrizedConfig cfg, double xi, double t_end, CounterRng& rng,
                             const DbmOptions& opt = {});

// Two trajectories driven by bitwise-identical Brownian increments.
struct CoupleRecord {
    std::vector<double> times;
    std::vector<double> max_gap;  // max_k |s_k - r_k|
    std::vector<double> edge_gap; // |s_N - r_N|
    SymmetrizedConfig a, b;
};

CoupleRecord couple(SymmetrizedConfig a, SymmetrizedConfig b, double xi, double t_end,
                    std::uint64_t seed, const std::vector<double>& record_times,
                    const DbmOptions& opt = {});

SymmetrizedConfig interpolate_init(const SymmetrizedConfig& a, const SymmetrizedConfig& b,
                                   double nu);

// v_k profile on the positive half (v_{-k} = v_k structurally).
struct VSeries {
    std::vector<double> times;
    std::vector<std::vector<double>> v;
    std::vector<double> vmin, vmax; // per recorded time
};

// Integrates dv_k/dt = (1/2)(1 - 1/xi) v_k/x_k^2
//                      + (1/2N) sum_{l != +-k} (v_l - v_k)/(x_l - x_k)^2
// with x frozen within each trajectory step. Substeps are chosen so the
// explicit update is a convex combination, which enforces the maximum
// principle at the scheme level.
VSeries evolve_v(const std::vector<double>& v0, const Trajectory& traj, double xi);

struct ObservableSample {
    Complex z;
    Complex f;      // e^{-t/(2 xi)} sum v_k/(x_k - z), full index range
    Complex s_of_z; // (1/2N) sum 1/(x_k - z)
    double time;
};

ObservableSample observable(const SymmetrizedConfig& cfg, const std::vector<double>& v,
                            Complex z, double t, double xi);

// Assembles the deterministic drift of df_t two ways: term by term from the
// Ito computation and from the recombined closed form. Agreement is the
// algebraic content of the observable's dynamics.
struct DriftIdentity {
    double residual; // |route_a - route_b|
    double scale;    // sum of term magnitudes
};

DriftIdentity drift_identity_check(const SymmetrizedConfig& cfg, const std::vector<double>& v,
                                   Complex z, double xi);

} // namespace rmt
