#include "rmt/dbm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rmt {

void SymmetrizedConfig::validate() const {
    if (s.empty()) throw std::invalid_argument("empty configuration");
    double prev = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > prev)) {
            std::ostringstream os;
            os << "configuration not strictly ordered/positive at index " << i + 1;
            throw std::invalid_argument(os.str());
        }
        prev = s[i];
    }
}

std::vector<double> drift(const SymmetrizedConfig& cfg, double xi, double collision_guard) {
    const int n = cfg.n();
    const auto& s = cfg.s;
    std::vector<double> d(n);
    for (int k = 0; k < n; ++k) {
        // mirror pair (s_k, -s_k): distance 2 s_k
        if (2.0 * s[k] < collision_guard) {
            std::ostringstream os;
            os << "near-collision with mirror image at index " << k + 1;
            throw std::runtime_error(os.str());
        }
        double acc = -s[k] / (2.0 * xi) + 0.5 * (1.0 / xi - 1.0) / s[k];
        double inter = 0.0;
        for (int l = 0; l < n; ++l) {
            if (l == k) continue;
            double gap = s[k] - s[l];
            if (std::abs(gap) < collision_guard) {
                std::ostringstream os;
                os << "near-collision between indices " << k + 1 << " and " << l + 1;
                throw std::runtime_error(os.str());
            }
            inter += 1.0 / gap + 1.0 / (s[k] + s[l]);
        }
        d[k] = acc + inter / (2.0 * n);
    }
    return d;
}

std::vector<double> drift_full(const std::vector<double>& s_full, double xi) {
    const int m = static_cast<int>(s_full.size());
    if (m % 2 != 0) throw std::invalid_argument("full configuration must have even size");
    const int n = m / 2;
    std::vector<double> d(m);
    for (int k = 0; k < m; ++k) {
        double acc = -s_full[k] / (2.0 * xi) + 0.5 * (1.0 / xi - 1.0) / s_full[k];
        double inter = 0.0;
        for (int l = 0; l < m; ++l) {
            if (l == k || l == m - 1 - k) continue; // l != +-k
            inter += 1.0 / (s_full[k] - s_full[l]);
        }
        d[k] = acc + inter / (2.0 * n);
    }
    return d;
}

namespace {

struct StepDriver {
    double xi;
    double guard;
    const DbmOptions& opt;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;

    // Advances cfg by one accepted step of size <= dt_try; returns step taken.
    double step(SymmetrizedConfig& cfg, double dt_try, CounterRng& rng,
                SymmetrizedConfig* partner = nullptr) {
        const int n = cfg.n();
        const double root_n = std::sqrt(static_cast<double>(n));
        auto d = drift(cfg, xi, guard);
        std::vector<double> dp;
        if (partner) dp = drift(*partner, xi, guard);
        std::vector<double> g(n, 0.0);
        while (true) {
            if (!opt.zero_noise)
                for (int k = 0; k < n; ++k) g[k] = rng.normal();
            const double amp = std::sqrt(dt_try) / root_n;
            std::vector<double> prop(n), prop2;
            for (int k = 0; k < n; ++k) prop[k] = cfg.s[k] + d[k] * dt_try + amp * g[k];
            bool ok = ordered(prop);
            if (ok && partner) {
                prop2.resize(n);
                for (int k = 0; k < n; ++k)
                    prop2[k] = partner->s[k] + dp[k] * dt_try + amp * g[k];
                ok = ordered(prop2);
            }
            if (ok) {
                cfg.s = std::move(prop);
                cfg.time += dt_try;
                if (partner) {
                    partner->s = std::move(prop2);
                    partner->time += dt_try;
                }
                ++accepted;
                return dt_try;
            }
            ++rejected;
            dt_try *= 0.5;
            if (dt_try < opt.dt_min)
                throw std::runtime_error("step size underflow: persistent near-collision");
        }
    }

    bool ordered(const std::vector<double>& p) const {
        if (!(p.front() > 0.5 * guard)) return false;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (!(p[i] - p[i - 1] > guard)) return false;
        return true;
    }
};

} // namespace

SymmetrizedConfig evolve(SymmetrizedConfig cfg, double xi, double t_end, CounterRng& rng,
                         const DbmOptions& opt) {
    cfg.validate();
    StepDriver drv{xi, opt.collision_guard_num / cfg.n(), opt};
    while (cfg.time < t_end - 1e-15) {
        double dt_try = std::min(opt.dt, t_end - cfg.time);
        drv.step(cfg, dt_try, rng);
    }
    return cfg;
}

Trajectory record_trajectory(SymmetrizedConfig cfg, double xi, double t_end, CounterRng& rng,
                             const DbmOptions& opt) {
    cfg.validate();
    Trajectory traj;
    traj.xi = xi;
    traj.times.push_back(cfg.time);
    traj.configs.push_back(cfg.s);
    StepDriver drv{xi, opt.collision_guard_num / cfg.n(), opt};
    while (cfg.time < t_end - 1e-15) {
        double dt_try = std::min(opt.dt, t_end - cfg.time);
        drv.step(cfg, dt_try, rng);
        traj.times.push_back(cfg.time);
        traj.configs.push_back(cfg.s);
    }
    traj.accepted_steps = drv.accepted;
    traj.rejected_steps = drv.rejected;
    return traj;
}

CoupleRecord couple(SymmetrizedConfig a, SymmetrizedConfig b, double xi, double t_end,
                    std::uint64_t seed, const std::vector<double>& record_times,
                    const DbmOptions& opt) {
    a.validate();
    b.validate();
    if (a.n() != b.n()) throw std::invalid_argument("coupled configurations differ in size");
    if (a.time != b.time) throw std::invalid_argument("coupled configurations differ in time");
    CounterRng rng(seed, 0, 0);
    StepDriver drv{xi, opt.collision_guard_num / a.n(), opt};
    CoupleRecord rec;
    auto snapshot = [&]() {
        double mg = 0.0;
        for (int k = 0; k < a.n(); ++k) mg = std::max(mg, std::abs(a.s[k] - b.s[k]));
        rec.times.push_back(a.time);
        rec.max_gap.push_back(mg);
        rec.edge_gap.push_back(std::abs(a.s.back() - b.s.back()));
    };
    std::size_t next_rec = 0;
    while (next_rec < record_times.size() && record_times[next_rec] <= a.time + 1e-15) {
        snapshot();
        ++next_rec;
    }
    while (a.time < t_end - 1e-15) {
        double dt_try = std::min(opt.dt, t_end - a.time);
        if (next_rec < record_times.size())
            dt_try = std::min(dt_try, record_times[next_rec] - a.time);
        drv.step(a, dt_try, rng, &b);
        if (next_rec < record_times.size() && a.time >= record_times[next_rec] - 1e-12) {
            snapshot();
            ++next_rec;
        }
    }
    rec.a = std::move(a);
    rec.b = std::move(b);
    return rec;
}

SymmetrizedConfig interpolate_init(const SymmetrizedConfig& a, const SymmetrizedConfig& b,
                                   double nu) {
    if (a.n() != b.n()) throw std::invalid_argument("interpolation endpoints differ in size");
    if (nu < 0.0 || nu > 1.0) throw std::invalid_argument("interpolation parameter outside [0,1]");
    SymmetrizedConfig c;
    c.time = a.time;
    c.s.resize(a.s.size());
    for (std::size_t k = 0; k < a.s.size(); ++k)
        c.s[k] = (1.0 - nu) * a.s[k] + nu * b.s[k];
    return c;
}

VSeries evolve_v(const std::vector<double>& v0, const Trajectory& traj, double xi) {
    const int n = static_cast<int>(v0.size());
    if (traj.configs.empty() || static_cast<int>(traj.configs.front().size()) != n)
        throw std::invalid_argument("profile size does not match trajectory");
    VSeries out;
    std::vector<double> v = v0;
    auto record = [&](double t) {
        out.times.push_back(t);
        out.v.push_back(v);
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        out.vmin.push_back(*lo);
        out.vmax.push_back(*hi);
    };
    record(traj.times.front());
    std::vector<double> coef_sum(n), diag(n), dv(n);
    for (std::size_t step = 0; step + 1 < traj.times.size(); ++step) {
        const auto& x = traj.configs[step];
        double dt = traj.times[step + 1] - traj.times[step];
        // rates for the frozen configuration
        double max_rate = 0.0;
        for (int k = 0; k < n; ++k) {
            double csum = 0.0;
            for (int l = 0; l < n; ++l) {
                if (l == k) continue;
                double dm = x[k] - x[l], dp = x[k] + x[l];
                csum += 1.0 / (dm * dm) + 1.0 / (dp * dp);
            }
            csum /= 2.0 * n;
            coef_sum[k] = csum;
            diag[k] = 0.5 * (1.0 - 1.0 / xi) / (x[k] * x[k]);
            max_rate = std::max(max_rate, csum + std::abs(diag[k]));
        }
        int sub = std::max(1, static_cast<int>(std::ceil(dt * max_rate / 0.9)));
        double h = dt / sub;
        for (int m = 0; m < sub; ++m) {
            for (int k = 0; k < n; ++k) {
                double inter = 0.0;
                for (int l = 0; l < n; ++l) {
                    if (l == k) continue;
                    double dm = x[k] - x[l], dp = x[k] + x[l];
                    inter += (v[l] - v[k]) * (1.0 / (dm * dm) + 1.0 / (dp * dp));
                }
                dv[k] = diag[k] * v[k] + inter / (2.0 * n);
            }
            for (int k = 0; k < n; ++k) v[k] += h * dv[k];
        }
        record(traj.times[step + 1]);
    }
    return out;
}

ObservableSample observable(const SymmetrizedConfig& cfg, const std::vector<double>& v,
                            Complex z, double t, double xi) {
    const int n = cfg.n();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("profile size does not match configuration");
    Complex f = 0.0, s = 0.0;
    for (int k = 0; k < n; ++k) {
        double x = cfg.s[k];
        f += v[k] * (1.0 / (x - z) + 1.0 / (-x - z));
        s += 1.0 / (x - z) + 1.0 / (-x - z);
    }
    ObservableSample out;
    out.z = z;
    out.f = std::exp(-t / (2.0 * xi)) * f;
    out.s_of_z = s / (2.0 * n);
    out.time = t;
    return out;
}

DriftIdentity drift_identity_check(const SymmetrizedConfig& cfg, const std::vector<double>& v,
                                   Complex z, double xi) {
    const int n = cfg.n();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("profile size does not match configuration");
    // full (2N)-index arrays: k and -k carry the same v, opposite x
    std::vector<double> x(2 * n), w(2 * n);
    std::vector<int> mirror(2 * n);
    for (int k = 0; k < n; ++k) {
        x[k] = -cfg.s[n - 1 - k];
        w[k] = v[n - 1 - k];
        x[n + k] = cfg.s[k];
        w[n + k] = v[k];
        mirror[k] = 2 * n - 1 - k;
        mirror[n + k] = n - 1 - k;
    }
    const int m = 2 * n;
    const double c = 0.5 * (1.0 - 1.0 / xi);

    Complex f = 0.0, df = 0.0, ddf = 0.0, s = 0.0;
    for (int k = 0; k < m; ++k) {
        Complex r = 1.0 / (x[k] - z);
        f += w[k] * r;
        df += w[k] * r * r;
        ddf += 2.0 * w[k] * r * r * r;
        s += r;
    }
    s /= static_cast<double>(m);

    // route (a): term-by-term Ito drift at t = 0
    Complex a1 = -f / (2.0 * xi);
    Complex i2 = 0.0, i3 = 0.0, i4 = 0.0, i5 = 0.0, b1 = 0.0, b2 = 0.0;
    for (int k = 0; k < m; ++k) {
        Complex r = 1.0 / (x[k] - z);
        i2 += w[k] * x[k] * r * r / (2.0 * xi);
        i3 += c * w[k] * r * r / x[k];
        i5 += w[k] * r * r * r / static_cast<double>(n);
        b1 += c * w[k] * r / (x[k] * x[k]);
        for (int l = 0; l < m; ++l) {
            if (l == k || l == mirror[k]) continue;
            i4 += w[k] * r * r / (x[l] - x[k]) / (2.0 * n);
            b2 += (w[l] - w[k]) * r / ((x[k] - x[l]) * (x[k] - x[l])) / (2.0 * n);
        }
    }
    Complex route_a = a1 + i2 + i3 + i4 + i5 + b1 + b2;

    // route (b): recombined closed form with the quadratic singularities gone
    Complex cross = 0.0, e1 = 0.0, e2 = 0.0;
    for (int k = 0; k < m; ++k) {
        Complex dm = x[k] - z, dp = x[k] + z;
        cross += w[k] / (dm * dm * dp);
        e1 += 3.0 * z * w[k] / (2.0 * x[k] * x[k] * dm * dp);
        e2 += z * z * z * w[k] / (x[k] * x[k] * dm * dm * dp * dp);
    }
    Complex route_b = (s + z / (2.0 * xi)) * df + ddf / (4.0 * static_cast<double>(n)) + cross / (2.0 * static_cast<double>(n)) +
                      (1.0 - 1.0 / xi) * (e1 + e2);

    DriftIdentity out;
    out.residual = std::abs(route_a - route_b);
    out.scale = std::abs(a1) + std::abs(i2) + std::abs(i3) + std::abs(i4) + std::abs(i5) +
                std::abs(b1) + std::abs(b2);
    return out;
}

} // namespace rmt
