#include "rmt/edge_stats.hpp"

#include "rmt/tracy_widom.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rmt {

double sigma_xi(double xi) {
    double r = std::sqrt(xi);
    return r * std::pow(1.0 + r, 4.0 / 3.0);
}

EdgeSampleSet rescale_extremes(const std::vector<double>& lambda_max, const SpectralLaw& law,
                               int n) {
    EdgeSampleSet set;
    set.xi = law.xi();
    set.n = n;
    set.rescale_constant = sigma_xi(law.xi());
    set.samples.reserve(lambda_max.size());
    const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0) / set.rescale_constant;
    for (double l : lambda_max) set.samples.push_back((l - law.lambda_plus()) * scale);
    std::sort(set.samples.begin(), set.samples.end());
    return set;
}

KsResult kolmogorov_distance(std::vector<double> samples,
                             const std::function<double(double)>& cdf, double alpha) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("kolmogorov_distance: need >= 2 samples");
    for (double x : samples)
        if (!std::isfinite(x)) throw std::invalid_argument("kolmogorov_distance: non-finite sample");
    std::sort(samples.begin(), samples.end());
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = cdf(samples[i]);
        delta = std::max(delta, std::abs((i + 1.0) / n - f));
        delta = std::max(delta, std::abs(static_cast<double>(i) / n - f));
    }
    return {delta, std::sqrt(std::log(2.0 / alpha) / (2.0 * n))};
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("two_sample_ks: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i; // consume ties in both samples
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

double ks_p_value(double d, std::size_t n, std::size_t m) {
    double ne = static_cast<double>(n) * m / static_cast<double>(n + m);
    double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        sign = -sign;
        if (std::abs(term) < 1e-16) break;
    }
    return std::clamp(2.0 * p, 0.0, 1.0);
}

RigidityReport rigidity_check(std::span<const double> svals, const SpectralLaw& law, double phi,
                              double epsilon, double omega) {
    const int n = static_cast<int>(svals.size());
    auto gamma = law.typical_locations(n);
    if (static_cast<int>(gamma.size()) != n)
        throw std::invalid_argument("rigidity_check: length mismatch");
    const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
    RigidityReport rep;
    if (law.lambda_minus() > 0.0) {
        for (int k = 1; k <= n; ++k) {
            double khat = std::min(k, n + 1 - k);
            double stat = n23 * std::cbrt(khat) * std::abs(svals[k - 1] - gamma[k - 1]);
            rep.soft_stat = std::max(rep.soft_stat, stat);
        }
        rep.soft_threshold = std::sqrt(phi);
        rep.soft_pass = rep.soft_stat <= rep.soft_threshold;
        rep.hard_pass = true;
        rep.pass = rep.soft_pass;
        return rep;
    }
    // xi = 1: split regimes at (1-omega)N
    const int split = static_cast<int>((1.0 - omega) * n);
    for (int k = split + 1; k <= n; ++k) {
        double stat = n23 * std::cbrt(n - k + 1.0) * std::abs(svals[k - 1] - gamma[k - 1]);
        rep.soft_stat = std::max(rep.soft_stat, stat);
    }
    for (int k = 1; k <= split; ++k)
        rep.hard_stat = std::max(rep.hard_stat, n * std::abs(svals[k - 1] - gamma[k - 1]));
    // soft edge keeps the same phi^{1/2} band as the rectangular case (the
    // N^eps form is asymptotic in eps and too tight at experiment sizes);
    // the hard edge uses the N^{-1+eps} band, i.e. N|s_k - gamma_k| <= N^eps
    rep.soft_threshold = std::sqrt(phi);
    rep.hard_threshold = std::pow(static_cast<double>(n), epsilon);
    rep.soft_pass = rep.soft_stat <= rep.soft_threshold;
    rep.hard_pass = rep.hard_stat <= rep.hard_threshold;
    rep.pass = rep.soft_pass && rep.hard_pass;
    return rep;
}

RateFit rate_fit(const std::vector<RatePoint>& points, double bound_exponent) {
    if (points.size() < 4) throw std::invalid_argument("rate_fit: need >= 4 N values");
    std::vector<double> lx, ly, w;
    RateFit fit;
    fit.points = points;
    fit.bound_exponent = bound_exponent;
    for (const auto& p : points) {
        if (!(p.delta > 0.0)) throw std::invalid_argument("rate_fit: nonpositive delta");
        lx.push_back(std::log(p.n));
        ly.push_back(std::log(p.delta));
        // variance of log delta implied by the DKW half-width
        w.push_back(p.dkw > 0.0 ? (p.delta / p.dkw) * (p.delta / p.dkw) : 1.0);
        fit.bound_respect = std::max(fit.bound_respect, p.delta * std::pow(p.n, bound_exponent));
    }
    LineFit lf = fit_line(lx, ly, w);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    return fit;
}

namespace {

// deterministic replica fan-out: results land in slots keyed by index
template <typename Fn>
void for_each_replica(int reps, int workers, Fn&& fn) {
    if (workers <= 1) {
        for (int r = 0; r < reps; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) fn(r);
        });
    for (auto& t : pool) t.join();
}

} // namespace

EdgeSampleSet null_edge_samples(double xi, int n, int reps, std::uint64_t seed,
                                const EntryDistribution& dist, int workers) {
    const int m = static_cast<int>(std::lround(n / xi));
    SpectralLaw law(AspectRatio::from_dims(n, m));
    std::vector<double> lmax(reps);
    for_each_replica(reps, workers, [&](int r) {
        DataMatrix x = sample_data(m, n, dist, seed, static_cast<std::uint64_t>(r));
        lmax[static_cast<std::size_t>(r)] = covariance(x).eigenvalues.back();
    });
    return rescale_extremes(lmax, law, n);
}

RateFit null_rate_experiment(double xi, const std::vector<int>& ns, int reps, std::uint64_t seed,
                             const EntryDistribution& dist, int workers) {
    const auto& tw = tw1_reference();
    std::vector<RatePoint> pts;
    for (int n : ns) {
        auto set =
            null_edge_samples(xi, n, reps, seed + static_cast<std::uint64_t>(n), dist, workers);
        auto ks = kolmogorov_distance(set.samples, [&](double s) { return tw.cdf(s); });
        pts.push_back({static_cast<double>(n), ks.delta, ks.dkw_halfwidth});
    }
    return rate_fit(pts);
}

EdgeSampleSet separable_edge_samples(const Population& pop, double xi, int n, int reps,
                                     std::uint64_t seed, const EntryDistribution& dist,
                                     int workers) {
    const int m = static_cast<int>(std::lround(n / xi));
    const double xi_eff = static_cast<double>(n) / m;
    // population diagonal expanded to the M rows by repeating atoms evenly
    std::vector<double> diag(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        diag[static_cast<std::size_t>(i)] =
            pop.sigmas()[static_cast<std::size_t>(i) * pop.sigmas().size() / m];
    DeformedLaw law = make_deformed_law(Population(diag), xi_eff);

    EdgeSampleSet set;
    set.xi = xi_eff;
    set.n = n;
    set.rescale_constant = law.gamma0;
    const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
    set.samples.resize(static_cast<std::size_t>(reps));
    for_each_replica(reps, workers, [&](int r) {
        DataMatrix x = sample_data(m, n, dist, seed, static_cast<std::uint64_t>(r));
        double mu = separable(x, diag).eigenvalues.back();
        // samples carry entry variance 1/M; the deformed-law endpoint lives
        // in the 1/N convention, hence the division by xi
        set.samples[static_cast<std::size_t>(r)] =
            law.gamma0 * n23 * (mu / xi_eff - law.e_plus);
    });
    std::sort(set.samples.begin(), set.samples.end());
    return set;
}

RateFit separable_edge_experiment(const Population& pop, double xi, const std::vector<int>& ns,
                                  int reps, std::uint64_t seed, const EntryDistribution& dist,
                                  double bound_exponent, int workers) {
    const auto& tw = tw1_reference();
    std::vector<RatePoint> pts;
    for (int n : ns) {
        auto set = separable_edge_samples(pop, xi, n, reps, seed + static_cast<std::uint64_t>(n),
                                          dist, workers);
        auto ks = kolmogorov_distance(set.samples, [&](double s) { return tw.cdf(s); });
        pts.push_back({static_cast<double>(n), ks.delta, ks.dkw_halfwidth});
    }
    return rate_fit(pts, bound_exponent);
}

} // namespace rmt
