#pragma once

#include "rmt/numerics.hpp"
#include "rmt/spectral_law.hpp"

#include <vector>

namespace rmt {

enum class FieldKind { general, semicircle_comparison };

// Advection velocity moving the observable's evaluation point. The general
// field is g(z) = ((1-xi) + sqrt((z^2-l-)(z^2-l+)))/(2 xi z); the comparison
// field is g_sc(z) = sqrt((z-1)^2 - xi)/xi.
struct VelocityField {
    double xi;
    SpectralLaw law;
    FieldKind kind;

    explicit VelocityField(double xi_, FieldKind k = FieldKind::general)
        : xi(xi_), law(AspectRatio::from_xi(xi_)), kind(k) {}

    Complex velocity(Complex z) const;
};

struct CharPath {
    Complex z0;
    std::vector<double> times;
    std::vector<Complex> points;
    double tol = 1e-12;
};

CharPath flow(const VelocityField& field, Complex z0, double t_end, int n_record = 64,
              double tol = 1e-12);

// Closed form of the comparison flow: with w = z - 1 and phi = w + sqrt(w^2 - xi),
// phi_t = phi_0 e^{t/xi} and w_t = (phi_t + xi/phi_t)/2.
Complex sc_flow_exact(double xi, Complex z0, double t);

// phi(N) = exp(C0 (log log N)^2), pinned so phi(100) = 8.
double phi_param(double n);

struct EdgeCurveS {
    double n; // kept as double: the curve is nonempty only for very large N
    double phi;
    const SpectralLaw* law;

    // point of the curve at real part E: E + i phi^2/(N kappa(E)^{1/2})
    Complex at(double e) const;
    double e_min() const;
    double e_max() const;
};

EdgeCurveS edge_curve(const SpectralLaw& law, double n);

struct AsymptoticsReport {
    struct Row {
        Complex z0;
        double t;
        double re_ratio; // measured / model, Re increment
        double im_ratio; // measured / model, Im increment
    };
    std::vector<Row> rows;
    double band_lo = 1.0 / 16.0;
    double band_hi = 16.0;
    bool pass = false;
};

// Edge lemma: Re(z_t - z0) ~ t a(z)/kappa(z)^{1/2} + t^2,
//             Im(z_t - z0) ~ t b(z)/kappa(z)^{1/2}.
AsymptoticsReport verify_characteristics_asymptotics(const VelocityField& field,
                                                     const std::vector<Complex>& z0s,
                                                     const std::vector<double>& t_grid);

// Bulk variant of the lemma's final claim: Im(z_t - z0) ~ t.
AsymptoticsReport verify_bulk_asymptotics(const VelocityField& field,
                                          const std::vector<Complex>& z0s,
                                          const std::vector<double>& t_grid);

// Evaluates (phi^4/N^2) int_0^t ds int d rho(x) / (|z_{t-s} - x|^4 max(kappa(x), s^2))
// along the integrated path and returns LHS / (kappa(E)/max(kappa(E), t^2)).
double integral_bound_check(const VelocityField& field, const EdgeCurveS& curve, double e,
                            double t);

} // namespace rmt
