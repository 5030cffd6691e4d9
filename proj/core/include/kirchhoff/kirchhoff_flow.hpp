#pragma once
#include <functional>

#include "kirchhoff/ode.hpp"
#include "kirchhoff/spectral_field.hpp"

namespace kirchhoff {

/// Displacement/velocity pair of the quasilinear wave system; both fields
/// carry the reality constraint. Because the nonlinearity is the scalar
/// G(u), the eight-mode support is exactly invariant, so the state is the
/// 16 real degrees of freedom of the positive-frequency coefficients.
struct PhysicalState {
    SpectralField u, v;
    double t = 0;
};

struct KirchhoffParams {
    bool linearize = false;  // force G = 0 (closed-form wave tests)
    double rtol = 1e-12;
    double atol = 1e-14;
};

/// G = measure_factor * sum |k|^2 |u_k|^2 over the signed support.
double kirchhoff_G(const SpectralField& u, double measure_factor = 1.0);

/// du/dt = v, dv/dt = -(1+G) |k|^2 u_k per mode.
PhysicalState kirchhoff_rhs(const PhysicalState& s, const KirchhoffParams& prm = {},
                            double measure_factor = 1.0);

/// (1/2) sum |v_k|^2 + (1/2) sum |k|^2 |u_k|^2 + G^2 / (4 mf); conserved.
double kirchhoff_energy(const PhysicalState& s, double measure_factor = 1.0);

/// Pack/unpack the 16 real degrees of freedom.
std::array<double, 16> pack_state(const PhysicalState& s);
PhysicalState unpack_state(const std::array<double, 16>& y, const TripletConfig& cfg, double t);

/// Adaptive integration sampling the packed state every dt_sample (dense
/// output); cb, when set, receives every sample as it is produced (the
/// trajectory rows are the same packed states).
Trajectory integrate_kirchhoff(const PhysicalState& init, const TripletConfig& cfg,
                               double t_end, const KirchhoffParams& prm,
                               double dt_sample,
                               const std::function<void(double, const PhysicalState&)>& cb = nullptr);

} // namespace kirchhoff
