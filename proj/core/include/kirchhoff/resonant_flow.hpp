#pragma once
#include <functional>

#include "kirchhoff/ode.hpp"
#include "kirchhoff/spectral_field.hpp"

namespace kirchhoff {

/// One state of the normal-form model: u on the support, with the partner
/// v = conj(u) as functions (v_k = conj(u_{-k})), preserved by the flow.
struct ResonantState {
    SpectralField u;  // Flavor::ConjugatePair
    double t = 0;
};

/// Cubic resonant operator; returns both components (du, dv).
FieldPair z3_apply(const SpectralField& u, const SpectralField& v);

/// Quintic resonant operator, all four sum groups of the first component
/// (conventions: 0/0 = 0, Kronecker deltas as displayed); second component
/// by complex conjugation.
FieldPair z5_apply(const SpectralField& u, const SpectralField& v);

/// Linear part D1 = (-i|Dx| u, +i|Dx| v).
FieldPair d1_apply(const SpectralField& u, const SpectralField& v);

/// d/dt S_lambda induced by z5 alone on the pair (u, conj u):
/// sum over the sphere of 2 Re[(Z5)_1,k conj(u_k)].
std::array<double, 4> z5_superaction_rate(const SpectralField& u);
/// Same for z3 (identically zero in exact arithmetic).
std::array<double, 4> z3_superaction_rate(const SpectralField& u);

/// Integrate du/dt = (D1 + Z3 + Z5)_1 (u, conj u): the leading-order
/// truncation of the transformed system (the scalar prefactor is dropped
/// and no degree-7 tail is modeled).
Trajectory integrate_resonant(const ResonantState& init, const TripletConfig& cfg,
                              double t_end, double rtol, double dt_sample,
                              const std::function<void(double, const SpectralField&)>& cb = nullptr);

std::array<double, 16> pack_resonant(const SpectralField& u);
SpectralField unpack_resonant(const std::array<double, 16>& y, const TripletConfig& cfg);

} // namespace kirchhoff
