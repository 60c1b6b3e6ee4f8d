#pragma once

#include "twostate/grid.hpp"
#include "twostate/types.hpp"

namespace twostate {

/// H~(p, zeta) = -1/2 zeta (p^+)^2 - 1/2 (1 - zeta) ((-p)^+)^2 + F(zeta, 1 - zeta)
/// with the potential value already evaluated.
constexpr double reduced_hamiltonian_with(double p, double zeta, double potential) noexcept {
  const double up = p > 0.0 ? p : 0.0;
  const double down = p < 0.0 ? -p : 0.0;
  return -0.5 * zeta * (up * up) - 0.5 * (1.0 - zeta) * (down * down) + potential;
}

/// H~(p, zeta) for a potential game. Throws ConfigError if the model has no potential.
double reduced_hamiltonian(double p, double zeta, const ModelSpec& model);

/// Godunov flux: min of H~(., zeta) over [alpha, beta] if alpha <= beta, else the max
/// over [beta, alpha]. H~ is concave and piecewise quadratic with both vertices at
/// q = 0, so the extremum is attained at alpha, beta or 0.
double godunov_flux_with(double alpha, double beta, double zeta, double potential) noexcept;
double godunov_flux(double alpha, double beta, double zeta, const ModelSpec& model);

/// Backward Godunov march of -Upsilon_t = H~(Upsilon_zeta, zeta) from Upsilon(T) = Psi0.
///
/// Interior update: Upsilon <- Upsilon + dt * godunov_flux(d+ Upsilon, d- Upsilon).
/// This is the monotone Godunov scheme for the reversed-time equation
/// Upsilon_s + G(Upsilon_zeta) = 0 with G = -H~. At zeta = 0 (resp. 1) the missing
/// one-sided slope is replaced by 0 and the result is capped at c_D.
/// Records "upsilon"; diagnostics refer to the centred derivative.
RunArtifact solve_hjb(const ModelSpec& model, const HjConfig& cfg);

/// Centred differences in the interior, one-sided at the two endpoints.
ScalarGrid derivative_of_upsilon(const ScalarGrid& grid);

/// Default Dirichlet cap 10 * (1 + max_k Psi0(zeta_k)).
double default_dirichlet_cap(const ModelSpec& model, std::size_t n);

}  // namespace twostate
