#include "twostate/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace twostate {

double hamiltonian_h(ValuePair z, SimplexPoint theta, State i, const ModelSpec& model) {
  const double coupling = model.f(i, theta);
  if (!std::isfinite(coupling)) {
    throw std::domain_error("coupling f(" + std::to_string(static_cast<int>(i)) +
                            ", zeta=" + std::to_string(theta.zeta) + ") is not finite");
  }
  return hamiltonian_from_coupling(coupling, z, i);
}

}  // namespace twostate
