#include "dumbbell/integrator.hpp"

namespace dumbbell {

SatelliteState integrate(const StateRhs& rhs, const SatelliteState& s0, double t0, double t1, double tol,
                         IntegratorStats* stats)
{
    return integrate_dp45<SatelliteState>(rhs, s0, t0, t1, tol, stats);
}

StateRhs full_system(PerturbSetup setup)
{
    return [setup = std::move(setup)](double t, const SatelliteState& s) { return full_rhs(s, t, setup); };
}

StateRhs linearized_system(LinearizedTorque lin, double eps)
{
    return [lin = std::move(lin), eps](double t, const SatelliteState& s) {
        return first_order_rhs(s, t, eps, lin);
    };
}

} // namespace dumbbell
