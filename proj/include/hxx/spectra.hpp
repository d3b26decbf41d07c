#pragma once

#include <array>
#include <vector>

#include "hxx/solvers.hpp"

namespace hxx {

struct GroundState {
    double energy = 0;
    std::vector<cd> vec;
    double weight = 0;
};

struct GroundManifold {
    std::vector<GroundState> states; // energies ascending, weights sum to 1
    double e0 = 0;
};

struct ManifoldConfig {
    int nsearchedeigen = 10;
    double erange = 0.1;
    double temp = 0.009;
    double tolefact = 1e-6;
    LanczosConfig lanczos; // nev is overridden by nsearchedeigen
};

// lowest eigenstates within erange of the bottom, Boltzmann weighted at temp;
// unnormalized weights exp(-(E-E0)/temp) below tolefact are dropped and the
// rest renormalized to sum 1
GroundManifold ground_manifold(const ApplyFn& h, size_t dim, const ManifoldConfig& cfg);

struct BroadeningModel {
    double all1 = 0.1;
    double all2 = 0.1;
    double el2l3 = 700.0; // crossover on the shifted output axis
    double shift = 0.0;
    double gamma(double e_out) const { return e_out < el2l3 ? all1 : all2; }
};

struct GridParams {
    int npunti = 500;
    double dxleft = -0.1;
    double dxright = 0.1;
};

struct SpectrumResult {
    std::vector<double> energies;
    std::vector<std::vector<cd>> channels; // one complex array per channel
};

struct AbsorptionConfig {
    int nsteps = 250; // tridiagonal depth per seed
    GridParams grid;
    BroadeningModel broad;
};

// Boltzmann-averaged absorption. For each ground state and each transition
// channel the seed D X_n is tridiagonalized and the continued fraction is
// evaluated over a grid spanning the computed resonance extent (shift plus
// dxleft/dxright margins; a single isolated resonance falls back to a
// centered 1 eV window). Channels store conj<seed|(z-H)^-1|seed>, so the
// imaginary part is the nonnegative absorption strength.
SpectrumResult absorption(const ApplyFn& h_exci, size_t dim_exci,
                          const std::vector<ApplyFn>& channels, // each maps base to excited
                          const GroundManifold& manifold, const AbsorptionConfig& cfg);

struct RixsConfig {
    double ein = 0;             // incident energy above the ground energy
    double eout1 = 0, eout2 = 0, dout = 0.1;
    double gammain = 0.2;       // intermediate-state broadening
    double gammaout_low = 0.5;  // below the crossover
    double gammaout_cross = 0;  // crossover on the outgoing axis
    double gammaout_high = 1.0; // above the crossover
    int nsteps = 250;
    ResolventConfig resolvent;
};

// single-ground-state RIXS: v = D_out (E0 + ein + i gammain - H_exci)^-1 D_in X0,
// continued fraction of H_final seeded on v over the outgoing grid
SpectrumResult rixs(const ApplyFn& h_exci, size_t dim_exci, const ApplyFn& h_final,
                    size_t dim_final, const ApplyFn& d_in, const ApplyFn& d_out,
                    const GroundState& ground, const RixsConfig& cfg);

// per retained ground state: E, then the real expectation value of each op
struct CounterTable {
    std::vector<std::vector<double>> rows;
};

CounterTable counters(const GroundManifold& manifold, const std::vector<ApplyFn>& ops,
                      size_t dim);

} // namespace hxx
