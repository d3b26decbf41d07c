#pragma once

#include "hxx/case_dir.hpp"
#include "hxx/spectra.hpp"

namespace hxx {

// Assembled operators keep pointers into the LoadedCase component storage, so
// the case must outlive every LinearOp and SpectrumResult computation built
// from it.

LinearOp assemble_space(const LoadedCase& lc, const ParamSet& p, const std::string& space);

GroundManifold solve_ground(const LinearOp& h, size_t dim, const ParamSet& p);

struct NamedChannels {
    std::vector<std::string> names;
    std::vector<LinearOp> ops;
};

// empty pol: one channel per spherical component (the rixs class combines its
// sigma and pi effective dipole families with Dips/Dipp). 3 coefficients:
// a single combined dipole channel. 5 coefficients: a single quadrupole
// channel (rixs class only).
NamedChannels absorption_channels(const LoadedCase& lc, const ParamSet& p,
                                  const std::vector<cd>& pol);

SpectrumResult run_spectrum(const LoadedCase& lc, const ParamSet& p, const std::vector<cd>& pol);

struct RixsRequest {
    double ein = 0; // above the ground energy
    double eout1 = 0, eout2 = 0, dout = 0.1;
    double gammain = 0.2;
    double gammaout_low = 0.5, gammaout_cross = 0, gammaout_high = 1.0;
    std::vector<cd> polin;  // 3 (effective dipole) or 5 (quadrupole) entries
    std::vector<cd> polout; // 3 entries on the decay dipole
};

SpectrumResult run_rixs(const LoadedCase& lc, const ParamSet& p, const RixsRequest& rq);

CounterTable run_counters(const LoadedCase& lc, const ParamSet& p);

// energy column then (Re, Im) per channel, one row per grid point
void write_columns(const std::string& path, const SpectrumResult& s,
                   const std::vector<std::string>& channel_names);

} // namespace hxx
