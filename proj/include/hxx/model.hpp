#pragma once

#include <map>
#include <optional>

#include "hxx/hamiltonian.hpp"
#include "hxx/params.hpp"
#include "hxx/space_builder.hpp"

namespace hxx {

// A calculation class wires shells, configuration ladders and named operator
// components together:
//   2p3d  L2,3-edge absorption: 2p core, 3d valence, ligand cage
//   rixs  K-edge absorption with 3p -> 1s decay: 1s and 3p cores, 3d valence,
//         ligand cage, quadrupole plus effective ligand dipole channels
//   df    3d -> 4f absorption: 3d core, 4f valence, crystal field only
struct Model {
    std::string klass;
    int nmin = 0;
    int nhopped = 0;
    bool spinfixed = false;
    std::optional<int> twice_sz;

    ShellLayout lay;
    BondGeometry geom;
    bool has_ligand = false;
    LigandReduction red;     // meaningful only when has_ligand
    double alpha_dipo = 0.0; // ligand dipole distance exponent (rixs)

    HilbertSpace base;
    HilbertSpace exci;
    HilbertSpace fin; // dim 0 unless the class decays (rixs)

    // core shell coupled by the two-shell Coulomb and SO_0 terms of `space`
    std::string core0(const std::string& space) const;
    const std::string& valence() const;
    bool decays() const { return klass == "rixs"; }
};

// spaces and layout for one class; twice_sz defaults to the electron count
// parity when spinfixed is set without a value. The geometry, Vs and Vp enter
// through the ligand reduction, so they fix the bit layout.
Model build_model(const ParamSet& p, int nmin, int nhopped, bool spinfixed,
                  std::optional<int> twice_sz);

// unit-coefficient Hamiltonian components keyed by parameter stem; space is
// "base", "exci" or "final". Structurally empty entries (spin-orbit on an s
// core, multipole ranks the shells cannot carry) stay in the list so every
// space shares one manifest.
std::vector<std::pair<std::string, OperatorSum>> model_components(const Model& m,
                                                                  const std::string& space);

// absorption operators base -> exci keyed by file stem (dip_m*, or quad_m*
// plus the dips_m*/dipp_m* effective dipole families for rixs)
std::vector<std::pair<std::string, OperatorSum>> transition_operators_in(const Model& m);
// decay operators exci -> final (emi_m*, rixs only)
std::vector<std::pair<std::string, OperatorSum>> transition_operators_out(const Model& m);

// ground-state observables reported by the counters, in report order
std::vector<std::pair<std::string, OperatorSum>> observable_operators(const Model& m);

// parameter stem -> multiplying coefficient for one space; reduc_1/reduc_0_1
// fold into the Slater integrals and factorhopexci into the core-hole
// hybridization
std::map<std::string, cd> model_coefficients(const std::string& klass, const std::string& space,
                                             const ParamSet& p);

} // namespace hxx
