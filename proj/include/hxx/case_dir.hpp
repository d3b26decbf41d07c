#pragma once

#include "hxx/model.hpp"
#include "hxx/sparse.hpp"

namespace hxx {

// Everything a spectrum run needs to know about an expanded case without
// rebuilding operators: identity of the ladder, the bit layout fingerprint
// (geometry and which hybridization channels were alive at expansion time)
// and the stored file inventory.
struct CaseManifest {
    std::string klass;
    int nmin = 0;
    int nhopped = 0;
    bool spinfixed = false;
    std::optional<int> twice_sz;

    uint32_t width = 0;
    int retained = 0;
    bool vs_zero = false;
    bool vp_zero = false;
    std::vector<Vec3> bonds;
    std::vector<double> facts_hop; // empty means all ones
    double dref = 1.0;
    double alpha_vsp = -3.0;
    double alpha_vc = -3.0;
    double alpha_dipo = 0.0; // rixs only

    std::map<std::string, size_t> dims; // base, exci (, final)
    std::vector<std::string> components;
    std::vector<std::string> transitions_in;
    std::vector<std::string> transitions_out;
    std::vector<std::string> observables;

    std::vector<std::string> spaces() const;
};

void write_basis(const std::string& path, const HilbertSpace& space);
// occupancy chains in stored order; width checked against the header
std::vector<BitChain> read_basis_vals(const std::string& path);

// project every component, transition and observable of the model and store
// them with the basis files and manifest.json. An existing directory holding
// a different case is refused unless force is set.
CaseManifest write_case(const std::string& dir, const Model& m, const ParamSet& p,
                        bool force = false);

CaseManifest read_manifest(const std::string& dir);

struct LoadedCase {
    std::string dir;
    CaseManifest man;
    std::map<std::string, ComponentSet> spaces; // keyed base/exci/final
    std::map<std::string, SparseOp> trans;      // in and out families by stem
    std::map<std::string, SparseOp> obs;        // base-space observables

    size_t dim(const std::string& space) const;
};

LoadedCase load_case(const std::string& dir);

// run-time parameters must agree with the expansion fingerprint: same
// geometry and scaling exponents, and no hybridization channel switching
// between zero and nonzero (that changes the retained ligand basis)
void check_case_params(const CaseManifest& man, const ParamSet& p);

} // namespace hxx
