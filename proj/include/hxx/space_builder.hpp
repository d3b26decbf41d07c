#pragma once

#include "hxx/hilbert_space.hpp"

namespace hxx {

// Which determinants belong to a model space. Core shells carry an exact
// occupation; the valence shell may take min..min+nhopped electrons; a ligand
// shell, when present, absorbs the balance (total electron number is fixed).
// spinfixed pins total 2*S_z.
struct ConfigConstraint {
    std::string valence_shell;                              // empty when nothing ladders
    int min_valence = 0;
    int nhopped = 0;
    std::vector<std::pair<std::string, int>> core_occupation;
    int total_electrons = 0;
    bool spinfixed = false;
    std::optional<int> twice_sz;

    bool admits(const ShellLayout& layout, const Determinant& d) const;
};

// seed determinant for the lowest configuration: valence at min occupation,
// cores exact, ligand filled with the balance; spins maximize S_z unless the
// constraint pins 2*S_z, ties broken toward the numerically smallest bits
Determinant canonical_seed(const ShellLayout& layout, const ConfigConstraint& c);

// closure of the seeds under the wanderer's terms, filtered by the
// constraint. The wanderer is applied structurally; amplitudes only matter
// through the pruning already done at canonicalization.
HilbertSpace expand(const ShellLayout& layout, const std::vector<Determinant>& seeds,
                    const OperatorSum& wanderer, const ConfigConstraint& constraint,
                    const std::string& name);

// direct combinatorial generation of every admitted determinant; ordered
// exactly like expand() so equality of the two is a plain vector compare
HilbertSpace enumerate_configurations(const ShellLayout& layout,
                                      const ConfigConstraint& constraint,
                                      const std::string& name);

// net change of 2*S_z effected by one term (creates minus annihilates,
// up counting +1 and down -1)
int term_twice_dsz(const ShellLayout& layout, const OperatorTerm& t);

// drop terms that change 2*S_z; exact projection onto a spinfixed space
OperatorSum filter_sz_conserving(const ShellLayout& layout, const OperatorSum& op);

} // namespace hxx
