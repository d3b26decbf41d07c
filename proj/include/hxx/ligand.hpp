#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hxx/geometry.hpp"

namespace hxx {

// Reduction of the full 3*nbonds ligand p manifold (per spin) to the handful
// of combinations the d shell actually couples to. Rows of the hopping matrix
// M = Vs*Tsigma + Vp*Tpi are orthonormalized in a fixed d-orbital order and
// near-zero remainders dropped, giving an orthonormal retained basis `eff`.
struct LigandReduction {
    size_t nbonds = 0;
    int retained = 0; // per spin

    // unit-coefficient channel matrices, 5 x (3*nbonds), real d order (xy,yz,z2,xz,x2y2)
    Eigen::MatrixXd ts_full;
    Eigen::MatrixXd tp_full;

    Eigen::MatrixXd eff;       // (3*nbonds) x retained, orthonormal columns
    Eigen::MatrixXd red_sigma; // 5 x retained, Tsigma expressed on eff
    Eigen::MatrixXd red_pi;    // 5 x retained

    std::vector<int> seeded_by; // real d index whose row produced each retained vector

    Eigen::MatrixXd gram() const { return eff.transpose() * eff; }
};

// vs, vp set the direction of the hopping rows being orthogonalized; the unit
// channel matrices themselves are kept separate so Vs and Vp stay independent
// couplings at assembly time.
LigandReduction build_ligand_reduction(const BondGeometry& g, double vs, double vp,
                                       double drop_tol = 1e-10);

// p-p hopping from a dipole-active shell (4p) into the retained ligand basis,
// used to build the effective 1s->ligand transition. Returns the 3 x retained
// coefficient matrix of the requested channel on real p rows (y,z,x).
Eigen::MatrixXd dipole_projection(const BondGeometry& g, const LigandReduction& red,
                                  double alpha_dipo, bool sigma_channel);

// one-particle crystal field matrix on real orbitals of an l shell:
// sum over bonds of (R/DREF)^ALPHAVC * W diag W^T with the bond-frame diagonal
// selecting the slot `which` (0: axial, 1: first |m|=1 pair, 2: |m|=2 pair, f only)
Eigen::MatrixXd crystal_field_matrix(int l, const BondGeometry& g, int which);

} // namespace hxx
