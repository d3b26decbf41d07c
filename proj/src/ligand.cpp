#include "hxx/ligand.hpp"

#include <stdexcept>

#include "hxx/angular.hpp"

namespace hxx {

namespace {

// bond-frame rotations for the p and d shells of bond b
void bond_rotations(const BondGeometry& g, size_t b, Eigen::MatrixXd& w1, Eigen::MatrixXd& w2) {
    double alpha = g.bond_phi(b);
    double beta = g.bond_theta(b);
    w1 = real_rotation(1, alpha, beta);
    w2 = real_rotation(2, alpha, beta);
}

} // namespace

LigandReduction build_ligand_reduction(const BondGeometry& g, double vs, double vp,
                                       double drop_tol) {
    g.validate();
    LigandReduction red;
    red.nbonds = g.nbonds();
    const Eigen::Index ncols = 3 * static_cast<Eigen::Index>(red.nbonds);

    red.ts_full = Eigen::MatrixXd::Zero(5, ncols);
    red.tp_full = Eigen::MatrixXd::Zero(5, ncols);

    Eigen::MatrixXd w1, w2;
    for (size_t b = 0; b < red.nbonds; ++b) {
        bond_rotations(g, b, w1, w2);
        double s = g.hop_scale(b);
        Eigen::Index c0 = 3 * static_cast<Eigen::Index>(b);
        for (int a = 0; a < 5; ++a) {
            for (int mu = 0; mu < 3; ++mu) {
                red.ts_full(a, c0 + mu) += s * w2(a, D_Z2) * w1(mu, P_Z);
                red.tp_full(a, c0 + mu) +=
                    s * (w2(a, D_XZ) * w1(mu, P_X) + w2(a, D_YZ) * w1(mu, P_Y));
            }
        }
    }

    Eigen::MatrixXd m = vs * red.ts_full + vp * red.tp_full;

    // orthogonalize rows in a fixed order so the retained basis is reproducible
    static const int order[5] = {D_Z2, D_XZ, D_YZ, D_X2Y2, D_XY};
    red.eff = Eigen::MatrixXd::Zero(ncols, 5);
    int k = 0;
    for (int oi = 0; oi < 5; ++oi) {
        Eigen::VectorXd v = m.row(order[oi]).transpose();
        double scale = v.norm();
        for (int rep = 0; rep < 2; ++rep) // twice for numerical cleanliness
            for (int j = 0; j < k; ++j) v -= red.eff.col(j).dot(v) * red.eff.col(j);
        double n = v.norm();
        if (n <= drop_tol * std::max(1.0, scale)) continue;
        red.eff.col(k) = v / n;
        red.seeded_by.push_back(order[oi]);
        ++k;
    }
    red.retained = k;
    red.eff.conservativeResize(ncols, k);

    red.red_sigma = red.ts_full * red.eff;
    red.red_pi = red.tp_full * red.eff;

    // the retained basis must carry the full hopping by construction
    for (int a = 0; a < 5; ++a) {
        Eigen::VectorXd row = m.row(a).transpose();
        Eigen::VectorXd rem = row - red.eff * (red.eff.transpose() * row);
        if (rem.norm() > 1e-8 * std::max(1.0, row.norm()))
            throw std::runtime_error("ligand reduction lost hopping weight");
    }
    return red;
}

Eigen::MatrixXd dipole_projection(const BondGeometry& g, const LigandReduction& red,
                                  double alpha_dipo, bool sigma_channel) {
    if (red.nbonds != g.nbonds())
        throw std::invalid_argument("reduction was built for a different bond set");
    const Eigen::Index ncols = 3 * static_cast<Eigen::Index>(red.nbonds);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(3, ncols);

    Eigen::MatrixXd w1, w2;
    for (size_t b = 0; b < red.nbonds; ++b) {
        bond_rotations(g, b, w1, w2);
        double s = g.dip_scale(b, alpha_dipo);
        Eigen::Index c0 = 3 * static_cast<Eigen::Index>(b);
        for (int mu = 0; mu < 3; ++mu) {
            for (int nu = 0; nu < 3; ++nu) {
                double v = sigma_channel
                               ? w1(mu, P_Z) * w1(nu, P_Z)
                               : w1(mu, P_X) * w1(nu, P_X) + w1(mu, P_Y) * w1(nu, P_Y);
                t(mu, c0 + nu) += s * v;
            }
        }
    }
    return t * red.eff; // 3 x retained
}

Eigen::MatrixXd crystal_field_matrix(int l, const BondGeometry& g, int which) {
    g.validate();
    const int dim = 2 * l + 1;
    std::vector<int> slots;
    if (l == 2) {
        if (which == 0) slots = {D_Z2};
        else if (which == 1) slots = {D_XZ, D_YZ};
        else throw std::invalid_argument("d shell has axial and |m|=1 field slots only");
    } else if (l == 3) {
        if (which == 0) slots = {F_Z3};
        else if (which == 1) slots = {F_XZ2, F_YZ2};
        else if (which == 2) slots = {F_XYZ, F_ZX2Y2};
        else throw std::invalid_argument("f shell has field slots 0,1,2");
    } else {
        throw std::invalid_argument("crystal field implemented for d and f shells");
    }

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (size_t b = 0; b < g.nbonds(); ++b) {
        Eigen::MatrixXd w = real_rotation(l, g.bond_phi(b), g.bond_theta(b));
        double s = g.vc_scale(b);
        for (int slot : slots) out += s * w.col(slot) * w.col(slot).transpose();
    }
    return out;
}

} // namespace hxx
