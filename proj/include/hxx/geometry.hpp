#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hxx {

using Vec3 = std::array<double, 3>;

// Ligand cage geometry plus the distance scaling laws. facts_hop, when not
// empty, multiplies the hopping of the matching bond.
struct BondGeometry {
    std::vector<Vec3> bonds;
    std::vector<double> facts_hop; // empty means all ones
    double dref = 1.0;
    double alpha_vsp = -3.0;
    double alpha_vc = -3.0;

    size_t nbonds() const { return bonds.size(); }

    double bond_r(size_t b) const {
        const Vec3& v = bonds[b];
        double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (r <= 0.0) throw std::invalid_argument("zero-length bond");
        return r;
    }
    // polar angle from +z and azimuth of bond b
    double bond_theta(size_t b) const { return std::acos(bonds[b][2] / bond_r(b)); }
    double bond_phi(size_t b) const {
        const Vec3& v = bonds[b];
        if (v[0] == 0.0 && v[1] == 0.0) return 0.0;
        return std::atan2(v[1], v[0]);
    }

    double fact(size_t b) const {
        if (facts_hop.empty()) return 1.0;
        return facts_hop.at(b);
    }
    double hop_scale(size_t b) const {
        return fact(b) * std::pow(bond_r(b) / dref, alpha_vsp);
    }
    double vc_scale(size_t b) const { return std::pow(bond_r(b) / dref, alpha_vc); }
    double dip_scale(size_t b, double alpha_dipo) const {
        return std::pow(bond_r(b) / dref, alpha_dipo);
    }

    void validate() const {
        if (bonds.empty()) throw std::invalid_argument("bond list is empty");
        if (!facts_hop.empty() && facts_hop.size() != bonds.size())
            throw std::invalid_argument("facts_hop length does not match BONDS");
        for (size_t b = 0; b < bonds.size(); ++b) (void)bond_r(b);
        if (dref <= 0.0) throw std::invalid_argument("DREF must be positive");
    }
};

inline BondGeometry octahedral_bonds() {
    BondGeometry g;
    g.bonds = {{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}};
    return g;
}

} // namespace hxx
