#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hxx/ligand.hpp"
#include "hxx/operators.hpp"
#include "hxx/shells.hpp"

namespace hxx {
namespace ops {

// ---- two-body Coulomb ----
// Every builder emits the full antisymmetric quadruple sum
//   1/2 sum <ab|v|cd> c+_a c+_b c_d c_c
// with unit radial integral; the caller scales by F^k / G^k (and reduc).

// all four orbitals in one shell, radial F^k
OperatorSum coulomb_intra_k(const ShellLayout& lay, const std::string& shell, int k);
// direct integral F^k between two different shells
OperatorSum coulomb_direct_k(const ShellLayout& lay, const std::string& sa,
                             const std::string& sb, int k);
// exchange integral G^k between two different shells
OperatorSum coulomb_exchange_k(const ShellLayout& lay, const std::string& sa,
                               const std::string& sb, int k);

// assembled interactions; reduc multiplies every k>0 integral
OperatorSum coulomb_intra(const ShellLayout& lay, const std::string& shell,
                          const std::map<int, double>& fk, double reduc);
OperatorSum coulomb_inter(const ShellLayout& lay, const std::string& sa, const std::string& sb,
                          const std::map<int, double>& fk, const std::map<int, double>& gk,
                          double reduc);

// ---- one-body shell operators ----
OperatorSum spin_orbit(const ShellLayout& lay, const std::string& shell); // unit zeta

OperatorSum number_op(const ShellLayout& lay, const std::string& shell);
OperatorSum spin_z(const ShellLayout& lay, const std::string& shell);
OperatorSum spin_plus(const ShellLayout& lay, const std::string& shell);
OperatorSum spin_minus(const ShellLayout& lay, const std::string& shell);
OperatorSum orbital_z(const ShellLayout& lay, const std::string& shell);
OperatorSum orbital_plus(const ShellLayout& lay, const std::string& shell);
OperatorSum orbital_minus(const ShellLayout& lay, const std::string& shell);

// zero*S_z + minus*S_- + plus*S_+ on one shell; Hermitian when zero is real
// and minus == conj(plus)
OperatorSum exchange_field(const ShellLayout& lay, const std::string& shell, cd zero, cd minus,
                           cd plus);

// multi-shell totals: S sums every listed shell, L skips nothing (pass only
// atomic shells; ligand orbitals carry no orbital moment)
OperatorSum spin_z(const ShellLayout& lay, const std::vector<std::string>& shells);
OperatorSum spin_plus(const ShellLayout& lay, const std::vector<std::string>& shells);
OperatorSum orbital_z(const ShellLayout& lay, const std::vector<std::string>& shells);
OperatorSum orbital_plus(const ShellLayout& lay, const std::vector<std::string>& shells);

// composite observables used by the counters
OperatorSum s_squared(const ShellLayout& lay, const std::vector<std::string>& shells);
OperatorSum l_squared(const ShellLayout& lay, const std::vector<std::string>& shells);
OperatorSum sl_coupling2(const ShellLayout& lay, const std::vector<std::string>& s_shells,
                         const std::vector<std::string>& l_shells); // 2 S.L
OperatorSum s_squared(const ShellLayout& lay, const std::string& shell);
OperatorSum l_squared(const ShellLayout& lay, const std::string& shell);
OperatorSum sl_coupling2(const ShellLayout& lay, const std::string& shell); // 2 S.L

// ---- lattice terms ----
// unit-VC crystal field slot `which` on an atomic shell
OperatorSum crystal_field_component(const ShellLayout& lay, const std::string& shell,
                                    const BondGeometry& g, int which);
// unit-Vs / unit-Vp hybridization between a d shell and the retained ligand basis
OperatorSum hop_component(const ShellLayout& lay, const std::string& d_shell,
                          const std::string& lig_shell, const LigandReduction& red, bool sigma);

// ---- transitions ----
// spherical component m of the C^1 / C^2 transition from shell `from` to `to`
OperatorSum dipole_m(const ShellLayout& lay, const std::string& from, const std::string& to,
                     int m);
OperatorSum quadrupole_m(const ShellLayout& lay, const std::string& from, const std::string& to,
                         int m);
// s -> ligand transition with the intermediate p shell eliminated: the dipole
// reaches a virtual p orbital which hops into the retained ligand basis
OperatorSum effective_dipole_m(const ShellLayout& lay, const std::string& s_shell,
                               const std::string& lig_shell, const LigandReduction& red,
                               const BondGeometry& g, double alpha_dipo, bool sigma_channel,
                               int m);

// spherical -> cartesian polarisation helpers (coefficients of m = -l..l)
std::array<cd, 3> dipole_coeffs_x();
std::array<cd, 3> dipole_coeffs_y();
std::array<cd, 3> dipole_coeffs_z();
std::array<cd, 5> quadrupole_coeffs_xy();
std::array<cd, 5> quadrupole_coeffs_x2y2();

} // namespace ops
} // namespace hxx
