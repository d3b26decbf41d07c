#include "hxx/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "hxx/angular.hpp"

namespace hxx {
namespace ops {

namespace {

double ladder(int l, int m_from, int dir) {
    // matrix element of l_+ (dir=+1) or l_- (dir=-1) out of m_from
    return std::sqrt(double(l * (l + 1) - m_from * (m_from + dir)));
}

// 1/2 sum <ab|v|cd> c+_a c+_b c_d c_c over four shells with pairing (a,c),(b,d)
void add_quadruples(OperatorSum& out, const ShellLayout& lay, const std::string& na,
                    const std::string& nb, const std::string& nc, const std::string& nd,
                    int k) {
    const Shell& sa = lay.shell(na);
    const Shell& sb = lay.shell(nb);
    const Shell& sc = lay.shell(nc);
    const Shell& sd = lay.shell(nd);
    if (sa.ligand || sb.ligand || sc.ligand || sd.ligand)
        throw std::invalid_argument("Coulomb terms act on atomic shells");

    for (int ma = -sa.l; ma <= sa.l; ++ma)
        for (int mc = -sc.l; mc <= sc.l; ++mc) {
            double cka = gaunt_ck(k, sa.l, ma, sc.l, mc);
            if (cka == 0.0) continue;
            for (int mb = -sb.l; mb <= sb.l; ++mb) {
                int md = ma + mb - mc;
                if (md < -sd.l || md > sd.l) continue;
                double ckb = gaunt_ck(k, sd.l, md, sb.l, mb);
                if (ckb == 0.0) continue;
                double v = 0.5 * cka * ckb;
                for (Spin s1 : {SpinUp, SpinDown})
                    for (Spin s2 : {SpinUp, SpinDown}) {
                        out.add(cd(v, 0.0), {cr(sa.index(ma, s1)), cr(sb.index(mb, s2)),
                                             an(sd.index(md, s2)), an(sc.index(mc, s1))});
                    }
            }
        }
}

} // namespace

OperatorSum coulomb_intra_k(const ShellLayout& lay, const std::string& shell, int k) {
    OperatorSum out;
    add_quadruples(out, lay, shell, shell, shell, shell, k);
    out.canonicalize();
    return out;
}

OperatorSum coulomb_direct_k(const ShellLayout& lay, const std::string& sa,
                             const std::string& sb, int k) {
    if (sa == sb) throw std::invalid_argument("direct term needs two distinct shells");
    OperatorSum out;
    add_quadruples(out, lay, sa, sb, sa, sb, k);
    add_quadruples(out, lay, sb, sa, sb, sa, k);
    out.canonicalize();
    return out;
}

OperatorSum coulomb_exchange_k(const ShellLayout& lay, const std::string& sa,
                               const std::string& sb, int k) {
    if (sa == sb) throw std::invalid_argument("exchange term needs two distinct shells");
    OperatorSum out;
    add_quadruples(out, lay, sa, sb, sb, sa, k);
    add_quadruples(out, lay, sb, sa, sa, sb, k);
    out.canonicalize();
    return out;
}

OperatorSum coulomb_intra(const ShellLayout& lay, const std::string& shell,
                          const std::map<int, double>& fk, double reduc) {
    OperatorSum out;
    for (const auto& [k, f] : fk) {
        if (f == 0.0) continue;
        OperatorSum piece = coulomb_intra_k(lay, shell, k);
        piece *= cd(k > 0 ? reduc * f : f, 0.0);
        out += piece;
    }
    out.canonicalize();
    return out;
}

OperatorSum coulomb_inter(const ShellLayout& lay, const std::string& sa, const std::string& sb,
                          const std::map<int, double>& fk, const std::map<int, double>& gk,
                          double reduc) {
    OperatorSum out;
    for (const auto& [k, f] : fk) {
        if (f == 0.0) continue;
        OperatorSum piece = coulomb_direct_k(lay, sa, sb, k);
        piece *= cd(k > 0 ? reduc * f : f, 0.0);
        out += piece;
    }
    for (const auto& [k, g] : gk) {
        if (g == 0.0) continue;
        OperatorSum piece = coulomb_exchange_k(lay, sa, sb, k);
        piece *= cd(reduc * g, 0.0);
        out += piece;
    }
    out.canonicalize();
    return out;
}

OperatorSum spin_orbit(const ShellLayout& lay, const std::string& shell) {
    const Shell& sh = lay.shell(shell);
    if (sh.ligand) throw std::invalid_argument("spin-orbit acts on atomic shells");
    OperatorSum out;
    if (sh.l == 0) return out; // no orbital moment, zero operator
    for (int m = -sh.l; m <= sh.l; ++m) {
        // l_z s_z
        out.add(cd(0.5 * m, 0.0), {cr(sh.index(m, SpinUp)), an(sh.index(m, SpinUp))});
        out.add(cd(-0.5 * m, 0.0), {cr(sh.index(m, SpinDown)), an(sh.index(m, SpinDown))});
        // 1/2 l_+ s_-  : m,up -> m+1,down
        if (m < sh.l)
            out.add(cd(0.5 * ladder(sh.l, m, +1), 0.0),
                    {cr(sh.index(m + 1, SpinDown)), an(sh.index(m, SpinUp))});
        // 1/2 l_- s_+  : m,down -> m-1,up
        if (m > -sh.l)
            out.add(cd(0.5 * ladder(sh.l, m, -1), 0.0),
                    {cr(sh.index(m - 1, SpinUp)), an(sh.index(m, SpinDown))});
    }
    out.canonicalize();
    return out;
}

namespace {

// iterate (m or e, spin) pairs of a shell: atomic shells use m quantum
// numbers, ligand shells plain orbital counters
template <typename F> void for_orbitals(const Shell& sh, F&& f) {
    int n = sh.per_spin();
    for (int i = 0; i < n; ++i)
        for (Spin s : {SpinUp, SpinDown})
            f(i, s, sh.ligand ? sh.ligand_index(i, s) : sh.index(i - sh.l, s));
}

} // namespace

OperatorSum number_op(const ShellLayout& lay, const std::string& shell) {
    const Shell& sh = lay.shell(shell);
    OperatorSum out;
    for_orbitals(sh, [&](int, Spin, size_t p) { out.add(cd(1, 0), {cr(p), an(p)}); });
    out.canonicalize();
    return out;
}

OperatorSum spin_z(const ShellLayout& lay, const std::string& shell) {
    const Shell& sh = lay.shell(shell);
    OperatorSum out;
    for_orbitals(sh, [&](int, Spin s, size_t p) {
        out.add(cd(s == SpinUp ? 0.5 : -0.5, 0.0), {cr(p), an(p)});
    });
    out.canonicalize();
    return out;
}

OperatorSum spin_plus(const ShellLayout& lay, const std::string& shell) {
    const Shell& sh = lay.shell(shell);
    OperatorSum out;
    for (int i = 0; i < int(sh.per_spin()); ++i) {
        size_t up = sh.ligand ? sh.ligand_index(i, SpinUp) : sh.index(i - sh.l, SpinUp);
        size_t dn = sh.ligand ? sh.ligand_index(i, SpinDown) : sh.index(i - sh.l, SpinDown);
        out.add(cd(1, 0), {cr(up), an(dn)});
    }
    out.canonicalize();
    return out;
}

OperatorSum spin_minus(const ShellLayout& lay, const std::string& shell) {
    return adjoint(spin_plus(lay, shell));
}

OperatorSum orbital_z(const ShellLayout& lay, const std::string& shell) {
    const Shell& sh = lay.shell(shell);
    if (sh.ligand) throw std::invalid_argument("orbital moment needs an atomic shell");
    OperatorSum out;
    for (int m = -sh.l; m <= sh.l; ++m)
        for (Spin s : {SpinUp, SpinDown})
            out.add(cd(double(m), 0.0), {cr(sh.index(m, s)), an(sh.index(m, s))});
    out.canonicalize();
    return out;
}

OperatorSum orbital_plus(const ShellLayout& lay, const std::string& shell) {
    const Shell& sh = lay.shell(shell);
    if (sh.ligand) throw std::invalid_argument("orbital moment needs an atomic shell");
    OperatorSum out;
    for (int m = -sh.l; m < sh.l; ++m)
        for (Spin s : {SpinUp, SpinDown})
            out.add(cd(ladder(sh.l, m, +1), 0.0), {cr(sh.index(m + 1, s)), an(sh.index(m, s))});
    out.canonicalize();
    return out;
}

OperatorSum orbital_minus(const ShellLayout& lay, const std::string& shell) {
    return adjoint(orbital_plus(lay, shell));
}

OperatorSum exchange_field(const ShellLayout& lay, const std::string& shell, cd zero, cd minus,
                           cd plus) {
    OperatorSum out;
    if (zero != cd(0, 0)) {
        OperatorSum t = spin_z(lay, shell);
        t *= zero;
        out += t;
    }
    if (minus != cd(0, 0)) {
        OperatorSum t = spin_minus(lay, shell);
        t *= minus;
        out += t;
    }
    if (plus != cd(0, 0)) {
        OperatorSum t = spin_plus(lay, shell);
        t *= plus;
        out += t;
    }
    out.canonicalize();
    return out;
}

namespace {

template <typename F>
OperatorSum sum_over(const std::vector<std::string>& shells, F&& build) {
    OperatorSum out;
    for (const auto& s : shells) out += build(s);
    out.canonicalize();
    return out;
}

} // namespace

OperatorSum spin_z(const ShellLayout& lay, const std::vector<std::string>& shells) {
    return sum_over(shells, [&](const std::string& s) { return spin_z(lay, s); });
}
OperatorSum spin_plus(const ShellLayout& lay, const std::vector<std::string>& shells) {
    return sum_over(shells, [&](const std::string& s) { return spin_plus(lay, s); });
}
OperatorSum orbital_z(const ShellLayout& lay, const std::vector<std::string>& shells) {
    return sum_over(shells, [&](const std::string& s) { return orbital_z(lay, s); });
}
OperatorSum orbital_plus(const ShellLayout& lay, const std::vector<std::string>& shells) {
    return sum_over(shells, [&](const std::string& s) { return orbital_plus(lay, s); });
}

OperatorSum s_squared(const ShellLayout& lay, const std::vector<std::string>& shells) {
    // S^2 = S_- S_+ + S_z (S_z + 1)
    OperatorSum sp = spin_plus(lay, shells);
    OperatorSum sz = spin_z(lay, shells);
    OperatorSum out = adjoint(sp) * sp;
    out += sz;
    out += sz * sz;
    out.canonicalize();
    return out;
}

OperatorSum l_squared(const ShellLayout& lay, const std::vector<std::string>& shells) {
    OperatorSum lp = orbital_plus(lay, shells);
    OperatorSum lz = orbital_z(lay, shells);
    OperatorSum out = adjoint(lp) * lp;
    out += lz;
    out += lz * lz;
    out.canonicalize();
    return out;
}

OperatorSum sl_coupling2(const ShellLayout& lay, const std::vector<std::string>& s_shells,
                         const std::vector<std::string>& l_shells) {
    // 2 S.L = 2 S_z L_z + S_+ L_- + S_- L_+
    OperatorSum sp = spin_plus(lay, s_shells);
    OperatorSum lp = orbital_plus(lay, l_shells);
    OperatorSum out = spin_z(lay, s_shells) * orbital_z(lay, l_shells);
    out *= cd(2, 0);
    out += sp * adjoint(lp);
    out += adjoint(sp) * lp;
    out.canonicalize();
    return out;
}

OperatorSum s_squared(const ShellLayout& lay, const std::string& shell) {
    return s_squared(lay, std::vector<std::string>{shell});
}
OperatorSum l_squared(const ShellLayout& lay, const std::string& shell) {
    return l_squared(lay, std::vector<std::string>{shell});
}
OperatorSum sl_coupling2(const ShellLayout& lay, const std::string& shell) {
    return sl_coupling2(lay, std::vector<std::string>{shell}, std::vector<std::string>{shell});
}

namespace {

// one-particle real-basis matrix -> spherical m basis: O_c = U^T M U*
Eigen::MatrixXcd to_m_basis(int l, const Eigen::MatrixXd& m_real) {
    Eigen::MatrixXcd u = real_to_complex(l);
    return u.transpose() * m_real * u.conjugate();
}

} // namespace

OperatorSum crystal_field_component(const ShellLayout& lay, const std::string& shell,
                                    const BondGeometry& g, int which) {
    const Shell& sh = lay.shell(shell);
    if (sh.ligand) throw std::invalid_argument("crystal field acts on atomic shells");
    Eigen::MatrixXcd o = to_m_basis(sh.l, crystal_field_matrix(sh.l, g, which));
    OperatorSum out;
    for (int mi = -sh.l; mi <= sh.l; ++mi)
        for (int mj = -sh.l; mj <= sh.l; ++mj) {
            cd c = o(mi + sh.l, mj + sh.l);
            if (std::abs(c) < kAmplitudeCutoff) continue;
            for (Spin s : {SpinUp, SpinDown})
                out.add(c, {cr(sh.index(mi, s)), an(sh.index(mj, s))});
        }
    out.canonicalize();
    return out;
}

OperatorSum hop_component(const ShellLayout& lay, const std::string& d_shell,
                          const std::string& lig_shell, const LigandReduction& red,
                          bool sigma) {
    const Shell& dsh = lay.shell(d_shell);
    const Shell& lsh = lay.shell(lig_shell);
    if (dsh.l != 2 || dsh.ligand) throw std::invalid_argument("hybridization couples a d shell");
    if (!lsh.ligand) throw std::invalid_argument("hop target must be the ligand shell");
    if (int(lsh.per_spin()) < red.retained)
        throw std::invalid_argument("ligand shell smaller than the retained basis");

    const Eigen::MatrixXd& t = sigma ? red.red_sigma : red.red_pi;
    Eigen::MatrixXcd u2 = real_to_complex(2);
    Eigen::MatrixXcd c = u2.transpose() * t; // 5 x retained, rows are m = -2..2

    OperatorSum out;
    for (int mi = 0; mi < 5; ++mi)
        for (int e = 0; e < red.retained; ++e) {
            cd v = c(mi, e);
            if (std::abs(v) < kAmplitudeCutoff) continue;
            for (Spin s : {SpinUp, SpinDown}) {
                size_t dp = dsh.index(mi - 2, s);
                size_t lp = lsh.ligand_index(e, s);
                out.add(v, {cr(dp), an(lp)});
                out.add(std::conj(v), {cr(lp), an(dp)});
            }
        }
    out.canonicalize();
    return out;
}

namespace {

OperatorSum multipole_m(const ShellLayout& lay, const std::string& from, const std::string& to,
                        int k, int m) {
    const Shell& sf = lay.shell(from);
    const Shell& st = lay.shell(to);
    if (sf.ligand || st.ligand)
        throw std::invalid_argument("multipole transitions couple atomic shells");
    if (m < -k || m > k) throw std::invalid_argument("component outside the multipole rank");
    OperatorSum out;
    for (int mf = -sf.l; mf <= sf.l; ++mf) {
        int mt = mf + m;
        if (mt < -st.l || mt > st.l) continue;
        double c = gaunt_ck(k, st.l, mt, sf.l, mf);
        if (c == 0.0) continue;
        for (Spin s : {SpinUp, SpinDown})
            out.add(cd(c, 0.0), {cr(st.index(mt, s)), an(sf.index(mf, s))});
    }
    out.canonicalize();
    return out;
}

} // namespace

OperatorSum dipole_m(const ShellLayout& lay, const std::string& from, const std::string& to,
                     int m) {
    return multipole_m(lay, from, to, 1, m);
}

OperatorSum quadrupole_m(const ShellLayout& lay, const std::string& from, const std::string& to,
                         int m) {
    return multipole_m(lay, from, to, 2, m);
}

OperatorSum effective_dipole_m(const ShellLayout& lay, const std::string& s_shell,
                               const std::string& lig_shell, const LigandReduction& red,
                               const BondGeometry& g, double alpha_dipo, bool sigma_channel,
                               int m) {
    const Shell& ssh = lay.shell(s_shell);
    const Shell& lsh = lay.shell(lig_shell);
    if (ssh.l != 0 || ssh.ligand) throw std::invalid_argument("effective dipole starts from 1s");
    if (!lsh.ligand) throw std::invalid_argument("effective dipole lands on the ligand shell");
    if (m < -1 || m > 1) throw std::invalid_argument("dipole component outside rank 1");

    double c1 = gaunt_ck(1, 1, m, 0, 0); // 1s -> virtual p_m
    Eigen::MatrixXd t = dipole_projection(g, red, alpha_dipo, sigma_channel); // 3 x retained
    Eigen::MatrixXcd u1 = real_to_complex(1);

    OperatorSum out;
    for (int e = 0; e < red.retained; ++e) {
        cd amp(0, 0);
        for (int b = 0; b < 3; ++b) amp += std::conj(u1(b, m + 1)) * t(b, e);
        amp *= c1;
        if (std::abs(amp) < kAmplitudeCutoff) continue;
        for (Spin s : {SpinUp, SpinDown})
            out.add(amp, {cr(lsh.ligand_index(e, s)), an(ssh.index(0, s))});
    }
    out.canonicalize();
    return out;
}

std::array<cd, 3> dipole_coeffs_x() {
    // x = (C^1_{-1} - C^1_{+1})/sqrt(2), y = i (C^1_{-1} + C^1_{+1})/sqrt(2)
    const double r = 1.0 / std::sqrt(2.0);
    return {cd(r, 0), cd(0, 0), cd(-r, 0)};
}
std::array<cd, 3> dipole_coeffs_y() {
    const double r = 1.0 / std::sqrt(2.0);
    return {cd(0, r), cd(0, 0), cd(0, r)};
}
std::array<cd, 3> dipole_coeffs_z() { return {cd(0, 0), cd(1, 0), cd(0, 0)}; }

std::array<cd, 5> quadrupole_coeffs_xy() {
    return {cd(1, 0), cd(0, 0), cd(0, 0), cd(0, 0), cd(-1, 0)};
}
std::array<cd, 5> quadrupole_coeffs_x2y2() {
    return {cd(1, 0), cd(0, 0), cd(0, 0), cd(0, 0), cd(1, 0)};
}

} // namespace ops
} // namespace hxx
