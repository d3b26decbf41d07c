#include "hxx/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace hxx {

namespace {

struct ClassInfo {
    std::vector<std::pair<std::string, int>> cores; // (name, l); first one absorbs
    std::string valence;
    int lval = 0;
    bool ligand = false;
};

ClassInfo class_info(const std::string& klass) {
    if (klass == "2p3d") return {{{"2p", 1}}, "3d", 2, true};
    if (klass == "rixs") return {{{"1s", 0}, {"3p", 1}}, "3d", 2, true};
    if (klass == "df") return {{{"3d", 2}}, "4f", 3, false};
    throw std::invalid_argument("unknown class '" + klass + "' (use 2p3d, rixs or df)");
}

int shell_capacity(int l) { return 2 * (2 * l + 1); }

} // namespace

std::string Model::core0(const std::string& space) const {
    if (klass == "rixs" && space == "final") return "3p";
    return class_info(klass).cores[0].first;
}

const std::string& Model::valence() const {
    static const std::string d = "3d", f = "4f";
    return klass == "df" ? f : d;
}

Model build_model(const ParamSet& p, int nmin, int nhopped, bool spinfixed,
                  std::optional<int> twice_sz) {
    const ClassInfo info = class_info(p.klass());
    const int cap = shell_capacity(info.lval);
    if (nmin < 0 || nmin + 1 > cap)
        throw std::invalid_argument("nmin must leave room for the photoelectron in " +
                                    info.valence);
    if (nhopped < 0) throw std::invalid_argument("nhopped must be nonnegative");

    Model m;
    m.klass = p.klass();
    m.nmin = nmin;
    m.nhopped = info.ligand ? nhopped : 0; // nothing to exchange with otherwise
    m.spinfixed = spinfixed;
    m.geom = p.geometry();
    m.geom.validate();
    m.has_ligand = info.ligand;

    int total = nmin;
    for (const auto& [name, l] : info.cores) {
        m.lay.add_atomic(name, l);
        total += shell_capacity(l);
    }
    m.lay.add_atomic(info.valence, info.lval);
    if (info.ligand) {
        m.red = build_ligand_reduction(m.geom, p.real("Vs"), p.real("Vp"));
        if (m.red.retained == 0)
            throw std::invalid_argument("Vs and Vp are both zero, no ligand orbital couples");
        m.lay.add_ligand("L", uint32_t(m.red.retained));
        total += 2 * m.red.retained;
    }
    if (m.klass == "rixs") m.alpha_dipo = p.real("ALPHADIPO");

    if (spinfixed) {
        m.twice_sz = twice_sz.value_or(total % 2);
        if ((total + *m.twice_sz) % 2 != 0)
            throw std::invalid_argument("twice_sz parity does not match the electron count");
    }

    auto constrain = [&](std::vector<std::pair<std::string, int>> cores, int minval) {
        ConfigConstraint c;
        c.valence_shell = info.valence;
        c.min_valence = minval;
        c.nhopped = std::min(m.nhopped, cap - minval); // ladder stops at the full shell
        c.core_occupation = std::move(cores);
        c.total_electrons = total;
        c.spinfixed = m.spinfixed;
        c.twice_sz = m.twice_sz;
        return c;
    };

    std::vector<std::pair<std::string, int>> full;
    for (const auto& [name, l] : info.cores) full.emplace_back(name, shell_capacity(l));

    m.base = enumerate_configurations(m.lay, constrain(full, nmin), "base");

    auto hole = full;
    hole[0].second -= 1;
    m.exci = enumerate_configurations(m.lay, constrain(hole, nmin + 1), "exci");

    if (m.decays()) {
        auto fin = full;
        fin[1].second -= 1;
        m.fin = enumerate_configurations(m.lay, constrain(fin, nmin + 1), "final");
    }
    if (m.base.dim() == 0 || m.exci.dim() == 0 || (m.decays() && m.fin.dim() == 0))
        throw std::invalid_argument("empty model space, check nmin and twice_sz");
    return m;
}

std::vector<std::pair<std::string, OperatorSum>> model_components(const Model& m,
                                                                  const std::string& space) {
    if (space != "base" && space != "exci" && space != "final")
        throw std::invalid_argument("space must be base, exci or final");
    if (space == "final" && !m.decays())
        throw std::invalid_argument("class " + m.klass + " has no final space");
    const std::string c0 = m.core0(space);
    const std::string& c1 = m.valence();
    const ShellLayout& lay = m.lay;

    std::vector<std::pair<std::string, OperatorSum>> out;
    out.emplace_back("F0_1", ops::coulomb_intra_k(lay, c1, 0));
    out.emplace_back("F2_1", ops::coulomb_intra_k(lay, c1, 2));
    out.emplace_back("F4_1", ops::coulomb_intra_k(lay, c1, 4));
    out.emplace_back("F0_01", ops::coulomb_direct_k(lay, c0, c1, 0));
    out.emplace_back("F2_01", ops::coulomb_direct_k(lay, c0, c1, 2));
    out.emplace_back("G1_01", ops::coulomb_exchange_k(lay, c0, c1, 1));
    out.emplace_back("G3_01", ops::coulomb_exchange_k(lay, c0, c1, 3));
    out.emplace_back("SO_0", ops::spin_orbit(lay, c0));
    out.emplace_back("SO_1", ops::spin_orbit(lay, c1));
    out.emplace_back("Sop_Zero", ops::spin_z(lay, c1));
    out.emplace_back("Sop_Minus", ops::spin_minus(lay, c1));
    out.emplace_back("Sop_Plus", ops::spin_plus(lay, c1));
    if (m.has_ligand) {
        out.emplace_back("counterDL", ops::number_op(lay, "L"));
        out.emplace_back("Vs", ops::hop_component(lay, c1, "L", m.red, true));
        out.emplace_back("Vp", ops::hop_component(lay, c1, "L", m.red, false));
    }
    out.emplace_back("VC0", ops::crystal_field_component(lay, c1, m.geom, 0));
    out.emplace_back("VC1", ops::crystal_field_component(lay, c1, m.geom, 1));
    if (m.klass == "df") out.emplace_back("VC2", ops::crystal_field_component(lay, c1, m.geom, 2));
    return out;
}

std::vector<std::pair<std::string, OperatorSum>> transition_operators_in(const Model& m) {
    std::vector<std::pair<std::string, OperatorSum>> out;
    const ShellLayout& lay = m.lay;
    auto stem = [](const char* base, int mm) { return std::string(base) + std::to_string(mm); };
    if (m.klass == "2p3d") {
        for (int mm = -1; mm <= 1; ++mm)
            out.emplace_back(stem("dip_m", mm), ops::dipole_m(lay, "2p", "3d", mm));
    } else if (m.klass == "df") {
        for (int mm = -1; mm <= 1; ++mm)
            out.emplace_back(stem("dip_m", mm), ops::dipole_m(lay, "3d", "4f", mm));
    } else {
        for (int mm = -2; mm <= 2; ++mm)
            out.emplace_back(stem("quad_m", mm), ops::quadrupole_m(lay, "1s", "3d", mm));
        for (int mm = -1; mm <= 1; ++mm)
            out.emplace_back(stem("dips_m", mm), ops::effective_dipole_m(lay, "1s", "L", m.red,
                                                                         m.geom, m.alpha_dipo,
                                                                         true, mm));
        for (int mm = -1; mm <= 1; ++mm)
            out.emplace_back(stem("dipp_m", mm), ops::effective_dipole_m(lay, "1s", "L", m.red,
                                                                         m.geom, m.alpha_dipo,
                                                                         false, mm));
    }
    return out;
}

std::vector<std::pair<std::string, OperatorSum>> transition_operators_out(const Model& m) {
    std::vector<std::pair<std::string, OperatorSum>> out;
    if (!m.decays()) return out;
    for (int mm = -1; mm <= 1; ++mm)
        out.emplace_back("emi_m" + std::to_string(mm), ops::dipole_m(m.lay, "3p", "1s", mm));
    return out;
}

std::vector<std::pair<std::string, OperatorSum>> observable_operators(const Model& m) {
    std::vector<std::string> all, atomic;
    for (const auto& s : m.lay.shells) {
        all.push_back(s.name);
        if (!s.ligand) atomic.push_back(s.name);
    }
    std::vector<std::pair<std::string, OperatorSum>> out;
    out.emplace_back("S2", ops::s_squared(m.lay, all));
    out.emplace_back("L2", ops::l_squared(m.lay, atomic));
    out.emplace_back("SL2", ops::sl_coupling2(m.lay, all, atomic));
    out.emplace_back("NL", m.has_ligand ? ops::number_op(m.lay, "L") : OperatorSum{});
    out.emplace_back("Sz", ops::spin_z(m.lay, all));
    out.emplace_back("Lz", ops::orbital_z(m.lay, atomic));
    return out;
}

std::map<std::string, cd> model_coefficients(const std::string& klass, const std::string& space,
                                             const ParamSet& p) {
    if (p.klass() != klass)
        throw std::invalid_argument("parameter class " + p.klass() +
                                    " does not match the case class " + klass);
    if (space != "base" && space != "exci" && space != "final")
        throw std::invalid_argument("space must be base, exci or final");
    if (space == "final" && klass != "rixs")
        throw std::invalid_argument("class " + klass + " has no final space");

    const std::string& b = space;
    const double r1 = p.real("reduc_1");
    const double r01 = p.real("reduc_0_1");

    std::map<std::string, cd> c;
    c["F0_1"] = p.real(b + "_couche1_F0");
    c["F2_1"] = r1 * p.real(b + "_couche1_F2");
    c["F4_1"] = r1 * p.real(b + "_couche1_F4");
    c["F0_01"] = p.real(b + "_couche0_1_F0");
    c["F2_01"] = r01 * p.real(b + "_couche0_1_F2");
    c["G1_01"] = r01 * p.real(b + "_couche0_1_G1");
    c["G3_01"] = r01 * p.real(b + "_couche0_1_G3");
    c["SO_0"] = p.real(b + "_SO_0");
    c["SO_1"] = p.real(b + "_SO_1");
    c["Sop_Zero"] = p.complex_value(b + "_Sop_Zero");
    c["Sop_Minus"] = p.complex_value(b + "_Sop_Minus");
    c["Sop_Plus"] = p.complex_value(b + "_Sop_Plus");
    if (klass != "df") {
        c["counterDL"] = p.real(b + "_counterDL");
        const double fh = (space == "exci") ? p.real("factorhopexci") : 1.0;
        c["Vs"] = fh * p.real("Vs");
        c["Vp"] = fh * p.real("Vp");
    }
    c["VC0"] = p.real("VC0");
    c["VC1"] = p.real("VC1");
    if (klass == "df") c["VC2"] = p.real("VC2");
    return c;
}

} // namespace hxx
