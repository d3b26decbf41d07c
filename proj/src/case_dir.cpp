#include "hxx/case_dir.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hxx {

namespace {

const HilbertSpace& space_of(const Model& m, const std::string& s) {
    if (s == "base") return m.base;
    if (s == "exci") return m.exci;
    if (s == "final") return m.fin;
    throw std::invalid_argument("no space named " + s);
}

CaseManifest make_manifest(const Model& m, const ParamSet& p) {
    CaseManifest man;
    man.klass = m.klass;
    man.nmin = m.nmin;
    man.nhopped = m.nhopped;
    man.spinfixed = m.spinfixed;
    man.twice_sz = m.twice_sz;
    man.width = m.lay.width;
    man.retained = m.has_ligand ? m.red.retained : 0;
    man.vs_zero = p.real("Vs") == 0.0;
    man.vp_zero = p.real("Vp") == 0.0;
    man.bonds = m.geom.bonds;
    man.facts_hop = m.geom.facts_hop;
    man.dref = m.geom.dref;
    man.alpha_vsp = m.geom.alpha_vsp;
    man.alpha_vc = m.geom.alpha_vc;
    man.alpha_dipo = m.alpha_dipo;
    man.dims["base"] = m.base.dim();
    man.dims["exci"] = m.exci.dim();
    if (m.decays()) man.dims["final"] = m.fin.dim();
    for (const auto& [n, op] : model_components(m, "base")) man.components.push_back(n);
    for (const auto& [n, op] : transition_operators_in(m)) man.transitions_in.push_back(n);
    for (const auto& [n, op] : transition_operators_out(m)) man.transitions_out.push_back(n);
    for (const auto& [n, op] : observable_operators(m)) man.observables.push_back(n);
    return man;
}

json manifest_json(const CaseManifest& man) {
    json j;
    j["format"] = "hxx-case-1";
    j["class"] = man.klass;
    j["nmin"] = man.nmin;
    j["nhopped"] = man.nhopped;
    j["spinfixed"] = man.spinfixed;
    if (man.twice_sz)
        j["twice_sz"] = *man.twice_sz;
    else
        j["twice_sz"] = nullptr;
    j["width"] = man.width;
    j["retained"] = man.retained;
    j["vs_zero"] = man.vs_zero;
    j["vp_zero"] = man.vp_zero;
    j["bonds"] = man.bonds;
    j["facts_hop"] = man.facts_hop;
    j["dref"] = man.dref;
    j["alpha_vsp"] = man.alpha_vsp;
    j["alpha_vc"] = man.alpha_vc;
    j["alpha_dipo"] = man.alpha_dipo;
    j["dims"] = man.dims;
    j["components"] = man.components;
    j["transitions_in"] = man.transitions_in;
    j["transitions_out"] = man.transitions_out;
    j["observables"] = man.observables;
    return j;
}

CaseManifest manifest_from(const json& j) {
    CaseManifest man;
    man.klass = j.at("class").get<std::string>();
    man.nmin = j.at("nmin").get<int>();
    man.nhopped = j.at("nhopped").get<int>();
    man.spinfixed = j.at("spinfixed").get<bool>();
    if (!j.at("twice_sz").is_null()) man.twice_sz = j.at("twice_sz").get<int>();
    man.width = j.at("width").get<uint32_t>();
    man.retained = j.at("retained").get<int>();
    man.vs_zero = j.at("vs_zero").get<bool>();
    man.vp_zero = j.at("vp_zero").get<bool>();
    man.bonds = j.at("bonds").get<std::vector<Vec3>>();
    man.facts_hop = j.at("facts_hop").get<std::vector<double>>();
    man.dref = j.at("dref").get<double>();
    man.alpha_vsp = j.at("alpha_vsp").get<double>();
    man.alpha_vc = j.at("alpha_vc").get<double>();
    man.alpha_dipo = j.at("alpha_dipo").get<double>();
    man.dims = j.at("dims").get<std::map<std::string, size_t>>();
    man.components = j.at("components").get<std::vector<std::string>>();
    man.transitions_in = j.at("transitions_in").get<std::vector<std::string>>();
    man.transitions_out = j.at("transitions_out").get<std::vector<std::string>>();
    man.observables = j.at("observables").get<std::vector<std::string>>();
    return man;
}

// the ladder identity and the bit-layout fingerprint; dims and file lists are
// derived so they need no separate comparison
bool same_case(const CaseManifest& a, const CaseManifest& b) {
    return a.klass == b.klass && a.nmin == b.nmin && a.nhopped == b.nhopped &&
           a.spinfixed == b.spinfixed && a.twice_sz == b.twice_sz && a.width == b.width &&
           a.retained == b.retained && a.vs_zero == b.vs_zero && a.vp_zero == b.vp_zero &&
           a.bonds == b.bonds && a.facts_hop == b.facts_hop && a.dref == b.dref &&
           a.alpha_vsp == b.alpha_vsp && a.alpha_vc == b.alpha_vc &&
           a.alpha_dipo == b.alpha_dipo;
}

std::string comp_path(const std::string& dir, const std::string& space, const std::string& name) {
    return dir + "/comp_" + space + "_" + name + ".txt";
}

bool keeps_adjoint_pairing(const std::string& name) {
    // the two ladder halves of the exchange field are each other's adjoints;
    // everything else is self-adjoint and stored with exact mirrors
    return name != "Sop_Minus" && name != "Sop_Plus";
}

} // namespace

std::vector<std::string> CaseManifest::spaces() const {
    std::vector<std::string> s{"base", "exci"};
    if (dims.count("final")) s.push_back("final");
    return s;
}

void write_basis(const std::string& path, const HilbertSpace& space) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "#HXX-BASIS width=" << space.width() << " dim=" << space.dim() << "\n";
    for (size_t i = 0; i < space.dim(); ++i) out << space.det(i).val.to_string() << "\n";
    if (!out) throw std::runtime_error("write failed on " + path);
}

std::vector<BitChain> read_basis_vals(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string header;
    std::getline(in, header);
    unsigned width = 0;
    unsigned long long dim = 0;
    if (std::sscanf(header.c_str(), "#HXX-BASIS width=%u dim=%llu", &width, &dim) != 2)
        throw std::runtime_error(path + ": not a basis file");
    std::vector<BitChain> vals;
    vals.reserve(dim);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        BitChain v = BitChain::from_string(line);
        if (v.width() != width)
            throw std::runtime_error(path + " line " + std::to_string(vals.size() + 2) +
                                     ": width mismatch");
        vals.push_back(std::move(v));
    }
    if (vals.size() != dim)
        throw std::runtime_error(path + ": header promises " + std::to_string(dim) +
                                 " determinants, found " + std::to_string(vals.size()));
    return vals;
}

CaseManifest write_case(const std::string& dir, const Model& m, const ParamSet& p, bool force) {
    CaseManifest man = make_manifest(m, p);
    fs::create_directories(dir);

    const std::string manifest_path = dir + "/manifest.json";
    if (fs::exists(manifest_path) && !force) {
        CaseManifest old = read_manifest(dir);
        if (!same_case(old, man))
            throw std::runtime_error("case directory " + dir +
                                     " holds a different expansion (rerun with force to replace)");
    }

    for (const std::string& s : man.spaces()) {
        const HilbertSpace& hs = space_of(m, s);
        write_basis(dir + "/basis_" + s + ".txt", hs);
        for (const auto& [name, op] : model_components(m, s)) {
            SparseOp proj = project(op, hs, hs, EscapePolicy::Truncate);
            if (keeps_adjoint_pairing(name)) hermitize(proj);
            write_component(comp_path(dir, s, name), proj);
        }
    }
    for (const auto& [name, op] : transition_operators_in(m)) {
        SparseOp proj = project(op, m.base, m.exci, EscapePolicy::Truncate);
        write_component(dir + "/trans_" + name + ".txt", proj);
    }
    for (const auto& [name, op] : transition_operators_out(m)) {
        SparseOp proj = project(op, m.exci, m.fin, EscapePolicy::Truncate);
        write_component(dir + "/trans_" + name + ".txt", proj);
    }
    for (const auto& [name, op] : observable_operators(m)) {
        SparseOp proj = project(op, m.base, m.base, EscapePolicy::Truncate);
        hermitize(proj);
        write_component(dir + "/obs_" + name + ".txt", proj);
    }

    std::ofstream out(manifest_path);
    if (!out) throw std::runtime_error("cannot write " + manifest_path);
    out << manifest_json(man).dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed on " + manifest_path);
    return man;
}

CaseManifest read_manifest(const std::string& dir) {
    const std::string path = dir + "/manifest.json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path + " (not an expanded case?)");
    json j;
    try {
        in >> j;
        return manifest_from(j);
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

size_t LoadedCase::dim(const std::string& space) const {
    auto it = man.dims.find(space);
    if (it == man.dims.end()) throw std::invalid_argument("case has no space named " + space);
    return it->second;
}

LoadedCase load_case(const std::string& dir) {
    LoadedCase lc;
    lc.dir = dir;
    lc.man = read_manifest(dir);

    for (const std::string& s : lc.man.spaces()) {
        ComponentSet set;
        for (const std::string& name : lc.man.components) {
            SparseOp op = read_component(comp_path(dir, s, name));
            if (op.rows != lc.man.dims.at(s) || op.cols != lc.man.dims.at(s))
                throw std::runtime_error(comp_path(dir, s, name) +
                                         ": dimensions disagree with the manifest");
            set.add(name, std::move(op));
        }
        lc.spaces[s] = std::move(set);
    }
    auto load_trans = [&](const std::vector<std::string>& names, size_t nrows, size_t ncols) {
        for (const std::string& name : names) {
            const std::string path = dir + "/trans_" + name + ".txt";
            SparseOp op = read_component(path);
            if (op.rows != nrows || op.cols != ncols)
                throw std::runtime_error(path + ": dimensions disagree with the manifest");
            lc.trans[name] = std::move(op);
        }
    };
    load_trans(lc.man.transitions_in, lc.dim("exci"), lc.dim("base"));
    if (!lc.man.transitions_out.empty())
        load_trans(lc.man.transitions_out, lc.dim("final"), lc.dim("exci"));
    for (const std::string& name : lc.man.observables) {
        SparseOp op = read_component(dir + "/obs_" + name + ".txt");
        if (op.rows != lc.dim("base") || op.cols != lc.dim("base"))
            throw std::runtime_error(dir + "/obs_" + name +
                                     ".txt: dimensions disagree with the manifest");
        lc.obs[name] = std::move(op);
    }
    return lc;
}

void check_case_params(const CaseManifest& man, const ParamSet& p) {
    if (p.klass() != man.klass)
        throw std::invalid_argument("parameter class " + p.klass() +
                                    " does not match the case class " + man.klass);
    BondGeometry g = p.geometry();
    auto differs = [](double a, double b) { return a != b; };
    if (g.bonds != man.bonds)
        throw std::invalid_argument("BONDS differ from the expanded case, rerun expand");
    if (differs(g.dref, man.dref))
        throw std::invalid_argument("DREF differs from the expanded case, rerun expand");
    if (differs(g.alpha_vc, man.alpha_vc))
        throw std::invalid_argument("ALPHAVC differs from the expanded case, rerun expand");
    if (man.retained > 0) {
        if (g.facts_hop != man.facts_hop)
            throw std::invalid_argument("facts_hop differs from the expanded case, rerun expand");
        if (differs(g.alpha_vsp, man.alpha_vsp))
            throw std::invalid_argument("ALPHAVSP differs from the expanded case, rerun expand");
        if ((p.real("Vs") == 0.0) != man.vs_zero || (p.real("Vp") == 0.0) != man.vp_zero)
            throw std::invalid_argument(
                "a hybridization channel switched between zero and nonzero; the retained "
                "ligand basis differs, rerun expand");
    }
    if (man.klass == "rixs" && differs(p.real("ALPHADIPO"), man.alpha_dipo))
        throw std::invalid_argument("ALPHADIPO differs from the expanded case, rerun expand");
}

} // namespace hxx
