#include "hxx/params.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hxx {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const std::string& t) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + t + "'");
    }
    if (pos != t.size()) throw std::invalid_argument("trailing characters in number: '" + t + "'");
    return v;
}

long parse_int(const std::string& t) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(t, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + t + "'");
    }
    if (pos != t.size())
        throw std::invalid_argument("trailing characters in integer: '" + t + "'");
    return v;
}

} // namespace

cd parse_complex(const std::string& raw) {
    std::string t = trim(raw);
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = trim(t.substr(1, t.size() - 2));
    if (t.empty()) throw std::invalid_argument("empty complex value");
    if (t.back() != 'j' && t.back() != 'J') return cd(parse_real(t), 0.0);
    std::string body = t.substr(0, t.size() - 1);
    // split at the last +/- that is not an exponent sign and not leading
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (body.empty() || body == "+" || body == "-") body += "1";
        return cd(0.0, parse_real(body));
    }
    std::string im = body.substr(split);
    if (im == "+" || im == "-") im += "1";
    return cd(parse_real(body.substr(0, split)), parse_real(im));
}

namespace {

std::string fmt_complex(cd z) {
    if (z.imag() == 0.0) return fmt_real(z.real());
    std::string im = fmt_real(z.imag());
    if (!im.empty() && im[0] != '-' && im[0] != '+') im = "+" + im;
    return "(" + fmt_real(z.real()) + im + "j)";
}

// flat numeric list `[a, b, c]`
std::vector<double> parse_real_list(const std::string& raw) {
    std::string t = trim(raw);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw std::invalid_argument("expected a bracketed list, got '" + raw + "'");
    std::vector<double> out;
    std::string item;
    std::istringstream in(t.substr(1, t.size() - 2));
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument("empty list element");
        out.push_back(parse_real(item));
    }
    return out;
}

// nested list `[[x, y, z], ...]`; every group has exactly three numbers
std::vector<Vec3> parse_bonds(const std::string& raw) {
    std::string t = trim(raw);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw std::invalid_argument("expected a bracketed bond list, got '" + raw + "'");
    std::vector<Vec3> out;
    size_t k = 1;
    const size_t end = t.size() - 1;
    while (true) {
        while (k < end && (std::isspace(unsigned(t[k])) || t[k] == ',')) ++k;
        if (k >= end) break;
        if (t[k] != '[') throw std::invalid_argument("expected '[' in bond list");
        size_t close = t.find(']', k);
        if (close == std::string::npos || close > end)
            throw std::invalid_argument("unterminated bond entry");
        std::vector<double> v = parse_real_list(t.substr(k, close - k + 1));
        if (v.size() != 3) throw std::invalid_argument("bond entries need three components");
        out.push_back({v[0], v[1], v[2]});
        k = close + 1;
    }
    return out;
}

std::string fmt_bonds(const std::vector<Vec3>& b) {
    std::string s = "[";
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) s += ", ";
        s += "[" + fmt_real(b[i][0]) + ", " + fmt_real(b[i][1]) + ", " + fmt_real(b[i][2]) + "]";
    }
    return s + "]";
}

ParamValue real_v(double v) {
    ParamValue p;
    p.type = ParamType::Real;
    p.r = v;
    return p;
}
ParamValue int_v(long v) {
    ParamValue p;
    p.type = ParamType::Int;
    p.i = v;
    return p;
}
ParamValue complex_v(cd v) {
    ParamValue p;
    p.type = ParamType::Complex;
    p.z = v;
    return p;
}
ParamValue str_v(std::string v) {
    ParamValue p;
    p.type = ParamType::Str;
    p.s = std::move(v);
    return p;
}
ParamValue bonds_v(std::vector<Vec3> v) {
    ParamValue p;
    p.type = ParamType::Bonds;
    p.bonds = std::move(v);
    return p;
}
ParamValue none_list_v() {
    ParamValue p;
    p.type = ParamType::OptRealList;
    return p;
}

} // namespace

bool ParamValue::operator==(const ParamValue& o) const {
    if (type != o.type) return false;
    switch (type) {
    case ParamType::Real: return r == o.r;
    case ParamType::Int: return i == o.i;
    case ParamType::Complex: return z == o.z;
    case ParamType::Str: return s == o.s;
    case ParamType::Bonds: return bonds == o.bonds;
    case ParamType::OptRealList: return rlist == o.rlist;
    }
    return false;
}

ParamSet ParamSet::defaults(const std::string& klass) {
    if (klass != "2p3d" && klass != "rixs" && klass != "df")
        throw std::invalid_argument("unknown class '" + klass + "' (use 2p3d, rixs or df)");
    ParamSet p;
    p.klass_ = klass;
    auto add = [&](const std::string& key, ParamValue v) {
        p.order_.push_back(key);
        p.values_.push_back(std::move(v));
    };
    auto add_ham_block = [&](const std::string& prefix, double f2_1, double f4_1, double f2_01,
                             double g1_01, double g3_01, double so0, double so1) {
        add(prefix + "_couche1_F0", real_v(5.0));
        add(prefix + "_couche1_F2", real_v(f2_1));
        add(prefix + "_couche1_F4", real_v(f4_1));
        add(prefix + "_couche0_1_F0", real_v(5.5));
        add(prefix + "_couche0_1_F2", real_v(f2_01));
        add(prefix + "_couche0_1_G1", real_v(g1_01));
        add(prefix + "_couche0_1_G3", real_v(g3_01));
        add(prefix + "_SO_0", real_v(so0));
        add(prefix + "_SO_1", real_v(so1));
        add(prefix + "_Sop_Zero", complex_v(cd(1e-05, 0)));
        add(prefix + "_Sop_Minus", complex_v(cd(0, 0)));
        add(prefix + "_Sop_Plus", complex_v(cd(0, 0)));
        add(prefix + "_counterDL", real_v(-4.0));
    };

    add("class", str_v(klass));
    add_ham_block("base", 12.4156828106, 7.81967819912, 6.86721502072, 5.02109490016,
                  2.85321756768, 6.568603656, 0.05238772);
    add_ham_block("exci", 13.1769757147, 8.299507532, 7.6574518, 5.77390099368, 3.28715525784,
                  6.845918392, 0.066403136);
    if (klass == "rixs")
        add_ham_block("final", 12.4156828106, 7.81967819912, 6.86721502072, 5.02109490016,
                      2.85321756768, 6.568603656, 0.05238772);

    add("case", str_v("./"));
    add("reduc_1", real_v(0.8));
    add("reduc_0_1", real_v(0.8));
    add("all1", real_v(0.1));
    add("El2l3", real_v(700.0));
    add("all2", real_v(0.1));
    add("shift", real_v(0.0));
    add("npunti", int_v(500));
    add("dxleft", real_v(-0.1));
    add("dxright", real_v(0.1));
    add("temp", real_v(0.009));
    add("erange", real_v(0.1));
    add("tolefact", real_v(1e-06));
    add("shift_invert", int_v(0)); // accepted for compatibility, never used
    add("nsearchedeigen", int_v(10));
    add("NstepsTridiag", int_v(250));
    add("Vs", real_v(2.0));
    add("Vp", real_v(1.0));
    add("VC0", real_v(0.2));
    add("VC1", real_v(0.0));
    if (klass == "df") add("VC2", real_v(0.0));
    add("DREF", real_v(1.0));
    add("ALPHAVC", real_v(-3.0));
    add("ALPHAVSP", real_v(-3.0));
    add("BONDS", bonds_v(octahedral_bonds().bonds));
    add("factorhopexci", real_v(1.0));
    add("facts_hop", none_list_v());
    if (klass == "rixs") {
        add("Dips", real_v(1.0));
        add("Dipp", real_v(0.5));
        add("ALPHADIPO", real_v(-3.0));
    }
    return p;
}

bool ParamSet::has(const std::string& key) const {
    for (const auto& k : order_)
        if (k == key) return true;
    return false;
}

const ParamValue& ParamSet::at(const std::string& key) const {
    for (size_t i = 0; i < order_.size(); ++i)
        if (order_[i] == key) return values_[i];
    throw std::invalid_argument("unknown parameter '" + key + "' for class " + klass_);
}

ParamValue& ParamSet::at(const std::string& key) {
    return const_cast<ParamValue&>(static_cast<const ParamSet*>(this)->at(key));
}

double ParamSet::real(const std::string& key) const {
    const ParamValue& v = at(key);
    if (v.type == ParamType::Real) return v.r;
    if (v.type == ParamType::Int) return double(v.i);
    throw std::invalid_argument("parameter '" + key + "' is not numeric");
}

long ParamSet::integer(const std::string& key) const {
    const ParamValue& v = at(key);
    if (v.type != ParamType::Int) throw std::invalid_argument("parameter '" + key + "' is not an integer");
    return v.i;
}

cd ParamSet::complex_value(const std::string& key) const {
    const ParamValue& v = at(key);
    if (v.type == ParamType::Complex) return v.z;
    if (v.type == ParamType::Real) return cd(v.r, 0.0);
    throw std::invalid_argument("parameter '" + key + "' is not complex");
}

const std::string& ParamSet::str(const std::string& key) const {
    const ParamValue& v = at(key);
    if (v.type != ParamType::Str) throw std::invalid_argument("parameter '" + key + "' is not text");
    return v.s;
}

const std::vector<Vec3>& ParamSet::bonds_value(const std::string& key) const {
    const ParamValue& v = at(key);
    if (v.type != ParamType::Bonds) throw std::invalid_argument("parameter '" + key + "' is not a bond list");
    return v.bonds;
}

const std::optional<std::vector<double>>& ParamSet::opt_list(const std::string& key) const {
    const ParamValue& v = at(key);
    if (v.type != ParamType::OptRealList)
        throw std::invalid_argument("parameter '" + key + "' is not an optional list");
    return v.rlist;
}

BondGeometry ParamSet::geometry() const {
    BondGeometry g;
    g.bonds = bonds_value("BONDS");
    const auto& f = opt_list("facts_hop");
    if (f) g.facts_hop = *f;
    g.dref = real("DREF");
    g.alpha_vsp = real("ALPHAVSP");
    g.alpha_vc = real("ALPHAVC");
    return g;
}

void ParamSet::set(const std::string& key, const std::string& text) {
    if (key == "class") {
        std::string t = trim(text);
        if (t != klass_)
            throw std::invalid_argument("class '" + t + "' does not match this table (" + klass_ +
                                        ")");
        return;
    }
    ParamValue& v = at(key);
    std::string t = trim(text);
    switch (v.type) {
    case ParamType::Real: v.r = parse_real(t); break;
    case ParamType::Int: v.i = parse_int(t); break;
    case ParamType::Complex: v.z = parse_complex(t); break;
    case ParamType::Str: v.s = t; break;
    case ParamType::Bonds: v.bonds = parse_bonds(t); break;
    case ParamType::OptRealList:
        if (t == "None" || t == "none")
            v.rlist.reset();
        else
            v.rlist = parse_real_list(t);
        break;
    }
}

std::string ParamSet::show(const std::string& key) const {
    const ParamValue& v = at(key);
    switch (v.type) {
    case ParamType::Real: return fmt_real(v.r);
    case ParamType::Int: return std::to_string(v.i);
    case ParamType::Complex: return fmt_complex(v.z);
    case ParamType::Str: return v.s;
    case ParamType::Bonds: return fmt_bonds(v.bonds);
    case ParamType::OptRealList: {
        if (!v.rlist) return "None";
        std::string s = "[";
        for (size_t i = 0; i < v.rlist->size(); ++i) {
            if (i) s += ", ";
            s += fmt_real((*v.rlist)[i]);
        }
        return s + "]";
    }
    }
    return "";
}

void ParamSet::validate() const {
    for (size_t i = 0; i < order_.size(); ++i) {
        const ParamValue& v = values_[i];
        if (v.type == ParamType::Real && !std::isfinite(v.r))
            throw std::invalid_argument("parameter '" + order_[i] + "' is not finite");
        if (v.type == ParamType::Complex &&
            (!std::isfinite(v.z.real()) || !std::isfinite(v.z.imag())))
            throw std::invalid_argument("parameter '" + order_[i] + "' is not finite");
    }
    if (integer("npunti") < 2) throw std::invalid_argument("npunti must be at least 2");
    if (!(real("temp") > 0)) throw std::invalid_argument("temp must be positive");
    double tf = real("tolefact");
    if (!(tf > 0 && tf < 1)) throw std::invalid_argument("tolefact must lie in (0,1)");
    if (integer("nsearchedeigen") < 1)
        throw std::invalid_argument("nsearchedeigen must be at least 1");
    if (integer("NstepsTridiag") < 1) throw std::invalid_argument("NstepsTridiag must be at least 1");
    if (!(real("erange") >= 0)) throw std::invalid_argument("erange must not be negative");
    geometry().validate(); // nonempty bonds, facts length, positive DREF
}

bool ParamSet::operator==(const ParamSet& o) const {
    return klass_ == o.klass_ && order_ == o.order_ && values_ == o.values_;
}

ParamSet load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read parameter file " + path);
    std::vector<std::pair<int, std::pair<std::string, std::string>>> entries;
    std::string line;
    int lineno = 0;
    std::string klass = "2p3d";
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": expected name = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(path + " line " + std::to_string(lineno) + ": empty name");
        if (key == "class") klass = val;
        entries.push_back({lineno, {key, val}});
    }
    ParamSet p;
    try {
        p = ParamSet::defaults(klass);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    for (const auto& [ln, kv] : entries) {
        try {
            p.set(kv.first, kv.second);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + " line " + std::to_string(ln) + ": " + e.what());
        }
    }
    return p;
}

void save_params(const ParamSet& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write parameter file " + path);
    for (const auto& key : p.keys()) out << key << " = " << p.show(key) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace hxx
