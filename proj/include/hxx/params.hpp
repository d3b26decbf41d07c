#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hxx/geometry.hpp"

namespace hxx {

using cd = std::complex<double>;

enum class ParamType { Real, Int, Complex, Str, Bonds, OptRealList };

struct ParamValue {
    ParamType type = ParamType::Real;
    double r = 0.0;
    long i = 0;
    cd z{0.0, 0.0};
    std::string s;
    std::vector<Vec3> bonds;
    std::optional<std::vector<double>> rlist;

    bool operator==(const ParamValue& o) const;
};

// The named parameter table driving a calculation. Keys depend on the class:
// every class carries the base_*/exci_* Hamiltonian blocks and the
// calculation block; rixs adds a final_* block plus the 4p ligand dipole
// channel (Dips, Dipp, ALPHADIPO); df adds the third crystal field
// coefficient VC2. Values are set and shown as text so the set/show/save
// round trip is value-exact.
class ParamSet {
  public:
    static ParamSet defaults(const std::string& klass);

    const std::string& klass() const { return klass_; }
    const std::vector<std::string>& keys() const { return order_; }
    bool has(const std::string& key) const;

    double real(const std::string& key) const;   // Real or Int
    long integer(const std::string& key) const;  // Int only
    cd complex_value(const std::string& key) const; // Complex or Real
    const std::string& str(const std::string& key) const;
    const std::vector<Vec3>& bonds_value(const std::string& key) const;
    const std::optional<std::vector<double>>& opt_list(const std::string& key) const;

    BondGeometry geometry() const; // BONDS, facts_hop, DREF, ALPHAVSP, ALPHAVC

    void set(const std::string& key, const std::string& text);
    std::string show(const std::string& key) const;

    void validate() const;

    bool operator==(const ParamSet& o) const;

  private:
    const ParamValue& at(const std::string& key) const;
    ParamValue& at(const std::string& key);

    std::string klass_;
    std::vector<std::string> order_;
    std::vector<ParamValue> values_;
};

// accepts a plain real, `bj`, or `a+bj` (optionally parenthesized)
cd parse_complex(const std::string& raw);

// name = value lines, # comments allowed; the optional `class` line selects
// the key table (2p3d when absent); missing keys keep their defaults and
// unknown keys are rejected by name with the line number
ParamSet load_params(const std::string& path);
void save_params(const ParamSet& p, const std::string& path);

} // namespace hxx
