#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hxx/case_dir.hpp"
#include "hxx/params.hpp"
#include "hxx/runner.hpp"

using hxx::cd;

namespace {

std::vector<cd> parse_pol(const std::string& text) {
    std::vector<cd> out;
    std::string item;
    for (char c : text) {
        if (c == ',') {
            out.push_back(hxx::parse_complex(item));
            item.clear();
        } else {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(hxx::parse_complex(item));
    return out;
}

std::vector<double> parse_sep(const std::string& text, char sep, size_t n, const char* what) {
    std::vector<std::string> parts(1);
    for (char c : text) {
        if (c == sep) parts.emplace_back();
        else parts.back() += c;
    }
    if (parts.size() != n)
        throw std::invalid_argument(std::string(what) + " needs " + std::to_string(n) +
                                    " values, got '" + text + "'");
    std::vector<double> out;
    for (const auto& s : parts) out.push_back(std::stod(s));
    return out;
}

hxx::ParamSet load_for_case(const std::string& path, const hxx::CaseManifest& man) {
    hxx::ParamSet p = hxx::load_params(path);
    if (p.klass() != man.klass)
        throw std::runtime_error("parameter class '" + p.klass() + "' does not match case class '" +
                                 man.klass + "'");
    return p;
}

int cmd_expand(const std::string& klass, int nmin, int nhopped, bool spinfixed,
               std::optional<int> twicesz, const std::string& params_path,
               const std::string& case_dir, bool force) {
    hxx::ParamSet p =
        params_path.empty() ? hxx::ParamSet::defaults(klass) : hxx::load_params(params_path);
    if (p.klass() != klass)
        throw std::runtime_error("parameter class '" + p.klass() + "' does not match --class " +
                                 klass);
    hxx::Model m = hxx::build_model(p, nmin, nhopped, spinfixed, twicesz);
    hxx::CaseManifest man = hxx::write_case(case_dir, m, p, force);
    std::printf("case %s: class=%s nmin=%d nhopped=%d width=%u\n", case_dir.c_str(),
                man.klass.c_str(), man.nmin, man.nhopped, man.width);
    for (const auto& s : man.spaces())
        std::printf("  %-5s dim=%zu\n", s.c_str(), man.dims.at(s));
    return 0;
}

int cmd_spectrum(const std::string& params_path, const std::string& case_dir,
                 const std::string& pol_text, const std::string& out_path) {
    hxx::LoadedCase lc = hxx::load_case(case_dir);
    hxx::ParamSet p = load_for_case(params_path, lc.man);
    std::vector<cd> pol = pol_text.empty() ? std::vector<cd>{} : parse_pol(pol_text);
    hxx::NamedChannels nc = hxx::absorption_channels(lc, p, pol);
    hxx::SpectrumResult s = hxx::run_spectrum(lc, p, pol);
    hxx::write_columns(out_path, s, nc.names);
    std::printf("wrote %s: %zu rows, %zu channels\n", out_path.c_str(), s.energies.size(),
                s.channels.size());
    return 0;
}

int cmd_rixs(const std::string& params_path, const std::string& case_dir, double ein,
             const std::string& eout_text, double gammain, const std::string& gammaout_text,
             const std::string& polin_text, const std::string& polout_text,
             const std::string& out_path) {
    hxx::LoadedCase lc = hxx::load_case(case_dir);
    hxx::ParamSet p = load_for_case(params_path, lc.man);

    hxx::RixsRequest rq;
    rq.ein = ein;
    std::vector<double> eout = parse_sep(eout_text, ':', 3, "--eout");
    rq.eout1 = eout[0];
    rq.eout2 = eout[1];
    rq.dout = eout[2];
    rq.gammain = gammain;
    std::vector<double> g = parse_sep(gammaout_text, ',', 3, "--gammaout");
    rq.gammaout_low = g[0];
    rq.gammaout_cross = g[1];
    rq.gammaout_high = g[2];
    rq.polin = parse_pol(polin_text);
    rq.polout = parse_pol(polout_text);

    hxx::SpectrumResult s = hxx::run_rixs(lc, p, rq);
    hxx::write_columns(out_path, s, {"rixs"});
    std::printf("wrote %s: %zu rows\n", out_path.c_str(), s.energies.size());
    return 0;
}

int cmd_counters(const std::string& params_path, const std::string& case_dir) {
    hxx::LoadedCase lc = hxx::load_case(case_dir);
    hxx::ParamSet p = load_for_case(params_path, lc.man);
    hxx::CounterTable t = hxx::run_counters(lc, p);
    std::printf("# E");
    for (const auto& name : lc.man.observables) std::printf(" %s", name.c_str());
    std::printf("\n");
    for (const auto& row : t.rows) {
        for (double v : row) std::printf(" %.12g", v);
        std::printf("\n");
    }
    return 0;
}

int cmd_params_show(const std::string& params_path, const std::string& klass,
                    const std::vector<std::string>& keys) {
    hxx::ParamSet p =
        params_path.empty() ? hxx::ParamSet::defaults(klass) : hxx::load_params(params_path);
    const std::vector<std::string>& sel = keys.empty() ? p.keys() : keys;
    for (const auto& k : sel) std::printf("%s = %s\n", k.c_str(), p.show(k).c_str());
    return 0;
}

int cmd_params_set(const std::string& params_path, const std::string& klass,
                   const std::vector<std::string>& assignments, const std::string& out_path) {
    hxx::ParamSet p;
    FILE* probe = std::fopen(params_path.c_str(), "r");
    if (probe) {
        std::fclose(probe);
        p = hxx::load_params(params_path);
    } else {
        p = hxx::ParamSet::defaults(klass);
    }
    for (const auto& a : assignments) {
        size_t eq = a.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected KEY=VALUE, got '" + a + "'");
        p.set(a.substr(0, eq), a.substr(eq + 1));
    }
    p.validate();
    const std::string& dest = out_path.empty() ? params_path : out_path;
    hxx::save_params(p, dest);
    std::printf("wrote %s\n", dest.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"atomic multiplet core level spectroscopy"};
    app.require_subcommand(1);

    // expand
    std::string x_klass, x_params, x_case;
    int x_nmin = 0, x_nhopped = 0, x_twicesz = 0;
    bool x_spinfixed = false, x_force = false;
    CLI::App* expand = app.add_subcommand("expand", "build a case directory from a configuration ladder");
    expand->add_option("--class", x_klass, "2p3d, rixs or df")->required();
    expand->add_option("--nmin", x_nmin, "minimum valence occupation")->required();
    expand->add_option("--case", x_case, "case directory")->required();
    expand->add_option("--nhopped", x_nhopped, "ligand electrons hopped into the valence shell");
    expand->add_flag("--spinfixed", x_spinfixed, "restrict to one Sz sector");
    CLI::Option* x_tw = expand->add_option("--twicesz", x_twicesz, "2*Sz of the fixed sector");
    expand->add_option("--params", x_params, "parameter file for geometry and hybridization");
    expand->add_flag("--force", x_force, "overwrite an existing incompatible case");

    // spectrum
    std::string s_params, s_case, s_pol, s_out = "spec.dat";
    CLI::App* spectrum = app.add_subcommand("spectrum", "absorption spectrum on a case");
    spectrum->add_option("--params", s_params, "parameter file")->required();
    spectrum->add_option("--case", s_case, "case directory")->required();
    spectrum->add_option("--pol", s_pol, "polarisation coefficients, comma separated");
    spectrum->add_option("--out", s_out, "output column file");

    // rixs
    std::string r_params, r_case, r_eout, r_gammaout, r_polin, r_polout, r_out = "rixs.dat";
    double r_ein = 0.0, r_gammain = 0.2;
    CLI::App* rixs = app.add_subcommand("rixs", "resonant inelastic scattering map at one incident energy");
    rixs->add_option("--params", r_params, "parameter file")->required();
    rixs->add_option("--case", r_case, "case directory")->required();
    rixs->add_option("--ein", r_ein, "incident energy above the ground state")->required();
    rixs->add_option("--eout", r_eout, "emitted energy grid start:stop:step")->required();
    rixs->add_option("--gammain", r_gammain, "incident lifetime width");
    rixs->add_option("--gammaout", r_gammaout, "emitted width low,crossover,high")->required();
    rixs->add_option("--polin", r_polin, "incident polarisation, 3 or 5 coefficients")->required();
    rixs->add_option("--polout", r_polout, "emitted polarisation, 3 coefficients")->required();
    rixs->add_option("--out", r_out, "output column file");

    // counters
    std::string c_params, c_case;
    CLI::App* counters = app.add_subcommand("counters", "ground manifold observable table");
    counters->add_option("--params", c_params, "parameter file")->required();
    counters->add_option("--case", c_case, "case directory")->required();

    // params show / set
    CLI::App* params = app.add_subcommand("params", "inspect or edit parameter files");
    params->require_subcommand(1);
    std::string ps_params, ps_klass = "2p3d";
    std::vector<std::string> ps_keys;
    CLI::App* pshow = params->add_subcommand("show", "print parameter values");
    pshow->add_option("--params", ps_params, "parameter file (defaults when absent)");
    pshow->add_option("--class", ps_klass, "class for built-in defaults");
    pshow->add_option("keys", ps_keys, "keys to print, all when empty");
    std::string pt_params, pt_klass = "2p3d", pt_out;
    std::vector<std::string> pt_assign;
    CLI::App* pset = params->add_subcommand("set", "set values and save");
    pset->add_option("--params", pt_params, "parameter file, created from defaults if missing")
        ->required();
    pset->add_option("--class", pt_klass, "class when creating a new file");
    pset->add_option("--out", pt_out, "write here instead of back to --params");
    pset->add_option("assignments", pt_assign, "KEY=VALUE pairs")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (expand->parsed())
            return cmd_expand(x_klass, x_nmin, x_nhopped, x_spinfixed,
                              x_tw->count() ? std::optional<int>(x_twicesz) : std::nullopt,
                              x_params, x_case, x_force);
        if (spectrum->parsed()) return cmd_spectrum(s_params, s_case, s_pol, s_out);
        if (rixs->parsed())
            return cmd_rixs(r_params, r_case, r_ein, r_eout, r_gammain, r_gammaout, r_polin,
                            r_polout, r_out);
        if (counters->parsed()) return cmd_counters(c_params, c_case);
        if (params->parsed()) {
            if (pshow->parsed()) return cmd_params_show(ps_params, ps_klass, ps_keys);
            if (pset->parsed()) return cmd_params_set(pt_params, pt_klass, pt_assign, pt_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
