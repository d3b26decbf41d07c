#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "hxx/runner.hpp"

using namespace hxx;

namespace {

struct TempCase {
    std::string dir;
    explicit TempCase(const std::string& name) : dir("model_case_" + name) {
        std::filesystem::remove_all(dir);
    }
    ~TempCase() { std::filesystem::remove_all(dir); }
};

size_t nnz(const SparseOp& op) { return op.triples.size(); }

} // namespace

TEST_CASE("nickel-like pd model builds the expected spaces and components") {
    ParamSet p = ParamSet::defaults("2p3d");
    Model m = build_model(p, 8, 2, false, std::nullopt);

    CHECK(m.lay.width == 26);
    CHECK(m.red.retained == 5);
    CHECK(m.base.dim() == 190); // d8 L10 + d9 L9 + d10 L8
    CHECK(m.exci.dim() == 120); // 2p hole, d9 L10 + d10 L9

    auto comps = model_components(m, "base");
    CHECK(comps.size() == 17);
    for (const auto& [name, op] : comps) {
        INFO(name);
        if (name == "SO_0") continue; // closed 2p shell still carries terms
        CHECK_FALSE(op.terms.empty());
    }

    auto tin = transition_operators_in(m);
    REQUIRE(tin.size() == 3);
    CHECK(tin[0].first == "dip_m-1");
    CHECK(tin[2].first == "dip_m1");
    CHECK(transition_operators_out(m).empty());

    // nmin leaving no room for the photoelectron is refused
    CHECK_THROWS(build_model(p, 10, 2, false, std::nullopt));
}

TEST_CASE("rixs model separates the 1s and 3p coupled blocks") {
    ParamSet p = ParamSet::defaults("rixs");
    Model m = build_model(p, 8, 2, false, std::nullopt);

    CHECK(m.lay.width == 28); // 1s + 3p + 3d + 10 ligand spin orbitals
    CHECK(m.base.dim() == 190);
    CHECK(m.exci.dim() == 40);
    CHECK(m.fin.dim() == 120);
    CHECK(m.core0("base") == "1s");
    CHECK(m.core0("final") == "3p");

    // the s core carries no spin-orbit and no k>0 multipoles; the 3p block of
    // the final space carries all of them
    auto find = [](const std::vector<std::pair<std::string, OperatorSum>>& v,
                   const std::string& n) -> const OperatorSum& {
        for (const auto& [name, op] : v)
            if (name == n) return op;
        throw std::runtime_error("missing " + n);
    };
    auto cb = model_components(m, "base");
    CHECK(find(cb, "SO_0").terms.empty());
    CHECK(find(cb, "F2_01").terms.empty());
    CHECK(find(cb, "G1_01").terms.empty());
    CHECK(find(cb, "G3_01").terms.empty());
    CHECK_FALSE(find(cb, "F0_01").terms.empty());
    auto cf = model_components(m, "final");
    CHECK_FALSE(find(cf, "SO_0").terms.empty());
    CHECK_FALSE(find(cf, "F2_01").terms.empty());
    CHECK_FALSE(find(cf, "G1_01").terms.empty());
    CHECK_FALSE(find(cf, "G3_01").terms.empty());

    auto tin = transition_operators_in(m);
    REQUIRE(tin.size() == 11); // 5 quadrupole + 3 sigma + 3 pi effective dipole
    CHECK(tin[0].first == "quad_m-2");
    auto tout = transition_operators_out(m);
    REQUIRE(tout.size() == 3);
    CHECK(tout[1].first == "emi_m0");
}

TEST_CASE("df model has crystal field slots but no ligand machinery") {
    ParamSet p = ParamSet::defaults("df");
    Model m = build_model(p, 1, 5, false, std::nullopt);

    CHECK(m.lay.width == 24);
    CHECK_FALSE(m.has_ligand);
    CHECK(m.nhopped == 0); // forced, nothing to exchange with
    CHECK(m.base.dim() == 14);
    CHECK(m.exci.dim() == 910);

    auto comps = model_components(m, "base");
    std::vector<std::string> names;
    for (const auto& [n, op] : comps) names.push_back(n);
    CHECK(std::count(names.begin(), names.end(), "VC2") == 1);
    CHECK(std::count(names.begin(), names.end(), "Vs") == 0);
    CHECK(std::count(names.begin(), names.end(), "counterDL") == 0);

    auto coeffs = model_coefficients("df", "base", p);
    CHECK(coeffs.count("VC2") == 1);
    CHECK(coeffs.count("Vs") == 0);
}

TEST_CASE("case directory round trips manifest, bases and components exactly") {
    ParamSet p = ParamSet::defaults("rixs");
    Model m = build_model(p, 8, 2, false, std::nullopt);
    TempCase tc("rixs_roundtrip");
    CaseManifest man = write_case(tc.dir, m, p);

    CHECK(man.dims.at("base") == 190);
    CHECK(man.spaces() == std::vector<std::string>{"base", "exci", "final"});

    LoadedCase lc = load_case(tc.dir);
    CHECK(lc.man.klass == "rixs");
    CHECK(lc.man.nmin == 8);
    CHECK(lc.man.alpha_dipo == p.real("ALPHADIPO"));
    CHECK(lc.spaces.at("base").comps.size() == 17);
    CHECK(lc.trans.size() == 14);
    CHECK(lc.obs.size() == 6);

    // structurally empty components are stored and reload as empty
    CHECK(nnz(lc.spaces.at("base").at("SO_0")) == 0);
    CHECK(nnz(lc.spaces.at("final").at("SO_0")) > 0);

    // stored bases reproduce the in-memory determinants bit for bit
    auto vals = read_basis_vals(tc.dir + "/basis_exci.txt");
    REQUIRE(vals.size() == m.exci.dim());
    for (size_t i = 0; i < vals.size(); ++i) CHECK(vals[i] == m.exci.det(i).val);

    // projected components round trip value-exact through the text files
    Model m2 = build_model(p, 8, 2, false, std::nullopt);
    for (const auto& [name, op] : model_components(m2, "exci")) {
        SparseOp proj = project(op, m2.exci, m2.exci, EscapePolicy::Truncate);
        if (name != "Sop_Minus" && name != "Sop_Plus") hermitize(proj);
        CHECK(proj == lc.spaces.at("exci").at(name));
    }

    // a different ladder in the same directory is refused unless forced
    Model m3 = build_model(p, 7, 2, false, std::nullopt);
    CHECK_THROWS_WITH_AS(write_case(tc.dir, m3, p),
                         doctest::Contains("different expansion"), std::runtime_error);
    CHECK_NOTHROW(write_case(tc.dir, m3, p, true));
}

TEST_CASE("assembly guards geometry drift and hybridization channel switches") {
    ParamSet p = ParamSet::defaults("2p3d");
    Model m = build_model(p, 8, 2, false, std::nullopt);
    TempCase tc("guards");
    write_case(tc.dir, m, p);
    LoadedCase lc = load_case(tc.dir);

    CHECK_NOTHROW(assemble_space(lc, p, "base"));

    ParamSet scaled = p;
    scaled.set("Vs", "3.7"); // rescaling a live channel is fine
    CHECK_NOTHROW(assemble_space(lc, scaled, "base"));

    ParamSet dead = p;
    dead.set("Vs", "0");
    CHECK_THROWS_WITH_AS(assemble_space(lc, dead, "base"),
                         doctest::Contains("zero and nonzero"), std::invalid_argument);

    ParamSet moved = p;
    moved.set("DREF", "2");
    CHECK_THROWS_WITH_AS(assemble_space(lc, moved, "base"), doctest::Contains("DREF"),
                         std::invalid_argument);

    ParamSet skewed = p;
    skewed.set("base_Sop_Minus", "0.25j");
    CHECK_THROWS_WITH_AS(assemble_space(lc, skewed, "base"), doctest::Contains("Hermitian"),
                         std::invalid_argument);

    ParamSet other = ParamSet::defaults("rixs");
    CHECK_THROWS_AS(assemble_space(lc, other, "base"), std::invalid_argument);
}

TEST_CASE("nickel-like ground state counters show the hybridized triplet") {
    ParamSet p = ParamSet::defaults("2p3d");
    p.set("base_SO_1", "0");
    p.set("base_Sop_Zero", "0");
    Model m = build_model(p, 8, 2, false, std::nullopt);
    TempCase tc("counters");
    write_case(tc.dir, m, p);
    LoadedCase lc = load_case(tc.dir);

    CounterTable t = run_counters(lc, p);
    REQUIRE(t.rows.size() == 3); // spin triplet ground manifold
    for (const auto& row : t.rows) {
        REQUIRE(row.size() == 1 + lc.man.observables.size()); // E then counters
        CHECK(row[0] == doctest::Approx(t.rows[0][0]).epsilon(1e-10));
        CHECK(row[1] == doctest::Approx(2.0).epsilon(1e-8)); // S^2
        CHECK(row[2] > 8.0); // L^2 between the d8 and d9 configuration values
        CHECK(row[2] < 12.0);
        CHECK(row[4] > 9.0); // ligand electrons, a little charge moved onto d
        CHECK(row[4] < 10.0);
    }
}

TEST_CASE("absorption channels follow the polarisation rules") {
    ParamSet p = ParamSet::defaults("rixs");
    Model m = build_model(p, 8, 2, false, std::nullopt);
    TempCase tc("channels");
    write_case(tc.dir, m, p);
    LoadedCase lc = load_case(tc.dir);

    NamedChannels iso = absorption_channels(lc, p, {});
    REQUIRE(iso.names.size() == 3);
    CHECK(iso.names[0] == "m-1");
    CHECK(iso.ops[0].parts.size() == 2); // Dips and Dipp weighted families

    NamedChannels dip = absorption_channels(lc, p, {cd(1), cd(0), cd(-1)});
    REQUIRE(dip.names.size() == 1);
    CHECK(dip.ops[0].parts.size() == 4); // two live m components, two families

    NamedChannels quad = absorption_channels(lc, p, {cd(1), cd(0), cd(0), cd(0), cd(-1)});
    REQUIRE(quad.ops.size() == 1);
    CHECK(quad.ops[0].parts.size() == 2);

    CHECK_THROWS_WITH_AS(absorption_channels(lc, p, std::vector<cd>(4, cd(1))),
                         doctest::Contains("3 dipole or 5 quadrupole"), std::invalid_argument);

    ParamSet pd = ParamSet::defaults("2p3d");
    Model md = build_model(pd, 8, 2, false, std::nullopt);
    TempCase td("channels_pd");
    write_case(td.dir, md, pd);
    LoadedCase ld = load_case(td.dir);
    CHECK_THROWS_WITH_AS(absorption_channels(ld, pd, std::vector<cd>(5, cd(1))),
                         doctest::Contains("rixs"), std::invalid_argument);
}

TEST_CASE("spectrum runs are deterministic across reloads") {
    ParamSet p = ParamSet::defaults("2p3d");
    p.set("npunti", "40");
    p.set("nsearchedeigen", "4");
    p.set("NstepsTridiag", "80");
    Model m = build_model(p, 8, 2, false, std::nullopt);
    TempCase tc("determinism");
    write_case(tc.dir, m, p);

    LoadedCase lc = load_case(tc.dir);
    SpectrumResult a = run_spectrum(lc, p, {});
    SpectrumResult b = run_spectrum(lc, p, {});
    LoadedCase lc2 = load_case(tc.dir);
    SpectrumResult c = run_spectrum(lc2, p, {});

    REQUIRE(a.energies.size() == 40);
    REQUIRE(a.channels.size() == 3);
    double strength = 0;
    for (const auto& ch : a.channels)
        for (const cd& v : ch) strength += v.imag();
    CHECK(strength > 0);

    CHECK(a.energies == b.energies);
    CHECK(a.channels == b.channels);
    CHECK(a.energies == c.energies);
    CHECK(a.channels == c.channels);
}

TEST_CASE("rixs pipeline produces a finite deterministic map") {
    ParamSet p = ParamSet::defaults("rixs");
    p.set("nsearchedeigen", "4");
    p.set("NstepsTridiag", "60");
    Model m = build_model(p, 8, 2, false, std::nullopt);
    TempCase tc("rixs_run");
    write_case(tc.dir, m, p);
    LoadedCase lc = load_case(tc.dir);

    RixsRequest rq;
    rq.ein = 2.0;
    rq.eout1 = -12.0;
    rq.eout2 = -2.0;
    rq.dout = 0.5;
    rq.gammain = 0.3;
    rq.gammaout_low = 0.4;
    rq.gammaout_cross = 0.0;
    rq.gammaout_high = 0.4;
    rq.polin = {cd(1), cd(0), cd(0), cd(0), cd(-1)}; // xy quadrupole
    rq.polout = {cd(0), cd(1), cd(0)};               // z outgoing dipole

    SpectrumResult r1 = run_rixs(lc, p, rq);
    SpectrumResult r2 = run_rixs(lc, p, rq);
    REQUIRE(r1.energies.size() == 21);
    REQUIRE(r1.channels.size() == 1);
    CHECK(r1.energies == r2.energies);
    CHECK(r1.channels == r2.channels);
    double total = 0;
    for (const cd& v : r1.channels[0]) total += std::abs(v.imag());
    CHECK(total > 0);
    CHECK(std::isfinite(total));

    RixsRequest bad = rq;
    bad.polout = {cd(1)};
    CHECK_THROWS_WITH_AS(run_rixs(lc, p, bad), doctest::Contains("3 dipole"),
                         std::invalid_argument);
}
