#include "hxx/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace hxx {

namespace {

ApplyFn wrap(LinearOp op) {
    return [op = std::move(op)](const cd* x, cd* y) { op.apply(x, y); };
}

// in-channel of one spherical component: plain dipole or quadrupole file for
// the atomic classes, the Dips/Dipp weighted effective dipole pair for rixs
LinearOp component_channel(const LoadedCase& lc, const ParamSet& p, int mm, bool quadrupole,
                           cd scale) {
    LinearOp op;
    auto piece = [&](const std::string& stem, cd c) {
        const SparseOp& t = lc.trans.at(stem + std::to_string(mm));
        op.rows = t.rows;
        op.cols = t.cols;
        if (c != cd(0)) op.parts.emplace_back(c, &t);
    };
    if (quadrupole) {
        piece("quad_m", scale);
    } else if (lc.man.klass == "rixs") {
        piece("dips_m", scale * p.real("Dips"));
        piece("dipp_m", scale * p.real("Dipp"));
    } else {
        piece("dip_m", scale);
    }
    return op;
}

LinearOp combined_channel(const LoadedCase& lc, const ParamSet& p, const std::vector<cd>& pol) {
    if (pol.size() != 3 && pol.size() != 5)
        throw std::invalid_argument("polarisation needs 3 dipole or 5 quadrupole coefficients");
    const bool quad = pol.size() == 5;
    if (quad && lc.man.klass != "rixs")
        throw std::invalid_argument(
            "a 5-component polarisation needs the quadrupole channels of the rixs class");
    const int l = quad ? 2 : 1;
    LinearOp op;
    for (int mm = -l; mm <= l; ++mm) {
        LinearOp part = component_channel(lc, p, mm, quad, pol[size_t(mm + l)]);
        op.rows = part.rows;
        op.cols = part.cols;
        for (auto& pr : part.parts) op.parts.push_back(pr);
    }
    return op;
}

} // namespace

LinearOp assemble_space(const LoadedCase& lc, const ParamSet& p, const std::string& space) {
    check_case_params(lc.man, p);
    std::map<std::string, cd> coeffs = model_coefficients(lc.man.klass, space, p);
    const cd zero = coeffs.at("Sop_Zero");
    if (zero.imag() != 0.0 || coeffs.at("Sop_Minus") != std::conj(coeffs.at("Sop_Plus")))
        throw std::invalid_argument(space +
                                    " exchange field is not Hermitian: Sop_Zero must be real "
                                    "and Sop_Minus the conjugate of Sop_Plus");
    return assemble(lc.spaces.at(space), coeffs);
}

GroundManifold solve_ground(const LinearOp& h, size_t dim, const ParamSet& p) {
    ManifoldConfig cfg;
    cfg.nsearchedeigen = int(p.integer("nsearchedeigen"));
    cfg.erange = p.real("erange");
    cfg.temp = p.real("temp");
    cfg.tolefact = p.real("tolefact");
    return ground_manifold(wrap(h), dim, cfg);
}

NamedChannels absorption_channels(const LoadedCase& lc, const ParamSet& p,
                                  const std::vector<cd>& pol) {
    NamedChannels ch;
    if (pol.empty()) {
        for (int mm = -1; mm <= 1; ++mm) {
            ch.names.push_back("m" + std::to_string(mm));
            ch.ops.push_back(component_channel(lc, p, mm, false, cd(1)));
        }
    } else {
        ch.names.push_back("pol");
        ch.ops.push_back(combined_channel(lc, p, pol));
    }
    return ch;
}

SpectrumResult run_spectrum(const LoadedCase& lc, const ParamSet& p, const std::vector<cd>& pol) {
    LinearOp hbase = assemble_space(lc, p, "base");
    LinearOp hexci = assemble_space(lc, p, "exci");
    GroundManifold manifold = solve_ground(hbase, lc.dim("base"), p);

    NamedChannels ch = absorption_channels(lc, p, pol);
    std::vector<ApplyFn> fns;
    for (const LinearOp& op : ch.ops) fns.push_back(wrap(op));

    AbsorptionConfig cfg;
    cfg.nsteps = int(p.integer("NstepsTridiag"));
    cfg.grid.npunti = int(p.integer("npunti"));
    cfg.grid.dxleft = p.real("dxleft");
    cfg.grid.dxright = p.real("dxright");
    cfg.broad.all1 = p.real("all1");
    cfg.broad.all2 = p.real("all2");
    cfg.broad.el2l3 = p.real("El2l3");
    cfg.broad.shift = p.real("shift");
    return absorption(wrap(hexci), lc.dim("exci"), fns, manifold, cfg);
}

SpectrumResult run_rixs(const LoadedCase& lc, const ParamSet& p, const RixsRequest& rq) {
    if (lc.man.transitions_out.empty())
        throw std::invalid_argument("class " + lc.man.klass + " has no decay channel");
    if (rq.polout.size() != 3)
        throw std::invalid_argument("outgoing polarisation needs 3 dipole coefficients");

    LinearOp hbase = assemble_space(lc, p, "base");
    LinearOp hexci = assemble_space(lc, p, "exci");
    LinearOp hfin = assemble_space(lc, p, "final");
    GroundManifold manifold = solve_ground(hbase, lc.dim("base"), p);

    LinearOp d_in = combined_channel(lc, p, rq.polin);
    LinearOp d_out;
    for (int mm = -1; mm <= 1; ++mm) {
        const SparseOp& t = lc.trans.at("emi_m" + std::to_string(mm));
        d_out.rows = t.rows;
        d_out.cols = t.cols;
        if (rq.polout[size_t(mm + 1)] != cd(0))
            d_out.parts.emplace_back(rq.polout[size_t(mm + 1)], &t);
    }

    RixsConfig cfg;
    cfg.ein = rq.ein;
    cfg.eout1 = rq.eout1;
    cfg.eout2 = rq.eout2;
    cfg.dout = rq.dout;
    cfg.gammain = rq.gammain;
    cfg.gammaout_low = rq.gammaout_low;
    cfg.gammaout_cross = rq.gammaout_cross;
    cfg.gammaout_high = rq.gammaout_high;
    cfg.nsteps = int(p.integer("NstepsTridiag"));
    cfg.resolvent.max_basis = std::max(150, int(p.integer("NstepsTridiag")));
    return rixs(wrap(hexci), lc.dim("exci"), wrap(hfin), lc.dim("final"), wrap(d_in),
                wrap(d_out), manifold.states.at(0), cfg);
}

CounterTable run_counters(const LoadedCase& lc, const ParamSet& p) {
    LinearOp hbase = assemble_space(lc, p, "base");
    GroundManifold manifold = solve_ground(hbase, lc.dim("base"), p);
    std::vector<ApplyFn> fns;
    for (const std::string& name : lc.man.observables) {
        const SparseOp& op = lc.obs.at(name);
        fns.push_back([&op](const cd* x, cd* y) { op.matvec(x, y); });
    }
    return counters(manifold, fns, lc.dim("base"));
}

void write_columns(const std::string& path, const SpectrumResult& s,
                   const std::vector<std::string>& channel_names) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "# E");
    for (const std::string& n : channel_names) std::fprintf(f, " Re(%s) Im(%s)", n.c_str(), n.c_str());
    std::fprintf(f, "\n");
    for (size_t i = 0; i < s.energies.size(); ++i) {
        std::fprintf(f, "%.17g", s.energies[i]);
        for (const auto& ch : s.channels)
            std::fprintf(f, " %.17g %.17g", ch[i].real(), ch[i].imag());
        std::fprintf(f, "\n");
    }
    if (std::fclose(f) != 0) throw std::runtime_error("write failed on " + path);
}

} // namespace hxx
