#include "hxx/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hxx {

namespace {

double norm_of(const std::vector<cd>& v) {
    double n2 = 0;
    for (const cd& c : v) n2 += std::norm(c);
    return std::sqrt(n2);
}

} // namespace

GroundManifold ground_manifold(const ApplyFn& h, size_t dim, const ManifoldConfig& cfg) {
    LanczosConfig lan = cfg.lanczos;
    lan.nev = cfg.nsearchedeigen;
    EigResult r = eigs_lowest(h, dim, lan);
    if (!r.converged)
        throw std::runtime_error("ground-state eigensolver did not converge after " +
                                 std::to_string(r.restarts) + " restarts");

    GroundManifold m;
    m.e0 = r.values.front();
    double wsum = 0;
    for (size_t i = 0; i < r.values.size(); ++i) {
        double de = r.values[i] - m.e0;
        if (de > cfg.erange + 1e-10) break; // values ascending
        double w = std::exp(-de / cfg.temp);
        if (w < cfg.tolefact) break;
        m.states.push_back({r.values[i], std::move(r.vectors[i]), w});
        wsum += w;
    }
    for (auto& s : m.states) s.weight /= wsum;
    return m;
}

SpectrumResult absorption(const ApplyFn& h_exci, size_t dim_exci,
                          const std::vector<ApplyFn>& channels, const GroundManifold& manifold,
                          const AbsorptionConfig& cfg) {
    if (cfg.grid.npunti < 2) throw std::invalid_argument("npunti must be at least 2");
    const size_t nchan = channels.size();

    // one tridiagonal chain per (ground state, channel); zero seeds stay out
    struct Pole {
        size_t chan;
        double weight;
        Tridiag t;
    };
    std::vector<Pole> poles;
    double emin = 0, emax = 0;
    bool have_extent = false;
    for (const GroundState& g : manifold.states) {
        for (size_t c = 0; c < nchan; ++c) {
            std::vector<cd> seed(dim_exci);
            channels[c](g.vec.data(), seed.data());
            if (norm_of(seed) == 0.0) continue; // forbidden transition
            Tridiag t = tridiagonalize(h_exci, dim_exci, seed, cfg.nsteps);
            if (t.alpha.empty()) continue;
            std::vector<double> ev = tridiag_eigenvalues(t);
            emin = have_extent ? std::min(emin, ev.front()) : ev.front();
            emax = have_extent ? std::max(emax, ev.back()) : ev.back();
            have_extent = true;
            poles.push_back({c, g.weight, std::move(t)});
        }
    }

    double lo = emin + cfg.broad.shift + cfg.grid.dxleft;
    double hi = emax + cfg.broad.shift + cfg.grid.dxright;
    if (!(hi > lo)) { // degenerate window, fall back to 1 eV around the center
        double c = 0.5 * (lo + hi);
        lo = c - 0.5;
        hi = c + 0.5;
    }

    SpectrumResult res;
    res.energies.resize(size_t(cfg.grid.npunti));
    const double step = (hi - lo) / double(cfg.grid.npunti - 1);
    for (int k = 0; k < cfg.grid.npunti; ++k) res.energies[size_t(k)] = lo + step * k;
    res.channels.assign(nchan, std::vector<cd>(size_t(cfg.grid.npunti), cd(0, 0)));

    for (const Pole& p : poles) {
        const double scale = p.weight * p.t.start_norm * p.t.start_norm;
        for (int k = 0; k < cfg.grid.npunti; ++k) {
            const double e = res.energies[size_t(k)];
            const cd z(e - cfg.broad.shift, cfg.broad.gamma(e));
            res.channels[p.chan][size_t(k)] += scale * std::conj(continued_fraction(p.t, z));
        }
    }
    return res;
}

SpectrumResult rixs(const ApplyFn& h_exci, size_t dim_exci, const ApplyFn& h_final,
                    size_t dim_final, const ApplyFn& d_in, const ApplyFn& d_out,
                    const GroundState& ground, const RixsConfig& cfg) {
    if (!(cfg.dout > 0)) throw std::invalid_argument("dout must be positive");
    if (!(cfg.eout2 > cfg.eout1)) throw std::invalid_argument("eout2 must exceed eout1");
    if (!(cfg.gammain > 0)) throw std::invalid_argument("gammain must be positive");
    if (!(cfg.gammaout_low > 0) || !(cfg.gammaout_high > 0))
        throw std::invalid_argument("gammaout widths must be positive");

    const int npts = int(std::floor((cfg.eout2 - cfg.eout1) / cfg.dout + 1e-9)) + 1;
    SpectrumResult res;
    res.energies.resize(size_t(npts));
    for (int k = 0; k < npts; ++k) res.energies[size_t(k)] = cfg.eout1 + cfg.dout * k;
    res.channels.assign(1, std::vector<cd>(size_t(npts), cd(0, 0)));

    std::vector<cd> seed(dim_exci);
    d_in(ground.vec.data(), seed.data());
    if (norm_of(seed) == 0.0) return res; // forbidden incoming pathway

    const cd zin(ground.energy + cfg.ein, cfg.gammain);
    std::vector<cd> mid = resolvent_apply(h_exci, dim_exci, zin, seed, cfg.resolvent);

    std::vector<cd> v(dim_final);
    d_out(mid.data(), v.data());
    if (norm_of(v) == 0.0) return res; // forbidden outgoing pathway

    Tridiag t = tridiagonalize(h_final, dim_final, v, cfg.nsteps);
    const double scale = t.start_norm * t.start_norm;
    for (int k = 0; k < npts; ++k) {
        const double w = res.energies[size_t(k)];
        const double g = w < cfg.gammaout_cross ? cfg.gammaout_low : cfg.gammaout_high;
        res.channels[0][size_t(k)] = scale * std::conj(continued_fraction(t, cd(w, g)));
    }
    return res;
}

CounterTable counters(const GroundManifold& manifold, const std::vector<ApplyFn>& ops,
                      size_t dim) {
    CounterTable table;
    std::vector<cd> img(dim);
    for (const GroundState& g : manifold.states) {
        std::vector<double> row;
        row.push_back(g.energy);
        for (const ApplyFn& op : ops) {
            op(g.vec.data(), img.data());
            cd e(0, 0);
            for (size_t i = 0; i < dim; ++i) e += std::conj(g.vec[i]) * img[i];
            row.push_back(std::real(e));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace hxx
