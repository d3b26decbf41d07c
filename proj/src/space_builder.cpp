#include "hxx/space_builder.hpp"

#include <algorithm>
#include <functional>

namespace hxx {

namespace {

struct Bounds {
    uint32_t lo, hi;
};

std::vector<Bounds> shell_bounds(const ShellLayout& layout, const ConfigConstraint& c) {
    std::vector<Bounds> b(layout.shells.size());
    for (size_t i = 0; i < layout.shells.size(); ++i)
        b[i] = {0, layout.shells[i].count};
    for (const auto& [name, n] : c.core_occupation) {
        size_t i = layout.shell_index(name);
        if (uint32_t(n) > layout.shells[i].count)
            throw std::invalid_argument("core occupation exceeds shell " + name);
        b[i] = {uint32_t(n), uint32_t(n)};
    }
    if (!c.valence_shell.empty()) {
        size_t i = layout.shell_index(c.valence_shell);
        if (c.min_valence < 0 || c.nhopped < 0 ||
            uint32_t(c.min_valence + c.nhopped) > layout.shells[i].count)
            throw std::invalid_argument("valence ladder out of range for shell " +
                                        c.valence_shell);
        b[i] = {uint32_t(c.min_valence), uint32_t(c.min_valence + c.nhopped)};
    }
    return b;
}

} // namespace

bool ConfigConstraint::admits(const ShellLayout& layout, const Determinant& d) const {
    if (int(d.count()) != total_electrons) return false;
    for (const auto& [name, n] : core_occupation) {
        size_t i = layout.shell_index(name);
        if (layout.shell_count(d, i) != uint32_t(n)) return false;
    }
    if (!valence_shell.empty()) {
        uint32_t nv = layout.shell_count(d, layout.shell_index(valence_shell));
        if (nv < uint32_t(min_valence) || nv > uint32_t(min_valence + nhopped))
            return false;
    }
    if (spinfixed) {
        if (!twice_sz) throw std::logic_error("spinfixed constraint without twice_sz");
        if (layout.twice_sz(d) != *twice_sz) return false;
    }
    return true;
}

Determinant canonical_seed(const ShellLayout& layout, const ConfigConstraint& c) {
    // lowest-configuration occupation per shell
    std::vector<uint32_t> occ(layout.shells.size(), 0);
    int assigned = 0;
    std::optional<size_t> lig;
    for (size_t i = 0; i < layout.shells.size(); ++i)
        if (layout.shells[i].ligand) lig = i;
    for (const auto& [name, n] : c.core_occupation) {
        occ[layout.shell_index(name)] = uint32_t(n);
        assigned += n;
    }
    if (!c.valence_shell.empty()) {
        occ[layout.shell_index(c.valence_shell)] = uint32_t(c.min_valence);
        assigned += c.min_valence;
    }
    int balance = c.total_electrons - assigned;
    if (lig) {
        if (balance < 0 || uint32_t(balance) > layout.shells[*lig].count)
            throw std::invalid_argument("electron balance does not fit the ligand shell");
        occ[*lig] = uint32_t(balance);
    } else if (balance != 0) {
        throw std::invalid_argument("total_electrons inconsistent with shell occupations");
    }

    // spin split: start from max S_z, then demote up->down pairs if pinned
    std::vector<uint32_t> nup(layout.shells.size());
    int tmax = 0;
    for (size_t i = 0; i < layout.shells.size(); ++i) {
        uint32_t ps = layout.shells[i].per_spin();
        nup[i] = std::min(occ[i], ps);
        tmax += int(nup[i]) - int(occ[i] - nup[i]);
    }
    int target = (c.spinfixed && c.twice_sz) ? *c.twice_sz : tmax;
    int excess = tmax - target;
    if (excess < 0 || excess % 2 != 0)
        throw std::invalid_argument("requested 2*S_z unreachable in the lowest configuration");
    excess /= 2;
    for (size_t i = 0; i < layout.shells.size() && excess > 0; ++i) {
        uint32_t ps = layout.shells[i].per_spin();
        while (excess > 0 && nup[i] > 0 && (occ[i] - nup[i]) < ps) {
            --nup[i];
            --excess;
        }
    }
    if (excess > 0)
        throw std::invalid_argument("requested 2*S_z unreachable in the lowest configuration");

    BitChain v(layout.width);
    for (size_t i = 0; i < layout.shells.size(); ++i) {
        const Shell& s = layout.shells[i];
        for (uint32_t k = 0; k < nup[i]; ++k) v.set(s.offset + k);
        for (uint32_t k = 0; k < occ[i] - nup[i]; ++k) v.set(s.offset + s.per_spin() + k);
    }
    return Determinant::from_val(v);
}

HilbertSpace expand(const ShellLayout& layout, const std::vector<Determinant>& seeds,
                    const OperatorSum& wanderer, const ConfigConstraint& constraint,
                    const std::string& name) {
    HilbertSpace space(layout, name);
    for (const auto& s : seeds) {
        if (s.width() != layout.width)
            throw std::invalid_argument("seed width does not match the layout");
        if (constraint.admits(layout, s)) space.insert(s);
    }
    if (space.dim() == 0)
        throw std::invalid_argument("no seed satisfies the constraint");

    Determinant scratch(layout.width);
    int sign = 0;
    for (size_t next = 0; next < space.dim(); ++next) {
        Determinant d = space.det(next); // copy, inserts invalidate references
        for (const auto& t : wanderer.terms) {
            if (!apply_term_det(t, d, scratch, sign)) continue;
            if (space.find(scratch.val)) continue;
            if (!constraint.admits(layout, scratch)) continue;
            space.insert(scratch);
        }
    }

    std::optional<size_t> sector;
    if (!constraint.valence_shell.empty())
        sector = layout.shell_index(constraint.valence_shell);
    space.sort_basis(sector);
    return space;
}

namespace {

// emit every determinant that places the given counts in each shell
void emit_products(const ShellLayout& layout, const std::vector<uint32_t>& occ,
                   const ConfigConstraint& c, HilbertSpace& space) {
    // recursive product over shells of k-subsets in ascending bit order
    struct Rec {
        const ShellLayout& layout;
        const std::vector<uint32_t>& occ;
        const ConfigConstraint& c;
        HilbertSpace& space;
        BitChain val;

        Rec(const ShellLayout& l, const std::vector<uint32_t>& o,
            const ConfigConstraint& cc, HilbertSpace& s)
            : layout(l), occ(o), c(cc), space(s), val(l.width) {}

        void shell(size_t i) {
            if (i == layout.shells.size()) {
                Determinant d = Determinant::from_val(val);
                if (!c.spinfixed || layout.twice_sz(d) == *c.twice_sz) space.insert(d);
                return;
            }
            const Shell& s = layout.shells[i];
            uint32_t k = occ[i];
            std::vector<uint32_t> idx(k);
            for (uint32_t j = 0; j < k; ++j) idx[j] = j;
            while (true) {
                for (uint32_t j = 0; j < k; ++j) val.set(s.offset + idx[j]);
                shell(i + 1);
                for (uint32_t j = 0; j < k; ++j) val.reset(s.offset + idx[j]);
                // next combination
                if (k == 0) break;
                int j = int(k) - 1;
                while (j >= 0 && idx[j] == s.count - (k - j)) --j;
                if (j < 0) break;
                ++idx[j];
                for (uint32_t t = uint32_t(j) + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
            }
        }
    } rec(layout, occ, c, space);
    rec.shell(0);
}

} // namespace

HilbertSpace enumerate_configurations(const ShellLayout& layout,
                                      const ConfigConstraint& constraint,
                                      const std::string& name) {
    if (constraint.spinfixed && !constraint.twice_sz)
        throw std::logic_error("spinfixed constraint without twice_sz");
    HilbertSpace space(layout, name);
    auto bounds = shell_bounds(layout, constraint);

    // pick a count per shell, restricted to the fixed total
    std::vector<uint32_t> occ(layout.shells.size(), 0);
    std::function<void(size_t, int)> pick = [&](size_t i, int remaining) {
        if (i == layout.shells.size()) {
            if (remaining == 0) emit_products(layout, occ, constraint, space);
            return;
        }
        for (uint32_t n = bounds[i].lo; n <= bounds[i].hi; ++n) {
            if (int(n) > remaining) break;
            occ[i] = n;
            pick(i + 1, remaining - int(n));
        }
        occ[i] = 0;
    };
    pick(0, constraint.total_electrons);

    std::optional<size_t> sector;
    if (!constraint.valence_shell.empty())
        sector = layout.shell_index(constraint.valence_shell);
    space.sort_basis(sector);
    return space;
}

int term_twice_dsz(const ShellLayout& layout, const OperatorTerm& t) {
    int d = 0;
    for (const auto& f : t.factors) {
        Spin s = SpinUp;
        bool found = false;
        for (const auto& sh : layout.shells)
            if (sh.contains(f.pos)) {
                s = sh.spin_of(f.pos);
                found = true;
                break;
            }
        if (!found) throw std::out_of_range("ladder position outside the layout");
        int up = (s == SpinUp) ? 1 : -1;
        d += (f.kind == LadderKind::Create) ? up : -up;
    }
    return d;
}

OperatorSum filter_sz_conserving(const ShellLayout& layout, const OperatorSum& op) {
    OperatorSum out;
    for (const auto& t : op.terms)
        if (term_twice_dsz(layout, t) == 0) out.terms.push_back(t);
    return out;
}

} // namespace hxx
