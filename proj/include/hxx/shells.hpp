#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hxx/determinant.hpp"

namespace hxx {

// spin index: 0 carries s_z = +1/2
enum Spin : uint32_t { SpinUp = 0, SpinDown = 1 };

// One shell of spin-orbitals inside the global bit layout. Atomic shells hold
// 2(2l+1) spin-orbitals ordered as the full up block (m = -l..l) followed by
// the down block. The effective ligand shell stores however many orbitals the
// reduction retained per spin; l is meaningless there.
struct Shell {
    std::string name;
    int l = 0;
    bool ligand = false;
    uint32_t offset = 0;
    uint32_t count = 0; // spin-orbitals, both spins

    uint32_t per_spin() const { return count / 2; }

    uint32_t index(int m, Spin s) const {
        if (ligand) throw std::logic_error("m index used on ligand shell " + name);
        if (m < -l || m > l) throw std::out_of_range("m out of range in shell " + name);
        return offset + uint32_t(s) * uint32_t(2 * l + 1) + uint32_t(m + l);
    }
    uint32_t ligand_index(uint32_t e, Spin s) const {
        if (e >= per_spin()) throw std::out_of_range("ligand orbital out of range");
        return offset + uint32_t(s) * per_spin() + e;
    }
    bool contains(uint32_t pos) const { return pos >= offset && pos < offset + count; }
    Spin spin_of(uint32_t pos) const {
        return (pos - offset) < per_spin() ? SpinUp : SpinDown;
    }
    int m_of(uint32_t pos) const {
        return int((pos - offset) % per_spin()) - l;
    }
};

struct ShellLayout {
    std::vector<Shell> shells;
    uint32_t width = 0;

    void add_atomic(const std::string& name, int l) {
        Shell s;
        s.name = name;
        s.l = l;
        s.offset = width;
        s.count = uint32_t(2 * (2 * l + 1));
        shells.push_back(s);
        width += s.count;
    }

    void add_ligand(const std::string& name, uint32_t per_spin) {
        Shell s;
        s.name = name;
        s.ligand = true;
        s.offset = width;
        s.count = 2 * per_spin;
        shells.push_back(s);
        width += s.count;
    }

    const Shell& shell(const std::string& name) const {
        for (const auto& s : shells)
            if (s.name == name) return s;
        throw std::invalid_argument("no shell named " + name);
    }
    size_t shell_index(const std::string& name) const {
        for (size_t i = 0; i < shells.size(); ++i)
            if (shells[i].name == name) return i;
        throw std::invalid_argument("no shell named " + name);
    }
    bool has_shell(const std::string& name) const {
        for (const auto& s : shells)
            if (s.name == name) return true;
        return false;
    }

    uint32_t shell_count(const Determinant& d, size_t ishell) const {
        const Shell& s = shells[ishell];
        return d.val.count_range(s.offset, s.offset + s.count);
    }

    // total S_z in units of hbar/2 so it stays integral
    int twice_sz(const Determinant& d) const {
        int t = 0;
        for (const auto& s : shells) {
            uint32_t up = d.val.count_range(s.offset, s.offset + s.per_spin());
            uint32_t dn = d.val.count_range(s.offset + s.per_spin(), s.offset + s.count);
            t += int(up) - int(dn);
        }
        return t;
    }

    friend bool operator==(const ShellLayout& a, const ShellLayout& b);
};

inline bool operator==(const ShellLayout& a, const ShellLayout& b) {
    if (a.width != b.width || a.shells.size() != b.shells.size()) return false;
    for (size_t i = 0; i < a.shells.size(); ++i) {
        const Shell &x = a.shells[i], &y = b.shells[i];
        if (x.name != y.name || x.l != y.l || x.ligand != y.ligand ||
            x.offset != y.offset || x.count != y.count)
            return false;
    }
    return true;
}

} // namespace hxx
