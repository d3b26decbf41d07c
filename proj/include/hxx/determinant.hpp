#pragma once

#include <optional>

#include "hxx/bitchain.hpp"

namespace hxx {

// A Slater determinant: occupancy bits plus the running prefix parity chain.
// signs bit i records the parity of the electron count below position i, so a
// ladder operator at i reads its fermionic sign off one bit.
struct Determinant {
    BitChain val;
    BitChain signs;

    Determinant() = default;
    explicit Determinant(uint32_t width) : val(width), signs(width) {}

    static Determinant from_val(const BitChain& v) {
        Determinant d;
        d.val = v;
        d.signs = BitChain::parity_chain(v);
        return d;
    }

    uint32_t width() const { return val.width(); }
    uint32_t count() const { return val.count(); }
    bool occupied(uint32_t pos) const { return val.test(pos); }

    friend bool operator==(const Determinant& a, const Determinant& b) {
        return a.val == b.val;
    }
};

// Mutating ladder operators. Return 0 when Pauli blocked (the determinant is
// left in an unspecified but valid state), else +1/-1. Creating or removing a
// particle at pos flips the parity chain at every position above pos.
inline int create_inplace(Determinant& d, uint32_t pos) {
    if (d.val.test(pos)) return 0;
    int sign = d.signs.test(pos) ? -1 : +1;
    d.val.set(pos);
    if (pos + 1 < d.width()) d.signs.flip_from(pos + 1);
    return sign;
}

inline int annihilate_inplace(Determinant& d, uint32_t pos) {
    if (!d.val.test(pos)) return 0;
    int sign = d.signs.test(pos) ? -1 : +1;
    d.val.reset(pos);
    if (pos + 1 < d.width()) d.signs.flip_from(pos + 1);
    return sign;
}

struct ApplyResult {
    Determinant det;
    int sign; // +1 or -1
};

inline std::optional<ApplyResult> apply_create(const Determinant& d, uint32_t pos) {
    ApplyResult r{d, 0};
    r.sign = create_inplace(r.det, pos);
    if (r.sign == 0) return std::nullopt;
    return r;
}

inline std::optional<ApplyResult> apply_annihilate(const Determinant& d, uint32_t pos) {
    ApplyResult r{d, 0};
    r.sign = annihilate_inplace(r.det, pos);
    if (r.sign == 0) return std::nullopt;
    return r;
}

} // namespace hxx
