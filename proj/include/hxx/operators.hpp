#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hxx/determinant.hpp"

namespace hxx {

using cd = std::complex<double>;

inline constexpr double kAmplitudeCutoff = 1e-14;

enum class LadderKind : uint8_t { Annihilate = 0, Create = 1 };

struct LadderOp {
    uint32_t pos;
    LadderKind kind;

    friend bool operator==(const LadderOp& a, const LadderOp& b) {
        return a.pos == b.pos && a.kind == b.kind;
    }
};

inline LadderOp cr(uint32_t pos) { return {pos, LadderKind::Create}; }
inline LadderOp an(uint32_t pos) { return {pos, LadderKind::Annihilate}; }

// One product of ladder operators with a complex amplitude. factors[0] is the
// leftmost operator, so application to a ket walks the list from the back.
struct OperatorTerm {
    cd coeff;
    std::vector<LadderOp> factors;
};

// Apply a term to a determinant without allocating: scratch receives the
// image. Returns false when any factor Pauli-blocks; sign_out carries the
// accumulated fermionic sign otherwise.
inline bool apply_term_det(const OperatorTerm& t, const Determinant& d,
                           Determinant& scratch, int& sign_out) {
    scratch = d;
    int s = 1;
    for (size_t k = t.factors.size(); k-- > 0;) {
        const LadderOp& f = t.factors[k];
        int fs = (f.kind == LadderKind::Create) ? create_inplace(scratch, f.pos)
                                                : annihilate_inplace(scratch, f.pos);
        if (fs == 0) return false;
        s *= fs;
    }
    sign_out = s;
    return true;
}

// Weighted sum of terms. Builders call canonicalize() once after assembly;
// it merges duplicate factor sequences and drops negligible amplitudes so
// that equal operators compare equal term by term.
class OperatorSum {
public:
    std::vector<OperatorTerm> terms;

    OperatorSum() = default;

    void add(cd coeff, std::vector<LadderOp> factors) {
        terms.push_back({coeff, std::move(factors)});
    }

    size_t size() const { return terms.size(); }

    // Sort every normal-ordered term (all creations left of all
    // annihilations) into ascending position order within each group,
    // tracking the permutation sign, then merge identical sequences and
    // prune. Terms that are not in normal-ordered shape (they appear in
    // operator products like S^2) keep their factor sequence verbatim.
    void canonicalize();

    OperatorSum& operator+=(const OperatorSum& o);
    OperatorSum& operator*=(cd c);
    friend OperatorSum operator*(cd c, OperatorSum s) {
        s *= c;
        return s;
    }
    // operator product: concatenates factor lists pairwise
    friend OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);

    friend bool operator==(const OperatorSum& a, const OperatorSum& b);
};

OperatorSum adjoint(const OperatorSum& op);

} // namespace hxx
