#include "hxx/operators.hpp"

#include <algorithm>
#include <cmath>

namespace hxx {

namespace {

// sort ops[lo, hi) ascending by position, returns the permutation parity as
// +1/-1, or 0 when two operators share a position (the product vanishes:
// c_p c_p = 0). Insertion sort, the groups are tiny.
int sort_group(std::vector<LadderOp>& ops, size_t lo, size_t hi) {
    int sign = 1;
    for (size_t i = lo + 1; i < hi; ++i) {
        LadderOp key = ops[i];
        size_t j = i;
        while (j > lo && ops[j - 1].pos > key.pos) {
            ops[j] = ops[j - 1];
            sign = -sign;
            --j;
        }
        ops[j] = key;
    }
    for (size_t i = lo + 1; i < hi; ++i)
        if (ops[i].pos == ops[i - 1].pos) return 0;
    return sign;
}

bool factors_less(const std::vector<LadderOp>& a, const std::vector<LadderOp>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].kind != b[i].kind) return a[i].kind < b[i].kind;
        if (a[i].pos != b[i].pos) return a[i].pos < b[i].pos;
    }
    return false;
}

} // namespace

void OperatorSum::canonicalize() {
    for (auto& t : terms) {
        // locate the create/annihilate boundary; bail out if mixed
        size_t ncr = 0;
        while (ncr < t.factors.size() && t.factors[ncr].kind == LadderKind::Create) ++ncr;
        bool normal = true;
        for (size_t i = ncr; i < t.factors.size(); ++i)
            if (t.factors[i].kind == LadderKind::Create) {
                normal = false;
                break;
            }
        if (!normal) continue;
        int s1 = sort_group(t.factors, 0, ncr);
        int s2 = sort_group(t.factors, ncr, t.factors.size());
        if (s1 == 0 || s2 == 0)
            t.coeff = 0.0;
        else
            t.coeff *= double(s1 * s2);
    }

    std::stable_sort(terms.begin(), terms.end(),
                     [](const OperatorTerm& a, const OperatorTerm& b) {
                         return factors_less(a.factors, b.factors);
                     });

    std::vector<OperatorTerm> merged;
    merged.reserve(terms.size());
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().factors == t.factors)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const OperatorTerm& t) {
                                    return std::abs(t.coeff) < kAmplitudeCutoff;
                                }),
                 merged.end());
    terms = std::move(merged);
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    canonicalize();
    return *this;
}

OperatorSum& OperatorSum::operator*=(cd c) {
    for (auto& t : terms) t.coeff *= c;
    canonicalize();
    return *this;
}

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
    OperatorSum out;
    out.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            OperatorTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.factors = ta.factors;
            t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
            out.terms.push_back(std::move(t));
        }
    out.canonicalize();
    return out;
}

bool operator==(const OperatorSum& a, const OperatorSum& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i) {
        if (!(a.terms[i].factors == b.terms[i].factors)) return false;
        if (std::abs(a.terms[i].coeff - b.terms[i].coeff) > 1e-12) return false;
    }
    return true;
}

OperatorSum adjoint(const OperatorSum& op) {
    OperatorSum out;
    out.terms.reserve(op.terms.size());
    for (const auto& t : op.terms) {
        OperatorTerm a;
        a.coeff = std::conj(t.coeff);
        a.factors.reserve(t.factors.size());
        for (size_t k = t.factors.size(); k-- > 0;) {
            LadderOp f = t.factors[k];
            f.kind = (f.kind == LadderKind::Create) ? LadderKind::Annihilate
                                                    : LadderKind::Create;
            a.factors.push_back(f);
        }
        out.terms.push_back(std::move(a));
    }
    out.canonicalize();
    return out;
}

} // namespace hxx
