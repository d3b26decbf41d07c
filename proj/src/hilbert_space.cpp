#include "hxx/hilbert_space.hpp"

#include <algorithm>

namespace hxx {

void HilbertSpace::sort_basis(std::optional<size_t> sector_shell) {
    auto sector = [&](const Determinant& d) -> uint32_t {
        return sector_shell ? layout_.shell_count(d, *sector_shell) : 0u;
    };
    std::sort(dets_.begin(), dets_.end(),
              [&](const Determinant& a, const Determinant& b) {
                  uint32_t sa = sector(a), sb = sector(b);
                  if (sa != sb) return sa < sb;
                  return a.val < b.val;
              });
    index_.clear();
    index_.reserve(dets_.size());
    for (uint32_t i = 0; i < dets_.size(); ++i) index_.emplace(dets_[i].val, i);
}

StateVector apply_operator(const OperatorSum& op, const StateVector& x,
                           const HilbertSpace& target, EscapePolicy policy) {
    if (!x.space) throw std::invalid_argument("apply_operator: state has no space");
    StateVector y(target);
    const HilbertSpace& from = *x.space;
    Determinant scratch(from.width());
    int sign = 0;
    for (size_t i = 0; i < from.dim(); ++i) {
        const cd& a = x.amp[i];
        if (a == cd(0)) continue;
        const Determinant& d = from.det(i);
        for (const auto& t : op.terms) {
            if (!apply_term_det(t, d, scratch, sign)) continue;
            auto j = target.find(scratch.val);
            if (!j) {
                if (policy == EscapePolicy::Truncate) continue;
                throw std::runtime_error(
                    "apply_operator: image determinant " + scratch.val.to_string() +
                    " is not in space '" + target.name() +
                    "' (under-expanded space?)");
            }
            y.amp[*j] += a * t.coeff * double(sign);
        }
    }
    for (cd& v : y.amp)
        if (std::abs(v) < kAmplitudeCutoff) v = 0.0;
    return y;
}

} // namespace hxx
