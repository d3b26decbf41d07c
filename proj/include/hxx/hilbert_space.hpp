#pragma once

#include <unordered_map>

#include "hxx/operators.hpp"
#include "hxx/shells.hpp"

namespace hxx {

// Ordered determinant basis with O(1) membership lookup keyed on occupancy
// bits (the parity chain is derived data).
class HilbertSpace {
public:
    HilbertSpace() = default;
    HilbertSpace(ShellLayout layout, std::string name)
        : layout_(std::move(layout)), name_(std::move(name)) {}

    const ShellLayout& layout() const { return layout_; }
    const std::string& name() const { return name_; }
    uint32_t width() const { return layout_.width; }
    size_t dim() const { return dets_.size(); }
    const Determinant& det(size_t i) const { return dets_[i]; }
    const std::vector<Determinant>& dets() const { return dets_; }

    std::optional<uint32_t> find(const BitChain& val) const {
        auto it = index_.find(val);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool insert(const Determinant& d) {
        auto [it, fresh] = index_.try_emplace(d.val, uint32_t(dets_.size()));
        if (fresh) dets_.push_back(d);
        return fresh;
    }

    // deterministic basis order: configuration sector first (occupation of
    // sector_shell when given), then occupancy bits as little-endian numbers
    void sort_basis(std::optional<size_t> sector_shell);

private:
    ShellLayout layout_;
    std::string name_;
    std::vector<Determinant> dets_;
    std::unordered_map<BitChain, uint32_t, BitChainHash> index_;
};

struct StateVector {
    const HilbertSpace* space = nullptr;
    std::vector<cd> amp;

    StateVector() = default;
    explicit StateVector(const HilbertSpace& s) : space(&s), amp(s.dim(), cd(0)) {}

    double norm2() const {
        double n = 0;
        for (const cd& a : amp) n += std::norm(a);
        return n;
    }
};

inline cd dot(const StateVector& a, const StateVector& b) {
    cd s = 0;
    for (size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

enum class EscapePolicy {
    Strict,  // image outside the target space throws (under-expanded space)
    Truncate // image outside the target space is dropped (P op P)
};

// y = op x resolved in the target space. Strict mode refuses images that the
// target cannot index; truncation implements the projected operator, which is
// what a configuration ladder cut off at nhopped means.
StateVector apply_operator(const OperatorSum& op, const StateVector& x,
                           const HilbertSpace& target,
                           EscapePolicy policy = EscapePolicy::Strict);

} // namespace hxx
