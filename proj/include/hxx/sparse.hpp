#pragma once

#include <map>
#include <string>
#include <vector>

#include "hxx/hilbert_space.hpp"

namespace hxx {

// one matrix element: c_{row,col}; files spell the triple as "j i re im"
struct Triple {
    uint32_t row = 0;
    uint32_t col = 0;
    cd c;
};

inline bool triple_order(const Triple& a, const Triple& b) {
    if (a.col != b.col) return a.col < b.col;
    return a.row < b.row;
}

// sparse matrix between two named bases, triples sorted by (col, row) so each
// column is stored contiguously (a column is the image of one basis vector)
struct SparseOp {
    std::string from; // domain basis name
    std::string to;   // codomain basis name
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<Triple> triples;

    void matvec(const cd* x, cd* y) const; // y = A x, y zeroed first
    std::vector<cd> matvec(const std::vector<cd>& x) const;

    // true when every stored element has its exact conjugate mirror
    bool hermitian_pairwise() const;

    friend bool operator==(const SparseOp& a, const SparseOp& b);
};

// column i of the result is op applied to basis vector i of `from`, resolved
// in `to`. Strict policy refuses escaping determinants; Truncate projects.
SparseOp project(const OperatorSum& op, const HilbertSpace& from, const HilbertSpace& to,
                 EscapePolicy policy = EscapePolicy::Strict);

// replace A by (A + A^dagger)/2 with exact conjugate-mirror storage
void hermitize(SparseOp& a);

// explicit merged linear combination (used as the lazy-assembly oracle and by
// tooling that wants one matrix)
SparseOp merge_components(const std::vector<std::pair<cd, const SparseOp*>>& parts);

// named components over one (domain, codomain) pair
struct ComponentSet {
    std::string domain;
    std::string codomain;
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::map<std::string, SparseOp> comps;

    void add(const std::string& name, SparseOp op);
    const SparseOp& at(const std::string& name) const;
    bool has(const std::string& name) const { return comps.count(name) != 0; }
};

// lazily assembled sum of scaled components; keeps pointers into the set
struct LinearOp {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<std::pair<cd, const SparseOp*>> parts;

    void apply(const cd* x, cd* y) const;
    std::vector<cd> apply(const std::vector<cd>& x) const;
};

LinearOp assemble(const ComponentSet& set, const std::map<std::string, cd>& coeffs);

void write_component(const std::string& path, const SparseOp& a);
SparseOp read_component(const std::string& path);

} // namespace hxx
