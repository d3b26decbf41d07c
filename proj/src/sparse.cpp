#include "hxx/sparse.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hxx {

namespace {

void sort_merge_prune(std::vector<Triple>& t) {
    std::sort(t.begin(), t.end(), triple_order);
    size_t w = 0;
    for (size_t r = 0; r < t.size();) {
        Triple acc = t[r];
        size_t e = r + 1;
        while (e < t.size() && t[e].row == acc.row && t[e].col == acc.col) {
            acc.c += t[e].c;
            ++e;
        }
        if (std::abs(acc.c) >= kAmplitudeCutoff) t[w++] = acc;
        r = e;
    }
    t.resize(w);
}

} // namespace

void SparseOp::matvec(const cd* x, cd* y) const {
    std::fill(y, y + rows, cd(0, 0));
    for (const Triple& t : triples) y[t.row] += t.c * x[t.col];
}

std::vector<cd> SparseOp::matvec(const std::vector<cd>& x) const {
    if (x.size() != cols) throw std::invalid_argument("matvec length mismatch");
    std::vector<cd> y(rows);
    matvec(x.data(), y.data());
    return y;
}

bool SparseOp::hermitian_pairwise() const {
    if (rows != cols) return false;
    std::unordered_map<uint64_t, cd> m;
    m.reserve(triples.size());
    for (const Triple& t : triples) m[(uint64_t(t.row) << 32) | t.col] = t.c;
    for (const Triple& t : triples) {
        auto it = m.find((uint64_t(t.col) << 32) | t.row);
        if (it == m.end() || it->second != std::conj(t.c)) return false;
    }
    return true;
}

bool operator==(const SparseOp& a, const SparseOp& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.triples.size() != b.triples.size())
        return false;
    for (size_t i = 0; i < a.triples.size(); ++i) {
        const Triple &x = a.triples[i], &y = b.triples[i];
        if (x.row != y.row || x.col != y.col || x.c != y.c) return false;
    }
    return true;
}

SparseOp project(const OperatorSum& op, const HilbertSpace& from, const HilbertSpace& to,
                 EscapePolicy policy) {
    if (from.layout().width != to.layout().width)
        throw std::invalid_argument("projection between incompatible layouts");
    SparseOp out;
    out.from = from.name();
    out.to = to.name();
    out.rows = uint32_t(to.dim());
    out.cols = uint32_t(from.dim());

    Determinant scratch;
    int sign = 0;
    for (uint32_t col = 0; col < out.cols; ++col) {
        const Determinant& d = from.det(col);
        for (const OperatorTerm& t : op.terms) {
            if (!apply_term_det(t, d, scratch, sign)) continue;
            auto row = to.find(scratch.val);
            if (!row) {
                if (policy == EscapePolicy::Truncate) continue;
                throw std::runtime_error("operator image " + scratch.val.to_string() +
                                         " escapes space '" + to.name() +
                                         "' (under-expanded space?)");
            }
            out.triples.push_back({*row, col, double(sign) * t.coeff});
        }
    }
    sort_merge_prune(out.triples);
    return out;
}

void hermitize(SparseOp& a) {
    if (a.rows != a.cols) throw std::invalid_argument("hermitize needs a square matrix");
    // (A + A^dagger)/2; the conjugate-mirror pairs come out exactly equal
    // because complex addition commutes bit for bit under conjugation
    std::vector<Triple> sym;
    sym.reserve(2 * a.triples.size());
    for (const Triple& t : a.triples) {
        sym.push_back({t.row, t.col, 0.5 * t.c});
        sym.push_back({t.col, t.row, 0.5 * std::conj(t.c)});
    }
    sort_merge_prune(sym);
    a.triples = std::move(sym);
}

SparseOp merge_components(const std::vector<std::pair<cd, const SparseOp*>>& parts) {
    if (parts.empty()) throw std::invalid_argument("nothing to merge");
    SparseOp out;
    out.from = parts[0].second->from;
    out.to = parts[0].second->to;
    out.rows = parts[0].second->rows;
    out.cols = parts[0].second->cols;
    for (const auto& [c, p] : parts) {
        if (p->rows != out.rows || p->cols != out.cols)
            throw std::invalid_argument("component dimensions differ");
        for (const Triple& t : p->triples) out.triples.push_back({t.row, t.col, c * t.c});
    }
    sort_merge_prune(out.triples);
    return out;
}

void ComponentSet::add(const std::string& name, SparseOp op) {
    if (comps.empty()) {
        domain = op.from;
        codomain = op.to;
        rows = op.rows;
        cols = op.cols;
    } else if (op.rows != rows || op.cols != cols) {
        throw std::invalid_argument("component '" + name + "' dimensions differ from the set");
    }
    comps[name] = std::move(op);
}

const SparseOp& ComponentSet::at(const std::string& name) const {
    auto it = comps.find(name);
    if (it == comps.end()) throw std::invalid_argument("no component named '" + name + "'");
    return it->second;
}

void LinearOp::apply(const cd* x, cd* y) const {
    std::fill(y, y + rows, cd(0, 0));
    for (const auto& [c, p] : parts)
        for (const Triple& t : p->triples) y[t.row] += c * t.c * x[t.col];
}

std::vector<cd> LinearOp::apply(const std::vector<cd>& x) const {
    if (x.size() != cols) throw std::invalid_argument("apply length mismatch");
    std::vector<cd> y(rows);
    apply(x.data(), y.data());
    return y;
}

LinearOp assemble(const ComponentSet& set, const std::map<std::string, cd>& coeffs) {
    LinearOp op;
    op.rows = set.rows;
    op.cols = set.cols;
    for (const auto& [name, c] : coeffs) {
        const SparseOp& comp = set.at(name); // throws on unknown names
        if (c == cd(0, 0)) continue;
        op.parts.emplace_back(c, &comp);
    }
    return op;
}

void write_component(const std::string& path, const SparseOp& a) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "#HXX-SPARSE from=%s to=%s rows=%u cols=%u nnz=%zu\n", a.from.c_str(),
                 a.to.c_str(), a.rows, a.cols, a.triples.size());
    for (const Triple& t : a.triples)
        std::fprintf(f, "%u %u %.17g %.17g\n", t.row, t.col, t.c.real(), t.c.imag());
    std::fclose(f);
}

SparseOp read_component(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");

    SparseOp a;
    size_t nnz = 0;
    {
        char fromb[256] = {0}, tob[256] = {0};
        if (std::sscanf(line.c_str(), "#HXX-SPARSE from=%255s to=%255s rows=%u cols=%u nnz=%zu",
                        fromb, tob, &a.rows, &a.cols, &nnz) != 5)
            throw std::runtime_error(path + ": line 1: bad sparse header");
        a.from = fromb;
        a.to = tob;
    }
    a.triples.reserve(nnz);
    size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        Triple t;
        double re = 0, im = 0;
        std::istringstream ss(line);
        if (!(ss >> t.row >> t.col >> re >> im))
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": expected 'j i re im'");
        if (t.row >= a.rows || t.col >= a.cols)
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": index out of range");
        t.c = cd(re, im);
        a.triples.push_back(t);
    }
    if (a.triples.size() != nnz)
        throw std::runtime_error(path + ": triple count does not match header nnz");
    std::sort(a.triples.begin(), a.triples.end(), triple_order);
    return a;
}

} // namespace hxx
