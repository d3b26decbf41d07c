#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hxx {

using cd = std::complex<double>;

// y = A x over a fixed dimension; A must be Hermitian for the eigensolver,
// the tridiagonalizer and the resolvent
using ApplyFn = std::function<void(const cd* x, cd* y)>;

struct LanczosConfig {
    int nev = 10;
    double tol = 1e-8;     // residual tolerance relative to the spectral scale
    int max_basis = 0;     // 0 picks max(2*nev + 10, 40)
    int max_restarts = 200;
    uint64_t seed = 0x6b8b4567u; // deterministic start vectors
};

struct EigResult {
    std::vector<double> values;           // ascending, multiplicity resolved
    std::vector<std::vector<cd>> vectors; // orthonormal columns
    std::vector<double> residuals;        // explicit |A v - theta v|
    int restarts = 0;
    bool converged = false;
};

// lowest eigenpairs by thick-restart Lanczos with full reorthogonalization.
// Converged Ritz pairs are locked and deflated; each restart keeps the lowest
// unconverged Ritz vectors and resumes the Krylov chain through its
// continuation vector, and the deflation exposes the remaining copies of
// degenerate levels one by one.
EigResult eigs_lowest(const ApplyFn& a, size_t dim, const LanczosConfig& cfg);

struct Tridiag {
    std::vector<double> alpha; // diagonal
    std::vector<double> beta;  // beta[i] couples step i to i+1
    double start_norm = 0;     // |b| of the seeding vector
};

// Lanczos recurrence with full reorthogonalization (ghost suppression keeps
// the continued fraction faithful to the dense resolvent at full depth),
// stopped early when the chain hits an invariant subspace
Tridiag tridiagonalize(const ApplyFn& a, size_t dim, const std::vector<cd>& start, int nsteps);

std::vector<double> tridiag_eigenvalues(const Tridiag& t);

// <q0|(z - H)^{-1}|q0> for the unit seed of t, evaluated bottom-up; the
// caller scales by start_norm^2. Im(z) > 0 gives Im(result) <= 0.
cd continued_fraction(const Tridiag& t, cd z);

struct ResolventConfig {
    double tol = 1e-8; // residual relative to |b|
    int max_basis = 150;
    int max_cycles = 60;
};

// x = (z - A)^{-1} b by restarted Lanczos on the shifted system; throws when
// the residual cap is exhausted, reporting the residual it reached
std::vector<cd> resolvent_apply(const ApplyFn& a, size_t dim, cd z, const std::vector<cd>& b,
                                const ResolventConfig& cfg = {});

} // namespace hxx
