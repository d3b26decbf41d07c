#include "hxx/solvers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace hxx {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

VectorXcd random_vector(std::mt19937_64& rng, Eigen::Index dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = cd(u(rng), u(rng));
    return v;
}

// two-pass Gram-Schmidt against a list of vectors; coefficients accumulate
// into *coeff when given; returns the remainder norm
double orthogonalize(VectorXcd& w, const std::vector<VectorXcd>& basis, VectorXcd* coeff) {
    for (int pass = 0; pass < 2; ++pass) {
        for (size_t i = 0; i < basis.size(); ++i) {
            cd c = basis[i].dot(w);
            w -= c * basis[i];
            if (coeff) (*coeff)[Eigen::Index(i)] += c;
        }
    }
    return w.norm();
}

} // namespace

// Thick-restart scheme on the locked-deflated operator (I-P) A (I-P).
// The active basis q is kept orthonormal (and orthogonal to every locked
// eigenvector) with full two-pass Gram-Schmidt; w stores the deflated images
// so Ritz residuals are explicit, never recurrence estimates. Each restart
// keeps the lowest unconverged Ritz vectors and the expansion loop tops the
// basis up, starting from fresh random directions once the Krylov chain
// breaks down; that is what resolves degenerate multiplets copy by copy.
EigResult eigs_lowest(const ApplyFn& a, size_t dim_in, const LanczosConfig& cfg) {
    const Eigen::Index dim = Eigen::Index(dim_in);
    if (dim == 0) throw std::invalid_argument("eigensolver on an empty space");
    const int nev = std::min<int>(cfg.nev, int(dim));
    int max_basis = cfg.max_basis > 0 ? cfg.max_basis : std::max(2 * cfg.nev + 10, 40);
    max_basis = int(std::min<Eigen::Index>(max_basis, dim));
    const int keep_target = std::min(nev + 5, std::max(1, max_basis - 10));

    std::mt19937_64 rng(cfg.seed);

    std::vector<VectorXcd> locked;
    std::vector<double> locked_val;
    std::vector<VectorXcd> q; // active orthonormal basis
    std::vector<VectorXcd> w; // deflated images, one per computed column
    MatrixXcd h = MatrixXcd::Zero(max_basis, max_basis);

    double scale = 1.0;
    auto fresh_random = [&]() {
        VectorXcd v = random_vector(rng, dim);
        orthogonalize(v, locked, nullptr);
        double n = orthogonalize(v, q, nullptr);
        if (n < 1e-10) return false; // complement exhausted
        q.push_back(v / n);
        return true;
    };

    q.reserve(size_t(max_basis));
    w.reserve(size_t(max_basis));
    if (!fresh_random()) throw std::runtime_error("cannot seed the eigensolver");

    EigResult out;
    int quiet_confirms = 0;
    // remainder of the final column when the basis hit capacity; every Ritz
    // residual of the cycle is parallel to it, so the next cycle must resume
    // the Krylov chain there rather than from a random direction
    VectorXcd cont;
    bool have_cont = false;
    for (int restart = 0; restart < cfg.max_restarts; ++restart) {
        // expand until every basis vector has its image column and the basis
        // is at capacity (or the complement ran out)
        while (true) {
            if (w.size() == q.size()) {
                if (int(q.size()) >= max_basis) break;
                if (!fresh_random()) break;
                continue;
            }
            const size_t k = w.size();
            VectorXcd img(dim);
            a(q[k].data(), img.data());
            orthogonalize(img, locked, nullptr); // deflate
            w.push_back(img);

            VectorXcd rem = img;
            VectorXcd coeff = VectorXcd::Zero(Eigen::Index(q.size()));
            double beta = orthogonalize(rem, q, &coeff);
            for (size_t i = 0; i < q.size(); ++i) {
                h(Eigen::Index(i), Eigen::Index(k)) = coeff[Eigen::Index(i)];
                h(Eigen::Index(k), Eigen::Index(i)) = std::conj(coeff[Eigen::Index(i)]);
            }
            if (beta > 1e-12 * scale) {
                // deflating the image is not enough: the projection step feeds
                // locked components of q back into rem scaled by O(|H|), which
                // compounds every step, so the chain must be purged directly
                if (!locked.empty()) beta = orthogonalize(rem, locked, nullptr);
                if (beta > 1e-12 * scale) {
                    if (int(q.size()) < max_basis) {
                        q.push_back(rem / beta);
                    } else {
                        cont = rem / beta;
                        have_cont = true;
                    }
                }
            }
        }
        if (q.empty()) { // complement exhausted, every reachable pair is locked
            out.converged = int(locked.size()) >= nev;
            out.restarts = restart + 1;
            break;
        }

        const int m = int(q.size());
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.topLeftCorner(m, m));
        const VectorXd theta = es.eigenvalues();
        const MatrixXcd y = es.eigenvectors();
        scale = std::max(1.0, std::max(std::abs(theta[0]), std::abs(theta[m - 1])));

        const int ncand = std::min(m, nev + 5);
        const size_t nc = size_t(ncand);
        std::vector<VectorXcd> ritz(nc), ritz_img(nc);
        std::vector<double> res(nc);
        for (int i = 0; i < ncand; ++i) {
            VectorXcd v = VectorXcd::Zero(dim), av = VectorXcd::Zero(dim);
            for (int j = 0; j < m; ++j) {
                v += y(j, i) * q[size_t(j)];
                av += y(j, i) * w[size_t(j)];
            }
            ritz[size_t(i)] = v;
            ritz_img[size_t(i)] = av;
            res[size_t(i)] = (av - theta[i] * v).norm();
        }

        // lock converged candidates up to and including copies of the nth
        // value; a fixed cap would orphan degenerate copies found later,
        // which then reappear through the random injections forever
        auto nth_locked = [&]() {
            if (int(locked.size()) < nev) return std::numeric_limits<double>::infinity();
            std::vector<double> s = locked_val;
            std::nth_element(s.begin(), s.begin() + (nev - 1), s.end());
            return s[size_t(nev - 1)];
        };
        for (int i = 0; i < ncand; ++i) {
            if (res[size_t(i)] > cfg.tol * scale) continue;
            if (theta[i] > nth_locked() + 10 * cfg.tol * scale) break; // theta ascending
            VectorXcd v = ritz[size_t(i)];
            double n = orthogonalize(v, locked, nullptr);
            if (n < 1e-8) continue; // already locked through an earlier copy
            locked.push_back(v / n);
            locked_val.push_back(theta[i]);
        }

        if (int(locked.size()) >= nev) {
            std::vector<double> sorted_locked = locked_val;
            std::sort(sorted_locked.begin(), sorted_locked.end());
            const double nth = sorted_locked[size_t(nev - 1)];
            bool nothing_below = true;
            for (int i = 0; i < ncand; ++i)
                if (res[size_t(i)] > cfg.tol * scale && theta[i] < nth + cfg.tol * scale)
                    nothing_below = false;
            quiet_confirms = nothing_below ? quiet_confirms + 1 : 0;
            if (quiet_confirms >= 2) {
                out.converged = true;
                out.restarts = restart + 1;
                break;
            }
        }

        // thick restart with the lowest unconverged Ritz vectors
        std::vector<VectorXcd> nq, nw;
        for (int i = 0; i < ncand && int(nq.size()) < keep_target; ++i) {
            if (res[size_t(i)] <= cfg.tol * scale) continue;
            VectorXcd v = ritz[size_t(i)];
            VectorXcd av = ritz_img[size_t(i)];
            orthogonalize(v, locked, nullptr);
            orthogonalize(av, locked, nullptr);
            for (const auto& b : nq)
                for (int pass = 0; pass < 2; ++pass) v -= b.dot(v) * b;
            double n = v.norm();
            if (n < 1e-8) continue;
            nq.push_back(v / n);
            nw.push_back(av / n);
        }
        const int kept = int(nq.size());
        if (have_cont) {
            orthogonalize(cont, locked, nullptr);
            double n = orthogonalize(cont, nq, nullptr);
            if (n > 1e-8) nq.push_back(cont / n); // image column comes next cycle
            have_cont = false;
        }
        MatrixXcd nh = MatrixXcd::Zero(max_basis, max_basis);
        for (int i = 0; i < kept; ++i) {
            nh(i, i) = std::real(nq[size_t(i)].dot(nw[size_t(i)]));
            for (int j = i + 1; j < kept; ++j) {
                cd c = 0.5 * (nq[size_t(i)].dot(nw[size_t(j)]) +
                              std::conj(nq[size_t(j)].dot(nw[size_t(i)])));
                nh(i, j) = c;
                nh(j, i) = std::conj(c);
            }
        }
        q = std::move(nq);
        w = std::move(nw);
        h = std::move(nh);
        out.restarts = restart + 1;
    }

    std::vector<size_t> order(locked.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return locked_val[i] < locked_val[j]; });
    const size_t take = std::min<size_t>(size_t(nev), order.size());
    for (size_t oi = 0; oi < take; ++oi) {
        size_t i = order[oi];
        out.values.push_back(locked_val[i]);
        out.vectors.emplace_back(locked[i].data(), locked[i].data() + dim);
        VectorXcd av(dim);
        a(locked[i].data(), av.data());
        out.residuals.push_back((av - locked_val[i] * locked[i]).norm());
    }
    if (out.values.size() < size_t(nev)) out.converged = false;
    return out;
}

Tridiag tridiagonalize(const ApplyFn& a, size_t dim_in, const std::vector<cd>& start,
                       int nsteps) {
    const Eigen::Index dim = Eigen::Index(dim_in);
    Tridiag t;
    Eigen::Map<const VectorXcd> b(start.data(), dim);
    t.start_norm = b.norm();
    if (t.start_norm < 1e-300 || nsteps <= 0) return t;

    std::vector<VectorXcd> q;
    q.reserve(size_t(nsteps));
    q.push_back(b / t.start_norm);
    double scale = 1.0;
    for (int k = 0; k < nsteps; ++k) {
        VectorXcd v(dim);
        a(q[size_t(k)].data(), v.data());
        double alpha = std::real(q[size_t(k)].dot(v));
        t.alpha.push_back(alpha);
        scale = std::max(scale, std::abs(alpha));
        double beta = orthogonalize(v, q, nullptr);
        if (k + 1 < nsteps) {
            if (beta < 1e-12 * scale) break; // invariant subspace reached
            t.beta.push_back(beta);
            scale = std::max(scale, beta);
            q.push_back(v / beta);
        }
    }
    return t;
}

std::vector<double> tridiag_eigenvalues(const Tridiag& t) {
    const Eigen::Index n = Eigen::Index(t.alpha.size());
    if (n == 0) return {};
    VectorXd diag = Eigen::Map<const VectorXd>(t.alpha.data(), n);
    VectorXd sub = VectorXd::Zero(std::max<Eigen::Index>(n - 1, 0));
    for (Eigen::Index i = 0; i + 1 < n; ++i) sub[i] = t.beta[size_t(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + n);
}

cd continued_fraction(const Tridiag& t, cd z) {
    if (t.alpha.empty()) return cd(0, 0);
    cd f(0, 0);
    for (size_t i = t.alpha.size(); i-- > 1;) {
        double b = t.beta[i - 1];
        f = b * b / (z - t.alpha[i] - f);
    }
    return 1.0 / (z - t.alpha[0] - f);
}

std::vector<cd> resolvent_apply(const ApplyFn& a, size_t dim_in, cd z, const std::vector<cd>& b,
                                const ResolventConfig& cfg) {
    const Eigen::Index dim = Eigen::Index(dim_in);
    Eigen::Map<const VectorXcd> bv(b.data(), dim);
    const double bnorm = bv.norm();
    if (bnorm == 0.0) return std::vector<cd>(size_t(dim), cd(0, 0));
    VectorXcd x = VectorXcd::Zero(dim);

    VectorXcd rhs = bv;
    double rnorm = bnorm;
    const int max_basis = std::max(2, int(std::min<Eigen::Index>(cfg.max_basis, dim)));

    double achieved = 1.0;
    for (int cycle = 0; cycle < cfg.max_cycles; ++cycle) {
        // fully reorthogonalized Lanczos chain seeded on the current residual
        std::vector<VectorXcd> q;
        q.reserve(size_t(max_basis));
        q.push_back(rhs / rnorm);
        std::vector<double> alpha, beta;
        for (int k = 0; k < max_basis; ++k) {
            VectorXcd v(dim);
            a(q[size_t(k)].data(), v.data());
            alpha.push_back(std::real(q[size_t(k)].dot(v)));
            double n = orthogonalize(v, q, nullptr);
            if (k + 1 >= max_basis || n < 1e-13 * (std::abs(alpha.back()) + 1.0)) break;
            beta.push_back(n);
            q.push_back(v / n);
        }
        const int m = int(alpha.size());

        // (z - T) y = |r| e0 on the small tridiagonal block
        MatrixXcd zt = MatrixXcd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            zt(i, i) = z - alpha[size_t(i)];
            if (i + 1 < m) {
                zt(i, i + 1) = -beta[size_t(i)];
                zt(i + 1, i) = -beta[size_t(i)];
            }
        }
        VectorXcd e0 = VectorXcd::Zero(m);
        e0[0] = rnorm;
        VectorXcd yv = zt.partialPivLu().solve(e0);
        for (int i = 0; i < m; ++i) x += yv[i] * q[size_t(i)];

        VectorXcd ax(dim);
        a(x.data(), ax.data());
        VectorXcd r = bv - (z * x - ax);
        rnorm = r.norm();
        achieved = rnorm / bnorm;
        if (achieved <= cfg.tol) return std::vector<cd>(x.data(), x.data() + dim);
        rhs = r;
    }
    throw std::runtime_error("resolvent did not reach tolerance, residual " +
                             std::to_string(achieved));
}

} // namespace hxx
