#include "hxx/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace hxx {

namespace {

// factorials up to 34! fit long double comfortably for l <= 3 work
long double fact(int n) {
    static const auto table = [] {
        std::array<long double, 35> t{};
        t[0] = 1.0L;
        for (int i = 1; i < 35; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n >= int(table.size())) throw std::out_of_range("factorial argument");
    return table[size_t(n)];
}

} // namespace

double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
    if (m1 + m2 + m3 != 0) return 0.0;
    if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;

    // Racah's closed form
    long double pre = fact(j1 + j2 - j3) * fact(j1 - j2 + j3) * fact(-j1 + j2 + j3) /
                      fact(j1 + j2 + j3 + 1);
    pre *= fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) * fact(j2 - m2) *
           fact(j3 + m3) * fact(j3 - m3);
    long double root = sqrtl(pre);

    int tmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    int tmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    long double sum = 0.0L;
    for (int t = tmin; t <= tmax; ++t) {
        long double den = fact(t) * fact(j3 - j2 + m1 + t) * fact(j3 - j1 - m2 + t) *
                          fact(j1 + j2 - j3 - t) * fact(j1 - m1 - t) * fact(j2 + m2 - t);
        sum += ((t % 2) ? -1.0L : 1.0L) / den;
    }
    long double phase = ((j1 - j2 - m3) % 2) ? -1.0L : 1.0L;
    return double(phase * root * sum);
}

double gaunt_ck(int k, int l1, int m1, int l2, int m2) {
    double v = wigner3j(l1, k, l2, 0, 0, 0) *
               wigner3j(l1, k, l2, -m1, m1 - m2, m2);
    double phase = (m1 % 2) ? -1.0 : 1.0;
    return phase * std::sqrt(double((2 * l1 + 1) * (2 * l2 + 1))) * v;
}

double wigner_small_d(int l, int mp, int m, double beta) {
    double c = std::cos(beta / 2), s = std::sin(beta / 2);
    long double root = sqrtl(fact(l + m) * fact(l - m) * fact(l + mp) * fact(l - mp));
    int kmin = std::max(0, m - mp);
    int kmax = std::min(l + m, l - mp);
    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        long double den = fact(l + m - k) * fact(k) * fact(mp - m + k) * fact(l - mp - k);
        long double term = powl(c, 2 * l + m - mp - 2 * k) * powl(s, mp - m + 2 * k) / den;
        sum += (((mp - m + k) % 2) ? -1.0L : 1.0L) * term;
    }
    return double(root * sum);
}

Eigen::MatrixXcd wigner_D(int l, double alpha, double beta, double gamma) {
    int n = 2 * l + 1;
    Eigen::MatrixXcd D(n, n);
    const std::complex<double> I(0, 1);
    for (int mp = -l; mp <= l; ++mp)
        for (int m = -l; m <= l; ++m)
            D(mp + l, m + l) = std::exp(-I * double(mp) * alpha) *
                               wigner_small_d(l, mp, m, beta) *
                               std::exp(-I * double(m) * gamma);
    return D;
}

Eigen::MatrixXcd real_to_complex(int l) {
    int n = 2 * l + 1;
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(n, n);
    const std::complex<double> I(0, 1);
    const double rh = 1.0 / std::sqrt(2.0);
    U(l, l) = 1.0; // r = 0 is Y_l0
    for (int m = 1; m <= l; ++m) {
        double cs = (m % 2) ? -1.0 : 1.0;
        U(l + m, l - m) = rh;        // cosine row, Y_{l,-m} part
        U(l + m, l + m) = cs * rh;   // cosine row, Y_{l,+m} part
        U(l - m, l - m) = I * rh;    // sine row
        U(l - m, l + m) = -cs * I * rh;
    }
    return U;
}

Eigen::MatrixXd real_rotation(int l, double alpha, double beta) {
    Eigen::MatrixXcd U = real_to_complex(l);
    Eigen::MatrixXcd W = U.conjugate() * wigner_D(l, alpha, beta, 0.0) * U.transpose();
    double imax = W.imag().cwiseAbs().maxCoeff();
    if (imax > 1e-12)
        throw std::runtime_error("real harmonic rotation came out complex");
    return W.real();
}

} // namespace hxx
