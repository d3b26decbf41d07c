#pragma once

#include <Eigen/Dense>
#include <complex>

namespace hxx {

// Wigner 3j symbol for integer angular momenta
double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3);

// Condon-Shortley c^k(l1 m1, l2 m2) = <l1 m1|C^k_{m1-m2}|l2 m2>
double gaunt_ck(int k, int l1, int m1, int l2, int m2);

// Wigner small d, z-y-z convention, active rotation
double wigner_small_d(int l, int mp, int m, double beta);

// D^l_{m'm}(alpha,beta,gamma) with rows/cols indexed m+l
Eigen::MatrixXcd wigner_D(int l, double alpha, double beta, double gamma);

// U(r,m): real harmonic r (index r+l, sine combos below zero, z type at r=0,
// cosine combos above) as a combination of complex harmonics m
Eigen::MatrixXcd real_to_complex(int l);

// rotation of real harmonics, Euler angles (alpha, beta, 0): the rotated
// orbital a expands as sum_b W(b,a) * global orbital b. W is real orthogonal.
Eigen::MatrixXd real_rotation(int l, double alpha, double beta);

// real orbital slots in the r = -l..l order used throughout
inline constexpr int P_Y = 0, P_Z = 1, P_X = 2;
inline constexpr int D_XY = 0, D_YZ = 1, D_Z2 = 2, D_XZ = 3, D_X2Y2 = 4;
inline constexpr int F_Z3 = 3, F_XZ2 = 4, F_YZ2 = 2, F_ZX2Y2 = 5, F_XYZ = 1;

} // namespace hxx
