#include "pulseswitch/expm.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace pulseswitch {

namespace {

double norm1(const ComplexMatrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Largest 1-norm for which the degree-m approximant reaches unit roundoff.
constexpr std::array<double, 4> kTheta{1.495585217958292e-2, 2.539398330063230e-1,
                                       9.504178996162932e-1, 2.097847961257068e0};
constexpr double kTheta13 = 5.371920351148152;

ComplexMatrix pade_solve(const ComplexMatrix& u, const ComplexMatrix& v) {
  // r = (V - U)^{-1} (V + U)
  return (v - u).partialPivLu().solve(v + u);
}

ComplexMatrix pade_low(const ComplexMatrix& a, int m) {
  static const double c3[] = {120., 60., 12., 1.};
  static const double c5[] = {30240., 15120., 3360., 420., 30., 1.};
  static const double c7[] = {17297280., 8648640., 1995840., 277200.,
                              25200.,    1512.,    56.,      1.};
  static const double c9[] = {17643225600., 8821612800., 2075673600., 302702400.,
                              30270240.,    2162160.,    110880.,     3960.,
                              90.,          1.};
  const double* c = m == 3 ? c3 : m == 5 ? c5 : m == 7 ? c7 : c9;

  const auto n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = id;
  ComplexMatrix u_even = ComplexMatrix::Zero(n, n);
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int k = 0; k <= m; k += 2) {
    u_even += c[k + 1] * power;
    v += c[k] * power;
    power = power * a2;
  }
  return pade_solve(a * u_even, v);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                             1187353796428800.,  129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,       1323241920.,
                             40840800.,          960960.,            16380.,
                             182.,               1.};
  const auto n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * id);
  const ComplexMatrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
      b[0] * id;
  return pade_solve(u, v);
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (!a.allFinite()) throw std::invalid_argument("expm: non-finite input");
  if (a.size() == 0) return a;

  const double norm = norm1(a);
  constexpr std::array<int, 4> degrees{3, 5, 7, 9};
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (norm <= kTheta[i]) return pade_low(a, degrees[i]);

  int squarings = 0;
  if (norm > kTheta13)
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
  ComplexMatrix r = pade13(a / std::ldexp(1.0, squarings));
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

}  // namespace pulseswitch
