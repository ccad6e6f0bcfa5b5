#ifndef RWLAB_SPECIAL_HPP
#define RWLAB_SPECIAL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace rwlab::special {

struct GaussLegendre {
  std::vector<double> nodes;   // ascending, in (-1, 1)
  std::vector<double> weights; // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on the three-term
/// recurrence, exact for polynomials of degree 2n-1).
GaussLegendre gauss_legendre(int n);

/// Legendre polynomial P_l(x).
double legendre_p(int l, double x);

/// P_0(x) .. P_lmax(x) written into out[0..lmax].
void legendre_p_all(int lmax, double x, std::span<double> out);

/// Fully normalised associated Legendre functions
///   Pbar_l^m(cos t) = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(cos t),
/// without the Condon-Shortley phase, for 0 <= m <= l <= lmax. The table is
/// packed row by row: index(l, m) = l (l + 1) / 2 + m.
class NormalizedLegendreTable {
public:
  explicit NormalizedLegendreTable(int lmax);

  void compute(double cos_theta, double sin_theta);
  double operator()(int l, int m) const { return values_[index(l, m)]; }
  int lmax() const { return lmax_; }

  static std::size_t index(int l, int m) {
    return static_cast<std::size_t>(l) * (l + 1) / 2 + static_cast<std::size_t>(m);
  }

private:
  int lmax_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> values_;
};

/// Fourier transform of the indicator of a flat disk of radius r at wave
/// number q: 2 pi r J1(q r) / q, with the limit pi r^2 at q = 0.
double disk_transform(double q, double r);

} // namespace rwlab::special

#endif
