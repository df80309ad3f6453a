#pragma once

#include <complex>
#include <vector>

#include "ddclab/polynomial.hpp"

namespace ddc {

/// A root located to high precision together with a Weierstrass inclusion
/// radius: the disk |z - center| <= radius contains a root of the polynomial.
struct RootEnclosure {
  std::complex<double> center;
  double modulus = 0.0;  // |center| evaluated before rounding to double
  double radius = 0.0;
};

/// All complex roots of a squarefree polynomial with rational coefficients.
std::vector<RootEnclosure> isolate_roots(const QPoly& squarefree);

/// Roots of the characteristic polynomial with algebraic multiplicities.
struct Eigenvalue {
  RootEnclosure root;
  std::size_t multiplicity = 0;
};
std::vector<Eigenvalue> exact_eigenvalues(const QMatrix& m);

}  // namespace ddc
