#pragma once

// Rational R-matrix bracket on Lax matrices: generating relation, induced
// structure constants on coefficient entries, brackets of scalar functions.

#include <functional>
#include <string>
#include <vector>

#include "isomon/lax.hpp"
#include "isomon/rational.hpp"

namespace isomon {

/// Entry (a, b) of L^nu_j (finite pole, j = 1..d+1) or of L^inf_j (j = 2..d_inf+1).
struct CoefficientIndex {
  bool infinity = false;
  int pole = 0;
  int j = 1;
  int a = 0;
  int b = 0;

  static CoefficientIndex finite_pole(int nu, int j, int a, int b) { return {false, nu, j, a, b}; }
  static CoefficientIndex infinity_part(int j, int a, int b) { return {true, -1, j, a, b}; }
  bool operator==(const CoefficientIndex& o) const {
    return infinity == o.infinity && pole == o.pole && j == o.j && a == o.a && b == o.b;
  }
};

/// Coordinates on the phase space of one Lax shape: all entries of every
/// pole coefficient and of L^inf_2 .. L^inf_{d_inf}, plus the diagonal of
/// L^inf_{d_inf+1}. Pole locations are parameters, not coordinates.
class PhaseSpace {
 public:
  explicit PhaseSpace(const RationalLaxMatrix& shape);

  int size() const { return static_cast<int>(coords_.size()); }
  const std::vector<CoefficientIndex>& coords() const { return coords_; }
  /// -1 when the entry is not a coordinate.
  int index_of(const CoefficientIndex& i) const;

  Eigen::VectorXcd flatten(const RationalLaxMatrix& L) const;
  /// Rebuilds a Lax matrix with the template's pole locations.
  RationalLaxMatrix unflatten(const Eigen::VectorXcd& x) const;
  /// Same, with explicit pole locations.
  RationalLaxMatrix unflatten(const Eigen::VectorXcd& x, const std::vector<cplx>& c) const;

  /// Coordinate components of a rational matrix with the shape of L (same
  /// pole set, polynomial part mapped to L^inf through the minus sign).
  /// Whatever falls outside the shape is accumulated into `outside`.
  Eigen::VectorXcd coords_of(const RationalMatrix& F, double* outside = nullptr) const;

  const RationalLaxMatrix& shape() const { return shape_; }

 private:
  RationalLaxMatrix shape_;
  std::vector<CoefficientIndex> coords_;
};

/// Sparse structure constants: {x_i, x_k} = sum_m C[i][k] x_m, built once per shape.
class PoissonStructure {
 public:
  explicit PoissonStructure(const RationalLaxMatrix& shape);

  const PhaseSpace& space() const { return space_; }
  /// Bracket of two coordinate entries at the point L.
  cplx bracket(const Eigen::VectorXcd& x, int i, int k) const;
  /// Full Poisson matrix Pi_{ik} = {x_i, x_k} at x.
  Mat matrix(const Eigen::VectorXcd& x) const;

 private:
  struct Term {
    int m;
    double coeff;
  };
  PhaseSpace space_;
  std::vector<std::vector<std::vector<Term>>> constants_;
};

/// The generating relation (1/(z-w)) ((L_ad(z) - L_ad(w)) delta_cb - (L_cb(z) - L_cb(w)) delta_ad).
/// Indices are 0-based. Throws CoincidentPointError when |z - w| <= 1e-10.
cplx bracket_generating(const RationalLaxMatrix& L, int a, int b, cplx z, int c, int d, cplx w);

/// {entry(i), entry(k)} from the structure constants; 0 for non-coordinate entries.
cplx bracket_coefficients(const RationalLaxMatrix& L, const CoefficientIndex& i, const CoefficientIndex& k);

struct ScalarObservable {
  std::string name;
  std::function<cplx(const RationalLaxMatrix&)> value;
  /// Optional analytic gradient over PhaseSpace coordinates.
  std::function<Eigen::VectorXcd(const RationalLaxMatrix&)> gradient;
};

/// Holomorphic gradient over PhaseSpace coordinates: the analytic handle when
/// present, otherwise fourth-order central differences with step
/// 1e-3 * max(1, |x_i|). Throws GradientError on non-finite values.
Eigen::VectorXcd observable_gradient(const RationalLaxMatrix& L, const ScalarObservable& f);
/// Same stencil for a vector of observables; row k is the gradient of f_k.
Mat observable_jacobian(const RationalLaxMatrix& L,
                        const std::function<Eigen::VectorXcd(const RationalLaxMatrix&)>& f);

cplx bracket_functions(const RationalLaxMatrix& L, const ScalarObservable& f, const ScalarObservable& g);
cplx bracket_functions(const PoissonStructure& ps, const RationalLaxMatrix& L, const Eigen::VectorXcd& grad_f,
                       const Eigen::VectorXcd& grad_g);

/// Coordinate components of the Hamiltonian vector field {x_i, H}.
Eigen::VectorXcd hamiltonian_vector_field(const RationalLaxMatrix& L, const ScalarObservable& H);

/// Differential of f as a loop element under the pairing -res_inf tr(X Y) dz:
/// dF_+ is the polynomial whose Taylor coefficients at c_nu pair with the
/// pole coefficients, dF_- = sum_j G_j z^(-j-1) pairs with the polynomial part.
/// Verified against `checks` random perturbations; throws GradientError on mismatch.
LoopElement gradient_loop(const RationalLaxMatrix& L, const ScalarObservable& f, int checks = 10,
                          unsigned seed = 7);

/// Numerical rank of the Poisson matrix at L.
int poisson_rank(const RationalLaxMatrix& L, double rel_tol = 1e-9);

/// Linear observable x_i.
ScalarObservable coordinate_observable(const PhaseSpace& space, int i);

}  // namespace isomon
