#include "isomon/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "isomon/errors.hpp"

namespace isomon {

PhaseSpace::PhaseSpace(const RationalLaxMatrix& shape) : shape_(shape) {
  const int r = shape.dim();
  for (std::size_t nu = 0; nu < shape.poles().size(); ++nu) {
    const int d = shape.poles()[nu].d;
    for (int j = 1; j <= d + 1; ++j) {
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) coords_.push_back(CoefficientIndex::finite_pole(static_cast<int>(nu), j, a, b));
      }
    }
  }
  const int dinf = shape.infinity().d;
  for (int j = 2; j <= dinf + 1; ++j) {
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        if (j == dinf + 1 && a != b) continue;
        coords_.push_back(CoefficientIndex::infinity_part(j, a, b));
      }
    }
  }
}

int PhaseSpace::index_of(const CoefficientIndex& i) const {
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k] == i) return static_cast<int>(k);
  }
  return -1;
}

Eigen::VectorXcd PhaseSpace::flatten(const RationalLaxMatrix& L) const {
  Eigen::VectorXcd x(size());
  for (int k = 0; k < size(); ++k) {
    const auto& i = coords_[static_cast<std::size_t>(k)];
    const Mat& m = i.infinity ? L.infinity().coeffs[static_cast<std::size_t>(i.j - 2)]
                              : L.poles()[static_cast<std::size_t>(i.pole)].coeffs[static_cast<std::size_t>(i.j - 1)];
    x(k) = m(i.a, i.b);
  }
  return x;
}

RationalLaxMatrix PhaseSpace::unflatten(const Eigen::VectorXcd& x) const {
  std::vector<cplx> c;
  for (const auto& p : shape_.poles()) c.push_back(p.c);
  return unflatten(x, c);
}

RationalLaxMatrix PhaseSpace::unflatten(const Eigen::VectorXcd& x, const std::vector<cplx>& c) const {
  const int r = shape_.dim();
  std::vector<PoleRecord> poles = shape_.poles();
  for (std::size_t nu = 0; nu < poles.size(); ++nu) {
    poles[nu].c = c.at(nu);
    for (auto& m : poles[nu].coeffs) m.setZero();
  }
  InfinityRecord inf = shape_.infinity();
  for (auto& m : inf.coeffs) m = Mat::Zero(r, r);
  for (int k = 0; k < size(); ++k) {
    const auto& i = coords_[static_cast<std::size_t>(k)];
    Mat& m = i.infinity ? inf.coeffs[static_cast<std::size_t>(i.j - 2)]
                        : poles[static_cast<std::size_t>(i.pole)].coeffs[static_cast<std::size_t>(i.j - 1)];
    m(i.a, i.b) = x(k);
  }
  return RationalLaxMatrix(r, std::move(poles), std::move(inf));
}

Eigen::VectorXcd PhaseSpace::coords_of(const RationalMatrix& F, double* outside) const {
  const int r = shape_.dim();
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(size());
  double out = 0.0;
  std::vector<bool> matched(F.parts().size(), false);
  for (std::size_t nu = 0; nu < shape_.poles().size(); ++nu) {
    const auto& pole = shape_.poles()[nu];
    for (std::size_t q = 0; q < F.parts().size(); ++q) {
      const auto& part = F.parts()[q];
      if (std::abs(part.at - pole.c) > kPointMergeTol * std::max(1.0, std::abs(pole.c))) continue;
      matched[q] = true;
      for (std::size_t k = 1; k <= part.coeffs.size(); ++k) {
        const Mat& m = part.coeffs[k - 1];
        if (static_cast<int>(k) > pole.d + 1) {
          out = std::max(out, m.cwiseAbs().maxCoeff());
          continue;
        }
        for (int a = 0; a < r; ++a) {
          for (int b = 0; b < r; ++b) {
            x(index_of(CoefficientIndex::finite_pole(static_cast<int>(nu), static_cast<int>(k), a, b))) = m(a, b);
          }
        }
      }
    }
  }
  for (std::size_t q = 0; q < F.parts().size(); ++q) {
    if (matched[q]) continue;
    for (const auto& m : F.parts()[q].coeffs) out = std::max(out, m.cwiseAbs().maxCoeff());
  }
  const int dinf = shape_.infinity().d;
  for (int m = 0; m <= F.degree(); ++m) {
    const Mat& c = F.poly()[static_cast<std::size_t>(m)];
    if (m >= dinf) {
      out = std::max(out, c.cwiseAbs().maxCoeff());
      continue;
    }
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        const int idx = index_of(CoefficientIndex::infinity_part(m + 2, a, b));
        if (idx < 0) {
          out = std::max(out, std::abs(c(a, b)));
        } else {
          x(idx) = -c(a, b);
        }
      }
    }
  }
  if (outside) *outside = out;
  return x;
}

// ---------------------------------------------------------------------------

PoissonStructure::PoissonStructure(const RationalLaxMatrix& shape) : space_(shape) {
  const int n = space_.size();
  const auto& coords = space_.coords();
  const int dinf = shape.infinity().d;
  constants_.assign(static_cast<std::size_t>(n), std::vector<std::vector<Term>>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const auto& I = coords[static_cast<std::size_t>(i)];
      const auto& K = coords[static_cast<std::size_t>(k)];
      if (I.infinity != K.infinity || I.pole != K.pole) continue;
      const int s = I.j + K.j - 1;
      // Same pole:    {(A_p)_ab, (A_q)_cd} = -(A_s)_ad d_cb + (A_s)_cb d_ad, s = p+q-1 <= d+1.
      // Infinity:     {(L_p)_ab, (L_q)_cd} = -(L_s)_ad d_cb + (L_s)_cb d_ad, s <= d_inf+1.
      const int top = I.infinity ? dinf + 1 : shape.poles()[static_cast<std::size_t>(I.pole)].d + 1;
      if (s > top) continue;
      auto& terms = constants_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      const auto entry = [&](int a, int b) {
        return I.infinity ? space_.index_of(CoefficientIndex::infinity_part(s, a, b))
                          : space_.index_of(CoefficientIndex::finite_pole(I.pole, s, a, b));
      };
      if (K.a == I.b) {
        const int m = entry(I.a, K.b);
        if (m >= 0) terms.push_back({m, -1.0});
      }
      if (I.a == K.b) {
        const int m = entry(K.a, I.b);
        if (m >= 0) terms.push_back({m, 1.0});
      }
    }
  }
}

cplx PoissonStructure::bracket(const Eigen::VectorXcd& x, int i, int k) const {
  cplx acc = 0.0;
  for (const auto& t : constants_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) acc += t.coeff * x(t.m);
  return acc;
}

Mat PoissonStructure::matrix(const Eigen::VectorXcd& x) const {
  const int n = space_.size();
  Mat pi = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) pi(i, k) = bracket(x, i, k);
  }
  return pi;
}

cplx bracket_generating(const RationalLaxMatrix& L, int a, int b, cplx z, int c, int d, cplx w) {
  if (std::abs(z - w) <= 1e-10) throw CoincidentPointError("bracket_generating: z and w coincide");
  const Mat Lz = L.eval_at(z);
  const Mat Lw = L.eval_at(w);
  cplx acc = 0.0;
  if (c == b) acc += Lz(a, d) - Lw(a, d);
  if (a == d) acc -= Lz(c, b) - Lw(c, b);
  return acc / (z - w);
}

cplx bracket_coefficients(const RationalLaxMatrix& L, const CoefficientIndex& i, const CoefficientIndex& k) {
  const PoissonStructure ps(L);
  const int ii = ps.space().index_of(i);
  const int kk = ps.space().index_of(k);
  if (ii < 0 || kk < 0) return 0.0;
  return ps.bracket(ps.space().flatten(L), ii, kk);
}

Mat observable_jacobian(const RationalLaxMatrix& L,
                        const std::function<Eigen::VectorXcd(const RationalLaxMatrix&)>& f) {
  const PhaseSpace space(L);
  const Eigen::VectorXcd x = space.flatten(L);
  Mat J;
  for (int i = 0; i < x.size(); ++i) {
    const double h = 1e-3 * std::max(1.0, std::abs(x(i)));
    const auto at = [&](double s) {
      Eigen::VectorXcd y = x;
      y(i) += s * h;
      return f(space.unflatten(y));
    };
    const Eigen::VectorXcd col = (-at(2.0) + 8.0 * at(1.0) - 8.0 * at(-1.0) + at(-2.0)) / (12.0 * h);
    if (i == 0) J.resize(col.size(), x.size());
    if (!col.allFinite()) throw GradientError("gradient is not finite in coordinate " + std::to_string(i));
    J.col(i) = col;
  }
  return J;
}

Eigen::VectorXcd observable_gradient(const RationalLaxMatrix& L, const ScalarObservable& f) {
  if (f.gradient) return f.gradient(L);
  try {
    const Mat J = observable_jacobian(L, [&](const RationalLaxMatrix& M) {
      Eigen::VectorXcd v(1);
      v(0) = f.value(M);
      return v;
    });
    return J.row(0).transpose();
  } catch (const GradientError& e) {
    throw GradientError(f.name + ": " + e.what());
  }
}

cplx bracket_functions(const PoissonStructure& ps, const RationalLaxMatrix& L, const Eigen::VectorXcd& grad_f,
                       const Eigen::VectorXcd& grad_g) {
  const Mat pi = ps.matrix(ps.space().flatten(L));
  return (grad_f.transpose() * pi * grad_g)(0, 0);
}

cplx bracket_functions(const RationalLaxMatrix& L, const ScalarObservable& f, const ScalarObservable& g) {
  const PoissonStructure ps(L);
  return bracket_functions(ps, L, observable_gradient(L, f), observable_gradient(L, g));
}

Eigen::VectorXcd hamiltonian_vector_field(const RationalLaxMatrix& L, const ScalarObservable& H) {
  const PoissonStructure ps(L);
  return ps.matrix(ps.space().flatten(L)) * observable_gradient(L, H);
}

namespace {

double binom(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

RationalLaxMatrix random_direction(const RationalLaxMatrix& L, std::mt19937& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const PhaseSpace space(L);
  Eigen::VectorXcd x(space.size());
  for (int i = 0; i < x.size(); ++i) x(i) = cplx(nd(rng), nd(rng));
  return space.unflatten(x);
}

}  // namespace

LoopElement gradient_loop(const RationalLaxMatrix& L, const ScalarObservable& f, int checks, unsigned seed) {
  const int r = L.dim();
  const PhaseSpace space(L);
  const Eigen::VectorXcd g = observable_gradient(L, f);
  const auto grad_of = [&](const CoefficientIndex& i) {
    const int k = space.index_of(i);
    return k < 0 ? cplx(0.0) : g(k);
  };

  LoopElement dF(r);
  // dF_+: Hermite interpolation of the transposed pole gradients.
  int n = 0;
  for (const auto& p : L.poles()) n += p.d + 1;
  if (n > 0) {
    Mat V = Mat::Zero(n, n);
    Mat rhs = Mat::Zero(n, r * r);
    int row = 0;
    for (std::size_t nu = 0; nu < L.poles().size(); ++nu) {
      const auto& p = L.poles()[nu];
      for (int k = 1; k <= p.d + 1; ++k, ++row) {
        const int m = k - 1;  // Taylor order paired with (z-c)^-k
        for (int i = m; i < n; ++i) V(row, i) = binom(i, m) * std::pow(p.c, i - m);
        for (int a = 0; a < r; ++a) {
          for (int b = 0; b < r; ++b) {
            rhs(row, a * r + b) = grad_of(CoefficientIndex::finite_pole(static_cast<int>(nu), k, b, a));
          }
        }
      }
    }
    const Mat coef = V.fullPivLu().solve(rhs);
    for (int i = 0; i < n; ++i) {
      Mat c(r, r);
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) c(a, b) = coef(i, a * r + b);
      }
      dF.add_poly(i, c);
    }
  }
  // dF_-: G_j z^(-j-1), G_j = (df/dP_j)^T with P_j = -L^inf_{j+2}.
  const int dinf = L.infinity().d;
  if (dinf > 0) {
    std::vector<Mat> parts(static_cast<std::size_t>(dinf), Mat::Zero(r, r));
    for (int j = 0; j < dinf; ++j) {
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) {
          parts[static_cast<std::size_t>(j)](a, b) = -grad_of(CoefficientIndex::infinity_part(j + 2, b, a));
        }
      }
    }
    dF.add_part(0.0, parts);
  }

  std::mt19937 rng(seed);
  for (int c = 0; c < checks; ++c) {
    const RationalLaxMatrix dL = random_direction(L, rng);
    const cplx paired = trace_residue_pairing(dF, dL.as_rational());
    const Eigen::VectorXcd x = space.flatten(L);
    const Eigen::VectorXcd dx = space.flatten(dL);
    const double h = 1e-3;
    const auto at = [&](double s) { return f.value(space.unflatten(x + s * h * dx)); };
    const cplx directional = (-at(2.0) + 8.0 * at(1.0) - 8.0 * at(-1.0) + at(-2.0)) / (12.0 * h);
    const double scale = std::max({1.0, std::abs(directional), std::abs(paired)});
    if (std::abs(paired - directional) > 1e-8 * scale) {
      throw GradientError("gradient_loop: pairing check failed for " + f.name + " (|diff| = " +
                          std::to_string(std::abs(paired - directional)) + ")");
    }
  }
  return dF;
}

int poisson_rank(const RationalLaxMatrix& L, double rel_tol) {
  const PoissonStructure ps(L);
  const Mat pi = ps.matrix(ps.space().flatten(L));
  if (pi.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(pi);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++rank;
  }
  return rank;
}

ScalarObservable coordinate_observable(const PhaseSpace& space, int i) {
  ScalarObservable f;
  f.name = "x" + std::to_string(i);
  const int n = space.size();
  const PhaseSpace sp = space;
  f.value = [sp, i](const RationalLaxMatrix& L) { return sp.flatten(L)(i); };
  f.gradient = [n, i](const RationalLaxMatrix&) {
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
    g(i) = 1.0;
    return g;
  };
  return f;
}

}  // namespace isomon
