#include "isomon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isomon/errors.hpp"

namespace isomon {

namespace {

/// Shift that makes zeta^s L regular at zeta = 0.
int normalizing_shift(const RationalLaxMatrix& L, ChartId chart) {
  const int d = L.rank(chart);
  return chart.infinity ? d - 1 : d + 1;
}

/// Coefficients c_0..c_r of det(mu I - M), c_r = 1, by Faddeev-LeVerrier.
std::vector<LaurentSeries> faddeev_leverrier(const MatrixSeries& M) {
  const int r = M.dim();
  const int order = M.order();
  std::vector<LaurentSeries> c(static_cast<std::size_t>(r + 1));
  c[static_cast<std::size_t>(r)] = LaurentSeries::constant(1.0, order);
  MatrixSeries B = MatrixSeries::identity(r, order);
  for (int k = 1; k <= r; ++k) {
    MatrixSeries A = M * B;
    LaurentSeries ck = A.trace() * cplx{-1.0 / k};
    c[static_cast<std::size_t>(r - k)] = ck;
    B = A + ck * MatrixSeries::identity(r, order);
  }
  return c;
}

LaurentSeries horner(const std::vector<LaurentSeries>& c, const LaurentSeries& mu) {
  LaurentSeries p = c.back();
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) p = p * mu + c[static_cast<std::size_t>(k)];
  return p;
}

LaurentSeries horner_derivative(const std::vector<LaurentSeries>& c, const LaurentSeries& mu) {
  const int r = static_cast<int>(c.size()) - 1;
  LaurentSeries q = c.back() * cplx(static_cast<double>(r));
  for (int k = r - 1; k >= 1; --k) q = q * mu + c[static_cast<std::size_t>(k)] * cplx(static_cast<double>(k));
  return q;
}

MatrixSeries normalized_lax(const RationalLaxMatrix& L, ChartId chart, int depth) {
  const int s = normalizing_shift(L, chart);
  return L.local_expansion(chart, depth).shifted(s);
}

double series_scale(const std::vector<LaurentSeries>& c) {
  double m = 0.0;
  for (const auto& s : c) m = std::max(m, s.max_abs());
  return std::max(m, 1.0);
}

}  // namespace

CharPoly char_poly_local(const RationalLaxMatrix& L, ChartId chart, int depth) {
  const int r = L.dim();
  const int s = normalizing_shift(L, chart);
  const auto c = faddeev_leverrier(normalized_lax(L, chart, depth));
  CharPoly out{chart, {}};
  const cplx sign = (r % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k <= r; ++k) {
    out.coeffs.push_back((c[static_cast<std::size_t>(k)] * sign).shifted(s * (k - r)));
  }
  return out;
}

int default_spectral_depth(int d) { return 2 * d + 4; }

std::vector<EigenExpansion> eigen_expansions(const RationalLaxMatrix& L, ChartId chart, int depth) {
  const int d = L.rank(chart);
  if (depth <= 0) depth = default_spectral_depth(d);
  const int r = L.dim();
  const int s = normalizing_shift(L, chart);
  const MatrixSeries M = normalized_lax(L, chart, depth);
  const auto c = faddeev_leverrier(M);
  const double scale = series_scale(c);

  Eigen::VectorXcd seeds;
  if (chart.infinity) {
    seeds = M.coeff(0).diagonal();
  } else {
    seeds = leading_eigensystem(M.coeff(0), false).values;
  }

  std::vector<EigenExpansion> out;
  for (int a = 0; a < r; ++a) {
    LaurentSeries mu = LaurentSeries::constant(seeds(a), depth);
    double residual = horner(c, mu).max_abs();
    const int max_iter = 8 + static_cast<int>(std::ceil(std::log2(std::max(depth, 2))));
    for (int it = 0; it < max_iter && residual > 1e-15 * scale; ++it) {
      const LaurentSeries dp = horner_derivative(c, mu);
      if (std::abs(dp.coeff(0)) <= kZeroThreshold * scale) {
        throw ResonanceError("eigenvalue expansion at chart " + chart.label() + ": branch " +
                             std::to_string(a + 1) + " collides with another branch at leading order");
      }
      const LaurentSeries next = mu - horner(c, mu) * inverse(dp);
      const double next_residual = horner(c, next).max_abs();
      mu = next;
      if (next_residual >= residual && it > 2) {
        residual = next_residual;
        break;
      }
      residual = next_residual;
    }
    if (residual > 1e-8 * scale) {
      throw ResonanceError("eigenvalue expansion at chart " + chart.label() + ", branch " + std::to_string(a + 1) +
                           ": Newton iteration did not converge (residual " + std::to_string(residual) + ")");
    }
    out.push_back({chart, a, mu.shifted(-s)});
  }
  return out;
}

double root_residual(const RationalLaxMatrix& L, ChartId chart, const std::vector<EigenExpansion>& branches) {
  if (branches.empty()) return 0.0;
  const int s = normalizing_shift(L, chart);
  const int depth = branches.front().series.size();
  const auto c = faddeev_leverrier(normalized_lax(L, chart, depth));
  const double scale = series_scale(c);
  double worst = 0.0;
  for (const auto& b : branches) worst = std::max(worst, horner(c, b.series.shifted(s)).max_abs());
  return worst / scale;
}

std::vector<cplx> casimirs_from_branch(ChartId chart, int d, const LaurentSeries& lambda) {
  std::vector<cplx> t(static_cast<std::size_t>(d + 1));
  if (chart.infinity) {
    t[0] = lambda.coeff(1);
    for (int j = 1; j <= d; ++j) t[static_cast<std::size_t>(j)] = lambda.coeff(1 - j);
  } else {
    t[0] = lambda.coeff(-1);
    for (int j = 1; j <= d; ++j) t[static_cast<std::size_t>(j)] = -lambda.coeff(-j - 1);
  }
  return t;
}

std::vector<cplx> hamiltonians_from_branch(ChartId chart, int d, const LaurentSeries& lambda) {
  std::vector<cplx> h(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j) {
    h[static_cast<std::size_t>(j - 1)] =
        chart.infinity ? lambda.coeff(j + 1) / static_cast<double>(j) : -lambda.coeff(j - 1) / static_cast<double>(j);
  }
  return h;
}

cplx hamiltonian_c(const RationalLaxMatrix& L, int nu) {
  const int d = L.poles().at(static_cast<std::size_t>(nu)).d;
  const MatrixSeries l = L.local_expansion(ChartId::finite(nu), 2 * d + 2);
  return 0.5 * (l * l).trace().coeff(-1);
}

cplx hamiltonian_c_from_branches(const std::vector<EigenExpansion>& branches) {
  cplx acc = 0.0;
  for (const auto& b : branches) acc += (b.series * b.series).coeff(-1);
  return 0.5 * acc;
}

cplx trace_square_coeff_at_infinity(const RationalLaxMatrix& L, int k) {
  const int d = L.infinity().d;
  const int order = std::max(d - k + 1, 2 - d);
  const MatrixSeries l = L.as_rational().expand_at_infinity(order);
  return (l * l).trace().coeff(-k);
}

namespace {

InvariantTable extract(const RationalLaxMatrix& L, int depth, bool casimirs, bool hamiltonians) {
  require_valid(L);
  InvariantTable tab;
  for (const auto& p : L.poles()) tab.c.push_back(p.c);
  for (ChartId chart : L.charts()) {
    const int d = L.rank(chart);
    const int nu = chart.infinity ? kInf : chart.index;
    const auto branches = eigen_expansions(L, chart, depth);
    for (const auto& b : branches) {
      if (casimirs) {
        const auto t = casimirs_from_branch(chart, d, b.series);
        for (int j = 0; j <= d; ++j) tab.t[{nu, j, b.label}] = t[static_cast<std::size_t>(j)];
      }
      if (hamiltonians) {
        const auto h = hamiltonians_from_branch(chart, d, b.series);
        for (int j = 1; j <= d; ++j) tab.H_t[{nu, j, b.label}] = h[static_cast<std::size_t>(j - 1)];
      }
    }
  }
  if (hamiltonians) {
    for (std::size_t nu = 0; nu < L.poles().size(); ++nu) tab.H_c.push_back(hamiltonian_c(L, static_cast<int>(nu)));
  }
  return tab;
}

}  // namespace

InvariantTable extract_casimirs(const RationalLaxMatrix& L, int depth) { return extract(L, depth, true, false); }
InvariantTable extract_hamiltonians(const RationalLaxMatrix& L, int depth) { return extract(L, depth, false, true); }
InvariantTable extract_invariants(const RationalLaxMatrix& L, int depth) { return extract(L, depth, true, true); }

}  // namespace isomon
