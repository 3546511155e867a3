// Copyright 2026 The xld Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xld/numcore/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xld/error.hpp"
#include "xld/numcore/parallel.hpp"
#include "xld/numcore/rng.hpp"

namespace xld::numcore {
namespace {

// Eigenvalues below this fraction of the largest are treated as zero.
constexpr double kRankTolerance = 1e-9;

// Problems wider than this use block subspace iteration instead of a dense
// decomposition of the covariance.
constexpr std::size_t kDirectLimit = 128;
constexpr int kMaxSubspaceIterations = 500;
constexpr double kResidualTolerance = 1e-9;
constexpr std::uint64_t kSubspaceSeed = 0x9ca5eedULL;

void fix_sign(std::span<double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::fabs(v[i]) > std::fabs(v[best]) + 1e-12) best = i;
  if (v[best] < 0)
    for (double& x : v) x = -x;
}


// Two passes of modified Gram-Schmidt over the b rows of `q` (row-major,
// width d). Rows whose remainder falls to 1e-12 * scale are dropped. Returns
// the number of rows kept.
std::size_t orthonormalize(std::vector<double>& q, std::size_t b, std::size_t d, double scale) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < b; ++i) {
    double* qi = q.data() + i * d;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < kept; ++j) {
        const double* qj = q.data() + j * d;
        double proj = 0.0;
        for (std::size_t t = 0; t < d; ++t) proj += qi[t] * qj[t];
        for (std::size_t t = 0; t < d; ++t) qi[t] -= proj * qj[t];
      }
    }
    double len = 0.0;
    for (std::size_t t = 0; t < d; ++t) len += qi[t] * qi[t];
    len = std::sqrt(len);
    if (len == 0.0 || len <= 1e-12 * scale) continue;
    double* dst = q.data() + kept * d;
    for (std::size_t t = 0; t < d; ++t) dst[t] = qi[t] / len;
    ++kept;
  }
  q.resize(kept * d);
  return kept;
}

// Rows of `out` become C q_i with C = XᵀX / (n - 1), without forming C.
void apply_covariance(const Matrix& x, const std::vector<double>& q, std::size_t b,
                      std::vector<double>& out) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  std::vector<double> proj(n * b);
  parallel_for(n, d * b, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const float* row = x.row(r).data();
      for (std::size_t i = 0; i < b; ++i) {
        const double* qi = q.data() + i * d;
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) s += row[t] * qi[t];
        proj[r * b + i] = s;
      }
    }
  });
  out.assign(b * d, 0.0);
  const double denom = static_cast<double>(n - 1);
  parallel_for(b, n * d, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double* o = out.data() + i * d;
      for (std::size_t r = 0; r < n; ++r) {
        const double w = proj[r * b + i];
        if (w == 0.0) continue;
        const float* row = x.row(r).data();
        for (std::size_t t = 0; t < d; ++t) o[t] += w * row[t];
      }
      for (std::size_t t = 0; t < d; ++t) o[t] /= denom;
    }
  });
}

struct RitzPairs {
  std::vector<double> values;
  std::vector<double> vectors;  // one row of width d per value
};

// Leading eigenpairs of the covariance of centred rows by block subspace
// iteration, with the projected problem solved by Jacobi rotations.
RitzPairs subspace_top_k(const Matrix& x, std::size_t k) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  std::size_t b = std::min(std::min(n - 1, d), k + std::max<std::size_t>(k, 8));
  std::vector<double> q(b * d);
  Rng rng(kSubspaceSeed);
  for (double& v : q) v = rng.normal();
  b = orthonormalize(q, b, d, 0.0);

  std::vector<double> y;
  for (int iter = 1;; ++iter) {
    apply_covariance(x, q, b, y);
    std::vector<double> t(b * b);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = i; j < b; ++j) {
        double sij = 0.0;
        double sji = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          sij += q[i * d + c] * y[j * d + c];
          sji += q[j * d + c] * y[i * d + c];
        }
        t[i * b + j] = t[j * b + i] = 0.5 * (sij + sji);
      }
    const SymmetricEigen eig = jacobi_eigen(std::move(t), b);

    std::vector<double> u(b * d, 0.0);
    std::vector<double> cu(b * d, 0.0);
    for (std::size_t e = 0; e < b; ++e)
      for (std::size_t j = 0; j < b; ++j) {
        const double w = eig.vectors[e * b + j];
        for (std::size_t c = 0; c < d; ++c) {
          u[e * d + c] += w * q[j * d + c];
          cu[e * d + c] += w * y[j * d + c];
        }
      }

    const double largest = std::max(0.0, eig.values.front());
    bool converged = true;
    for (std::size_t e = 0; e < std::min(k, b) && converged; ++e) {
      if (eig.values[e] <= kRankTolerance * largest) break;
      double res = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double r = cu[e * d + c] - eig.values[e] * u[e * d + c];
        res += r * r;
      }
      converged = std::sqrt(res) <= kResidualTolerance * largest;
    }
    if (converged || largest == 0.0 || iter >= kMaxSubspaceIterations)
      return RitzPairs{eig.values, std::move(u)};

    double scale = 0.0;
    for (std::size_t e = 0; e < b; ++e) {
      double len = 0.0;
      for (std::size_t c = 0; c < d; ++c) len += cu[e * d + c] * cu[e * d + c];
      scale = std::max(scale, std::sqrt(len));
    }
    q = std::move(cu);
    b = orthonormalize(q, b, d, scale);
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, int max_sweeps) {
  if (a.size() != n * n) throw ShapeError("jacobi_eigen expects an n*n buffer");
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto at = [n](std::vector<double>& m, std::size_t r, std::size_t c) -> double& {
    return m[r * n + c];
  };

  double diag_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag_scale += std::fabs(a[i * n + i]);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off <= 1e-30 * std::max(1.0, diag_scale * diag_scale)) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (std::fabs(apq) < 1e-300) continue;
        const double app = at(a, p, p);
        const double aqq = at(a, q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(a, k, p);
          const double akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(a, p, k);
          const double aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = at(v, k, p);
          const double vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x] > a[y * n + y]; });

  SymmetricEigen out;
  out.n = n;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = order[i];
    out.values[i] = a[src * n + src];
    for (std::size_t k = 0; k < n; ++k) out.vectors[i * n + k] = v[k * n + src];
  }
  return out;
}

PcaResult pca_top_k_centered(const Matrix& x, std::size_t k) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n < 2) throw ParameterError("PCA needs at least 2 rows, got " + std::to_string(n));
  if (k < 1 || k > std::min(n - 1, d)) {
    throw ParameterError("PCA k=" + std::to_string(k) + " outside [1, " +
                         std::to_string(std::min(n - 1, d)) + "]");
  }
  const double denom = static_cast<double>(n - 1);

  if (std::min(n, d) > kDirectLimit) {
    const RitzPairs ritz = subspace_top_k(x, k);
    const double top = std::max(0.0, ritz.values.front());
    std::size_t rank = 0;
    while (rank < ritz.values.size() && ritz.values[rank] > kRankTolerance * top) ++rank;
    PcaResult result;
    const std::size_t kept = std::min(k, rank);
    result.rank_limited = kept < k;
    result.components = Matrix(kept, d);
    result.explained_variance.assign(ritz.values.begin(), ritz.values.begin() + kept);
    std::vector<double> comp(d);
    for (std::size_t c = 0; c < kept; ++c) {
      std::copy_n(ritz.vectors.begin() + c * d, d, comp.begin());
      fix_sign(comp);
      for (std::size_t j = 0; j < d; ++j) result.components(c, j) = static_cast<float>(comp[j]);
    }
    return result;
  }

  // Decompose whichever of the d×d covariance or the n×n Gram matrix is
  // smaller; both share the non-zero spectrum.
  const bool use_gram = n < d;
  const std::size_t m = use_gram ? n : d;
  std::vector<double> sym(m * m, 0.0);
  if (use_gram) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double g = dot(x.row(i), x.row(j)) / denom;
        sym[i * n + j] = g;
        sym[j * n + i] = g;
      }
  } else {
    std::vector<double> row(d);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < d; ++j) row[j] = x(r, j);
      for (std::size_t i = 0; i < d; ++i) {
        const double xi = row[i];
        if (xi == 0.0) continue;
        double* dst = sym.data() + i * d;
        for (std::size_t j = i; j < d; ++j) dst[j] += xi * row[j];
      }
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        sym[i * d + j] /= denom;
        sym[j * d + i] = sym[i * d + j];
      }
  }

  SymmetricEigen eig = jacobi_eigen(std::move(sym), m);
  const double largest = std::max(0.0, eig.values.empty() ? 0.0 : eig.values.front());
  std::size_t rank = 0;
  while (rank < m && eig.values[rank] > kRankTolerance * largest && eig.values[rank] > 0.0) ++rank;

  PcaResult result;
  const std::size_t kept = std::min(k, rank);
  result.rank_limited = kept < k;
  result.components = Matrix(kept, d);
  result.explained_variance.resize(kept);
  std::vector<double> comp(d);
  for (std::size_t c = 0; c < kept; ++c) {
    result.explained_variance[c] = eig.values[c];
    if (use_gram) {
      // v = Xᵀu / ‖Xᵀu‖
      std::fill(comp.begin(), comp.end(), 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        const double u = eig.vectors[c * n + r];
        for (std::size_t j = 0; j < d; ++j) comp[j] += u * x(r, j);
      }
      double len = 0.0;
      for (double v : comp) len += v * v;
      len = std::sqrt(len);
      for (double& v : comp) v /= len;
    } else {
      for (std::size_t j = 0; j < d; ++j) comp[j] = eig.vectors[c * d + j];
    }
    fix_sign(comp);
    for (std::size_t j = 0; j < d; ++j) result.components(c, j) = static_cast<float>(comp[j]);
  }
  return result;
}

PcaResult pca_top_k(const Matrix& x, std::size_t k) {
  if (x.rows() < 2) throw ParameterError("PCA needs at least 2 rows, got " + std::to_string(x.rows()));
  Matrix centered = x;
  std::vector<double> mean(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) mean[j] += x(i, j);
  for (double& m : mean) m /= static_cast<double>(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      centered(i, j) = static_cast<float>(x(i, j) - mean[j]);
  return pca_top_k_centered(centered, k);
}

}  // namespace xld::numcore
