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

#include "xld/diag/alignment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "xld/error.hpp"
#include "xld/numcore/matrix.hpp"
#include "xld/numcore/parallel.hpp"
#include "xld/numcore/pca.hpp"

namespace xld::diag {
namespace {

using numcore::Matrix;

struct ResolvedPairs {
  std::vector<std::size_t> a_rows;
  std::vector<std::size_t> b_rows;
};

std::unordered_map<std::string, std::size_t> index_ids(const store::EmbeddingSet& set) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < set.ids.size(); ++i) index.emplace(set.ids[i], i);
  return index;
}

ResolvedPairs resolve(const store::EmbeddingSet& a, const store::EmbeddingSet& b,
                      const store::ParallelPairSet& pairs) {
  if (a.dim() != b.dim()) {
    throw ShapeError("cannot compare sets of width " + std::to_string(a.dim()) + " and " +
                     std::to_string(b.dim()));
  }
  bool swapped = false;
  if (pairs.lang_a == b.language && pairs.lang_b == a.language && a.language != b.language) {
    swapped = true;
  } else if (pairs.lang_a != a.language || pairs.lang_b != b.language) {
    throw DataError("pair set " + pairs.lang_a.code() + "-" + pairs.lang_b.code() +
                    " does not join " + a.language.code() + " and " + b.language.code());
  }
  if (pairs.pairs.empty()) throw DataError("no aligned pairs to compare");
  const auto ia = index_ids(a);
  const auto ib = index_ids(b);
  ResolvedPairs out;
  for (const auto& [first, second] : pairs.pairs) {
    const std::string& id_a = swapped ? second : first;
    const std::string& id_b = swapped ? first : second;
    const auto fa = ia.find(id_a);
    const auto fb = ib.find(id_b);
    if (fa == ia.end() || fb == ib.end()) {
      throw DataError("aligned pair (" + id_a + ", " + id_b + ") does not resolve in both sets");
    }
    out.a_rows.push_back(fa->second);
    out.b_rows.push_back(fb->second);
  }
  return out;
}

double cosine(std::span<const float> x, double x_norm, std::span<const float> y, double y_norm) {
  if (x_norm == 0.0 || y_norm == 0.0) return 0.0;
  return numcore::dot(x, y) / (x_norm * y_norm);
}

std::vector<double> row_norms(const Matrix& m) {
  std::vector<double> n(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) n[i] = numcore::norm(m.row(i));
  return n;
}

std::string number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

RetrievalResult retrieval_accuracy(const store::EmbeddingSet& a, const store::EmbeddingSet& b,
                                   const store::ParallelPairSet& pairs) {
  const ResolvedPairs rp = resolve(a, b, pairs);
  const auto a_norms = row_norms(a.matrix);
  const auto b_norms = row_norms(b.matrix);
  const std::size_t q = rp.a_rows.size();
  std::vector<unsigned char> hit(q, 0);
  std::vector<unsigned char> tied(q, 0);
  numcore::parallel_for(q, b.matrix.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto x = a.matrix.row(rp.a_rows[i]);
      const double xn = a_norms[rp.a_rows[i]];
      std::size_t best = 0;
      double best_sim = -2.0;
      bool best_tied = false;
      for (std::size_t j = 0; j < b.matrix.rows(); ++j) {
        const double s = cosine(x, xn, b.matrix.row(j), b_norms[j]);
        if (s > best_sim) {
          best_sim = s;
          best = j;
          best_tied = false;
        } else if (s == best_sim) {
          best_tied = true;
        }
      }
      hit[i] = best == rp.b_rows[i] ? 1 : 0;
      tied[i] = best_tied ? 1 : 0;
    }
  });
  RetrievalResult r;
  r.queries = q;
  for (std::size_t i = 0; i < q; ++i) {
    r.correct += hit[i];
    r.tied_queries += tied[i];
  }
  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(q);
  return r;
}

double mean_parallel_cosine(const store::EmbeddingSet& a, const store::EmbeddingSet& b,
                            const store::ParallelPairSet& pairs) {
  const ResolvedPairs rp = resolve(a, b, pairs);
  double total = 0.0;
  for (std::size_t i = 0; i < rp.a_rows.size(); ++i) {
    const auto x = a.matrix.row(rp.a_rows[i]);
    const auto y = b.matrix.row(rp.b_rows[i]);
    total += cosine(x, numcore::norm(x), y, numcore::norm(y));
  }
  return total / static_cast<double>(rp.a_rows.size());
}

std::vector<PlotPoint> project_2d(std::span<const store::EmbeddingSet> sets) {
  std::vector<Matrix> parts;
  std::size_t points = 0;
  for (const auto& s : sets) {
    if (!parts.empty() && s.dim() != parts.front().cols()) {
      throw ShapeError("all sets must share one embedding width");
    }
    parts.push_back(s.matrix);
    points += s.matrix.rows();
  }
  if (points < 3) {
    throw RankError("a 2-D projection needs at least 3 points, got " + std::to_string(points));
  }
  const Matrix stacked = numcore::vstack(parts);
  const auto pca = numcore::pca_top_k(stacked, std::min<std::size_t>(2, stacked.cols()));
  std::vector<double> mean(stacked.cols(), 0.0);
  for (std::size_t i = 0; i < stacked.rows(); ++i)
    for (std::size_t j = 0; j < stacked.cols(); ++j) mean[j] += stacked(i, j);
  for (double& m : mean) m /= static_cast<double>(stacked.rows());
  // Components dropped for lack of rank leave that coordinate at zero.
  Matrix coords(stacked.rows(), 2);
  for (std::size_t i = 0; i < stacked.rows(); ++i)
    for (std::size_t c = 0; c < pca.components.rows(); ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < stacked.cols(); ++j)
        acc += (stacked(i, j) - mean[j]) * pca.components(c, j);
      coords(i, c) = static_cast<float>(acc);
    }

  std::vector<PlotPoint> out;
  out.reserve(points);
  std::size_t row = 0;
  for (const auto& s : sets) {
    for (std::size_t i = 0; i < s.matrix.rows(); ++i, ++row) {
      out.push_back({s.ids[i], s.language, coords(row, 0), coords(row, 1)});
    }
  }
  return out;
}

std::string plot_points_csv(std::span<const PlotPoint> points) {
  std::string out = "id,language,x,y\n";
  for (const auto& p : points) {
    out += p.id + "," + p.language.code() + "," + number(p.x) + "," + number(p.y) + "\n";
  }
  return out;
}

}  // namespace xld::diag
