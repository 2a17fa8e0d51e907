#include "boldscale/similarity.hpp"

#include "boldscale/error.hpp"
#include "boldscale/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace boldscale {

ResponseMatrix::ResponseMatrix(std::vector<std::string> respondent_ids,
                               std::vector<std::string> problem_ids)
    : respondent_ids_(std::move(respondent_ids)),
      problem_ids_(std::move(problem_ids)),
      values_(respondent_ids_.size() * problem_ids_.size()) {}

void ResponseMatrix::set(std::size_t row, std::size_t col,
                         std::optional<int> value) {
  if (value && *value != 1 && *value != 2)
    throw Error(ErrorKind::InvalidArgument,
                "response code must be 1 (default) or 2 (bold), got " +
                    std::to_string(*value));
  values_.at(row * cols() + col) = value;
}

std::optional<std::size_t> ResponseMatrix::column_of(
    const std::string& problem_id) const {
  const auto it =
      std::find(problem_ids_.begin(), problem_ids_.end(), problem_id);
  if (it == problem_ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - problem_ids_.begin());
}

const char* to_string(SimilarityKind kind) noexcept {
  return kind == SimilarityKind::Pearson ? "pearson" : "mu2";
}

double mu2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::LengthMismatch, "mu2 vectors differ in length");
  if (x.size() < 2)
    throw Error(ErrorKind::UndefinedCoefficient,
                "mu2 needs at least two observations");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      num += dx * dy;
      den += std::abs(dx) * std::abs(dy);
    }
  }
  if (!(den > 0.0))
    throw Error(ErrorKind::UndefinedCoefficient,
                "mu2 undefined: no pair varies in both vectors");
  return num / den;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::LengthMismatch, "pearson vectors differ in length");
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2)
    throw Error(ErrorKind::UndefinedCoefficient,
                "pearson needs at least two observations");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw Error(ErrorKind::UndefinedCoefficient,
                "pearson undefined for a constant vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SimilarityMatrix similarity_matrix(const ResponseMatrix& responses,
                                   SimilarityKind kind, unsigned threads) {
  const std::size_t m = responses.cols();
  if (m < 2)
    throw Error(ErrorKind::TooFewVariables,
                "similarity matrix needs at least two problem columns");
  SimilarityMatrix out;
  out.ids = responses.problem_ids();
  out.values.assign(m * m, 0.0);
  out.support.assign(m * m, 0);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    out.values[i * m + i] = 1.0;
    std::size_t present = 0;
    for (std::size_t r = 0; r < responses.rows(); ++r)
      if (responses.at(r, i)) ++present;
    out.support[i * m + i] = present;
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }

  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < responses.rows(); ++r) {
      const auto a = responses.at(r, i);
      const auto b = responses.at(r, j);
      if (a && b) {
        xs.push_back(*a);
        ys.push_back(*b);
      }
    }
    double value = 0.0;
    try {
      value = kind == SimilarityKind::Pearson ? pearson(xs, ys) : mu2(xs, ys);
    } catch (const Error& e) {
      throw Error(e.kind(), "columns '" + out.ids[i] + "' and '" + out.ids[j] +
                                "': " + e.what());
    }
    out.values[i * m + j] = out.values[j * m + i] = value;
    out.support[i * m + j] = out.support[j * m + i] = xs.size();
  });
  return out;
}

}  // namespace boldscale
