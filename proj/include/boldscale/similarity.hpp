#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boldscale {

/// Respondents x problems, each cell 1 (default chosen), 2 (bold chosen) or
/// missing.
class ResponseMatrix {
public:
  ResponseMatrix() = default;
  ResponseMatrix(std::vector<std::string> respondent_ids,
                 std::vector<std::string> problem_ids);

  std::size_t rows() const noexcept { return respondent_ids_.size(); }
  std::size_t cols() const noexcept { return problem_ids_.size(); }

  const std::vector<std::string>& respondent_ids() const noexcept {
    return respondent_ids_;
  }
  const std::vector<std::string>& problem_ids() const noexcept {
    return problem_ids_;
  }

  std::optional<int> at(std::size_t row, std::size_t col) const {
    return values_[row * cols() + col];
  }
  /// Throws InvalidArgument unless value is empty, 1 or 2.
  void set(std::size_t row, std::size_t col, std::optional<int> value);

  /// Column index of a problem id, or nullopt.
  std::optional<std::size_t> column_of(const std::string& problem_id) const;

private:
  std::vector<std::string> respondent_ids_;
  std::vector<std::string> problem_ids_;
  std::vector<std::optional<int>> values_;
};

/// Guttman's coefficient of weak monotonicity:
///   sum_{i<j} (x_i-x_j)(y_i-y_j) / sum_{i<j} |x_i-x_j||y_i-y_j|.
/// Throws UndefinedCoefficient when the denominator vanishes.
double mu2(std::span<const double> x, std::span<const double> y);

double pearson(std::span<const double> x, std::span<const double> y);

enum class SimilarityKind { WeakMonotonicity, Pearson };

const char* to_string(SimilarityKind kind) noexcept;

struct SimilarityMatrix {
  std::vector<std::string> ids;
  std::vector<double> values;          // n*n, row-major
  std::vector<std::size_t> support;    // rows jointly present per pair

  std::size_t size() const noexcept { return ids.size(); }
  double operator()(std::size_t i, std::size_t j) const {
    return values[i * ids.size() + j];
  }
  std::size_t support_at(std::size_t i, std::size_t j) const {
    return support[i * ids.size() + j];
  }
};

/// Entry (i,j) is the coefficient of columns i and j over rows where both
/// are present (pairwise deletion). Entries are independent and are filled
/// by up to `threads` workers (0 = hardware concurrency).
SimilarityMatrix similarity_matrix(
    const ResponseMatrix& responses,
    SimilarityKind kind = SimilarityKind::WeakMonotonicity,
    unsigned threads = 1);

}  // namespace boldscale
