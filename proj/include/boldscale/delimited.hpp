#pragma once

#include "boldscale/composites.hpp"
#include "boldscale/ct_core.hpp"
#include "boldscale/similarity.hpp"
#include "boldscale/ssa.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace boldscale {

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

/// Comma-separated fields of one line, trimmed of surrounding blanks.
std::vector<std::string> split_fields(const std::string& line);

/// Header `id,x0,p0,x1,p1`, one problem per line. Errors carry
/// `source:line`.
std::vector<ChoiceProblem> read_problems(std::istream& in,
                                         const std::string& source = "problems");
void write_problems(std::ostream& out, std::span<const ChoiceProblem> problems);

/// Header `respondent,<problem ids>`; cells 1, 2, or empty / NA for missing.
ResponseMatrix read_responses(std::istream& in, const std::string& source = "responses");
void write_responses(std::ostream& out, const ResponseMatrix& responses);

/// Throws IdMismatch listing problem ids missing on either side.
void check_alignment(std::span<const ChoiceProblem> problems,
                     const ResponseMatrix& responses);

void write_similarity(std::ostream& out, const SimilarityMatrix& sim);
void write_configuration(std::ostream& out, const SsaConfiguration& config);
void write_composites(std::ostream& out, const CompositeMatrix& composites);
/// Header `respondent,<constructs>`; every cell an integer score.
CompositeMatrix read_composites(std::istream& in, const std::string& source = "composites");

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace boldscale
