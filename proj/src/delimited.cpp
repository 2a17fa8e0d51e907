#include "boldscale/delimited.hpp"

#include "boldscale/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace boldscale {

namespace {

[[noreturn]] void parse_error(const std::string& source, std::size_t line,
                              const std::string& what) {
  throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ": " + what);
}

bool next_line(std::istream& in, std::string& line, std::size_t& number) {
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

double parse_number(const std::string& text, const std::string& source, std::size_t line,
                    const std::string& column) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value))
    parse_error(source, line, "column " + column + ": '" + text + "' is not a number");
  return value;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t");
    const auto e = field.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<ChoiceProblem> read_problems(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t number = 0;
  if (!next_line(in, line, number)) parse_error(source, 1, "empty file");
  const std::vector<std::string> expected{"id", "x0", "p0", "x1", "p1"};
  if (split_fields(line) != expected)
    parse_error(source, number, "header must be id,x0,p0,x1,p1");
  std::vector<ChoiceProblem> out;
  std::set<std::string> seen;
  while (next_line(in, line, number)) {
    const auto f = split_fields(line);
    if (f.size() != 5)
      parse_error(source, number, "expected 5 fields, found " + std::to_string(f.size()));
    if (f[0].empty()) parse_error(source, number, "empty problem id");
    if (!seen.insert(f[0]).second)
      parse_error(source, number, "duplicate problem id '" + f[0] + "'");
    const double x0 = parse_number(f[1], source, number, "x0");
    const double p0 = parse_number(f[2], source, number, "p0");
    const double x1 = parse_number(f[3], source, number, "x1");
    const double p1 = parse_number(f[4], source, number, "p1");
    for (const auto& [name, p] : {std::pair{"p0", p0}, std::pair{"p1", p1}})
      if (p < kMinProbability || p > 1.0)
        parse_error(source, number,
                    std::string("probability ") + name + " = " + format_number(p) +
                        " is outside [1e-9, 1] (problem '" + f[0] + "')");
    try {
      out.push_back(make_problem(f[0], x0, p0, x1, p1));
    } catch (const Error& e) {
      parse_error(source, number, e.what());
    }
  }
  if (out.empty()) parse_error(source, number, "no problems");
  return out;
}

void write_problems(std::ostream& out, std::span<const ChoiceProblem> problems) {
  out << "id,x0,p0,x1,p1\n";
  for (const auto& p : problems)
    out << p.id << ',' << format_number(p.x0) << ',' << format_number(p.p0) << ','
        << format_number(p.x1) << ',' << format_number(p.p1) << '\n';
}

ResponseMatrix read_responses(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t number = 0;
  if (!next_line(in, line, number)) parse_error(source, 1, "empty file");
  auto header = split_fields(line);
  if (header.size() < 2 || header[0] != "respondent")
    parse_error(source, number, "header must be respondent,<problem ids>");
  std::vector<std::string> problem_ids(header.begin() + 1, header.end());
  std::set<std::string> unique(problem_ids.begin(), problem_ids.end());
  if (unique.size() != problem_ids.size() || unique.count(""))
    parse_error(source, number, "problem ids in the header must be distinct and non-empty");

  std::vector<std::string> respondents;
  std::vector<std::vector<std::optional<int>>> rows;
  std::set<std::string> seen;
  while (next_line(in, line, number)) {
    const auto f = split_fields(line);
    if (f.size() != header.size())
      parse_error(source, number, "expected " + std::to_string(header.size()) +
                                      " fields, found " + std::to_string(f.size()));
    if (f[0].empty()) parse_error(source, number, "empty respondent id");
    if (!seen.insert(f[0]).second)
      parse_error(source, number, "duplicate respondent id '" + f[0] + "'");
    std::vector<std::optional<int>> row;
    for (std::size_t c = 1; c < f.size(); ++c) {
      if (f[c].empty() || f[c] == "NA") row.emplace_back();
      else if (f[c] == "1") row.emplace_back(1);
      else if (f[c] == "2") row.emplace_back(2);
      else
        parse_error(source, number, "column " + header[c] + ": '" + f[c] +
                                        "' is not a response code (1, 2, empty or NA)");
    }
    respondents.push_back(f[0]);
    rows.push_back(std::move(row));
  }
  if (respondents.empty()) parse_error(source, number, "no respondents");
  ResponseMatrix m(std::move(respondents), std::move(problem_ids));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
  return m;
}

void write_responses(std::ostream& out, const ResponseMatrix& m) {
  out << "respondent";
  for (const auto& id : m.problem_ids()) out << ',' << id;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << m.respondent_ids()[r];
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out << ',';
      if (const auto v = m.at(r, c)) out << *v;
    }
    out << '\n';
  }
}

void check_alignment(std::span<const ChoiceProblem> problems, const ResponseMatrix& responses) {
  std::set<std::string> defined, answered(responses.problem_ids().begin(),
                                          responses.problem_ids().end());
  for (const auto& p : problems) defined.insert(p.id);
  std::vector<std::string> no_responses, undefined;
  for (const auto& p : problems)
    if (!answered.count(p.id)) no_responses.push_back(p.id);
  for (const auto& id : responses.problem_ids())
    if (!defined.count(id)) undefined.push_back(id);
  if (no_responses.empty() && undefined.empty()) return;
  auto join = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& id : ids) s += (s.empty() ? "" : ", ") + id;
    return s;
  };
  std::string msg = "problem ids do not align";
  if (!no_responses.empty()) msg += "; without responses: " + join(no_responses);
  if (!undefined.empty()) msg += "; answered but not defined: " + join(undefined);
  throw Error(ErrorKind::IdMismatch, msg);
}

void write_similarity(std::ostream& out, const SimilarityMatrix& sim) {
  out << "id";
  for (const auto& id : sim.ids) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < sim.size(); ++i) {
    out << sim.ids[i];
    for (std::size_t j = 0; j < sim.size(); ++j) out << ',' << format_number(sim(i, j));
    out << '\n';
  }
}

void write_configuration(std::ostream& out, const SsaConfiguration& config) {
  out << "id,x,y\n";
  for (std::size_t i = 0; i < config.ids.size(); ++i)
    out << config.ids[i] << ',' << format_number(config.points[i].x) << ','
        << format_number(config.points[i].y) << '\n';
}

void write_composites(std::ostream& out, const CompositeMatrix& m) {
  out << "respondent";
  for (const auto& c : m.constructs) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << m.respondent_ids[r];
    for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << m.at(r, c);
    out << '\n';
  }
}

CompositeMatrix read_composites(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t number = 0;
  if (!next_line(in, line, number)) parse_error(source, 1, "empty file");
  const auto header = split_fields(line);
  if (header.size() < 2 || header[0] != "respondent")
    parse_error(source, number, "header must be respondent,<constructs>");
  CompositeMatrix m;
  m.constructs.assign(header.begin() + 1, header.end());
  while (next_line(in, line, number)) {
    const auto f = split_fields(line);
    if (f.size() != header.size())
      parse_error(source, number, "expected " + std::to_string(header.size()) +
                                      " fields, found " + std::to_string(f.size()));
    m.respondent_ids.push_back(f[0]);
    for (std::size_t c = 1; c < f.size(); ++c) {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(f[c].data(), f[c].data() + f[c].size(), v);
      if (f[c].empty() || ec != std::errc() || ptr != f[c].data() + f[c].size())
        parse_error(source, number, "column " + header[c] + ": '" + f[c] + "' is not an integer");
      m.values.push_back(v);
    }
  }
  if (m.respondent_ids.empty()) parse_error(source, number, "no respondents");
  return m;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, path.string() + ": cannot write file");
  out << text;
}

}  // namespace boldscale
