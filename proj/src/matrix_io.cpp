#include "biorth/matrix_io.hpp"

#include "biorth/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace biorth {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

bool is_blank(std::string_view line) { return split_tokens(line).empty(); }

double parse_real(std::string_view token, std::size_t line) {
  std::string_view digits = token;
  if (digits.size() > 1 && digits.front() == '+' && digits[1] != '-' && digits[1] != '+') {
    digits.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw FormatError("cannot parse '" + std::string(token) + "' as a finite real", line);
  }
  if (!std::isfinite(value)) {
    throw FormatError("non-finite value '" + std::string(token) + "'", line);
  }
  return value;
}

long long parse_integer(std::string_view token, std::size_t line, std::string_view what) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError("cannot parse " + std::string(what) + " '" + std::string(token) +
                          "' as an integer",
                      line);
  }
  return value;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return buf.str();
}

void spit(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Matrix parse_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || is_blank(lines[0])) throw FormatError("missing 'rows cols' header", 1);
  const auto header = split_tokens(lines[0]);
  if (header.size() != 2) {
    throw FormatError("header must hold exactly two integers 'rows cols'", 1);
  }
  const long long rows = parse_integer(header[0], 1, "rows");
  const long long cols = parse_integer(header[1], 1, "cols");
  if (rows < 1 || cols < 1) throw FormatError("rows and cols must be positive", 1);

  Matrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    const std::size_t line_no = static_cast<std::size_t>(i) + 2;
    if (line_no > lines.size()) {
      throw FormatError("expected " + std::to_string(rows) + " rows, input ends after " +
                            std::to_string(i),
                        line_no);
    }
    const auto tokens = split_tokens(lines[line_no - 1]);
    if (static_cast<long long>(tokens.size()) != cols) {
      throw FormatError("expected " + std::to_string(cols) + " values, got " +
                            std::to_string(tokens.size()),
                        line_no);
    }
    for (long long j = 0; j < cols; ++j) {
      m(i, j) = parse_real(tokens[static_cast<std::size_t>(j)], line_no);
    }
  }
  for (std::size_t extra = static_cast<std::size_t>(rows) + 1; extra < lines.size(); ++extra) {
    if (!is_blank(lines[extra])) throw FormatError("unexpected content after last row", extra + 1);
  }
  return m;
}

std::string format_matrix(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_real(m(i, j));
    }
    out += '\n';
  }
  return out;
}

Matrix read_matrix(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  try {
    return parse_matrix(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string(), e.detail(), e.line());
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  spit(path, format_matrix(m));
}

std::string format_trace(const Trace& trace) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto& r : trace) {
    out += std::to_string(r.iter);
    for (double v : {r.cost, r.grad_norm, r.feas_err, r.elapsed_ms}) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

Trace parse_trace(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kTraceHeader) {
    throw FormatError("trace header must be '" + std::string(kTraceHeader) + "'", 1);
  }
  Trace trace;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::size_t line_no = k + 1;
    const std::string_view line = lines[k];
    if (line.empty()) {
      for (std::size_t rest = k + 1; rest < lines.size(); ++rest) {
        if (!lines[rest].empty()) throw FormatError("blank line inside trace", line_no);
      }
      break;
    }
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 5) {
      throw FormatError("expected 5 comma-separated fields, got " + std::to_string(fields.size()),
                        line_no);
    }
    TraceRecord r{};
    const long long iter = parse_integer(fields[0], line_no, "iter");
    if (iter < 0 || iter > std::numeric_limits<int>::max()) {
      throw FormatError("iter out of range", line_no);
    }
    r.iter = static_cast<int>(iter);
    r.cost = parse_real(fields[1], line_no);
    r.grad_norm = parse_real(fields[2], line_no);
    r.feas_err = parse_real(fields[3], line_no);
    r.elapsed_ms = parse_real(fields[4], line_no);
    if (!trace.empty() && r.iter <= trace.back().iter) {
      throw FormatError("iter must be strictly increasing", line_no);
    }
    trace.push_back(r);
  }
  return trace;
}

void write_trace(const std::filesystem::path& path, const Trace& trace) {
  spit(path, format_trace(trace));
}

Trace read_trace(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  try {
    return parse_trace(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string(), e.detail(), e.line());
  }
}

}  // namespace biorth
