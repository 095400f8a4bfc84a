#pragma once

#include "biorth/linalg.hpp"
#include "biorth/solvers.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace biorth {

/// Matrix text format:
///
///   rows cols
///   a_11 a_12 ... a_1cols
///   ...
///
/// Reals are written in %.17g form (17 significant digits) so that
/// a read of a write reproduces every finite double bitwise. Parsing is
/// locale-independent. Trailing blank lines are accepted; anything else after
/// the last row is a format error.
Matrix parse_matrix(std::string_view text);
std::string format_matrix(const Matrix& m);

/// Throws IoError when the file cannot be opened and FormatError (with a
/// 1-based line number) on malformed content.
Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Matrix& m);

/// Trace CSV with the exact header `iter,cost,grad_norm,feas_err,elapsed_ms`.
inline constexpr std::string_view kTraceHeader = "iter,cost,grad_norm,feas_err,elapsed_ms";

std::string format_trace(const Trace& trace);
Trace parse_trace(std::string_view text);
void write_trace(const std::filesystem::path& path, const Trace& trace);
Trace read_trace(const std::filesystem::path& path);

/// `v` in %.17g form: 17 significant digits, trailing zeros dropped.
std::string format_real(double v);

}  // namespace biorth
