#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minimax/solvers.hpp"

namespace minimax::harness {

enum class TraceFormat { kCsv, kJson };

inline constexpr std::array<std::string_view, 18> kTraceColumns = {
    "k",     "grad_calls", "f_calls",  "trials",     "l11",        "l12",
    "l22",   "mu",         "beta",     "gamma",      "c",          "d",
    "f_value", "gap_norm", "gap_x_norm", "gap_y_norm", "reg_gap_norm", "elapsed_ms"};

/// One trace record as 18 optional numbers in column order.
using TraceRow = std::array<std::optional<double>, kTraceColumns.size()>;

TraceRow to_row(const TraceRecord& rec);
TraceRecord from_row(const TraceRow& row);

/// Prints a real with 17 significant digits.
std::string format_real(double v);

/// Throws Error(kIo) if the file cannot be written.
void write_trace(const std::vector<TraceRecord>& records, TraceFormat format,
                 const std::filesystem::path& path);

/// Reads a CSV trace; throws Error(kIo) if unreadable, Error(kShape) on a bad header or row.
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);

/// Index of `name` in kTraceColumns, if any.
std::optional<std::size_t> trace_column(std::string_view name);

TraceFormat parse_trace_format(std::string_view name);
const char* to_string(TraceFormat format);

}  // namespace minimax::harness
