#include "trace_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "minimax/error.hpp"

namespace minimax::harness {

namespace {

std::optional<double> opt(const std::optional<long>& v) {
  return v ? std::optional<double>(static_cast<double>(*v)) : std::nullopt;
}

std::optional<long> opt_long(const std::optional<double>& v) {
  return v ? std::optional<long>(std::lround(*v)) : std::nullopt;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

TraceRow to_row(const TraceRecord& r) {
  return {static_cast<double>(r.k), static_cast<double>(r.grad_calls), static_cast<double>(r.f_calls),
          opt(r.trials), r.l11, r.l12, r.l22, r.mu, r.beta, r.gamma, r.c, r.d,
          r.f_value, r.gap_norm, r.gap_x_norm, r.gap_y_norm, r.reg_gap_norm, r.elapsed_ms};
}

TraceRecord from_row(const TraceRow& row) {
  for (std::size_t i : {0U, 1U, 2U, 12U, 13U, 14U, 15U}) {
    if (!row[i]) throw Error(ErrorKind::kShape, "trace column " + std::string(kTraceColumns[i]) + " is empty");
  }
  TraceRecord r;
  r.k = std::lround(*row[0]);
  r.grad_calls = std::lround(*row[1]);
  r.f_calls = std::lround(*row[2]);
  r.trials = opt_long(row[3]);
  r.l11 = row[4];
  r.l12 = row[5];
  r.l22 = row[6];
  r.mu = row[7];
  r.beta = row[8];
  r.gamma = row[9];
  r.c = row[10];
  r.d = row[11];
  r.f_value = *row[12];
  r.gap_norm = *row[13];
  r.gap_x_norm = *row[14];
  r.gap_y_norm = *row[15];
  r.reg_gap_norm = row[16];
  r.elapsed_ms = row[17];
  return r;
}

std::string format_real(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_trace(const std::vector<TraceRecord>& records, TraceFormat format,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write trace to " + path.string());

  if (format == TraceFormat::kCsv) {
    for (std::size_t i = 0; i < kTraceColumns.size(); ++i) out << (i ? "," : "") << kTraceColumns[i];
    out << '\n';
    for (const auto& rec : records) {
      const TraceRow row = to_row(rec);
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        if (!row[i]) continue;
        if (i < 4) {
          out << std::lround(*row[i]);
        } else {
          out << format_real(*row[i]);
        }
      }
      out << '\n';
    }
  } else {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& rec : records) {
      const TraceRow row = to_row(rec);
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        const std::string key(kTraceColumns[i]);
        if (!row[i]) {
          obj[key] = nullptr;
        } else if (i < 4) {
          obj[key] = std::lround(*row[i]);
        } else {
          obj[key] = *row[i];
        }
      }
      doc.push_back(std::move(obj));
    }
    out << doc.dump(1) << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed while writing " + path.string());
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read trace " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::kShape, path.string() + " is empty");
  const auto header = split(line);
  bool ok = header.size() == kTraceColumns.size();
  for (std::size_t i = 0; ok && i < header.size(); ++i) ok = header[i] == kTraceColumns[i];
  if (!ok) throw Error(ErrorKind::kShape, path.string() + " does not start with the trace header");

  std::vector<TraceRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != kTraceColumns.size()) {
      throw Error(ErrorKind::kShape, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                         std::to_string(kTraceColumns.size()) + " fields");
    }
    TraceRow row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty()) continue;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(fields[i].data(), fields[i].data() + fields[i].size(), v);
      if (ec != std::errc() || ptr != fields[i].data() + fields[i].size()) {
        throw Error(ErrorKind::kShape, path.string() + ":" + std::to_string(line_no) + ": bad value in " +
                                           std::string(kTraceColumns[i]));
      }
      row[i] = v;
    }
    records.push_back(from_row(row));
  }
  return records;
}

std::optional<std::size_t> trace_column(std::string_view name) {
  for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
    if (kTraceColumns[i] == name) return i;
  }
  return std::nullopt;
}

TraceFormat parse_trace_format(std::string_view name) {
  if (name == "csv") return TraceFormat::kCsv;
  if (name == "json") return TraceFormat::kJson;
  throw Error(ErrorKind::kUsage, "unknown trace format '" + std::string(name) + "' (csv, json)");
}

const char* to_string(TraceFormat format) { return format == TraceFormat::kCsv ? "csv" : "json"; }

}  // namespace minimax::harness
