#include "qbcharge/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace qbcharge {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw std::invalid_argument("line " + std::to_string(line) + ": not a number: '" + text + "'");
  return v;
}

}  // namespace

std::string format_value(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string trajectory_csv(const Trajectory& trajectory, const std::optional<FailureMarker>& failure) {
  std::string out = kTrajectoryHeader;
  out += '\n';
  for (const Sample& s : trajectory.samples) {
    if (s.cell_ergotropy.size() != 2) throw std::invalid_argument("trajectory_csv: need ergotropy for B10 and B11");
    const double row[] = {s.time, s.cell_ergotropy[0], s.cell_ergotropy[1], s.global_ergotropy,
                          s.total_energy, s.trace, s.purity};
    for (std::size_t k = 0; k < std::size(row); ++k) {
      if (k > 0) out += ',';
      out += format_value(row[k]);
    }
    out += '\n';
  }
  if (failure) {
    std::string reason = failure->reason;
    for (char& c : reason)
      if (c == ',' || c == '\n') c = ' ';
    out += "#FAILED," + format_value(failure->time) + "," + reason + "\n";
  }
  return out;
}

std::vector<double> TrajectoryTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
  throw std::invalid_argument("missing column '" + name + "'");
}

TrajectoryTable parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  TrajectoryTable table;
  if (!std::getline(in, line)) throw std::invalid_argument("empty trajectory CSV");
  table.columns = split(line);
  const std::vector<std::string> expected = split(kTrajectoryHeader);
  for (std::size_t c = 0; c < expected.size(); ++c) {
    if (c >= table.columns.size() || table.columns[c] != expected[c])
      throw std::invalid_argument("header: expected column '" + expected[c] + "' at position " + std::to_string(c + 1));
  }
  if (table.columns.size() != expected.size()) throw std::invalid_argument("header: unexpected extra columns");

  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    if (table.failure) throw std::invalid_argument("line " + std::to_string(number) + ": data after failure marker");
    std::vector<std::string> fields = split(line);
    if (fields[0] == "#FAILED") {
      if (fields.size() < 2) throw std::invalid_argument("line " + std::to_string(number) + ": malformed failure marker");
      FailureMarker marker;
      marker.time = parse_double(fields[1], number);
      for (std::size_t k = 2; k < fields.size(); ++k) marker.reason += (k > 2 ? "," : "") + fields[k];
      table.failure = marker;
      continue;
    }
    if (fields.size() != table.columns.size())
      throw std::invalid_argument("line " + std::to_string(number) + ": expected " +
                                  std::to_string(table.columns.size()) + " fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) row.push_back(parse_double(f, number));
    table.rows.push_back(std::move(row));
  }
  return table;
}

TrajectoryTable read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_trajectory_csv(buffer.str());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot rename '" + tmp.string() + "': " + ec.message());
}

}  // namespace qbcharge
