#include "gpbo/run_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& token, long line_no) {
  if (token.empty()) throw ParseError("empty numeric field", line_no);
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) {
    throw ParseError("invalid number '" + token + "'", line_no);
  }
  return v;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_run_csv(const std::string& path, const BoHistory& history, const std::string& problem_name,
                   const std::string& config_json, bool include_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");

  const int d = static_cast<int>(history.X.cols());
  const int m = static_cast<int>(history.Y.cols());
  const int q = static_cast<int>(history.C.cols());

  out << "# gpbo run\n";
  out << "# problem: " << problem_name << "\n";
  if (!config_json.empty()) out << "# config: " << config_json << "\n";

  out << "iteration,phase";
  for (int j = 0; j < d; ++j) out << ",x_" << (j + 1);
  for (int j = 0; j < m; ++j) out << ",y_" << (j + 1);
  for (int j = 0; j < q; ++j) out << ",c_" << (j + 1);
  out << ",incumbent_or_hypervolume,elapsed_seconds\n";

  for (const auto& record : history.records) {
    out << record.iteration << "," << to_string(record.phase);
    for (int j = 0; j < d; ++j) out << "," << format_double(record.x[j]);
    for (int j = 0; j < m; ++j) out << "," << format_double(record.y[j]);
    for (int j = 0; j < q; ++j) out << "," << format_double(record.c[j]);
    out << "," << format_double(record.metric);
    out << "," << format_double(include_timing ? record.elapsed_seconds : 0.0) << "\n";
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& rows,
                      const std::vector<std::string>& column_names) {
  if (static_cast<Eigen::Index>(column_names.size()) != rows.cols()) {
    throw DimensionError("write_matrix_csv: header length does not match column count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (std::size_t j = 0; j < column_names.size(); ++j) {
    out << (j ? "," : "") << column_names[j];
  }
  out << "\n";
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      out << (j ? "," : "") << format_double(rows(i, j));
    }
    out << "\n";
  }
  if (!out) throw IoError("failed while writing '" + path + "'");
}

RunData read_run_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");

  RunData data;
  std::string line;
  long line_no = 0;
  bool header_seen = false;
  std::vector<std::vector<double>> x_rows, y_rows, c_rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (starts_with(line, "# problem: ")) data.problem = line.substr(11);
      if (starts_with(line, "# config: ")) data.config_json = line.substr(10);
      continue;
    }
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() < 4 || fields[0] != "iteration" || fields[1] != "phase" ||
          fields[fields.size() - 2] != "incumbent_or_hypervolume" ||
          fields.back() != "elapsed_seconds") {
        throw ParseError("not a run CSV header", line_no);
      }
      for (std::size_t j = 2; j + 2 < fields.size(); ++j) {
        if (starts_with(fields[j], "x_")) {
          ++data.d;
        } else if (starts_with(fields[j], "y_")) {
          ++data.m;
        } else if (starts_with(fields[j], "c_")) {
          ++data.q;
        } else {
          throw ParseError("unexpected column '" + fields[j] + "'", line_no);
        }
      }
      if (data.d < 1 || data.m < 1) throw ParseError("run CSV needs x_* and y_* columns", line_no);
      header_seen = true;
      continue;
    }

    const std::size_t expected = 4 + static_cast<std::size_t>(data.d + data.m + data.q);
    if (fields.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    std::size_t col = 0;
    const double iter_value = parse_number(fields[col++], line_no);
    data.iteration.push_back(static_cast<int>(iter_value));
    const std::string& phase = fields[col++];
    if (phase != "init" && phase != "bo") throw ParseError("unknown phase '" + phase + "'", line_no);
    data.phase.push_back(phase);
    std::vector<double> xs, ys, cs;
    for (int j = 0; j < data.d; ++j) xs.push_back(parse_number(fields[col++], line_no));
    for (int j = 0; j < data.m; ++j) ys.push_back(parse_number(fields[col++], line_no));
    for (int j = 0; j < data.q; ++j) cs.push_back(parse_number(fields[col++], line_no));
    data.metric.push_back(parse_number(fields[col++], line_no));
    data.elapsed.push_back(parse_number(fields[col++], line_no));
    x_rows.push_back(std::move(xs));
    y_rows.push_back(std::move(ys));
    c_rows.push_back(std::move(cs));
  }

  if (!header_seen) throw ParseError("no header row found", line_no == 0 ? 1 : line_no);

  const int n = static_cast<int>(x_rows.size());
  data.X.resize(n, data.d);
  data.Y.resize(n, data.m);
  data.C.resize(n, data.q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < data.d; ++j) data.X(i, j) = x_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (int j = 0; j < data.m; ++j) data.Y(i, j) = y_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (int j = 0; j < data.q; ++j) data.C(i, j) = c_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return data;
}

}  // namespace gpbo
