#include "matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "edmyield/error.hpp"

namespace edmyield::cli {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, "parse error: " + what);
}

double to_double(std::string_view token, const std::string& where) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    parse_error("'" + std::string(token) + "' is not a number (" + where + ")");
  }
  return value;
}

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skippable(const std::string& line) {
  const std::string s = strip(line);
  return s.empty() || s.front() == '#';
}

}  // namespace

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "auto") return MatrixFormat::Auto;
  if (name == "dense" || name == "txt") return MatrixFormat::Dense;
  if (name == "csv") return MatrixFormat::Csv;
  if (name == "json") return MatrixFormat::Json;
  throw Error(ErrorCode::InvalidInput, "unknown matrix format '" + std::string(name) + "'");
}

MatrixFormat resolve_format(const std::string& path, MatrixFormat requested) {
  if (requested != MatrixFormat::Auto) return requested;
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "csv") return MatrixFormat::Csv;
  if (ext == "json") return MatrixFormat::Json;
  return MatrixFormat::Dense;
}

Eigen::MatrixXd parse_dense(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    std::istringstream words(line);
    std::string w;
    while (words >> w) tokens.push_back(w);
  }
  if (tokens.empty()) parse_error("empty input");
  const double order = to_double(tokens.front(), "matrix order");
  if (order < 1 || order != static_cast<double>(static_cast<long>(order))) {
    parse_error("matrix order must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(order);
  if (static_cast<Eigen::Index>(tokens.size()) - 1 != n * n) {
    parse_error("expected " + std::to_string(n * n) + " entries, found " +
                std::to_string(tokens.size() - 1));
  }
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      d(i, j) = to_double(tokens[static_cast<std::size_t>(1 + i * n + j)],
                          "row " + std::to_string(i + 1));
    }
  }
  return d;
}

Eigen::MatrixXd parse_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      row.push_back(to_double(strip(cell), "row " + std::to_string(rows.size() + 1)));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_error("empty input");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != n) {
      parse_error("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                  " entries, expected " + std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = row[static_cast<std::size_t>(j)];
  }
  return d;
}

Eigen::MatrixXd parse_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error(e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc["d"].is_array()) {
    parse_error("expected an object with an array field \"d\"");
  }
  const auto& rows = doc["d"];
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() != n) {
      parse_error("field \"n\" does not match the number of rows");
    }
  }
  if (n == 0) parse_error("empty matrix");
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      parse_error("row " + std::to_string(i + 1) + " must be an array of " + std::to_string(n) +
                  " numbers");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) parse_error("row " + std::to_string(i + 1) + " has a non-numeric entry");
      d(i, j) = v.get<double>();
    }
  }
  return d;
}

Eigen::MatrixXd read_matrix(std::istream& in, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::Csv: return parse_csv(in);
    case MatrixFormat::Json: return parse_json(in);
    case MatrixFormat::Auto:
    case MatrixFormat::Dense: break;
  }
  return parse_dense(in);
}

Eigen::MatrixXd read_matrix_file(const std::string& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read '" + path + "'");
  return read_matrix(in, resolve_format(path, format));
}

void write_dense(std::ostream& out, const Eigen::MatrixXd& d,
                 const std::vector<std::string>& header) {
  const auto saved = out.precision();
  for (const auto& h : header) out << "# " << h << '\n';
  out << d.rows() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (j > 0) out << ' ';
      out << d(i, j);
    }
    out << '\n';
  }
  out.precision(saved);
}

void write_csv(std::ostream& out, const Eigen::MatrixXd& d,
               const std::vector<std::string>& header) {
  const auto saved = out.precision();
  for (const auto& h : header) out << "# " << h << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      if (j > 0) out << ',';
      out << d(i, j);
    }
    out << '\n';
  }
  out.precision(saved);
}

void write_json(std::ostream& out, const Eigen::MatrixXd& d,
                const std::vector<std::string>& header) {
  nlohmann::ordered_json doc;
  if (!header.empty()) doc["header"] = header;
  doc["n"] = d.rows();
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < d.cols(); ++j) row.push_back(d(i, j));
    rows.push_back(std::move(row));
  }
  doc["d"] = std::move(rows);
  out << doc.dump() << '\n';
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& d, MatrixFormat format,
                  const std::vector<std::string>& header) {
  switch (format) {
    case MatrixFormat::Csv: write_csv(out, d, header); return;
    case MatrixFormat::Json: write_json(out, d, header); return;
    case MatrixFormat::Auto:
    case MatrixFormat::Dense: break;
  }
  write_dense(out, d, header);
}

}  // namespace edmyield::cli
