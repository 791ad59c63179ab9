#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace edmyield::cli {

enum class MatrixFormat { Auto, Dense, Csv, Json };

MatrixFormat parse_matrix_format(std::string_view name);

// Auto picks by extension: .csv, .json, anything else dense text.
MatrixFormat resolve_format(const std::string& path, MatrixFormat requested);

// Dense text: optional '#' comment lines, the order n, then n rows of n numbers.
Eigen::MatrixXd parse_dense(std::istream& in);
// One row per line, comma separated; the order is the number of rows.
Eigen::MatrixXd parse_csv(std::istream& in);
// {"n": n, "d": [[...], ...]}
Eigen::MatrixXd parse_json(std::istream& in);

Eigen::MatrixXd read_matrix(std::istream& in, MatrixFormat format);
// Throws Error(InvalidInput) when the file cannot be opened.
Eigen::MatrixXd read_matrix_file(const std::string& path, MatrixFormat format = MatrixFormat::Auto);

// Writers emit 17 significant digits and read back bit-exactly. `header`
// lines become '#' comments in dense and CSV output and a "header" string
// array in JSON; readers ignore them.
void write_dense(std::ostream& out, const Eigen::MatrixXd& d,
                 const std::vector<std::string>& header = {});
void write_csv(std::ostream& out, const Eigen::MatrixXd& d,
               const std::vector<std::string>& header = {});
void write_json(std::ostream& out, const Eigen::MatrixXd& d,
                const std::vector<std::string>& header = {});
void write_matrix(std::ostream& out, const Eigen::MatrixXd& d, MatrixFormat format,
                  const std::vector<std::string>& header = {});

}  // namespace edmyield::cli
