#pragma once

// Machine-readable analysis report and its JSON form.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edmyield/edm_core.hpp"
#include "edmyield/joint_analysis.hpp"
#include "edmyield/yield_analysis.hpp"

namespace edmyield::cli {

inline constexpr const char* kGaleBasisNote =
    "Gale rows are given in an arbitrary orthonormal basis of the Gale space; only "
    "basis-independent facts (zero rows, parallel rows, singular row subsets) carry meaning.";

struct PositionRecord {
  std::string route;
  bool in_general_position = true;
  std::vector<Index> witness;         // as reported by the route
  std::vector<Index> witness_points;  // affinely dependent points
  bool operator==(const PositionRecord&) const = default;
};

struct GeneralPositionRecord {
  bool in_general_position = true;
  std::optional<PositionRecord> gale;
  PositionRecord affine;
  bool operator==(const GeneralPositionRecord&) const = default;
};

struct EntryRecord {
  Index k = 0;
  Index l = 0;
  std::string status;
  std::string case_tag;
  double lower = 0.0;
  std::optional<double> upper;  // empty when unbounded
  std::optional<double> c;
  bool near_threshold = false;
  bool operator==(const EntryRecord&) const = default;
};

struct JointRecord {
  Index i = 0;
  Index j = 0;
  Index k = 0;
  std::string status;
  std::string case_tag;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> t_lo;
  std::optional<double> t_hi;
  bool operator==(const JointRecord&) const = default;
};

struct OracleRecord {
  std::string target;           // "entry" or "ray"
  std::vector<Index> indices;   // (k, l) or (i, j, k)
  double formula_lower = 0.0;
  std::optional<double> formula_upper;
  double oracle_lower = 0.0;
  std::optional<double> oracle_upper;
  double max_abs_diff = 0.0;
  double tolerance = 0.0;
  bool agree = false;
  bool operator==(const OracleRecord&) const = default;
};

struct TolerancesRecord {
  double rank_rel = 0.0;
  double psd_rel = 0.0;
  double parallel_rel = 0.0;
  double oracle_abs = 0.0;
  double oracle_psd_rel = 0.0;
  bool operator==(const TolerancesRecord&) const = default;
};

struct ReportDocument {
  std::string schema_version = "1";
  Index n = 0;
  std::string matrix_hash;
  int r = 0;
  std::vector<double> x_eigenvalues;
  std::optional<GeneralPositionRecord> general_position;
  std::string gale_basis_note;
  std::vector<std::vector<double>> gale_rows;
  std::vector<EntryRecord> entries;
  std::optional<std::vector<JointRecord>> joints;
  bool joints_truncated = false;
  TolerancesRecord tolerances;
  std::optional<std::vector<OracleRecord>> oracle;
  bool operator==(const ReportDocument&) const = default;
};

void to_json(nlohmann::ordered_json& j, const PositionRecord& v);
void from_json(const nlohmann::ordered_json& j, PositionRecord& v);
void to_json(nlohmann::ordered_json& j, const GeneralPositionRecord& v);
void from_json(const nlohmann::ordered_json& j, GeneralPositionRecord& v);
void to_json(nlohmann::ordered_json& j, const EntryRecord& v);
void from_json(const nlohmann::ordered_json& j, EntryRecord& v);
void to_json(nlohmann::ordered_json& j, const JointRecord& v);
void from_json(const nlohmann::ordered_json& j, JointRecord& v);
void to_json(nlohmann::ordered_json& j, const OracleRecord& v);
void from_json(const nlohmann::ordered_json& j, OracleRecord& v);
void to_json(nlohmann::ordered_json& j, const TolerancesRecord& v);
void from_json(const nlohmann::ordered_json& j, TolerancesRecord& v);
void to_json(nlohmann::ordered_json& j, const ReportDocument& v);
void from_json(const nlohmann::ordered_json& j, ReportDocument& v);

std::string emit_json(const ReportDocument& doc);
ReportDocument parse_report(const std::string& text);

// FNV-1a over the order and the row-major IEEE-754 bytes, as 16 hex digits.
std::string matrix_hash(const Eigen::MatrixXd& d);

struct ReportOptions {
  bool general_position = true;
  bool joints = false;
  std::size_t joint_limit = static_cast<std::size_t>(-1);
  bool oracle_check = false;
};

// Formula-vs-oracle tolerance: 1e-6 for yielding entries and rays. Unyielding
// entries get 1e-2: lambda_min can leave zero quadratically there, which caps
// the resolution of a thresholded eigenvalue test.
inline constexpr double kOracleTolYielding = 1e-6;
inline constexpr double kOracleTolUnyielding = 1e-2;

EntryRecord to_record(const EntryReport& e);
JointRecord to_record(const JointReport& j);
TolerancesRecord to_record(const Tolerances& tol);

ReportDocument build_report(const EdmDecomposition& dec, const ReportOptions& options);

}  // namespace edmyield::cli
