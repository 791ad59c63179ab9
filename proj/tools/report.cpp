#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>

#include "edmyield/error.hpp"
#include "edmyield/geometry_predicates.hpp"
#include "edmyield/oracle.hpp"

namespace edmyield::cli {

using json = nlohmann::ordered_json;

namespace {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) {
    j[key] = *v;
  } else {
    j[key] = nullptr;
  }
}

template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j.at(key).is_null()) {
    v = j.at(key).get<T>();
  } else {
    v.reset();
  }
}

}  // namespace

void to_json(json& j, const PositionRecord& v) {
  j = json{{"route", v.route},
           {"in_general_position", v.in_general_position},
           {"witness", v.witness},
           {"witness_points", v.witness_points}};
}

void from_json(const json& j, PositionRecord& v) {
  j.at("route").get_to(v.route);
  j.at("in_general_position").get_to(v.in_general_position);
  j.at("witness").get_to(v.witness);
  j.at("witness_points").get_to(v.witness_points);
}

void to_json(json& j, const GeneralPositionRecord& v) {
  j = json{{"in_general_position", v.in_general_position}};
  put_optional(j, "gale", v.gale);
  j["affine"] = v.affine;
}

void from_json(const json& j, GeneralPositionRecord& v) {
  j.at("in_general_position").get_to(v.in_general_position);
  get_optional(j, "gale", v.gale);
  j.at("affine").get_to(v.affine);
}

void to_json(json& j, const EntryRecord& v) {
  j = json{{"k", v.k},
           {"l", v.l},
           {"status", v.status},
           {"case_tag", v.case_tag},
           {"lower", v.lower}};
  put_optional(j, "upper", v.upper);
  if (v.c) j["c"] = *v.c;
  j["near_threshold"] = v.near_threshold;
}

void from_json(const json& j, EntryRecord& v) {
  j.at("k").get_to(v.k);
  j.at("l").get_to(v.l);
  j.at("status").get_to(v.status);
  j.at("case_tag").get_to(v.case_tag);
  j.at("lower").get_to(v.lower);
  get_optional(j, "upper", v.upper);
  get_optional(j, "c", v.c);
  j.at("near_threshold").get_to(v.near_threshold);
}

void to_json(json& j, const JointRecord& v) {
  j = json{{"i", v.i}, {"j", v.j}, {"k", v.k}, {"status", v.status}, {"case_tag", v.case_tag}};
  if (v.c1) j["c1"] = *v.c1;
  if (v.c2) j["c2"] = *v.c2;
  if (v.t_lo) j["t_lo"] = *v.t_lo;
  if (v.t_hi) j["t_hi"] = *v.t_hi;
}

void from_json(const json& j, JointRecord& v) {
  j.at("i").get_to(v.i);
  j.at("j").get_to(v.j);
  j.at("k").get_to(v.k);
  j.at("status").get_to(v.status);
  j.at("case_tag").get_to(v.case_tag);
  get_optional(j, "c1", v.c1);
  get_optional(j, "c2", v.c2);
  get_optional(j, "t_lo", v.t_lo);
  get_optional(j, "t_hi", v.t_hi);
}

void to_json(json& j, const OracleRecord& v) {
  j = json{{"target", v.target}, {"indices", v.indices}, {"formula_lower", v.formula_lower}};
  put_optional(j, "formula_upper", v.formula_upper);
  j["oracle_lower"] = v.oracle_lower;
  put_optional(j, "oracle_upper", v.oracle_upper);
  j["max_abs_diff"] = v.max_abs_diff;
  j["tolerance"] = v.tolerance;
  j["agree"] = v.agree;
}

void from_json(const json& j, OracleRecord& v) {
  j.at("target").get_to(v.target);
  j.at("indices").get_to(v.indices);
  j.at("formula_lower").get_to(v.formula_lower);
  get_optional(j, "formula_upper", v.formula_upper);
  j.at("oracle_lower").get_to(v.oracle_lower);
  get_optional(j, "oracle_upper", v.oracle_upper);
  j.at("max_abs_diff").get_to(v.max_abs_diff);
  j.at("tolerance").get_to(v.tolerance);
  j.at("agree").get_to(v.agree);
}

void to_json(json& j, const TolerancesRecord& v) {
  j = json{{"rank_rel", v.rank_rel},
           {"psd_rel", v.psd_rel},
           {"parallel_rel", v.parallel_rel},
           {"oracle_abs", v.oracle_abs},
           {"oracle_psd_rel", v.oracle_psd_rel}};
}

void from_json(const json& j, TolerancesRecord& v) {
  j.at("rank_rel").get_to(v.rank_rel);
  j.at("psd_rel").get_to(v.psd_rel);
  j.at("parallel_rel").get_to(v.parallel_rel);
  j.at("oracle_abs").get_to(v.oracle_abs);
  j.at("oracle_psd_rel").get_to(v.oracle_psd_rel);
}

void to_json(json& j, const ReportDocument& v) {
  j = json{{"schema_version", v.schema_version},
           {"n", v.n},
           {"matrix_hash", v.matrix_hash},
           {"r", v.r},
           {"x_eigenvalues", v.x_eigenvalues}};
  put_optional(j, "general_position", v.general_position);
  j["gale"] = json{{"basis_note", v.gale_basis_note}, {"rows", v.gale_rows}};
  j["entries"] = v.entries;
  put_optional(j, "joints", v.joints);
  j["joints_truncated"] = v.joints_truncated;
  j["tolerances"] = v.tolerances;
  put_optional(j, "oracle", v.oracle);
}

void from_json(const json& j, ReportDocument& v) {
  j.at("schema_version").get_to(v.schema_version);
  j.at("n").get_to(v.n);
  j.at("matrix_hash").get_to(v.matrix_hash);
  j.at("r").get_to(v.r);
  j.at("x_eigenvalues").get_to(v.x_eigenvalues);
  get_optional(j, "general_position", v.general_position);
  j.at("gale").at("basis_note").get_to(v.gale_basis_note);
  j.at("gale").at("rows").get_to(v.gale_rows);
  j.at("entries").get_to(v.entries);
  get_optional(j, "joints", v.joints);
  j.at("joints_truncated").get_to(v.joints_truncated);
  j.at("tolerances").get_to(v.tolerances);
  get_optional(j, "oracle", v.oracle);
}

std::string emit_json(const ReportDocument& doc) {
  return json(doc).dump(2) + "\n";
}

ReportDocument parse_report(const std::string& text) {
  try {
    return json::parse(text).get<ReportDocument>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

std::string matrix_hash(const Eigen::MatrixXd& d) {
  std::uint64_t h = 14695981039346656037ULL;
  const auto mix = [&](const unsigned char* bytes, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const auto n = static_cast<std::uint64_t>(d.rows());
  mix(reinterpret_cast<const unsigned char*>(&n), sizeof n);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index k = 0; k < d.cols(); ++k) {
      const double x = d(i, k);
      unsigned char buf[sizeof(double)];
      std::memcpy(buf, &x, sizeof x);
      mix(buf, sizeof buf);
    }
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

EntryRecord to_record(const EntryReport& e) {
  EntryRecord r;
  r.k = e.k;
  r.l = e.l;
  r.status = std::string(to_string(e.status));
  r.case_tag = std::string(to_string(e.interval.tag));
  r.lower = e.interval.lower;
  if (!e.interval.upper_unbounded) r.upper = e.interval.upper;
  r.c = e.c;
  r.near_threshold = e.near_threshold;
  return r;
}

JointRecord to_record(const JointReport& j) {
  JointRecord r;
  r.i = j.i;
  r.j = j.j;
  r.k = j.k;
  r.status = std::string(to_string(j.status));
  r.case_tag = std::string(to_string(j.case_tag));
  if (j.coefficients) {
    r.c1 = j.coefficients->c1;
    r.c2 = j.coefficients->c2;
  }
  if (j.ray) {
    r.t_lo = j.ray->lower;
    r.t_hi = j.ray->upper;
  }
  return r;
}

TolerancesRecord to_record(const Tolerances& tol) {
  return {tol.rank_rel, tol.psd_rel, tol.parallel_rel, tol.oracle_abs, tol.oracle_psd_rel};
}

namespace {

PositionRecord to_record(const GeneralPositionResult& g, Index n) {
  PositionRecord r;
  r.route = std::string(to_string(g.route));
  r.in_general_position = g.in_general_position;
  if (g.witness) r.witness = *g.witness;
  r.witness_points = g.witness_points(n);
  return r;
}

double endpoint_diff(double a, bool a_unbounded, double b, bool b_unbounded) {
  if (a_unbounded != b_unbounded) return std::numeric_limits<double>::infinity();
  return a_unbounded ? 0.0 : std::abs(a - b);
}

OracleRecord compare(std::string target, std::vector<Index> indices, double lower, double upper,
                     bool upper_unbounded, const OracleInterval& o, double tolerance) {
  OracleRecord rec;
  rec.target = std::move(target);
  rec.indices = std::move(indices);
  rec.formula_lower = lower;
  if (!upper_unbounded) rec.formula_upper = upper;
  rec.oracle_lower = o.lower;
  if (!o.upper_unbounded) rec.oracle_upper = o.upper;
  rec.max_abs_diff =
      std::max(endpoint_diff(lower, false, o.lower, o.lower_unbounded),
               endpoint_diff(upper, upper_unbounded, o.upper, o.upper_unbounded));
  rec.tolerance = tolerance;
  rec.agree = rec.max_abs_diff <= tolerance;
  return rec;
}

}  // namespace

ReportDocument build_report(const EdmDecomposition& dec, const ReportOptions& options) {
  const Index n = dec.order();
  ReportDocument doc;
  doc.n = n;
  doc.matrix_hash = matrix_hash(dec.distances().matrix());
  doc.r = dec.embedding_dimension();
  const Eigen::VectorXd& xe = dec.projected_gram_eigenvalues();
  doc.x_eigenvalues.assign(xe.data(), xe.data() + xe.size());
  doc.tolerances = to_record(dec.tolerances());

  if (options.general_position) {
    GeneralPositionRecord gp;
    gp.affine = to_record(general_position_affine(dec), n);
    if (dec.gale_dimension() > 0) gp.gale = to_record(general_position_gale(dec), n);
    gp.in_general_position = gp.affine.in_general_position;
    doc.general_position = gp;
  }

  doc.gale_basis_note = kGaleBasisNote;
  const Eigen::MatrixXd& z = dec.gale();
  for (Eigen::Index i = 0; i < z.rows() && z.cols() > 0; ++i) {
    std::vector<double> row;
    for (Eigen::Index c = 0; c < z.cols(); ++c) row.push_back(z(i, c));
    doc.gale_rows.push_back(std::move(row));
  }

  const YieldReport report = analyze_all(dec);
  for (const auto& e : report.entries) doc.entries.push_back(to_record(e));

  JointEnumeration joints;
  if (options.joints && n >= 4) {
    joints = enumerate_joints(dec, report, options.joint_limit);
  }
  if (options.joints) {
    std::vector<JointRecord> records;
    for (const auto& j : joints.joints) records.push_back(to_record(j));
    doc.joints = std::move(records);
    doc.joints_truncated = joints.truncated;
  }

  if (options.oracle_check) {
    const DistanceMatrix& d = dec.distances();
    const Tolerances& tol = dec.tolerances();
    std::vector<PerturbationDirection> directions = all_unit_directions(n);
    for (const auto& j : joints.joints) {
      if (j.status == JointStatus::JointlyYielding) {
        directions.push_back(PerturbationDirection::joint(n, j.i, j.j, j.k, j.coefficients->c1,
                                                          j.coefficients->c2));
      }
    }
    const std::vector<OracleInterval> oracle = oracle_sweep(d, directions, tol);
    std::vector<OracleRecord> records;
    std::size_t at = 0;
    for (const auto& e : report.entries) {
      const double tolerance =
          e.status == EntryStatus::Yielding ? kOracleTolYielding : kOracleTolUnyielding;
      records.push_back(compare("entry", {e.k, e.l}, e.interval.lower, e.interval.upper,
                                e.interval.upper_unbounded, oracle[at++], tolerance));
    }
    for (const auto& j : joints.joints) {
      if (j.status != JointStatus::JointlyYielding) continue;
      records.push_back(compare("ray", {j.i, j.j, j.k}, j.ray->lower, j.ray->upper, false,
                                oracle[at++], kOracleTolYielding));
    }
    doc.oracle = std::move(records);
  }
  return doc;
}

}  // namespace edmyield::cli
