#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edmyield/edm_core.hpp"
#include "edmyield/error.hpp"
#include "edmyield/geometry_predicates.hpp"
#include "edmyield/joint_analysis.hpp"
#include "edmyield/oracle.hpp"
#include "edmyield/yield_analysis.hpp"
#include "matrix_io.hpp"
#include "report.hpp"

namespace edmyield::cli {

namespace {

const char* const kFooter = R"(Exit codes:
  0  success
  1  internal error
  2  input error (unreadable file, parse error, malformed matrix, bad flag)
  3  input is not a Euclidean distance matrix
  4  analysis precondition violated

Environment: EDMYIELD_TOL_RANK, EDMYIELD_TOL_PSD, EDMYIELD_TOL_PARALLEL,
EDMYIELD_TOL_ORACLE and EDMYIELD_TOL_ORACLE_PSD supply tolerances; flags win.
Indices are 1-based.)";

// 12 significant digits, no negative zero.
std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  if (x == 0.0) x = 0.0;
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

std::string interval_text(double lo, double hi, bool hi_unbounded = false,
                          bool lo_unbounded = false) {
  return "[" + (lo_unbounded ? std::string("-inf") : num(lo)) + ", " +
         (hi_unbounded ? std::string("+inf") : num(hi)) + "]";
}

std::string index_set(const std::vector<Index>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

struct Inputs {
  std::string path;
  std::string format = "auto";
  Tolerances tol;
};

DistanceMatrix load(const Inputs& in) {
  return DistanceMatrix(read_matrix_file(in.path, parse_matrix_format(in.format)));
}

void print_position(std::ostream& out, const GeneralPositionResult& g, Index n) {
  if (g.in_general_position) {
    out << "in general position\n";
  } else {
    out << "not in general position; witness points " << index_set(g.witness_points(n)) << "\n";
  }
  out << "route: " << to_string(g.route);
  if (g.witness) {
    out << " (" << (g.route == PositionRoute::GaleSubmatrices ? "singular Gale rows "
                                                              : "dependent points ")
        << index_set(*g.witness) << ")";
  }
  out << "\n";
}

void print_entry_line(std::ostream& out, const EntryReport& e) {
  std::ostringstream pos;
  pos << "(" << e.k << "," << e.l << ")";
  out << std::left << std::setw(9) << pos.str() << std::setw(12) << to_string(e.status)
      << std::setw(14) << to_string(e.interval.tag)
      << interval_text(e.interval.lower, e.interval.upper, e.interval.upper_unbounded);
  if (e.c) out << "  c = " << num(*e.c);
  if (e.near_threshold) out << "  (near parallel threshold)";
  out << "\n";
}

void print_joint_line(std::ostream& out, const JointRecord& j) {
  std::ostringstream pos;
  pos << "(" << j.i << ";" << j.j << "," << j.k << ")";
  out << std::left << std::setw(11) << pos.str() << std::setw(20) << j.status << std::setw(11)
      << j.case_tag;
  if (j.c1 && j.c2) out << "c = (" << num(*j.c1) << ", " << num(*j.c2) << ")  ";
  if (j.t_lo && j.t_hi) out << "ray " << interval_text(*j.t_lo, *j.t_hi);
  out << "\n";
}

void print_report_text(std::ostream& out, const EdmDecomposition& dec,
                       const ReportDocument& doc) {
  out << "n = " << doc.n << ", embedding dimension r = " << doc.r << "\n";
  out << "eigenvalues of X:";
  for (double v : doc.x_eigenvalues) out << " " << num(v);
  out << "\n";
  if (doc.general_position) {
    print_position(out, general_position(dec), doc.n);
  }
  std::size_t yielding = 0;
  for (const auto& e : doc.entries) yielding += e.status == "yielding" ? 1 : 0;
  out << "\n" << yielding << " of " << doc.entries.size() << " entries yielding\n";
  const YieldReport report = analyze_all(dec);
  for (const auto& e : report.entries) print_entry_line(out, e);

  if (doc.joints) {
    out << "\nsame-row unyielding pairs: " << doc.joints->size();
    if (doc.joints_truncated) out << " (truncated)";
    out << "\n";
    for (const auto& j : *doc.joints) print_joint_line(out, j);
  }
  if (doc.oracle) {
    std::size_t agree = 0;
    double worst = 0.0;
    for (const auto& o : *doc.oracle) {
      agree += o.agree ? 1 : 0;
      worst = std::max(worst, o.max_abs_diff);
    }
    out << "\noracle check: " << agree << " of " << doc.oracle->size()
        << " intervals agree; largest endpoint difference " << num(worst) << "\n";
    for (const auto& o : *doc.oracle) {
      if (o.agree) continue;
      out << "  disagreement on " << o.target << " " << index_set(o.indices) << ": formula "
          << interval_text(o.formula_lower, o.formula_upper.value_or(0.0), !o.formula_upper)
          << " oracle "
          << interval_text(o.oracle_lower, o.oracle_upper.value_or(0.0), !o.oracle_upper)
          << "\n";
    }
  }
}

void add_input(CLI::App* cmd, Inputs& in) {
  cmd->add_option("file", in.path, "Matrix file (dense text, .csv or .json)")->required();
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::ParseError:
    case ErrorCode::NonFiniteEntry:
    case ErrorCode::AsymmetricMatrix:
    case ErrorCode::NonzeroDiagonal:
    case ErrorCode::NegativeEntry:
    case ErrorCode::InvalidIndex:
      return kExitInput;
    case ErrorCode::NotEuclidean:
      return kExitNotEdm;
    case ErrorCode::NoGaleSpace:
    case ErrorCode::PreconditionViolated:
    case ErrorCode::DegenerateGaleRows:
      return kExitPrecondition;
    case ErrorCode::DegenerateConfiguration:
    case ErrorCode::InternalInconsistency:
      return kExitInternal;
  }
  return kExitInternal;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perturbation analysis of Euclidean distance matrices", "edmyield"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  Inputs in;
  app.add_option("--format", in.format, "Matrix file format: auto, dense, csv, json")
      ->capture_default_str();
  app.add_option("--tol-rank", in.tol.rank_rel, "Relative eigenvalue threshold for numerical rank")
      ->envname("EDMYIELD_TOL_RANK")
      ->capture_default_str();
  app.add_option("--tol-psd", in.tol.psd_rel, "Relative floor for the PSD test")
      ->envname("EDMYIELD_TOL_PSD")
      ->capture_default_str();
  app.add_option("--tol-parallel", in.tol.parallel_rel,
                 "Relative residual for Gale-row parallelism")
      ->envname("EDMYIELD_TOL_PARALLEL")
      ->capture_default_str();
  app.add_option("--tol-oracle", in.tol.oracle_abs, "Bisection bracket width of the oracle")
      ->envname("EDMYIELD_TOL_ORACLE")
      ->capture_default_str();
  app.add_option("--tol-oracle-psd", in.tol.oracle_psd_rel,
                 "Relative PSD floor used by the oracle")
      ->envname("EDMYIELD_TOL_ORACLE_PSD")
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check that the matrix is an EDM and report r");
  add_input(validate, in);

  bool as_json = false;
  ReportOptions opts;
  bool no_gp = false;
  long long limit = -1;
  auto* analyze = app.add_subcommand("analyze", "Classify every entry and compute its interval");
  add_input(analyze, in);
  analyze->add_flag("--json", as_json, "Emit the JSON report");
  analyze->add_flag("--joint", opts.joints, "Also analyse every same-row unyielding pair");
  analyze->add_option("--limit", limit, "Stop the pair enumeration after this many pairs");
  analyze->add_flag("--oracle-check", opts.oracle_check,
                    "Cross-check every interval against the bisection oracle");
  analyze->add_flag("--no-gp", no_gp,
                    "Skip the general-position test (exponential in min(r+1, n-r-1))");

  Index k = 0;
  Index l = 0;
  auto* interval = app.add_subcommand("interval", "Yield interval of the entry (K, L)");
  add_input(interval, in);
  interval->add_option("k", k, "Row")->required();
  interval->add_option("l", l, "Column")->required();

  Index ji = 0;
  Index jj = 0;
  Index jk = 0;
  auto* joint = app.add_subcommand("joint", "Joint analysis of the unyielding entries (I,J), (I,K)");
  add_input(joint, in);
  joint->add_option("i", ji, "Shared row")->required();
  joint->add_option("j", jj, "First column")->required();
  joint->add_option("k", jk, "Second column")->required();

  auto* gp = app.add_subcommand(
      "gp",
      "General-position test. Enumerates C(n, n-r-1) Gale submatrices, or C(n, r+1) point "
      "subsets when r = n-1; meant for n up to about 30 with small corank");
  add_input(gp, in);

  std::vector<Index> entry;
  std::vector<Index> ray;
  double c1 = 1.0;
  double c2 = 1.0;
  auto* oracle = app.add_subcommand("oracle", "Feasible interval along a direction by bisection");
  add_input(oracle, in);
  auto* entry_opt = oracle->add_option("--entry", entry, "Direction E^kl")->expected(2);
  auto* ray_opt = oracle->add_option("--ray", ray, "Direction c1 E^ij + c2 E^ik")->expected(3);
  entry_opt->excludes(ray_opt);
  oracle->add_option("--c1", c1, "Weight of E^ij")->needs(ray_opt);
  oracle->add_option("--c2", c2, "Weight of E^ik")->needs(ray_opt);

  Index rn = 0;
  int rr = 0;
  std::string mode = "generic";
  std::uint64_t seed = 0;
  std::string output;
  auto* random = app.add_subcommand("random", "Write a seeded random EDM");
  random->add_option("n", rn, "Number of points")->required();
  random->add_option("r", rr, "Embedding dimension")->required();
  random->add_option("--mode", mode,
                     "generic, general-position, coincident-pair, collinear-triple, "
                     "parallel-gale or zero-gale-rows")
      ->capture_default_str();
  random->add_option("--seed", seed, "Random seed")->capture_default_str();
  random->add_option("-o,--output", output, "Output file (format by extension); stdout if absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    in.tol.validate();

    if (*validate) {
      const DistanceMatrix d = load(in);
      const EdmValidation v = validate_edm(d, in.tol);
      if (!v.is_edm) {
        out << "not an EDM: minimum eigenvalue of B is " << num(v.min_eigenvalue) << "\n";
        return kExitNotEdm;
      }
      out << "EDM: n = " << d.order() << ", embedding dimension r = " << v.embedding_dimension
          << "\n";
      return kExitOk;
    }

    if (*random) {
      const GeneratedInstance inst = random_edm(rn, rr, seed, parse_generator_mode(mode), in.tol);
      std::ostringstream line;
      line << "random n=" << inst.n << " r=" << inst.r << " mode=" << to_string(inst.mode)
           << " seed=" << inst.seed;
      if (!inst.marked.empty()) line << " marked=" << index_set(inst.marked);
      const std::vector<std::string> header = {line.str()};
      if (output.empty()) {
        write_dense(out, inst.d.matrix(), header);
      } else {
        std::ofstream file(output);
        if (!file) throw Error(ErrorCode::InvalidInput, "cannot write '" + output + "'");
        write_matrix(file, inst.d.matrix(), resolve_format(output, parse_matrix_format(in.format)),
                     header);
      }
      return kExitOk;
    }

    const EdmDecomposition dec = decompose(load(in), in.tol);

    if (*analyze) {
      opts.general_position = !no_gp;
      if (limit >= 0) opts.joint_limit = static_cast<std::size_t>(limit);
      const ReportDocument doc = build_report(dec, opts);
      if (as_json) {
        out << emit_json(doc);
      } else {
        print_report_text(out, dec, doc);
      }
      return kExitOk;
    }

    if (*interval) {
      const EntryReport e = analyze_entry(dec, k, l);
      out << interval_text(e.interval.lower, e.interval.upper, e.interval.upper_unbounded)
          << "\n";
      out << to_string(e.status) << " (" << to_string(e.interval.tag);
      if (e.c) out << ", c = " << num(*e.c);
      out << ")\n";
      return kExitOk;
    }

    if (*joint) {
      const JointRecord j = to_record(analyze_joint(dec, ji, jj, jk));
      out << j.status << " (" << j.case_tag << ")\n";
      if (j.c1 && j.c2) out << "c1 = " << num(*j.c1) << ", c2 = " << num(*j.c2) << "\n";
      if (j.t_lo && j.t_hi) out << "ray interval " << interval_text(*j.t_lo, *j.t_hi) << "\n";
      return kExitOk;
    }

    if (*gp) {
      print_position(out, general_position(dec), dec.order());
      return kExitOk;
    }

    if (*oracle) {
      const Index n = dec.order();
      if (entry.empty() && ray.empty()) {
        throw Error(ErrorCode::InvalidInput, "oracle needs --entry K L or --ray I J K");
      }
      const PerturbationDirection dir =
          entry.empty() ? PerturbationDirection::joint(n, ray[0], ray[1], ray[2], c1, c2)
                        : PerturbationDirection::unit(n, entry[0], entry[1]);
      const OracleInterval o = feasible_interval(dec.distances(), dir, in.tol);
      out << interval_text(o.lower, o.upper, o.upper_unbounded, o.lower_unbounded) << "\n";
      out << "bracket width " << num(o.achieved_width_tol) << "\n";
      if (o.bound_violation) out << "warning: unbounded side on a matrix of order >= 3\n";
      return kExitOk;
    }
  } catch (const NotEuclideanError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotEdm;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace edmyield::cli
