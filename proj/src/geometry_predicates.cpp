#include "edmyield/geometry_predicates.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "combinations.hpp"
#include "edmyield/error.hpp"
#include "edmyield/joint_analysis.hpp"
#include "parallel_util.hpp"
#include "position_predicates.hpp"

namespace edmyield {

std::string_view to_string(PositionRoute r) {
  return r == PositionRoute::GaleSubmatrices ? "gale-submatrices" : "affine-subsets";
}

std::vector<Index> GeneralPositionResult::witness_points(Index n) const {
  if (!witness) return {};
  if (route == PositionRoute::AffineSubsets) return *witness;
  std::vector<Index> out;
  for (Index i = 1; i <= n; ++i) {
    if (std::find(witness->begin(), witness->end(), i) == witness->end()) out.push_back(i);
  }
  return out;
}

namespace {

// Lexicographically first k-subset of {0..n-1} for which `test` reports a
// violation. Threads scan contiguous rank blocks and stop once a smaller
// violating rank is known, so the answer matches the serial scan.
template <class Test>
std::optional<std::vector<int>> first_violation(int n, int k, const Test& test) {
  const std::uint64_t total = detail::binomial(n, k);
  std::atomic<std::uint64_t> best{total};
  detail::ExceptionSlot failure;

#pragma omp parallel
  {
    std::uint64_t threads = 1;
    std::uint64_t id = 0;
#ifdef _OPENMP
    threads = static_cast<std::uint64_t>(omp_get_num_threads());
    id = static_cast<std::uint64_t>(omp_get_thread_num());
#endif
    const std::uint64_t begin = total / threads * id + std::min(id, total % threads);
    const std::uint64_t end = begin + total / threads + (id < total % threads ? 1 : 0);
    failure.run([&] {
      if (begin >= end) return;
      std::vector<int> combo = detail::unrank_combination(n, k, begin);
      for (std::uint64_t rank = begin; rank < end; ++rank) {
        if (rank >= best.load(std::memory_order_relaxed)) break;
        if (test.violates(combo)) {
          std::uint64_t seen = best.load();
          while (rank < seen && !best.compare_exchange_weak(seen, rank)) {
          }
          break;
        }
        detail::next_combination(combo, n);
      }
    });
  }
  failure.rethrow();

  if (best.load() == total) return std::nullopt;
  return detail::unrank_combination(n, k, best.load());
}

std::vector<Index> one_based(const std::vector<int>& v) {
  std::vector<Index> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](int x) { return Index{x} + 1; });
  return out;
}

}  // namespace

GeneralPositionResult general_position_gale(const EdmDecomposition& dec) {
  const Index m = dec.gale_dimension();
  if (m == 0) {
    throw Error(ErrorCode::NoGaleSpace,
                "embedding dimension is n-1; use the affine-subset route");
  }
  GeneralPositionResult out;
  out.route = PositionRoute::GaleSubmatrices;
  const detail::GaleSubsetTest test(dec);
  if (auto bad = first_violation(static_cast<int>(dec.order()), static_cast<int>(m), test)) {
    out.in_general_position = false;
    out.witness = one_based(*bad);
  }
  return out;
}

GeneralPositionResult general_position_affine(const EdmDecomposition& dec) {
  GeneralPositionResult out;
  out.route = PositionRoute::AffineSubsets;
  const detail::AffineSubsetTest test(dec);
  const int r = dec.embedding_dimension();
  if (auto bad = first_violation(static_cast<int>(dec.order()), r + 1, test)) {
    out.in_general_position = false;
    out.witness = one_based(*bad);
  }
  return out;
}

GeneralPositionResult general_position(const EdmDecomposition& dec) {
  return dec.gale_dimension() > 0 ? general_position_gale(dec) : general_position_affine(dec);
}

bool ConsistencyAudit::all_hold() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConsistencyCheck& c) { return c.holds; });
}

const ConsistencyCheck& ConsistencyAudit::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidInput, "no audit check named " + std::string(name));
}

ConsistencyAudit consistency_audit(const EdmDecomposition& dec, const YieldReport& report) {
  const Index n = dec.order();
  const Index r = dec.embedding_dimension();
  const std::size_t yielding = report.yielding_count();
  const std::size_t total = report.entries.size();

  ConsistencyAudit audit;
  const GeneralPositionResult affine = general_position_affine(dec);
  audit.in_general_position = affine.in_general_position;
  const bool gp = affine.in_general_position;

  const auto describe = [&](std::size_t count) {
    return std::to_string(count) + " of " + std::to_string(total) + " entries yielding";
  };

  {
    ConsistencyCheck c{"position_routes_agree", r <= n - 2, true, ""};
    if (c.applicable) {
      const GeneralPositionResult gale = general_position_gale(dec);
      c.holds = gale.in_general_position == affine.in_general_position;
      c.detail = std::string("gale=") + (gale.in_general_position ? "true" : "false") +
                 " affine=" + (affine.in_general_position ? "true" : "false");
    }
    audit.checks.push_back(c);
  }
  {
    ConsistencyCheck c{"full_rank_all_yielding", r == n - 1, true, describe(yielding)};
    if (c.applicable) c.holds = yielding == total;
    audit.checks.push_back(c);
  }
  {
    // Biconditional: general position and "every entry yielding" agree.
    ConsistencyCheck c{"corank1_general_position_iff_all_yielding", r == n - 2, true,
                     describe(yielding)};
    if (c.applicable) c.holds = gp == (yielding == total);
    audit.checks.push_back(c);
  }
  {
    ConsistencyCheck c{"corank2plus_general_position_all_unyielding", r <= n - 3 && gp, true,
                     describe(yielding)};
    if (c.applicable) c.holds = yielding == 0;
    audit.checks.push_back(c);
  }

  const bool corank2 = r == n - 3 && gp;
  const bool corank3plus = r <= n - 4 && gp;
  ConsistencyCheck jy{"corank2_general_position_jointly_yielding", corank2, true, ""};
  ConsistencyCheck ju{"corank3plus_general_position_jointly_unyielding", corank3plus, true, ""};
  if ((corank2 || corank3plus) && n >= 4) {
    const JointEnumeration joints = enumerate_joints(dec, report);
    const auto count = static_cast<std::size_t>(
        std::count_if(joints.joints.begin(), joints.joints.end(), [](const JointReport& j) {
          return j.status == JointStatus::JointlyYielding;
        }));
    // Every entry is unyielding here, so every same-row pair is enumerated.
    const std::size_t expected = static_cast<std::size_t>(n) *
                                 static_cast<std::size_t>((n - 1) * (n - 2) / 2);
    const std::string detail = std::to_string(count) + " of " +
                               std::to_string(joints.joints.size()) +
                               " same-row pairs jointly yielding";
    if (corank2) {
      jy.holds = yielding == 0 && joints.joints.size() == expected &&
                 count == joints.joints.size();
      jy.detail = detail;
    }
    if (corank3plus) {
      ju.holds = yielding == 0 && joints.joints.size() == expected && count == 0;
      ju.detail = detail;
    }
  }
  audit.checks.push_back(jy);
  audit.checks.push_back(ju);
  return audit;
}

}  // namespace edmyield
