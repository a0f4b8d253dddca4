#pragma once

// End-to-end pipelines behind the CLI subcommands. Each returns the report
// JSON plus any artifacts; file handling stays with the caller.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schurloc/block_schur.hpp"
#include "schurloc/geometry.hpp"
#include "schurloc/regions.hpp"

namespace schurloc {

inline constexpr const char* kReportSchema = "schurloc/1";
inline constexpr double kHermitianTol = 1e-10;

struct RunOptions {
  std::vector<Family> methods{kAllFamilies.begin(), kAllFamilies.end()};
  NormMode norm = NormMode::one;
  /// Explicit window bounds; std::nullopt selects auto_window.
  std::optional<Window> window;
  std::size_t resolution = 1024;
  double tol = 1e-9;
  std::size_t samples = 4096;

  /// Throws Error{config_error}.
  void validate(const BlockMatrix& m) const;
};

/// Membership predicate for one locus: scalar formulas when every block is
/// 1x1, block operator-norm formulas otherwise.
CountingPredicate locus_predicate(const BlockMatrix& m, Family f, NormMode norm);

struct LocateResult {
  std::string report_json;
  std::vector<std::pair<Family, GridMask>> masks;
  std::string svg;
};

struct VerifyResult {
  std::string report_json;
  bool all_member = false;
  InclusionReport report;
};

struct IntervalsResult {
  std::string report_json;
  std::vector<std::pair<Family, IntervalUnion>> intervals;
  std::vector<double> eigenvalues;
};

LocateResult run_locate(const BlockMatrix& m, const RunOptions& opts);
VerifyResult run_verify(const BlockMatrix& m, const RunOptions& opts);
/// Throws Error{hermitian_check_failed} unless the matrix is Hermitian to 1e-10.
IntervalsResult run_intervals(const BlockMatrix& m, const RunOptions& opts);

}  // namespace schurloc
