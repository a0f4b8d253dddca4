#pragma once

// Operator-matrix machinery on finite-dimensional blocks: the Schur
// complement of the trailing block, the resolvent assembled from it, and
// block-level inclusion regions measured in induced l1 norms.
//
// Block indices are zero-based. "Singular" always means the LU pivot test
// of lu_inverse failed; a singular diagonal resolvent puts z in the
// diagonal spectrum, which every family counts as a member.

#include <cstddef>
#include <span>
#include <vector>

#include "schurloc/matrix.hpp"
#include "schurloc/regions.hpp"

namespace schurloc {

/// [[A, B], [C, D]] with D the trailing block and A the leading n-1 blocks.
struct SchurSplit {
  Matrix a;
  Matrix b;
  Matrix c;
  Matrix d;

  static SchurSplit from(const BlockMatrix& m);
  Matrix assemble() const;
};

/// Delta(z) = z - A - B (z - D)^-1 C. Throws Error{lambda_in_sigma_d}.
Matrix schur_complement(const SchurSplit& s, Complex z);

/// (z - M)^-1 built block-wise from Delta(z)^-1 and (z - D)^-1. Throws
/// Error{lambda_in_sigma_d} or Error{delta_singular}; the latter means z is
/// an eigenvalue of the full matrix.
Matrix resolvent_via_schur(const SchurSplit& s, Complex z);

enum class SchurKind { schur, modified };

/// R_kj(z) (or R*_kj) as a sum of l1 operator norms. Throws
/// Error{diagonal_resolvent_singular} carrying the offending block index.
double block_r_value(const BlockMatrix& m, std::size_t k, std::size_t j, Complex z,
                     SchurKind kind = SchurKind::schur);

/// 1/||(z - A_jj)^-1|| <= sum_{i != j} ||A_ij||, or z in sigma(A_jj).
bool block_gershgorin_member(const BlockMatrix& m, std::size_t j, Complex z);
bool block_cassini_member(const BlockMatrix& m, std::size_t i, std::size_t j, Complex z);
bool block_schur_member(const BlockMatrix& m, std::size_t k, std::size_t j, Complex z,
                        SchurKind kind = SchurKind::schur);

/// Locus value: membership holds iff the score is >= 1. The score is
/// +infinity when z lies in a diagonal spectrum that decides membership.
///   gershgorin:     max_j ||(z - A_jj)^-1|| sum_{i != j} ||A_ij||
///   cassini:        max_{i<j} of the product of the column-sum factors
///   schur/modified: min_m max_{j != m} R_mj(z)
double block_locus_score(const BlockMatrix& m, Family f, Complex z,
                         EvalCounter* counter = nullptr);
bool block_locus_member(const BlockMatrix& m, Family f, Complex z,
                        EvalCounter* counter = nullptr);

/// Schur-family locus score computed by moving each block m to the last
/// position with one transposition and evaluating R_{n,j} there.
double block_schur_locus_score_permuted(const BlockMatrix& m, Complex z,
                                        SchurKind kind = SchurKind::schur);

struct InclusionReport {
  Spectrum eigenvalues;
  std::vector<Family> families;
  /// verdicts[f][e]: eigenvalue e is a member of the locus of families[f].
  std::vector<std::vector<bool>> verdicts;
  /// margins[f][e]: locus score minus one at the best boundary nudge.
  std::vector<std::vector<double>> margins;
  double min_margin = 0.0;

  bool all_member() const;
};

/// Offset used to probe around eigenvalues that sit on a region boundary.
inline constexpr double kBoundaryNudge = 1e-9;

/// Checks every oracle eigenvalue against each requested locus. Schur
/// families go through the permuted route.
InclusionReport verify_inclusion(const BlockMatrix& m,
                                 std::span<const Family> families = kAllFamilies);

}  // namespace schurloc
