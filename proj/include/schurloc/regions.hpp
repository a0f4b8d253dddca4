#pragma once

// Spectral inclusion regions of a scalar matrix. Every predicate is
// evaluated with the resolvent denominators multiplied through, so points
// on the diagonal are members without special cases and the sets are
// closed (equality counts as membership). Indices are zero-based.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "schurloc/matrix.hpp"

namespace schurloc {

enum class Family { gershgorin, cassini, schur, modified_schur };
enum class NormMode { one, infinity };

inline constexpr std::array<Family, 4> kAllFamilies = {Family::gershgorin, Family::cassini,
                                                      Family::schur, Family::modified_schur};

std::string_view family_name(Family f) noexcept;
/// Accepts "gershgorin", "cassini", "schur", "modified-schur" (and the
/// underscore spelling).
std::optional<Family> parse_family(std::string_view name) noexcept;
std::string_view norm_name(NormMode m) noexcept;

/// Tally of pairwise inequalities evaluated by the locus predicates.
struct EvalCounter {
  std::size_t inequalities = 0;
};

/// Number of pairwise inequalities that define a family's locus for an
/// n x n matrix: n for Gershgorin, n(n-1)/2 for Cassini, n(n-1) for both
/// Schur families.
std::size_t inequality_count(Family f, std::size_t n) noexcept;

/// |z - a_jj| <= sum_{i != j} |a_ij|  (column sums).
bool gershgorin_member(const Matrix& a, std::size_t j, Complex z);

/// |z - a_ii| |z - a_jj| <= r_i r_j with r the off-diagonal column sums.
bool cassini_member(const Matrix& a, std::size_t i, std::size_t j, Complex z);

/// Schur set S_kj. With NormMode::infinity the second index is the row i
/// of the row-sum variant, multiplied through by every diagonal distance.
bool schur_member(const Matrix& a, std::size_t k, std::size_t j, Complex z,
                  NormMode mode = NormMode::one);

/// Modified Schur set S*_kj: the composite term of S_kj split by the
/// triangle inequality.
bool modified_schur_member(const Matrix& a, std::size_t k, std::size_t j, Complex z);

bool gershgorin_locus_member(const Matrix& a, Complex z, EvalCounter* counter = nullptr);
bool cassini_locus_member(const Matrix& a, Complex z, EvalCounter* counter = nullptr);
/// Intersection over m of the union over j != m of S_mj.
bool schur_locus_member(const Matrix& a, Complex z, NormMode mode = NormMode::one,
                        EvalCounter* counter = nullptr);
bool modified_schur_locus_member(const Matrix& a, Complex z, EvalCounter* counter = nullptr);

bool locus_member(const Matrix& a, Family f, Complex z, NormMode mode = NormMode::one,
                  EvalCounter* counter = nullptr);

/// One region of one family: a single member set when `indices` is
/// non-empty, otherwise the combined locus.
struct RegionQuery {
  Family family = Family::schur;
  std::vector<std::size_t> indices;
  NormMode norm = NormMode::one;

  /// Validates indices against dimension n and orders Cassini pairs.
  RegionQuery normalized(std::size_t n) const;
};

bool contains(const Matrix& a, const RegionQuery& q, Complex z);

}  // namespace schurloc
