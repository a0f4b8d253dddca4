#include "schurloc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schurloc/error.hpp"

namespace schurloc {
namespace {

void require_square(const Matrix& a) {
  if (!a.is_square() || a.rows() < 2) {
    throw Error(Errc::invalid_argument, "region predicates need a square matrix with n >= 2");
  }
}

void require_index(const Matrix& a, std::size_t i) {
  if (i >= a.rows()) throw Error(Errc::index_out_of_range, "index " + std::to_string(i));
}

void require_distinct(std::size_t k, std::size_t j) {
  if (k == j) throw Error(Errc::invalid_argument, "region indices must differ");
}

double column_radius(const Matrix& a, std::size_t j) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (i != j) r += std::abs(a(i, j));
  return r;
}

void tally(EvalCounter* counter) {
  if (counter != nullptr) ++counter->inequalities;
}

bool schur_member_one(const Matrix& a, std::size_t k, std::size_t j, Complex z) {
  const std::size_t n = a.rows();
  const Complex zk = z - a(k, k);
  double lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    Complex term = a(i, k) * a(k, j);
    if (i != j) term += zk * a(i, j);
    lhs += std::abs(term);
  }
  return lhs >= std::abs(z - a(j, j)) * std::abs(zk);
}

// Row-sum variant with row index i: sum over columns j != k of
// |a_ik a_kj + (1 - d_ij)(z - a_kk) a_ij| / |z - a_jj| >= |z - a_kk|,
// multiplied through by prod_{l != k} |z - a_ll|.
bool schur_member_inf(const Matrix& a, std::size_t k, std::size_t i, Complex z) {
  const std::size_t n = a.rows();
  const Complex zk = z - a(k, k);
  std::vector<double> dist(n);
  for (std::size_t l = 0; l < n; ++l) dist[l] = std::abs(z - a(l, l));

  double lhs = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    Complex num = a(i, k) * a(k, j);
    if (i != j) num += zk * a(i, j);
    double weight = std::abs(num);
    for (std::size_t l = 0; l < n && weight != 0.0; ++l)
      if (l != k && l != j) weight *= dist[l];
    lhs += weight;
  }
  double rhs = dist[k];
  for (std::size_t l = 0; l < n; ++l)
    if (l != k) rhs *= dist[l];
  return lhs >= rhs;
}

}  // namespace

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::gershgorin: return "gershgorin";
    case Family::cassini: return "cassini";
    case Family::schur: return "schur";
    case Family::modified_schur: return "modified-schur";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  if (name == "gershgorin") return Family::gershgorin;
  if (name == "cassini") return Family::cassini;
  if (name == "schur") return Family::schur;
  if (name == "modified-schur" || name == "modified_schur") return Family::modified_schur;
  return std::nullopt;
}

std::string_view norm_name(NormMode m) noexcept {
  return m == NormMode::one ? "one" : "inf";
}

std::size_t inequality_count(Family f, std::size_t n) noexcept {
  switch (f) {
    case Family::gershgorin: return n;
    case Family::cassini: return n * (n - 1) / 2;
    case Family::schur:
    case Family::modified_schur: return n * (n - 1);
  }
  return 0;
}

bool gershgorin_member(const Matrix& a, std::size_t j, Complex z) {
  require_square(a);
  require_index(a, j);
  return std::abs(z - a(j, j)) <= column_radius(a, j);
}

bool cassini_member(const Matrix& a, std::size_t i, std::size_t j, Complex z) {
  require_square(a);
  require_index(a, i);
  require_index(a, j);
  require_distinct(i, j);
  if (i > j) std::swap(i, j);
  return std::abs(z - a(i, i)) * std::abs(z - a(j, j)) <= column_radius(a, i) * column_radius(a, j);
}

bool schur_member(const Matrix& a, std::size_t k, std::size_t j, Complex z, NormMode mode) {
  require_square(a);
  require_index(a, k);
  require_index(a, j);
  require_distinct(k, j);
  return mode == NormMode::one ? schur_member_one(a, k, j, z) : schur_member_inf(a, k, j, z);
}

bool modified_schur_member(const Matrix& a, std::size_t k, std::size_t j, Complex z) {
  require_square(a);
  require_index(a, k);
  require_index(a, j);
  require_distinct(k, j);
  const std::size_t n = a.rows();
  const double zk = std::abs(z - a(k, k));
  const double akj = std::abs(a(k, j));
  double lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    lhs += std::abs(a(i, k)) * akj;
    if (i != j) lhs += std::abs(a(i, j)) * zk;
  }
  return lhs >= std::abs(z - a(j, j)) * zk;
}

bool gershgorin_locus_member(const Matrix& a, Complex z, EvalCounter* counter) {
  require_square(a);
  for (std::size_t j = 0; j < a.rows(); ++j) {
    tally(counter);
    if (std::abs(z - a(j, j)) <= column_radius(a, j)) return true;
  }
  return false;
}

bool cassini_locus_member(const Matrix& a, Complex z, EvalCounter* counter) {
  require_square(a);
  const std::size_t n = a.rows();
  std::vector<double> radius(n), dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    radius[i] = column_radius(a, i);
    dist[i] = std::abs(z - a(i, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      tally(counter);
      if (dist[i] * dist[j] <= radius[i] * radius[j]) return true;
    }
  }
  return false;
}

bool schur_locus_member(const Matrix& a, Complex z, NormMode mode, EvalCounter* counter) {
  require_square(a);
  const std::size_t n = a.rows();
  for (std::size_t m = 0; m < n; ++m) {
    bool in_sm = false;
    for (std::size_t j = 0; j < n && !in_sm; ++j) {
      if (j == m) continue;
      tally(counter);
      in_sm = mode == NormMode::one ? schur_member_one(a, m, j, z) : schur_member_inf(a, m, j, z);
    }
    if (!in_sm) return false;
  }
  return true;
}

bool modified_schur_locus_member(const Matrix& a, Complex z, EvalCounter* counter) {
  require_square(a);
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    bool in_sk = false;
    for (std::size_t j = 0; j < n && !in_sk; ++j) {
      if (j == k) continue;
      tally(counter);
      in_sk = modified_schur_member(a, k, j, z);
    }
    if (!in_sk) return false;
  }
  return true;
}

bool locus_member(const Matrix& a, Family f, Complex z, NormMode mode, EvalCounter* counter) {
  switch (f) {
    case Family::gershgorin: return gershgorin_locus_member(a, z, counter);
    case Family::cassini: return cassini_locus_member(a, z, counter);
    case Family::schur: return schur_locus_member(a, z, mode, counter);
    case Family::modified_schur: return modified_schur_locus_member(a, z, counter);
  }
  return false;
}

RegionQuery RegionQuery::normalized(std::size_t n) const {
  RegionQuery q = *this;
  for (std::size_t i : q.indices)
    if (i >= n) throw Error(Errc::index_out_of_range, "region index " + std::to_string(i));
  if (q.indices.empty()) return q;
  const std::size_t expected = family == Family::gershgorin ? 1 : 2;
  if (q.indices.size() != expected) {
    throw Error(Errc::invalid_argument, std::string(family_name(family)) + " takes " +
                                            std::to_string(expected) + " indices");
  }
  if (expected == 2) require_distinct(q.indices[0], q.indices[1]);
  if (family == Family::cassini && q.indices[0] > q.indices[1]) {
    std::swap(q.indices[0], q.indices[1]);
  }
  return q;
}

bool contains(const Matrix& a, const RegionQuery& query, Complex z) {
  const RegionQuery q = query.normalized(a.rows());
  if (q.indices.empty()) return locus_member(a, q.family, z, q.norm);
  switch (q.family) {
    case Family::gershgorin: return gershgorin_member(a, q.indices[0], z);
    case Family::cassini: return cassini_member(a, q.indices[0], q.indices[1], z);
    case Family::schur: return schur_member(a, q.indices[0], q.indices[1], z, q.norm);
    case Family::modified_schur: return modified_schur_member(a, q.indices[0], q.indices[1], z);
  }
  return false;
}

}  // namespace schurloc
