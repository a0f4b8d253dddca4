#include "schurloc/block_schur.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "schurloc/error.hpp"

namespace schurloc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_blocks(const BlockMatrix& m) {
  if (m.num_blocks() < 2) {
    throw Error(Errc::invalid_argument, "block regions need at least two blocks");
  }
}

void require_block_index(const BlockMatrix& m, std::size_t i) {
  if (i >= m.num_blocks()) {
    throw Error(Errc::index_out_of_range, "block index " + std::to_string(i));
  }
}

// Blocks and diagonal resolvents of one matrix at one point z. Resolvents
// are computed on first use; nullopt marks a singular z - A_jj.
class BlockResolvents {
 public:
  BlockResolvents(const BlockMatrix& m, Complex z)
      : m_(m), z_(z), n_(m.num_blocks()), blocks_(n_ * n_), inverses_(n_), computed_(n_, false) {}

  std::size_t size() const { return n_; }

  const Matrix& block(std::size_t i, std::size_t j) {
    auto& slot = blocks_[i * n_ + j];
    if (!slot) slot = m_.block(i, j);
    return *slot;
  }

  const std::optional<Matrix>& inverse(std::size_t j) {
    if (!computed_[j]) {
      computed_[j] = true;
      try {
        inverses_[j] = lu_inverse(block(j, j).shifted_negation(z_));
      } catch (const Error& e) {
        if (e.code() != Errc::singular) throw;
        inverses_[j].reset();
      }
    }
    return inverses_[j];
  }

  const Matrix& require_inverse(std::size_t j) {
    const auto& inv = inverse(j);
    if (!inv) {
      throw Error(Errc::diagonal_resolvent_singular,
                  "z lies in the spectrum of diagonal block " + std::to_string(j), j);
    }
    return *inv;
  }

  // sum_{l != i} ||A_li (z - A_ii)^-1||; requires a regular resolvent.
  double column_factor(std::size_t i) {
    const Matrix& inv = require_inverse(i);
    double s = 0.0;
    for (std::size_t l = 0; l < n_; ++l)
      if (l != i) s += l1_op_norm(block(l, i) * inv);
    return s;
  }

  double r_value(std::size_t k, std::size_t j, SchurKind kind) {
    const Matrix& rk = require_inverse(k);
    const Matrix& rj = require_inverse(j);
    double total = 0.0;
    if (kind == SchurKind::schur) {
      // (A_ik Rk A_kj + [i != j] A_ij) Rj = A_ik W + [i != j] A_ij Rj
      const Matrix w = rk * block(k, j) * rj;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == k) continue;
        Matrix term = block(i, k) * w;
        if (i != j) term += block(i, j) * rj;
        total += l1_op_norm(term);
      }
    } else {
      const Matrix w = rk * block(k, j) * rj;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == k) continue;
        total += l1_op_norm(block(i, k) * w);
        if (i != j) total += l1_op_norm(block(i, j) * rj);
      }
    }
    return total;
  }

 private:
  const BlockMatrix& m_;
  Complex z_;
  std::size_t n_;
  std::vector<std::optional<Matrix>> blocks_;
  std::vector<std::optional<Matrix>> inverses_;
  std::vector<bool> computed_;
};

void tally(EvalCounter* counter) {
  if (counter != nullptr) ++counter->inequalities;
}

double schur_pair_score(BlockResolvents& res, std::size_t k, std::size_t j, SchurKind kind) {
  if (!res.inverse(k) || !res.inverse(j)) return kInf;
  return res.r_value(k, j, kind);
}

// With short_circuit set, evaluation stops as soon as membership is
// decided; the returned value then only encodes the verdict.
double locus_score(const BlockMatrix& m, Family f, Complex z, EvalCounter* counter,
                   bool short_circuit) {
  require_blocks(m);
  BlockResolvents res(m, z);
  const std::size_t n = m.num_blocks();
  switch (f) {
    case Family::gershgorin: {
      double best = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        tally(counter);
        const auto& inv = res.inverse(j);
        if (!inv) return kInf;
        double radius = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          if (i != j) radius += l1_op_norm(res.block(i, j));
        best = std::max(best, l1_op_norm(*inv) * radius);
        if (short_circuit && best >= 1.0) return best;
      }
      return best;
    }
    case Family::cassini: {
      for (std::size_t i = 0; i < n; ++i)
        if (!res.inverse(i)) {
          tally(counter);
          return kInf;
        }
      std::vector<double> factor(n);
      for (std::size_t i = 0; i < n; ++i) factor[i] = res.column_factor(i);
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          tally(counter);
          best = std::max(best, factor[i] * factor[j]);
          if (short_circuit && best >= 1.0) return best;
        }
      }
      return best;
    }
    case Family::schur:
    case Family::modified_schur: {
      const SchurKind kind = f == Family::schur ? SchurKind::schur : SchurKind::modified;
      double worst = kInf;
      for (std::size_t k = 0; k < n; ++k) {
        double best = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == k) continue;
          tally(counter);
          best = std::max(best, schur_pair_score(res, k, j, kind));
          if (short_circuit && best >= 1.0) break;
        }
        worst = std::min(worst, best);
        if (short_circuit && worst < 1.0) return worst;
      }
      return worst;
    }
  }
  return 0.0;
}

}  // namespace

SchurSplit SchurSplit::from(const BlockMatrix& m) {
  require_blocks(m);
  const std::size_t last = m.num_blocks() - 1;
  const std::size_t off = m.offset(last);
  const std::size_t d = m.block_size(last);
  const Matrix& base = m.base();
  return SchurSplit{base.sub(0, 0, off, off), base.sub(0, off, off, d), base.sub(off, 0, d, off),
                    base.sub(off, off, d, d)};
}

Matrix SchurSplit::assemble() const {
  const std::size_t p = a.rows();
  const std::size_t q = d.rows();
  Matrix out(p + q, p + q);
  out.set_sub(0, 0, a);
  out.set_sub(0, p, b);
  out.set_sub(p, 0, c);
  out.set_sub(p, p, d);
  return out;
}

namespace {

Matrix inverse_of_shifted_d(const SchurSplit& s, Complex z) {
  try {
    return lu_inverse(s.d.shifted_negation(z));
  } catch (const Error& e) {
    if (e.code() != Errc::singular) throw;
    throw Error(Errc::lambda_in_sigma_d, "z lies in the spectrum of the trailing block");
  }
}

}  // namespace

Matrix schur_complement(const SchurSplit& s, Complex z) {
  const Matrix d_inv = inverse_of_shifted_d(s, z);
  return s.a.shifted_negation(z) - s.b * d_inv * s.c;
}

Matrix resolvent_via_schur(const SchurSplit& s, Complex z) {
  const Matrix d_inv = inverse_of_shifted_d(s, z);
  const Matrix delta = s.a.shifted_negation(z) - s.b * d_inv * s.c;
  Matrix delta_inv;
  try {
    delta_inv = lu_inverse(delta);
  } catch (const Error& e) {
    if (e.code() != Errc::singular) throw;
    throw Error(Errc::delta_singular, "Schur complement is singular: z is an eigenvalue");
  }
  const Matrix top_right = delta_inv * s.b * d_inv;
  const Matrix bottom_left = d_inv * s.c * delta_inv;
  const Matrix bottom_right = d_inv + bottom_left * s.b * d_inv;

  const std::size_t p = s.a.rows();
  Matrix out(p + s.d.rows(), p + s.d.rows());
  out.set_sub(0, 0, delta_inv);
  out.set_sub(0, p, top_right);
  out.set_sub(p, 0, bottom_left);
  out.set_sub(p, p, bottom_right);
  return out;
}

double block_r_value(const BlockMatrix& m, std::size_t k, std::size_t j, Complex z,
                     SchurKind kind) {
  require_blocks(m);
  require_block_index(m, k);
  require_block_index(m, j);
  if (k == j) throw Error(Errc::invalid_argument, "R_kj needs k != j");
  BlockResolvents res(m, z);
  return res.r_value(k, j, kind);
}

bool block_gershgorin_member(const BlockMatrix& m, std::size_t j, Complex z) {
  require_blocks(m);
  require_block_index(m, j);
  BlockResolvents res(m, z);
  const auto& inv = res.inverse(j);
  if (!inv) return true;
  double radius = 0.0;
  for (std::size_t i = 0; i < m.num_blocks(); ++i)
    if (i != j) radius += l1_op_norm(res.block(i, j));
  return 1.0 / l1_op_norm(*inv) <= radius;
}

bool block_cassini_member(const BlockMatrix& m, std::size_t i, std::size_t j, Complex z) {
  require_blocks(m);
  require_block_index(m, i);
  require_block_index(m, j);
  if (i == j) throw Error(Errc::invalid_argument, "Cassini ovals need i != j");
  if (i > j) std::swap(i, j);
  BlockResolvents res(m, z);
  if (!res.inverse(i) || !res.inverse(j)) return true;
  return res.column_factor(i) * res.column_factor(j) >= 1.0;
}

bool block_schur_member(const BlockMatrix& m, std::size_t k, std::size_t j, Complex z,
                        SchurKind kind) {
  require_blocks(m);
  require_block_index(m, k);
  require_block_index(m, j);
  if (k == j) throw Error(Errc::invalid_argument, "Schur sets need k != j");
  BlockResolvents res(m, z);
  return schur_pair_score(res, k, j, kind) >= 1.0;
}

double block_locus_score(const BlockMatrix& m, Family f, Complex z, EvalCounter* counter) {
  return locus_score(m, f, z, counter, false);
}

bool block_locus_member(const BlockMatrix& m, Family f, Complex z, EvalCounter* counter) {
  return locus_score(m, f, z, counter, true) >= 1.0;
}

double block_schur_locus_score_permuted(const BlockMatrix& m, Complex z, SchurKind kind) {
  require_blocks(m);
  const std::size_t n = m.num_blocks();
  const std::size_t last = n - 1;
  double worst = kInf;
  for (std::size_t k = 0; k < n; ++k) {
    const BlockMatrix moved = m.permute_blocks(Permutation::transposition(n, k, last));
    BlockResolvents res(moved, z);
    double best = 0.0;
    for (std::size_t j = 0; j < last; ++j) best = std::max(best, schur_pair_score(res, last, j, kind));
    worst = std::min(worst, best);
  }
  return worst;
}

bool InclusionReport::all_member() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const std::vector<bool>& v) {
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  });
}

InclusionReport verify_inclusion(const BlockMatrix& m, std::span<const Family> families) {
  require_blocks(m);
  InclusionReport report;
  report.eigenvalues = eigenvalues(m.base());
  report.families.assign(families.begin(), families.end());
  const std::size_t ne = report.eigenvalues.size();
  const std::size_t nf = report.families.size();
  report.verdicts.assign(nf, std::vector<bool>(ne, false));
  report.margins.assign(nf, std::vector<double>(ne, 0.0));

  auto score_at = [&m](Family f, Complex z) {
    switch (f) {
      case Family::schur: return block_schur_locus_score_permuted(m, z, SchurKind::schur);
      case Family::modified_schur:
        return block_schur_locus_score_permuted(m, z, SchurKind::modified);
      default: return block_locus_score(m, f, z);
    }
  };

  auto check_one = [&](std::size_t e) {
    const Complex lambda = report.eigenvalues[e];
    const Complex probes[] = {lambda,
                              lambda + kBoundaryNudge,
                              lambda - kBoundaryNudge,
                              lambda + Complex{0.0, kBoundaryNudge},
                              lambda - Complex{0.0, kBoundaryNudge}};
    for (std::size_t fi = 0; fi < nf; ++fi) {
      double best = -kInf;
      for (const Complex& z : probes) {
        best = std::max(best, score_at(report.families[fi], z));
        if (best == kInf) break;
      }
      report.margins[fi][e] = best - 1.0;
    }
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(ne, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  jobs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t e = w; e < ne; e += workers) check_one(e);
    }));
  }
  for (auto& job : jobs) job.get();

  report.min_margin = kInf;
  for (std::size_t fi = 0; fi < nf; ++fi) {
    for (std::size_t e = 0; e < ne; ++e) {
      report.verdicts[fi][e] = report.margins[fi][e] >= 0.0;
      report.min_margin = std::min(report.min_margin, report.margins[fi][e]);
    }
  }
  return report;
}

}  // namespace schurloc
