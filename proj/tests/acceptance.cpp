// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "schurloc/block_schur.hpp"
#include "schurloc/commands.hpp"
#include "schurloc/error.hpp"
#include "schurloc/geometry.hpp"
#include "schurloc/matrix.hpp"
#include "schurloc/regions.hpp"

using namespace schurloc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const Matrix kOnes{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
const Matrix kExample2{{2.3, -1.6, -0.8, 1.0}, {-1.6, 3.3, -0.7, 0.8}, {-0.8, -0.7, 1.1, -0.3}, {1.0, 0.8, -0.3, 8.1}};

const IntervalUnion& intervals_for(const IntervalsResult& r, Family f) {
  for (const auto& [family, u] : r.intervals) {
    if (family == f) return u;
  }
  throw Error(Errc::invalid_argument, "family missing from result");
}

void expect_intervals(Outcome& o, const char* name, const IntervalUnion& got, const std::vector<Interval>& want,
                      double tol) {
  if (got.intervals.size() != want.size()) {
    o.fail(std::string(name) + ": got " + std::to_string(got.intervals.size()) + " intervals, want " +
           std::to_string(want.size()));
    return;
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    const double err = std::max(std::abs(got.intervals[i].lo - want[i].lo), std::abs(got.intervals[i].hi - want[i].hi));
    if (err > tol) o.fail(std::string(name) + fmt(": endpoint off by %.3g", err));
  }
}

Outcome example1() {
  Outcome o;
  const auto t0 = Clock::now();
  RunOptions opts;
  const IntervalsResult r = run_intervals(BlockMatrix(kOnes), opts);
  const Spectrum ev = eigenvalues(kOnes);
  const double elapsed = seconds_since(t0);

  expect_intervals(o, "schur", intervals_for(r, Family::schur), {{0.0, 3.0}}, 1e-6);
  expect_intervals(o, "cassini", intervals_for(r, Family::cassini), {{-1.0, 3.0}}, 1e-6);
  expect_intervals(o, "gershgorin", intervals_for(r, Family::gershgorin), {{-1.0, 3.0}}, 1e-6);
  const std::vector<Complex> want{0.0, 0.0, 3.0};
  if (!spectra_match(ev, want, 1e-9)) o.fail("eigenvalues differ from {0,0,3}");
  if (elapsed >= 1.0) o.fail(fmt("runtime %.3f s", elapsed));
  if (o.pass) o.detail = fmt("schur [0,3], cassini = gershgorin = [-1,3]; %.3f s", elapsed);
  return o;
}

Outcome example2() {
  Outcome o;
  const auto t0 = Clock::now();
  const IntervalsResult r = run_intervals(BlockMatrix(kExample2), RunOptions{});
  const Spectrum ev = eigenvalues(kExample2);
  const double elapsed = seconds_since(t0);

  // Two-decimal values as printed for this example, then the independent
  // bisection oracle at full precision.
  expect_intervals(o, "schur", intervals_for(r, Family::schur), {{-0.33, 4.53}, {7.45, 8.40}}, 0.01);
  expect_intervals(o, "cassini", intervals_for(r, Family::cassini), {{-0.84, 9.20}}, 0.01);
  expect_intervals(o, "schur (oracle)", intervals_for(r, Family::schur),
                   {{-0.33303027798233603, 4.53058928759318}, {7.452079728939613, 8.404164258188018}}, 1e-6);
  expect_intervals(o, "cassini (oracle)", intervals_for(r, Family::cassini),
                   {{-0.8455844122715716, 9.202855977627397}}, 1e-6);
  const std::vector<Complex> printed{-0.01, 1.97, 4.47, 8.36};
  if (!spectra_match(ev, printed, 0.01)) o.fail("eigenvalues not within 0.01 of -0.01, 1.97, 4.47, 8.36");
  for (const Complex& z : ev) {
    if (std::abs(z.imag()) > 1e-12) o.fail("complex eigenvalue for a Hermitian matrix");
  }
  if (elapsed >= 2.0) o.fail(fmt("runtime %.3f s", elapsed));
  if (o.pass) o.detail = fmt("two Schur intervals, Cassini [-0.846, 9.203]; %.3f s", elapsed);
  return o;
}

std::vector<Matrix> property_matrices() {
  std::mt19937_64 rng(20261016);
  std::vector<Matrix> out;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    out.push_back(oracle::random_matrix(rng, n, n, 5.0));
  }
  return out;
}

bool member_with_nudge(const Matrix& a, Family f, Complex z) {
  const Complex probes[] = {z, z + kBoundaryNudge, z - kBoundaryNudge, z + Complex{0.0, kBoundaryNudge},
                            z - Complex{0.0, kBoundaryNudge}};
  for (const Complex& p : probes) {
    if (locus_member(a, f, p)) return true;
  }
  return false;
}

Outcome spectral_inclusion(const std::vector<Matrix>& mats) {
  Outcome o;
  std::size_t checks = 0;
  for (std::size_t t = 0; t < mats.size(); ++t) {
    const Matrix& a = mats[t];
    const Spectrum ev = eigenvalues(a);
    for (Family f : kAllFamilies) {
      for (const Complex& z : ev) {
        ++checks;
        if (!member_with_nudge(a, f, z)) {
          o.fail("matrix " + std::to_string(t) + ": eigenvalue escapes the " + std::string(family_name(f)) + " locus");
        }
      }
    }
    const InclusionReport rep = verify_inclusion(BlockMatrix(a));
    if (!rep.all_member()) o.fail("matrix " + std::to_string(t) + ": verify_inclusion reports an escape");
  }
  if (o.pass) o.detail = std::to_string(checks) + " eigenvalue/locus checks, zero failures";
  return o;
}

Outcome containment_chain(const std::vector<Matrix>& mats) {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t probes = 0, in_schur = 0;
  for (std::size_t t = 0; t < mats.size(); ++t) {
    const Matrix& a = mats[t];
    const std::size_t n = a.rows();
    const Window w = auto_window(a, 16);
    std::uniform_real_distribution<double> ure(w.re_min, w.re_max), uim(w.im_min, w.im_max);
    for (int p = 0; p < 10000; ++p) {
      const Complex z{ure(rng), uim(rng)};
      ++probes;
      const bool s = schur_locus_member(a, z);
      const bool c = cassini_locus_member(a, z);
      const bool g = gershgorin_locus_member(a, z);
      in_schur += s;
      if (s && !c) o.fail("schur point outside cassini, matrix " + std::to_string(t));
      if (c && !g) o.fail("cassini point outside gershgorin, matrix " + std::to_string(t));
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
          if (k == j) continue;
          if (schur_member(a, k, j, z) && !modified_schur_member(a, k, j, z)) {
            o.fail("S_kj point outside S*_kj, matrix " + std::to_string(t));
          }
        }
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(probes) + " probes (" + std::to_string(in_schur) + " in the Schur locus), zero counterexamples";
  }
  return o;
}

Outcome resolvent_factorization() {
  Outcome o;
  std::mt19937_64 rng(99);
  double worst_rel = 0.0, worst_res = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const BlockMatrix m(oracle::random_matrix(rng, n, n, 5.0), oracle::random_partition(rng, n));
    const Window box = auto_window(m.base(), 16);
    // A point on a circle that encloses the padded Gershgorin box.
    const Complex centre{(box.re_min + box.re_max) / 2, (box.im_min + box.im_max) / 2};
    const double radius = 1.01 * std::hypot(box.re_max - box.re_min, box.im_max - box.im_min) / 2;
    const Complex z = centre + std::polar(radius * std::uniform_real_distribution<double>(1.0, 2.0)(rng),
                                          std::uniform_real_distribution<double>(0.0, 2 * M_PI)(rng));

    const Matrix r = resolvent_via_schur(SchurSplit::from(m), z);
    const Matrix shifted = m.base().shifted_negation(z);
    const auto direct = oracle::gauss_jordan_inverse(shifted);
    if (!direct) {
      o.fail("oracle inverse failed");
      continue;
    }
    const double rel = oracle::max_abs_diff(r, *direct) / oracle::max_entry(*direct);
    const double res = oracle::max_abs_diff(oracle::multiply(shifted, r), Matrix::identity(n));
    worst_rel = std::max(worst_rel, rel);
    worst_res = std::max(worst_res, res / (1.0 + std::abs(z)));
    if (rel > 1e-8) o.fail(fmt("entrywise relative error %.3g", rel));
    if (res > 1e-9 * (1.0 + std::abs(z))) o.fail(fmt("identity residual %.3g", res));
  }
  if (o.pass) o.detail = fmt("worst relative error %.2g, worst scaled residual %.2g", worst_rel, worst_res);
  return o;
}

Outcome norm_lemma() {
  Outcome o;
  std::mt19937_64 rng(31337);
  int equal_cases = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
    const bool scalar = t % 4 == 0;
    const BlockMatrix m(oracle::random_matrix(rng, n, n, 5.0),
                        scalar ? std::vector<std::size_t>(n, 1) : oracle::random_partition(rng, n));
    double bound = 0.0;
    for (std::size_t j = 0; j < m.num_blocks(); ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < m.num_blocks(); ++i) col += l1_op_norm(m.block(i, j));
      bound = std::max(bound, col);
    }
    const double norm = l1_op_norm(m.base());
    // Both sides are sums of the same magnitudes in different groupings.
    if (norm > bound * (1.0 + 1e-14)) o.fail(fmt("||A|| = %.17g exceeds bound %.17g", norm, bound));
    if (oracle::l1_norm_search(m.base(), rng) > norm * (1.0 + 1e-14)) o.fail("random search beat l1_op_norm");
    if (m.is_scalar()) {
      ++equal_cases;
      if (norm != bound) o.fail(fmt("all-ones partition: %.17g != %.17g", norm, bound));
    }
  }
  if (o.pass) o.detail = "200 matrices, exact equality in all " + std::to_string(equal_cases) + " all-ones cases";
  return o;
}

Permutation random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> img(n);
  std::iota(img.begin(), img.end(), std::size_t{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

bool close_rel(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

Outcome permutations() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::size_t r_checks = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 10)(rng);
    const BlockMatrix m(oracle::random_matrix(rng, n, n, 5.0), oracle::random_partition(rng, n));
    const std::size_t nb = m.num_blocks();
    const Permutation p1 = random_permutation(rng, nb);

    const BlockMatrix m1 = m.permute_blocks(p1);
    if (!spectra_match(eigenvalues(m.base()), eigenvalues(m1.base()), 1e-9)) {
      o.fail("spectrum changed under permutation, case " + std::to_string(t));
    }

    // A second permutation sending the same block to the last position.
    const std::size_t last = nb - 1;
    const std::size_t moved = p1.inverse()(last);
    std::vector<std::size_t> rest;
    for (std::size_t b = 0; b < nb; ++b) {
      if (b != moved) rest.push_back(b);
    }
    std::shuffle(rest.begin(), rest.end(), rng);
    std::vector<std::size_t> img(nb);
    img[moved] = last;
    for (std::size_t i = 0; i < rest.size(); ++i) img[rest[i]] = i;
    const Permutation p2(img);
    const BlockMatrix m2 = m.permute_blocks(p2);

    const Complex z = oracle::random_in_disk(rng, 10.0);
    for (std::size_t j = 0; j < last; ++j) {
      // Block j of m1 is block p1^-1(j) of m, which sits at p2(p1^-1(j)) in m2.
      const std::size_t j2 = p2(p1.inverse()(j));
      for (SchurKind kind : {SchurKind::schur, SchurKind::modified}) {
        try {
          const double r0 = block_r_value(m, moved, p1.inverse()(j), z, kind);
          const double r1 = block_r_value(m1, last, j, z, kind);
          const double r2 = block_r_value(m2, last, j2, z, kind);
          ++r_checks;
          if (!close_rel(r1, r2, 1e-12) || !close_rel(r0, r1, 1e-12)) {
            o.fail(fmt("R values disagree: %.17g vs %.17g vs %.17g", r0, r1, r2));
          }
        } catch (const Error& e) {
          if (e.code() != Errc::diagonal_resolvent_singular) throw;
        }
      }
    }
  }
  if (o.pass) o.detail = "50 permutations, " + std::to_string(r_checks) + " R-value agreements";
  return o;
}

Outcome scalar_block_consistency() {
  Outcome o;
  std::mt19937_64 rng(555);
  std::size_t compared = 0, skipped = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const Matrix a = oracle::random_matrix(rng, n, n, 5.0);
    const BlockMatrix m(a);
    const Window w = auto_window(a, 16);
    std::uniform_real_distribution<double> ure(w.re_min, w.re_max), uim(w.im_min, w.im_max);
    for (int p = 0; p < 10000; ++p) {
      const Complex z{ure(rng), uim(rng)};
      for (Family f : kAllFamilies) {
        const double score = block_locus_score(m, f, z);
        if (std::isfinite(score) && std::abs(score - 1.0) <= 1e-9) {
          ++skipped;
          continue;
        }
        ++compared;
        if (locus_member(a, f, z) != block_locus_member(m, f, z)) {
          o.fail(std::string(family_name(f)) + " disagrees at a probe of matrix " + std::to_string(t));
        }
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(compared) + " agreements, " + std::to_string(skipped) + " boundary probes skipped";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Matrix> mats = property_matrices();
  const std::vector<Criterion> criteria{
      {"example 1: all-ones 3x3 intervals and spectrum", example1},
      {"example 2: 4x4 Hermitian intervals and spectrum", example2},
      {"spectral inclusion on 200 random matrices", [&] { return spectral_inclusion(mats); }},
      {"containment chain on 10^4 probes per matrix", [&] { return containment_chain(mats); }},
      {"resolvent factorization on 200 block splits", resolvent_factorization},
      {"l1 norm lemma on 200 block matrices", norm_lemma},
      {"permutation invariance and R agreement", permutations},
      {"scalar/block consistency on 50 matrices", scalar_block_consistency},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %zu %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, seconds_since(t0),
                o.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
