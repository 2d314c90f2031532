#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "banach/exponent.hpp"
#include "banach/operators.hpp"

namespace banach {

enum class EntryDist { UniformRational, GaussianFloat };

struct EntrySpec {
  EntryDist kind = EntryDist::UniformRational;
  /// Rational entries are n/d with 1 <= d <= max_den and |n| <= max_num.
  long max_den = 32;
  long max_num = 32;
};

/// A sampled operator. exact is set for rational entries and then equals
/// numeric after conversion.
struct RandomOperator {
  Operator2<double> numeric;
  std::optional<QOperator2> exact;
};

/// Deterministic in (seed, dist). The zero matrix is always resampled; scalar
/// multiples of isometries of l_p^2 are resampled when avoid_isometry_for is set.
RandomOperator random_operator(std::uint64_t seed, const EntrySpec& dist = {},
                               const std::optional<Exponent>& avoid_isometry_for = std::nullopt);

/// A replayable record: the trial seed plus named observations.
struct Witness {
  int trial = 0;
  std::uint64_t trial_seed = 0;
  std::vector<std::pair<std::string, std::string>> fields;
};

struct CheckReport {
  std::string suite;
  Exponent exponent = Exponent::integer(2);
  int trials = 0;
  /// Trials whose premise was numerically ambiguous (or whose operator did not
  /// meet the suite's hypothesis) and were therefore not judged.
  int skipped = 0;
  std::vector<Witness> failures;
  /// Outcomes the statement predicts when its hypothesis is dropped (the
  /// non-smooth cases); reported, never counted as failures.
  std::vector<Witness> expected_violations;
  /// |M_T| -> number of trials.
  std::map<int, int> histogram;
  std::map<std::string, double> metrics;
  double elapsed_seconds = 0.0;

  bool passed() const { return failures.empty(); }
};

struct SuiteOptions {
  Exponent p = Exponent::integer(2);
  int trials = 200;
  std::uint64_t seed = 1;
  /// Replay exactly one trial with this per-trial seed.
  std::optional<std::uint64_t> trial_seed;
  /// Dimension for kernel-span; 0 alternates between 2 and 3.
  int n = 0;
  EntrySpec entries;
};

struct SuiteInfo {
  std::string id;
  std::string summary;
  std::function<bool(const Exponent&)> supports;
  std::function<CheckReport(const SuiteOptions&)> run;
};

/// All suites in a fixed order.
const std::vector<SuiteInfo>& suites();
/// Throws std::out_of_range for an unknown id.
const SuiteInfo& find_suite(const std::string& id);

/// Exponents exercised by `verify all`: {2, 3, 5} plus {1, inf} wherever the
/// suite's hypotheses allow them.
std::vector<Exponent> default_exponents(const SuiteInfo& suite);

/// Tx ⊥_B Ty implies x ⊥_B y for x in M_T (any p).
CheckReport verify_pullback(const SuiteOptions& opt);
/// T maps x^+ \ x^⊥ into (Tx)^+ \ (Tx)^⊥ and x^- \ x^⊥ into (Tx)^- \ (Tx)^⊥
/// for x in M_T; for smooth p also x^⊥ into (Tx)^⊥. At p in {1, inf} failures
/// of the last inclusion are expected and reported as such.
CheckReport verify_cone_preservation(const SuiteOptions& opt);
/// x ⊥_B y iff Tx ⊥_B Ty for x in M_T (smooth p).
CheckReport verify_orthogonality_preservation(const SuiteOptions& opt);
/// ker T lies in x^⊥ for every x in M_T; for smooth p an operator attaining
/// its norm at two antipodal pairs is invertible.
CheckReport verify_kernel_containment(const SuiteOptions& opt);
/// Operators with ||I + T|| = 1 + ||T|| have a fixed point x0 of T/||T|| on
/// the sphere and a T-invariant line x0^⊥ (integer p >= 2).
CheckReport verify_daugavet_invariant_line(const SuiteOptions& opt);
/// T e_i = 0 forces M_T into the hyperplane {x_i = 0}; every basis has a
/// vector with ||T x_j|| < ||T|| (smooth p, n in {2, 3}).
CheckReport verify_kernel_span(const SuiteOptions& opt);
/// Isometries map left symmetric points to left symmetric points (smooth p).
CheckReport verify_isometry_left_symmetry(const SuiteOptions& opt);
/// For p in {1, inf}: the rank-one operator x0 f1 attains its norm at a
/// non-smooth x0 but maps some y in x0^⊥ outside (T x0)^⊥.
CheckReport verify_nonsmooth_counterexample(const SuiteOptions& opt);
/// p = 2: M_T is the sphere for isometry multiples and a doubleton otherwise.
CheckReport verify_euclidean_doubleton(const SuiteOptions& opt);
/// Integer p >= 2: |M_T| <= 2(8p - 5), with the histogram of |M_T|.
CheckReport verify_attainment_bound(const SuiteOptions& opt);

/// The matrix with T(1,1) = (1,0) and T(1,-1) = (1/2,1/2) on l_inf^2,
/// i.e. (3/4 1/4; 1/4 -1/4).
QOperator2 sup_norm_example_operator();

}  // namespace banach
