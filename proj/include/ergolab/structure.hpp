#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/circle_map.hpp"
#include "ergolab/invariant_set.hpp"
#include "ergolab/performance.hpp"
#include "ergolab/subaction.hpp"

namespace ergolab {

struct CriticalValue {
  double point = 0.0;
  // Branches i with tau_i(point) within delta of K; at least two.
  std::vector<int> branches;
  // Each side of the point selects one consistent branch.
  bool regular = false;
  // Width of the sample cluster merged into this value.
  double width = 0.0;
};

enum class Verdict { SturmianLike, NotSturmianLike };

std::string to_string(Verdict v);

struct CriticalReport {
  std::vector<CriticalValue> criticals;  // sorted by point
  Verdict verdict = Verdict::SturmianLike;
  std::optional<double> witness;
  double delta = 0.0;
};

struct StructureOptions {
  // Membership slack; negative means 2 * K.resolution().
  double delta = -1.0;
  // Sample spacing on K; negative means min(delta, resolution) / 2.
  double spacing = -1.0;
  // Candidate clusters wider than this are reported point by point as irregular;
  // negative means 4 * delta.
  double max_cluster_width = -1.0;
  // One-sided window for the regularity test; negative means 8 * delta.
  double window = -1.0;
};

CriticalReport critical_values(const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                               const StructureOptions& options = {});

Verdict sturmian_like_check(const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                            const StructureOptions& options = {});

struct SupercriticalHit {
  double point = 0.0;
  SymbolWord first;
  SymbolWord second;
  double gap = 0.0;
};

struct ScanOptions {
  double delta = -1.0;
  double spacing = -1.0;
  std::size_t max_samples = 1024;
  // Pair-search nodes per sample before giving up on it.
  std::size_t node_budget = 1 << 16;
};

struct ScanResult {
  std::vector<SupercriticalHit> hits;
  std::size_t samples = 0;
  // Samples with at least two first letters in K.
  std::size_t branching = 0;
  // Branching samples whose pair search exhausted the node budget.
  std::size_t undetermined = 0;
};

// Candidate supercritical values: pairs of codings with distinct first letters whose
// derivative series agree within threshold plus tails at the given depth.
ScanResult supercritical_scan(const TrigPolynomial& f, const ExpandingCircleMap& map,
                              const InvariantSetEstimate& k, int depth, double threshold,
                              const ScanOptions& options = {});

// Inverse branch choice tau^f read off a K-estimate: one branch per component between
// regular critical values, transported continuously across 0.
class BranchSelector {
 public:
  BranchSelector(const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                 const StructureOptions& options = {});

  const CriticalReport& report() const { return report_; }
  const std::vector<double>& cuts() const { return cuts_; }
  // Points between K samples where the transported label changes without a cut.
  const std::vector<double>& switches() const { return switches_; }

  // Branch of the one-sided limit at y: side > 0 from the right, side < 0 from the left.
  int label(double y, int side) const;
  double pull_back(double y, int side) const;

 private:
  const ExpandingCircleMap* map_;
  CriticalReport report_;
  std::vector<double> positions_;
  std::vector<int> labels_;
  std::vector<double> cuts_;
  std::vector<double> switches_;
};

// z[0] = c, z[1] = tau^f(c from the right), z[k+1] = tau^f(z[k]).
std::vector<double> backward_chain(const BranchSelector& selector, double c, int n);

struct IdentityResult {
  double lhs = 0.0;
  double rhs_holonomy = 0.0;
  double rhs_orbit = 0.0;
  double holonomy_residual = 0.0;  // |lhs - rhs_holonomy|
  double orbit_residual = 0.0;     // |rhs_holonomy - rhs_orbit|
  double truncation_bound = 0.0;
  std::size_t pieces = 0;
};

IdentityResult identity_check(const TrigPolynomial& f, const ExpandingCircleMap& map, const SubActionField& g,
                              const BranchSelector& selector, double a1, double a2, int n1, int n2,
                              int depth);

}  // namespace ergolab
