#pragma once

// Finite base change t = (t')^m on skeleta: exact bookkeeping of ramification
// e, the f/g split of gcd(m, b_sigma), multiplicities and volumes.

#include "tropvol/skeletal_measure.hpp"

#include <optional>

namespace tropvol {

struct FaceBaseChange {
  std::vector<std::int64_t> b;
  std::int64_t m = 1;
  Integer e;          // m / gcd(m, b_sigma)
  Integer e_lattice;  // [Z^{p+1} + Z b/m : Z^{p+1}]
  Integer fg;         // gcd(m, b_sigma)
  Integer g;          // number of faces over sigma
  Integer f;          // fg / g
  Integer b_prime;    // b_sigma / gcd(m, b_sigma)
  Integer volume_scale;     // m^{dim sigma}
  Rational residual_scale;  // gcd(m, b_sigma)^{-2}
};

/// Throws std::invalid_argument for m < 1, an empty b, or a g that does not
/// divide gcd(m, b_sigma).
FaceBaseChange face_base_change(std::span<const std::int64_t> b, std::int64_t m,
                                std::optional<std::int64_t> g = std::nullopt);

struct BaseChangeRow {
  int face = 0;
  FaceBaseChange report;
};

/// One row per face of the dual complex; g_overrides keyed by face index.
std::vector<BaseChangeRow> base_change_report(const WeightedSncModel& model, std::int64_t m,
                                              const std::map<int, std::int64_t>& g_overrides = {});

struct PushforwardFaceCheck {
  int face = 0;
  Rational lhs;  // coefficient of R_sigma in p_* of the pulled-back measure
  Rational rhs;  // coefficient of R_sigma in m^d mu
  Rational discrepancy() const { return lhs - rhs; }
};

struct PushforwardCheck {
  bool pass = true;
  std::vector<PushforwardFaceCheck> faces;
};

/// Compares sum over the g faces above sigma of f gcd^{-2} R b'^{-1} m^d Vol
/// with m^d R b_sigma^{-1} Vol, exactly, on every face of the measure.
PushforwardCheck pushforward_identity_check(const SkeletalMeasure& measure, std::int64_t m,
                                            const std::map<int, std::int64_t>& g_overrides = {});

/// Components after base change: b'_i = b_i / gcd(m, b_i), a'_i = a_i m / gcd(m, b_i).
std::vector<Component> base_changed_components(const WeightedSncModel& model, std::int64_t m);

struct KappaScalingCheck {
  bool pass = true;
  std::vector<Rational> kappa;
  std::vector<Rational> kappa_prime;
  Rational kappa_min;
  Rational kappa_min_prime;
  bool active_vertices_preserved = true;
};

KappaScalingCheck kappa_scaling_check(const WeightedSncModel& model, std::int64_t m);

}  // namespace tropvol
