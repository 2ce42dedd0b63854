#pragma once

// Pseudomanifold checks on skeleta and the residue-chain argument: in the
// semistable maximally degenerate case the residue magnitudes, and hence the
// limit measure densities, agree on all top cells.

#include "tropvol/model_spec.hpp"
#include "tropvol/skeletal_measure.hpp"
#include "tropvol/snc_model.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace tropvol {

class SkeletonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TopCell {
  std::vector<int> vertices;  // skeleton vertex ids
  Integer b_sigma = 1;
  Rational volume = 0;  // normalized volume
  int source_face = -1;  // dual-complex face it lies in, when known
};

struct Ridge {
  std::vector<int> vertices;
  std::vector<int> cells;  // top cells containing the ridge
};

struct TriangulatedSkeleton {
  int dim = 0;
  std::size_t vertex_count = 0;
  std::vector<TopCell> cells;
  std::vector<Ridge> ridges;
  std::vector<std::optional<double>> residues;  // per top cell

  /// Cells given by vertex lists, ridges identified by their vertex sets.
  /// Throws SkeletonError for cells of mixed dimension or repeated vertices.
  static TriangulatedSkeleton from_cells(std::vector<std::vector<int>> cells);
};

/// Top-dimensional faces of the dual complex with their b_sigma and volumes;
/// ridges are the faces one dimension lower, incidences from the complex
/// itself, so parallel faces stay distinct.
TriangulatedSkeleton skeleton_of(const WeightedSncModel& m, const DualComplex& dc);

struct PseudomanifoldCheck {
  bool nonbranching = false;       // every ridge in at most two top cells
  bool strongly_connected = false;  // top cells chain-connected through ridges
  bool closed = false;             // every ridge in exactly two top cells
  bool all() const { return nonbranching && strongly_connected && closed; }
};

PseudomanifoldCheck pseudomanifold_check(const TriangulatedSkeleton& sk);

/// Propagates |Res| = rho from `anchor` across ridges: the two residues at the
/// ends of a ridge stratum sum to zero, so their magnitudes agree. Throws
/// SkeletonError unless the skeleton is a closed, strongly connected,
/// nonbranching pseudomanifold with b_sigma = 1 on every top cell.
std::vector<double> residue_chain_propagate(const TriangulatedSkeleton& sk, int anchor, double rho);

/// Barycentric subdivision: one cell per full flag of faces ending in a top
/// face, (d+1)! cells of volume Vol(sigma) / (d+1)! per top face. Throws
/// SkeletonError for a non-reduced model.
TriangulatedSkeleton barycentric_subdivide(const WeightedSncModel& m, const DualComplex& dc);

/// Limit measure with residual mass `residues[c]` on the face of top cell c.
SkeletalMeasure measure_from_residues(const WeightedSncModel& m, const DualComplex& dc,
                                      const TriangulatedSkeleton& sk, const std::vector<double>& residues);

/// True when every top face carries the same density with respect to lambda_sigma,
/// to relative accuracy `tolerance`.
bool is_uniform(const SkeletalMeasure& mu, double tolerance = 1e-12);

/// Top cell of `sk` matching the anchor's components and label.
int find_anchor_cell(const WeightedSncModel& m, const DualComplex& dc, const TriangulatedSkeleton& sk,
                     const ResidueAnchor& anchor);

}  // namespace tropvol
