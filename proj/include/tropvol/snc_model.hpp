#pragma once

// Combinatorial snc degenerations: components E_i with multiplicities b_i and
// log-canonical coefficients a_i, the strata E_J with their connected
// component counts, and the dual complex built from them.

#include "tropvol/arith.hpp"
#include "tropvol/lattice.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropvol {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Component {
  std::string name;
  std::int64_t b = 1;
  Rational a = 0;
};

/// Connected components of E_J, J given by component names.
struct Stratum {
  std::vector<std::string> components;
  int count = 1;
};

/// Horizontal divisor of a log smooth pair, coefficient c < 1.
struct PairDivisor {
  std::string name;
  Rational c = 0;
};

/// Validated on construction. Missing singleton strata are inserted with
/// count 1; a singleton listed with count != 1 is rejected because E_i is
/// irreducible.
///
/// Labels of nested strata: the l-th component of E_J lies in component 0 of
/// E_{J'} when E_{J'} is connected, and in component l when both have the
/// same count. Any other configuration is ambiguous and rejected, as is a
/// configuration where these rules disagree along a chain J'' < J' < J.
class WeightedSncModel {
 public:
  WeightedSncModel(std::vector<Component> components, std::vector<Stratum> strata,
                   std::vector<PairDivisor> pairs = {});

  const std::vector<Component>& components() const { return components_; }
  /// Canonical form: J as sorted component indices.
  const std::map<std::vector<int>, int>& strata() const { return strata_; }
  const std::vector<PairDivisor>& pairs() const { return pairs_; }

  std::size_t size() const { return components_.size(); }
  int index_of(const std::string& name) const;
  /// 0 when E_J is empty.
  int count(const std::vector<int>& J) const;
  /// Label of the component of E_{sub} containing component `label` of E_J.
  int parent_label(const std::vector<int>& J, int label, const std::vector<int>& sub) const;

  /// Same model with a_i replaced by a_i + shift * b_i.
  WeightedSncModel shifted(const Rational& shift) const;

 private:
  std::vector<Component> components_;
  std::map<std::vector<int>, int> strata_;
  std::vector<PairDivisor> pairs_;
};

struct Face {
  std::vector<int> vertices;  // sorted component indices J
  int label = 0;              // which connected component of E_J
  ZSimplex simplex;           // multiplicities (b_i)_{i in J}
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

class DualComplex {
 public:
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int i) const { return faces_.at(static_cast<std::size_t>(i)); }
  std::size_t size() const { return faces_.size(); }

  /// Faces of dimension one less contained in face i.
  const std::vector<int>& facets_of(int i) const { return facets_.at(static_cast<std::size_t>(i)); }
  /// Faces of dimension one more containing face i.
  const std::vector<int>& cofacets_of(int i) const { return cofacets_.at(static_cast<std::size_t>(i)); }

  /// true iff face `small` is a face of `big` (reflexive).
  bool contains(int big, int small) const;
  std::optional<int> find(const std::vector<int>& J, int label = 0) const;

  int max_dim() const;
  std::vector<int> faces_of_dim(int d) const;
  int euler_characteristic() const;

 private:
  friend DualComplex build_dual_complex(const WeightedSncModel& m);
  std::vector<Face> faces_;
  std::vector<std::vector<int>> facets_;
  std::vector<std::vector<int>> cofacets_;
};

DualComplex build_dual_complex(const WeightedSncModel& m);

struct WeightData {
  std::vector<Rational> kappa;  // a_i / b_i per component
  Rational kappa_min;
  int d = 0;                    // dimension of the active subcomplex
  std::vector<int> active_faces;  // faces of Delta(L), indices into the dual complex
  std::vector<bool> active_vertex;

  bool is_active(int face) const;
};

WeightData weight_data(const WeightedSncModel& m, const DualComplex& dc);
WeightData weight_data(const WeightedSncModel& m);

/// Restriction of the model function of D = sum_i c_i E_i to face `face`,
/// w -> sum_{i in J} c_i w_i. Throws ModelError if a vertex of the face has no
/// coefficient.
AffineFunctionOnSimplex evaluate_divisor_on_face(const WeightedSncModel& m,
                                                 const std::map<std::string, Rational>& coeffs,
                                                 const DualComplex& dc, int face);

/// Coefficients of B^L_Y on the stratum of an active face: 1 - (a_i - kappa_min b_i)
/// for each component i outside J meeting Y, followed by the pair coefficients.
std::map<std::string, Rational> boundary_coefficients(const WeightedSncModel& m,
                                                      const DualComplex& dc,
                                                      const WeightData& wd, int face);

bool is_subklt(const std::map<std::string, Rational>& coefficients);

namespace presets {

/// Smooth central fiber: one component, Delta a point.
WeightedSncModel fermat_smooth();
/// Central fiber z_0 ... z_n = 0 of the coordinate pencil: n+1 reduced
/// hyperplanes in general position, Delta the boundary of an n-simplex.
WeightedSncModel coordinate_pencil(int n);
/// Bidisc model t = z_0 z_1: one edge with b = (1, 1).
WeightedSncModel annulus();

/// Resolve "fermat_smooth", "annulus", "coordinate_pencil" (uses n).
WeightedSncModel by_name(const std::string& name, int n = 2);

}  // namespace presets

}  // namespace tropvol
