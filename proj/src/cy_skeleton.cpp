#include "tropvol/cy_skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>

namespace tropvol {

TriangulatedSkeleton TriangulatedSkeleton::from_cells(std::vector<std::vector<int>> cells) {
  TriangulatedSkeleton sk;
  if (cells.empty()) return sk;
  sk.dim = static_cast<int>(cells.front().size()) - 1;
  std::map<std::vector<int>, int> ridge_index;
  int max_vertex = -1;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto& v = cells[c];
    std::sort(v.begin(), v.end());
    if (static_cast<int>(v.size()) - 1 != sk.dim) throw SkeletonError("from_cells: cells of mixed dimension");
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw SkeletonError("from_cells: repeated vertex in a cell");
    if (v.front() < 0) throw SkeletonError("from_cells: negative vertex id");
    max_vertex = std::max(max_vertex, v.back());
    for (std::size_t drop = 0; drop < v.size() && sk.dim > 0; ++drop) {
      std::vector<int> r;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k != drop) r.push_back(v[k]);
      }
      auto [it, inserted] = ridge_index.emplace(r, static_cast<int>(sk.ridges.size()));
      if (inserted) sk.ridges.push_back({r, {}});
      sk.ridges[static_cast<std::size_t>(it->second)].cells.push_back(static_cast<int>(c));
    }
    TopCell cell;
    cell.vertices = v;
    cell.volume = Rational(1, factorial(sk.dim));
    sk.cells.push_back(std::move(cell));
  }
  sk.vertex_count = static_cast<std::size_t>(max_vertex + 1);
  sk.residues.assign(sk.cells.size(), std::nullopt);
  return sk;
}

TriangulatedSkeleton skeleton_of(const WeightedSncModel& m, const DualComplex& dc) {
  TriangulatedSkeleton sk;
  sk.dim = dc.max_dim();
  sk.vertex_count = m.size();
  std::map<int, int> ridge_of_face;
  for (int f : dc.faces_of_dim(sk.dim)) {
    const Face& face = dc.face(f);
    TopCell cell;
    cell.vertices = face.vertices;
    cell.b_sigma = face.simplex.b_sigma();
    cell.volume = simplex_volume(face.simplex);
    cell.source_face = f;
    const int c = static_cast<int>(sk.cells.size());
    sk.cells.push_back(std::move(cell));
    if (sk.dim == 0) continue;
    for (int r : dc.facets_of(f)) {
      auto [it, inserted] = ridge_of_face.emplace(r, static_cast<int>(sk.ridges.size()));
      if (inserted) sk.ridges.push_back({dc.face(r).vertices, {}});
      sk.ridges[static_cast<std::size_t>(it->second)].cells.push_back(c);
    }
  }
  // Ridges lying in no top cell make the complex impure.
  if (sk.dim > 0) {
    for (int r : dc.faces_of_dim(sk.dim - 1)) {
      if (!ridge_of_face.contains(r)) sk.ridges.push_back({dc.face(r).vertices, {}});
    }
  }
  sk.residues.assign(sk.cells.size(), std::nullopt);
  return sk;
}

PseudomanifoldCheck pseudomanifold_check(const TriangulatedSkeleton& sk) {
  PseudomanifoldCheck out;
  out.nonbranching = true;
  out.closed = sk.dim > 0 && !sk.cells.empty();
  for (const auto& r : sk.ridges) {
    if (r.cells.size() > 2) out.nonbranching = false;
    if (r.cells.size() != 2) out.closed = false;
  }
  const std::size_t n = sk.cells.size();
  if (n <= 1) {
    out.strongly_connected = n == 1;
    return out;
  }
  std::vector<std::vector<int>> adjacent(n);
  for (const auto& r : sk.ridges) {
    for (int a : r.cells) {
      for (int b : r.cells) {
        if (a != b) adjacent[static_cast<std::size_t>(a)].push_back(b);
      }
    }
  }
  std::vector<bool> seen(n, false);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const int c = todo.front();
    todo.pop();
    for (int next : adjacent[static_cast<std::size_t>(c)]) {
      if (!seen[static_cast<std::size_t>(next)]) {
        seen[static_cast<std::size_t>(next)] = true;
        ++reached;
        todo.push(next);
      }
    }
  }
  out.strongly_connected = reached == n;
  return out;
}

std::vector<double> residue_chain_propagate(const TriangulatedSkeleton& sk, int anchor, double rho) {
  if (anchor < 0 || static_cast<std::size_t>(anchor) >= sk.cells.size()) {
    throw SkeletonError("residue_chain_propagate: anchor is not a top cell");
  }
  if (!(rho >= 0)) throw SkeletonError("residue_chain_propagate: residue magnitude must be nonnegative");
  for (const auto& cell : sk.cells) {
    if (cell.b_sigma != 1) throw SkeletonError("residue_chain_propagate: top cell with b_sigma != 1");
  }
  const auto check = pseudomanifold_check(sk);
  if (!check.nonbranching) throw SkeletonError("residue_chain_propagate: branching ridge");
  if (!check.closed) throw SkeletonError("residue_chain_propagate: boundary ridge blocks propagation");
  if (!check.strongly_connected) throw SkeletonError("residue_chain_propagate: skeleton is not strongly connected");

  std::vector<std::vector<int>> ridges_of(sk.cells.size());
  for (std::size_t r = 0; r < sk.ridges.size(); ++r) {
    for (int c : sk.ridges[r].cells) ridges_of[static_cast<std::size_t>(c)].push_back(static_cast<int>(r));
  }
  std::vector<std::optional<double>> value(sk.cells.size());
  value[static_cast<std::size_t>(anchor)] = rho;
  std::queue<int> todo;
  todo.push(anchor);
  while (!todo.empty()) {
    const int c = todo.front();
    todo.pop();
    for (int r : ridges_of[static_cast<std::size_t>(c)]) {
      const auto& cells = sk.ridges[static_cast<std::size_t>(r)].cells;
      const int other = cells[0] == c ? cells[1] : cells[0];
      // Res_y + Res_y' = 0 on the ridge stratum: magnitudes agree.
      const double propagated = *value[static_cast<std::size_t>(c)];
      auto& slot = value[static_cast<std::size_t>(other)];
      if (!slot) {
        slot = propagated;
        todo.push(other);
      } else if (*slot != propagated) {
        throw std::logic_error("residue_chain_propagate: conflicting residue magnitudes");
      }
    }
  }
  std::vector<double> out;
  for (const auto& v : value) out.push_back(*v);
  return out;
}

TriangulatedSkeleton barycentric_subdivide(const WeightedSncModel& m, const DualComplex& dc) {
  for (const auto& c : m.components()) {
    if (c.b != 1) throw SkeletonError("barycentric_subdivide: model is not reduced (b_i != 1)");
  }
  const int d = dc.max_dim();
  std::vector<std::vector<int>> flags;
  std::vector<int> source;
  std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& chain) {
    const int f = chain.back();
    if (dc.face(f).dim() == 0) {
      flags.emplace_back(chain.begin(), chain.end());
      source.push_back(chain.front());
      return;
    }
    for (int sub : dc.facets_of(f)) {
      chain.push_back(sub);
      extend(chain);
      chain.pop_back();
    }
  };
  for (int top : dc.faces_of_dim(d)) {
    std::vector<int> chain{top};
    extend(chain);
  }
  TriangulatedSkeleton sk = TriangulatedSkeleton::from_cells(flags);
  sk.vertex_count = dc.size();
  const Integer cells_per_face = factorial(d + 1);
  for (std::size_t c = 0; c < sk.cells.size(); ++c) {
    const Face& face = dc.face(source[c]);
    sk.cells[c].b_sigma = 1;
    sk.cells[c].volume = simplex_volume(face.simplex) / Rational(cells_per_face);
    sk.cells[c].source_face = source[c];
  }
  return sk;
}

SkeletalMeasure measure_from_residues(const WeightedSncModel& m, const DualComplex& dc,
                                      const TriangulatedSkeleton& sk, const std::vector<double>& residues) {
  if (residues.size() != sk.cells.size()) throw SkeletonError("measure_from_residues: one residue per top cell");
  std::map<int, double> masses;
  for (std::size_t c = 0; c < sk.cells.size(); ++c) {
    const int f = sk.cells[c].source_face;
    if (f < 0) throw SkeletonError("measure_from_residues: cell without a source face");
    auto [it, inserted] = masses.emplace(f, residues[c]);
    if (!inserted && it->second != residues[c]) {
      throw SkeletonError("measure_from_residues: cells of one face carry different residues");
    }
  }
  return assemble_limit_measure(m, dc, masses);
}

bool is_uniform(const SkeletalMeasure& mu, double tolerance) {
  std::optional<double> density;
  for (const auto& e : mu.entries) {
    const double rho = e.residual_mass / to_double(Rational(e.b_sigma));
    if (!density) {
      density = rho;
    } else if (std::abs(rho - *density) > tolerance * std::max(std::abs(rho), std::abs(*density))) {
      return false;
    }
  }
  return true;
}

int find_anchor_cell(const WeightedSncModel& m, const DualComplex& dc, const TriangulatedSkeleton& sk,
                     const ResidueAnchor& anchor) {
  std::vector<int> J;
  for (const auto& name : anchor.components) J.push_back(m.index_of(name));
  std::sort(J.begin(), J.end());
  const auto face = dc.find(J, anchor.label);
  if (!face) throw SkeletonError("residue anchor does not name a face of the dual complex");
  for (std::size_t c = 0; c < sk.cells.size(); ++c) {
    if (sk.cells[c].source_face == *face) return static_cast<int>(c);
  }
  throw SkeletonError("residue anchor is not a top cell");
}

}  // namespace tropvol
