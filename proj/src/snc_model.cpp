#include "tropvol/snc_model.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace tropvol {

namespace {

std::string describe(const std::vector<Component>& comps, const std::vector<int>& J) {
  std::string out = "{";
  for (std::size_t k = 0; k < J.size(); ++k) {
    if (k) out += ",";
    out += comps[static_cast<std::size_t>(J[k])].name;
  }
  return out + "}";
}

// Nonempty proper subsets of J, as sorted index vectors.
std::vector<std::vector<int>> proper_subsets(const std::vector<int>& J) {
  std::vector<std::vector<int>> out;
  const std::size_t n = J.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> s;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::uint64_t{1} << k)) s.push_back(J[k]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

WeightedSncModel::WeightedSncModel(std::vector<Component> components, std::vector<Stratum> strata,
                                   std::vector<PairDivisor> pairs)
    : components_(std::move(components)), pairs_(std::move(pairs)) {
  if (components_.empty()) throw ModelError("model has no components");
  if (components_.size() > 30) throw ModelError("model has more than 30 components");
  std::set<std::string> names;
  for (const auto& c : components_) {
    if (c.name.empty()) throw ModelError("component with empty name");
    if (!names.insert(c.name).second) throw ModelError("duplicate component name '" + c.name + "'");
    if (c.b < 1) throw ModelError("component '" + c.name + "': multiplicity b must be a positive integer");
  }

  for (const auto& s : strata) {
    if (s.components.empty()) throw ModelError("stratum with empty index set");
    std::vector<int> J;
    for (const auto& name : s.components) J.push_back(index_of(name));
    std::sort(J.begin(), J.end());
    if (std::adjacent_find(J.begin(), J.end()) != J.end()) {
      throw ModelError("stratum " + describe(components_, J) + " repeats a component");
    }
    if (s.count < 0) throw ModelError("stratum " + describe(components_, J) + ": negative count");
    if (J.size() == 1 && s.count != 1) {
      throw ModelError("stratum " + describe(components_, J) +
                       ": a single component is irreducible, count must be 1");
    }
    if (strata_.count(J)) throw ModelError("stratum " + describe(components_, J) + " listed twice");
    if (s.count > 0) strata_[J] = s.count;
  }
  for (int i = 0; i < static_cast<int>(components_.size()); ++i) strata_.try_emplace({i}, 1);

  for (const auto& [J, k] : strata_) {
    for (const auto& sub : proper_subsets(J)) {
      if (!strata_.count(sub)) {
        throw ModelError("strata not downward closed: " + describe(components_, J) + " is listed but " +
                         describe(components_, sub) + " is not");
      }
    }
  }
  // Parent labels must be determined and consistent along chains.
  for (const auto& [J, k] : strata_) {
    for (const auto& mid : proper_subsets(J)) {
      const int cm = strata_.at(mid);
      if (cm != 1 && cm != k) {
        throw ModelError("ambiguous inclusion of " + describe(components_, J) + " (count " +
                         std::to_string(k) + ") in " + describe(components_, mid) + " (count " +
                         std::to_string(cm) + ")");
      }
    }
    for (int l = 0; l < k; ++l) {
      for (const auto& mid : proper_subsets(J)) {
        const int lm = parent_label(J, l, mid);
        for (const auto& low : proper_subsets(mid)) {
          if (parent_label(mid, lm, low) != parent_label(J, l, low)) {
            throw ModelError("inconsistent nesting of " + describe(components_, J) + " through " +
                             describe(components_, mid));
          }
        }
      }
    }
  }

  std::set<std::string> pair_names;
  for (const auto& p : pairs_) {
    if (!pair_names.insert(p.name).second) throw ModelError("duplicate pair divisor '" + p.name + "'");
    if (p.c >= 1) throw ModelError("pair divisor '" + p.name + "': coefficient must be < 1");
  }
}

int WeightedSncModel::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].name == name) return static_cast<int>(i);
  }
  throw ModelError("unknown component '" + name + "'");
}

int WeightedSncModel::count(const std::vector<int>& J) const {
  auto it = strata_.find(J);
  return it == strata_.end() ? 0 : it->second;
}

int WeightedSncModel::parent_label(const std::vector<int>& J, int label,
                                   const std::vector<int>& sub) const {
  if (sub == J) return label;
  return count(sub) == 1 ? 0 : label;
}

WeightedSncModel WeightedSncModel::shifted(const Rational& shift) const {
  std::vector<Component> comps = components_;
  for (auto& c : comps) c.a += shift * Rational(c.b);
  std::vector<Stratum> strata;
  for (const auto& [J, k] : strata_) {
    Stratum s;
    for (int i : J) s.components.push_back(components_[static_cast<std::size_t>(i)].name);
    s.count = k;
    strata.push_back(std::move(s));
  }
  return WeightedSncModel(std::move(comps), std::move(strata), pairs_);
}

// ---------------------------------------------------------------------------

bool DualComplex::contains(int big, int small) const {
  const Face& B = face(big);
  const Face& S = face(small);
  if (!is_subset(S.vertices, B.vertices)) return false;
  if (S.vertices == B.vertices) return S.label == B.label;
  // Walk down through facets; labels are consistent along any chain.
  int cur = big;
  while (face(cur).vertices.size() > S.vertices.size()) {
    int next = -1;
    for (int f : facets_of(cur)) {
      if (is_subset(S.vertices, face(f).vertices)) {
        next = f;
        break;
      }
    }
    if (next < 0) return false;
    cur = next;
  }
  return cur == small;
}

std::optional<int> DualComplex::find(const std::vector<int>& J, int label) const {
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].vertices == J && faces_[i].label == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

int DualComplex::max_dim() const {
  int d = -1;
  for (const auto& f : faces_) d = std::max(d, f.dim());
  return d;
}

std::vector<int> DualComplex::faces_of_dim(int d) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    if (faces_[i].dim() == d) out.push_back(static_cast<int>(i));
  }
  return out;
}

int DualComplex::euler_characteristic() const {
  int chi = 0;
  for (const auto& f : faces_) chi += (f.dim() % 2 == 0) ? 1 : -1;
  return chi;
}

DualComplex build_dual_complex(const WeightedSncModel& m) {
  DualComplex dc;
  std::map<std::pair<std::vector<int>, int>, int> index;
  // std::map orders J lexicographically; sort by size so faces come by dimension.
  std::vector<std::pair<std::vector<int>, int>> strata(m.strata().begin(), m.strata().end());
  std::stable_sort(strata.begin(), strata.end(),
                   [](const auto& x, const auto& y) { return x.first.size() < y.first.size(); });
  for (const auto& [J, k] : strata) {
    std::vector<std::int64_t> b;
    for (int i : J) b.push_back(m.components()[static_cast<std::size_t>(i)].b);
    for (int l = 0; l < k; ++l) {
      index[{J, l}] = static_cast<int>(dc.faces_.size());
      dc.faces_.push_back(Face{J, l, ZSimplex(b)});
    }
  }
  dc.facets_.assign(dc.faces_.size(), {});
  dc.cofacets_.assign(dc.faces_.size(), {});
  for (std::size_t f = 0; f < dc.faces_.size(); ++f) {
    const Face& F = dc.faces_[f];
    if (F.vertices.size() < 2) continue;
    for (std::size_t drop = 0; drop < F.vertices.size(); ++drop) {
      std::vector<int> sub = F.vertices;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
      auto it = index.find({sub, m.parent_label(F.vertices, F.label, sub)});
      if (it == index.end()) throw ModelError("strata not downward closed");
      dc.facets_[f].push_back(it->second);
      dc.cofacets_[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(f));
    }
  }
  return dc;
}

// ---------------------------------------------------------------------------

bool WeightData::is_active(int face) const {
  return std::binary_search(active_faces.begin(), active_faces.end(), face);
}

WeightData weight_data(const WeightedSncModel& m, const DualComplex& dc) {
  WeightData wd;
  for (const auto& c : m.components()) wd.kappa.push_back(c.a / Rational(c.b));
  wd.kappa_min = *std::min_element(wd.kappa.begin(), wd.kappa.end());
  for (const auto& k : wd.kappa) wd.active_vertex.push_back(k == wd.kappa_min);
  wd.d = 0;
  for (std::size_t f = 0; f < dc.size(); ++f) {
    const auto& J = dc.faces()[f].vertices;
    if (std::all_of(J.begin(), J.end(), [&](int i) { return wd.active_vertex[static_cast<std::size_t>(i)]; })) {
      wd.active_faces.push_back(static_cast<int>(f));
      wd.d = std::max(wd.d, dc.faces()[f].dim());
    }
  }
  return wd;
}

WeightData weight_data(const WeightedSncModel& m) { return weight_data(m, build_dual_complex(m)); }

AffineFunctionOnSimplex evaluate_divisor_on_face(const WeightedSncModel& m,
                                                 const std::map<std::string, Rational>& coeffs,
                                                 const DualComplex& dc, int face) {
  if (face < 0 || static_cast<std::size_t>(face) >= dc.size()) {
    throw ModelError("face index " + std::to_string(face) + " is not in the complex");
  }
  AffineFunctionOnSimplex fn;
  for (int i : dc.face(face).vertices) {
    const auto& name = m.components()[static_cast<std::size_t>(i)].name;
    auto it = coeffs.find(name);
    if (it == coeffs.end()) throw ModelError("no coefficient for component '" + name + "'");
    fn.coefficients.push_back(it->second);
  }
  return fn;
}

std::map<std::string, Rational> boundary_coefficients(const WeightedSncModel& m,
                                                      const DualComplex& dc,
                                                      const WeightData& wd, int face) {
  if (!wd.is_active(face)) throw ModelError("boundary_coefficients: face is not in the active subcomplex");
  std::map<std::string, Rational> out;
  for (int co : dc.cofacets_of(face)) {
    const auto& J = dc.face(co).vertices;
    const auto& own = dc.face(face).vertices;
    for (int i : J) {
      if (std::binary_search(own.begin(), own.end(), i)) continue;
      const Component& c = m.components()[static_cast<std::size_t>(i)];
      out[c.name] = 1 - (c.a - wd.kappa_min * Rational(c.b));
    }
  }
  for (const auto& p : m.pairs()) out[p.name] = p.c;
  return out;
}

bool is_subklt(const std::map<std::string, Rational>& coefficients) {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const auto& kv) { return kv.second < 1; });
}

namespace presets {

WeightedSncModel fermat_smooth() { return WeightedSncModel({{"E0", 1, 0}}, {}); }

WeightedSncModel coordinate_pencil(int n) {
  if (n < 1 || n > 12) throw ModelError("coordinate_pencil: n must be in [1, 12]");
  std::vector<Component> comps;
  for (int i = 0; i <= n; ++i) comps.push_back({"E" + std::to_string(i), 1, 0});
  std::vector<Stratum> strata;
  const int size = n + 1;
  for (std::uint32_t mask = 1; mask < (1u << size); ++mask) {
    if (std::popcount(mask) > n) continue;
    Stratum s;
    for (int i = 0; i < size; ++i) {
      if (mask & (1u << i)) s.components.push_back(comps[static_cast<std::size_t>(i)].name);
    }
    strata.push_back(std::move(s));
  }
  return WeightedSncModel(std::move(comps), std::move(strata));
}

WeightedSncModel annulus() {
  return WeightedSncModel({{"E0", 1, 0}, {"E1", 1, 0}}, {{{"E0", "E1"}, 1}});
}

WeightedSncModel by_name(const std::string& name, int n) {
  if (name == "fermat_smooth") return fermat_smooth();
  if (name == "annulus") return annulus();
  if (name == "coordinate_pencil") return coordinate_pencil(n);
  throw ModelError("unknown preset '" + name + "' (expected fermat_smooth, annulus, coordinate_pencil)");
}

}  // namespace presets

}  // namespace tropvol
