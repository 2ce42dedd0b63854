#pragma once

// Text format for models and skeletons.
//
//   # comment
//   [components]
//   E0 b=1 a=0
//   E1 b=2 a=1/2
//   [strata]
//   E0 E1 count=2       # count defaults to 1; singletons may be omitted
//   [pairs]
//   D c=1/2
//   [residue_anchor]
//   E0 E1 label=0 rho=2.5
//
// Keys are name=value tokens separated by whitespace. b is required, a
// defaults to 0. Errors carry the 1-based line number.

#include "tropvol/snc_model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace tropvol {

class ModelSpecError : public std::runtime_error {
 public:
  ModelSpecError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct ResidueAnchor {
  std::vector<std::string> components;
  int label = 0;
  double rho = 1.0;
};

struct ModelSpec {
  WeightedSncModel model;
  std::optional<ResidueAnchor> anchor;
};

ModelSpec parse_model_spec(std::string_view text);
ModelSpec load_model_spec(const std::filesystem::path& path);

/// Inverse of parse_model_spec for the model part.
std::string format_model_spec(const WeightedSncModel& m);

}  // namespace tropvol
