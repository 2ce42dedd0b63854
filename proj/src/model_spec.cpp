#include "tropvol/model_spec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tropvol {

ModelSpecError::ModelSpecError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : "model: " + message),
      line_(line) {}

namespace {

enum class Section { none, components, strata, pairs, anchor };

struct Line {
  int number;
  std::vector<std::string> names;
  std::map<std::string, std::string> keys;
};

Line tokenize(int number, std::string_view raw) {
  Line out{number, {}, {}};
  std::istringstream in{std::string(raw)};
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) {
      if (!out.keys.empty()) throw ModelSpecError(number, "name '" + tok + "' after key=value tokens");
      out.names.push_back(tok);
      continue;
    }
    std::string key = tok.substr(0, eq);
    std::string value = tok.substr(eq + 1);
    if (key.empty() || value.empty()) throw ModelSpecError(number, "malformed token '" + tok + "'");
    if (!out.keys.emplace(key, value).second) throw ModelSpecError(number, "duplicate key '" + key + "'");
  }
  return out;
}

void allow_keys(const Line& l, std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : l.keys) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw ModelSpecError(l.number, "unknown key '" + k + "'");
    }
  }
}

Rational rational_key(const Line& l, const std::string& key, const Rational& fallback, bool required) {
  auto it = l.keys.find(key);
  if (it == l.keys.end()) {
    if (required) throw ModelSpecError(l.number, "missing " + key + "=");
    return fallback;
  }
  try {
    return parse_rational(it->second);
  } catch (const std::invalid_argument&) {
    throw ModelSpecError(l.number, key + "=" + it->second + " is not a rational number");
  }
}

long long integer_key(const Line& l, const std::string& key, long long fallback, bool required) {
  auto it = l.keys.find(key);
  if (it == l.keys.end()) {
    if (required) throw ModelSpecError(l.number, "missing " + key + "=");
    return fallback;
  }
  long long v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ModelSpecError(l.number, key + "=" + s + " is not an integer");
  }
  return v;
}

double real_key(const Line& l, const std::string& key) {
  auto it = l.keys.find(key);
  if (it == l.keys.end()) throw ModelSpecError(l.number, "missing " + key + "=");
  try {
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ModelSpecError(l.number, key + "=" + it->second + " is not a real number");
  }
}

}  // namespace

ModelSpec parse_model_spec(std::string_view text) {
  std::vector<Component> components;
  std::vector<Stratum> strata;
  std::vector<int> strata_lines;
  std::vector<PairDivisor> pairs;
  std::optional<ResidueAnchor> anchor;
  std::set<std::string> names;

  Section section = Section::none;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
    if (raw.empty()) continue;

    if (raw.front() == '[') {
      if (raw.back() != ']') throw ModelSpecError(number, "unterminated section header");
      const std::string_view name = raw.substr(1, raw.size() - 2);
      if (name == "components") section = Section::components;
      else if (name == "strata") section = Section::strata;
      else if (name == "pairs") section = Section::pairs;
      else if (name == "residue_anchor") section = Section::anchor;
      else throw ModelSpecError(number, "unknown section [" + std::string(name) + "]");
      continue;
    }

    const Line l = tokenize(number, raw);
    switch (section) {
      case Section::none:
        throw ModelSpecError(number, "entry outside of any section");
      case Section::components: {
        allow_keys(l, {"b", "a"});
        if (l.names.size() != 1) throw ModelSpecError(number, "expected exactly one component name");
        if (!names.insert(l.names[0]).second) {
          throw ModelSpecError(number, "duplicate component '" + l.names[0] + "'");
        }
        const long long b = integer_key(l, "b", 1, true);
        if (b < 1) throw ModelSpecError(number, "b must be a positive integer");
        components.push_back({l.names[0], b, rational_key(l, "a", 0, false)});
        break;
      }
      case Section::strata: {
        allow_keys(l, {"count"});
        if (l.names.empty()) throw ModelSpecError(number, "stratum needs at least one component");
        for (const auto& n : l.names) {
          if (!names.count(n)) throw ModelSpecError(number, "unknown component '" + n + "'");
        }
        const long long count = integer_key(l, "count", 1, false);
        if (count < 1) throw ModelSpecError(number, "count must be a positive integer");
        strata.push_back({l.names, static_cast<int>(count)});
        strata_lines.push_back(number);
        break;
      }
      case Section::pairs: {
        allow_keys(l, {"c"});
        if (l.names.size() != 1) throw ModelSpecError(number, "expected exactly one divisor name");
        const Rational c = rational_key(l, "c", 0, true);
        if (c >= 1) throw ModelSpecError(number, "pair coefficient must be < 1");
        pairs.push_back({l.names[0], c});
        break;
      }
      case Section::anchor: {
        allow_keys(l, {"label", "rho"});
        if (anchor) throw ModelSpecError(number, "more than one residue anchor");
        for (const auto& n : l.names) {
          if (!names.count(n)) throw ModelSpecError(number, "unknown component '" + n + "'");
        }
        ResidueAnchor a{l.names, static_cast<int>(integer_key(l, "label", 0, false)), real_key(l, "rho")};
        if (a.rho < 0) throw ModelSpecError(number, "rho must be nonnegative");
        anchor = std::move(a);
        break;
      }
    }
  }

  // Downward closure, reported at the offending stratum.
  std::set<std::set<std::string>> listed;
  for (const auto& s : strata) listed.insert({s.components.begin(), s.components.end()});
  for (std::size_t k = 0; k < strata.size(); ++k) {
    const auto& J = strata[k].components;
    for (std::size_t drop = 0; J.size() > 2 && drop < J.size(); ++drop) {
      std::set<std::string> sub(J.begin(), J.end());
      sub.erase(J[drop]);
      if (!listed.count(sub)) {
        std::string missing;
        for (const auto& n : sub) missing += (missing.empty() ? "" : " ") + n;
        throw ModelSpecError(strata_lines[k], "strata not downward closed: missing " + missing);
      }
    }
  }

  try {
    return ModelSpec{WeightedSncModel(std::move(components), std::move(strata), std::move(pairs)), anchor};
  } catch (const ModelError& e) {
    throw ModelSpecError(0, e.what());
  }
}

ModelSpec load_model_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_spec(buf.str());
}

std::string format_model_spec(const WeightedSncModel& m) {
  std::ostringstream out;
  out << "[components]\n";
  for (const auto& c : m.components()) out << c.name << " b=" << c.b << " a=" << to_string(c.a) << "\n";
  out << "[strata]\n";
  for (const auto& [J, k] : m.strata()) {
    if (J.size() == 1) continue;
    for (int i : J) out << m.components()[static_cast<std::size_t>(i)].name << " ";
    out << "count=" << k << "\n";
  }
  if (!m.pairs().empty()) {
    out << "[pairs]\n";
    for (const auto& p : m.pairs()) out << p.name << " c=" << to_string(p.c) << "\n";
  }
  return out.str();
}

}  // namespace tropvol
