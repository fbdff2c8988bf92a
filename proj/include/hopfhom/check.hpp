#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfhom {

// Outcome of one named exact check. `witness` is empty on pass and carries a
// human-readable counterexample (basis indices, offending entries) on failure.
struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct Report {
  std::vector<CheckResult> checks;

  void add(std::string name, bool pass, std::string witness = "") {
    checks.push_back({std::move(name), pass, std::move(witness)});
  }
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& c : other.checks)
      checks.push_back({prefix + c.name, c.pass, c.witness});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  std::vector<std::string> failed_names() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.name);
    return out;
  }
  std::string summary() const {
    std::string s;
    for (const auto& c : checks) {
      s += c.name;
      s += c.pass ? ": pass" : ": FAIL";
      if (!c.pass && !c.witness.empty()) {
        s += " [";
        s += c.witness;
        s += "]";
      }
      s += "\n";
    }
    return s;
  }
};

// Thrown when a certified constructor is handed data that fails its checks.
class CheckFailure : public std::runtime_error {
 public:
  explicit CheckFailure(const Report& report, const std::string& what_prefix)
      : std::runtime_error(what_prefix + ":\n" + report.summary()), report_(report) {}
  const Report& report() const { return report_; }

 private:
  Report report_;
};

// Decodes a flat tensor-product index into per-leg indices, e.g. index 7 with
// legs (2,4) -> "(1,3)".  Used to turn matrix entry positions into witnesses.
inline std::string decode_legs(std::size_t flat, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> ix(dims.size(), 0);
  for (std::size_t i = dims.size(); i-- > 0;) {
    if (dims[i] == 0) return "(?)";
    ix[i] = flat % dims[i];
    flat /= dims[i];
  }
  std::string s = "(";
  for (std::size_t i = 0; i < ix.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ix[i]);
  }
  s += ")";
  return s;
}

}  // namespace hopfhom
