#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace reldend {

/// One violated instance of an identity: which equation, at which index
/// values and basis inputs, and what the two sides evaluated to.
struct Counterexample {
  std::string equation;
  std::vector<std::string> indices;
  std::vector<std::string> inputs;
  nlohmann::json lhs;
  nlohmann::json rhs;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

/// Result of any check. Reports are values; the CLI serializes them
/// verbatim and tests inspect them field by field.
struct Report {
  std::string check;
  bool passed = true;
  std::uint64_t instances = 0;
  std::optional<Counterexample> counterexample;
  nlohmann::json details = nlohmann::json::object();

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j;
    j["check"] = check;
    j["passed"] = passed;
    j["instances"] = instances;
    if (counterexample) {
      j["counterexample"] = {{"equation", counterexample->equation},
                             {"indices", counterexample->indices},
                             {"inputs", counterexample->inputs},
                             {"lhs", counterexample->lhs},
                             {"rhs", counterexample->rhs}};
    } else {
      j["counterexample"] = nullptr;
    }
    if (!details.empty()) j["details"] = details;
    return j;
  }

  static Report from_json(const nlohmann::json& j) {
    Report r;
    r.check = j.at("check").get<std::string>();
    r.passed = j.at("passed").get<bool>();
    r.instances = j.at("instances").get<std::uint64_t>();
    if (const auto& c = j.at("counterexample"); !c.is_null()) {
      r.counterexample = Counterexample{c.at("equation").get<std::string>(),
                                        c.at("indices").get<std::vector<std::string>>(),
                                        c.at("inputs").get<std::vector<std::string>>(),
                                        c.at("lhs"), c.at("rhs")};
    }
    if (j.contains("details")) r.details = j.at("details");
    return r;
  }

  /// Records a failure. Only the first one is kept.
  void fail(Counterexample c) {
    if (!passed) return;
    passed = false;
    counterexample = std::move(c);
  }
};

}  // namespace reldend
