#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace radmul {

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  double max_residual = 0.0;
  double tolerance = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

/// Ordered collection of named checks. A check passes when its residual is
/// finite and does not exceed the tolerance.
class VerificationReport {
 public:
  Check& add(std::string name, double residual, double tolerance,
             nlohmann::json details = nlohmann::json::object());
  Check& add_skipped(std::string name, std::string reason);
  /// Records a boolean outcome (residual 0 on success, 1 on failure).
  Check& add_bool(std::string name, bool ok, nlohmann::json details = nlohmann::json::object());

  void merge(const VerificationReport& other, const std::string& prefix = {});

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }
  [[nodiscard]] const Check* find(const std::string& name) const;
  [[nodiscard]] std::size_t count(CheckStatus s) const;

  [[nodiscard]] nlohmann::json to_json(const std::string& config_digest, std::uint64_t seed) const;

 private:
  std::vector<Check> checks_;
};

}  // namespace radmul
