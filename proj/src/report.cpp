#include "radmul/report.hpp"

#include <algorithm>
#include <cmath>

namespace radmul {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

Check& VerificationReport::add(std::string name, double residual, double tolerance, nlohmann::json details) {
  Check c;
  c.name = std::move(name);
  c.max_residual = residual;
  c.tolerance = tolerance;
  c.status = (std::isfinite(residual) && residual <= tolerance) ? CheckStatus::pass : CheckStatus::fail;
  c.details = std::move(details);
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& VerificationReport::add_skipped(std::string name, std::string reason) {
  Check c;
  c.name = std::move(name);
  c.status = CheckStatus::skipped;
  c.details = {{"reason", std::move(reason)}};
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& VerificationReport::add_bool(std::string name, bool ok, nlohmann::json details) {
  return add(std::move(name), ok ? 0.0 : 1.0, 0.0, std::move(details));
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

bool VerificationReport::all_passed() const {
  return std::none_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.status == CheckStatus::fail; });
}

const Check* VerificationReport::find(const std::string& name) const {
  auto it = std::find_if(checks_.begin(), checks_.end(), [&](const Check& c) { return c.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [s](const Check& c) { return c.status == s; }));
}

nlohmann::json VerificationReport::to_json(const std::string& config_digest, std::uint64_t seed) const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    nlohmann::json item;
    item["name"] = c.name;
    item["status"] = to_string(c.status);
    // JSON has no infinity or NaN; those become null.
    item["max_residual"] = std::isfinite(c.max_residual) ? nlohmann::json(c.max_residual) : nlohmann::json();
    item["tolerance"] = c.tolerance;
    item["details"] = c.details;
    checks.push_back(std::move(item));
  }
  return {{"config_digest", config_digest}, {"seed", seed}, {"checks", std::move(checks)}};
}

}  // namespace radmul
