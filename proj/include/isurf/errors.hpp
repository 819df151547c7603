#pragma once

#include <stdexcept>
#include <string>

namespace isurf {

// Stable machine-readable tags for domain failures. These end up verbatim in
// JSON error reports, so changing one is a breaking interface change.
namespace errtag {
inline constexpr const char* degenerate_input = "degenerate-input";
inline constexpr const char* divisibility_failure = "divisibility-failure";
inline constexpr const char* bidegree_overflow = "bidegree-overflow";
inline constexpr const char* pole = "pole";
inline constexpr const char* projection_center = "projection-center";
inline constexpr const char* not_on_cylinder = "not-on-cylinder";
inline constexpr const char* theorem_hypothesis_violated = "theorem-hypothesis-violated";
inline constexpr const char* internal_inconsistency = "internal-inconsistency";
inline constexpr const char* not_parabolic_family = "not-parabolic-family";
inline constexpr const char* pencil_has_no_envelope = "pencil-has-no-envelope";
inline constexpr const char* top_view_degenerate = "top-view-degenerate";
inline constexpr const char* too_few_samples = "too-few-samples";
inline constexpr const char* parse_error = "parse-error";
}  // namespace errtag

// Mathematical precondition violation. Reported with exit code 1 by the CLI.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string tag, const std::string& message)
      : std::runtime_error(message), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

// Malformed input document. Reported with exit code 2 by the CLI.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace isurf
