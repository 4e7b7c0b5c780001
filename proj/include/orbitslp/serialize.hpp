#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "orbitslp/orbit_compiler.hpp"
#include "orbitslp/slp.hpp"

namespace orbitslp {

inline constexpr const char* kProgramFormat = "orbitslp-program/1";
inline constexpr const char* kSeparatorFormat = "orbitslp-separator/1";

/// Malformed or inconsistent serialized data.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::string_view data);

nlohmann::json field_to_json(const FieldSpec& f);
/// Accepts "rational", {"prime": p} and the CLI shorthand "prime:p".
FieldSpec field_from_json(const nlohmann::json& j);

nlohmann::json program_to_json(const Program& prog);
Program program_from_json(const nlohmann::json& j);

nlohmann::json separator_to_json(const CompiledSeparator& sep);
CompiledSeparator separator_from_json(const nlohmann::json& j);

/// Canonical text of a spec; its SHA-256 is the digest stored with a separator.
std::string canonical_text(const GroupSpec& group);
std::string canonical_text(const RepSpec& rep, const GroupSpec& group);

std::string write_separator(const CompiledSeparator& sep);
CompiledSeparator read_separator(std::string_view text);

}  // namespace orbitslp
