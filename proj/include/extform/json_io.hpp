#ifndef EXTFORM_JSON_IO_HPP
#define EXTFORM_JSON_IO_HPP

#include "extform/csp.hpp"

#include <string>

namespace extform {

/// Parses the instance JSON format, merges duplicate hard scopes and validates;
/// throws CspError("BadInstance", ...) on malformed input.
CspInstance instance_from_json(const std::string& text);
std::string instance_to_json(const CspInstance& q);

}  // namespace extform

#endif
