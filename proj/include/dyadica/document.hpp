#pragma once

#include <string>

#include "dyadica/space.hpp"

namespace dyadica {

/// On-disk space description:
///   {"points": [0,...,n-1],
///    "metric": {"type": "matrix", "values": [[...]]}
///            | {"type": "euclidean", "coords": [[...]]},
///    "measure": [m_0, ..., m_{n-1}]}
struct SpaceDocument {
  RawSpace raw;
  std::string description;
};

/// Parses the JSON text of a space document; `name` labels error messages.
SpaceDocument parse_space_document(const std::string& text, const std::string& name);
SpaceDocument load_space_document(const std::string& path);

/// Flat JSON array of n numbers, aligned with the point order.
Values load_values(const std::string& path, int n);

}  // namespace dyadica
