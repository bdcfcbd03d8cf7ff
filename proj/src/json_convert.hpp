#pragma once
// Internal: json values for the element formats, shared by io.cpp and the reports.
#include <json.hpp>

#include "cld/graded.hpp"

namespace cld {

nlohmann::json element_json(const GradedElement& a);
GradedElement element_of(const nlohmann::json& j);
nlohmann::json matrix_json(const MatrixGradedElement& a);
MatrixGradedElement matrix_of(const nlohmann::json& j);

}  // namespace cld
