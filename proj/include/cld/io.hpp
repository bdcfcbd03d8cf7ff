#pragma once
#include <string>

#include "cld/graded.hpp"

namespace cld {

// {"cutoff": N, "terms": [{"m":..,"n":..,"re":..,"im":..}, ...]}
std::string element_to_json(const GradedElement& a);
GradedElement element_from_json(const std::string& text);

// {"dim": d, "entries": [[element, ...], ...]}
std::string matrix_to_json(const MatrixGradedElement& a);
MatrixGradedElement matrix_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cld
