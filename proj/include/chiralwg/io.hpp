#pragma once

#include <string>

namespace chiralwg {

/// Full-precision text form, 17 significant digits, '.' decimal separator.
/// Reruns with identical inputs reproduce output files byte for byte.
std::string format_full(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace chiralwg
