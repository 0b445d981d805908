#pragma once

#include "qdarwin/branch_model.hpp"

#include <string>
#include <vector>

namespace qdarwin {

/// One real per line; blank lines and lines starting with '#' are skipped.
std::vector<double> parse_reals(const std::string& text);
std::string format_reals(const std::vector<double>& values);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

OverlapVector read_overlaps(const std::string& path);
PVector read_pvector(const std::string& path);

}  // namespace qdarwin
