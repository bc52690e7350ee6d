#pragma once

#include <string>
#include <vector>

#include "ainf/persist.hpp"

namespace ainf::cli {

// Horizontal bars on an integer axis 0..N, one row per unit of multiplicity,
// one panel per barcode. Only integer coordinates are written, so the output
// depends on nothing but the barcodes.
std::string barcode_svg(const std::vector<Barcode>& codes, const std::string& title);

}  // namespace ainf::cli
