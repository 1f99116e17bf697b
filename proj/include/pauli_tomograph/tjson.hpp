#pragma once

#include <string>
#include <variant>

#include "pauli_tomograph/grid.hpp"
#include "pauli_tomograph/quasidist.hpp"
#include "pauli_tomograph/tomography.hpp"

namespace pt {

// Everything a TJSON file can hold.
using Document = std::variant<SpinDensity, TomogramField4, PhaseField4, SymplecticField4>;

// `meta_json` is merged into the file's meta object (must be a JSON object or empty).
std::string to_tjson(const Document& doc, const std::string& meta_json = "");
Document from_tjson(const std::string& text);

void save_tjson(const std::string& path, const Document& doc, const std::string& meta_json = "");
Document load_tjson(const std::string& path);

// Plot-ready CSV, one row per sample point, '.' decimal point regardless of locale.
std::string to_csv(const Document& doc);

const char* representation_name(const Document& doc);

}  // namespace pt
