#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "subrepro/analysis.hpp"
#include "subrepro/constructors.hpp"
#include "subrepro/lattice.hpp"
#include "subrepro/subdivision.hpp"
#include "subrepro/symbol.hpp"

namespace subrepro {

using Json = nlohmann::ordered_json;

/// On-disk mask description:
///
///   {"name": "...", "dim": 2, "dilation": [[1,2],[-2,-1]],
///    "coefficients": [{"index": [0,1], "value": "1/3"}, ...],
///    "tau": ["0","0"]}
///
/// `dilation` is row-major, nested or flat; `name` and `tau` are optional.
struct MaskFile {
    std::string name;
    IntMatrix dilation;
    LaurentPoly symbol;
    std::optional<RationalVector> tau;
};

/// Throws ParseError for malformed documents, DuplicateIndex or
/// DimensionMismatch for invariant violations.
MaskFile mask_from_json(const Json& doc);
Json mask_to_json(const MaskFile& mask);
/// Throws IoError when the file is missing or unreadable.
MaskFile read_mask_file(const std::filesystem::path& path);

Json report_to_json(const ReproductionReport& report);
/// Inverse of report_to_json; throws ParseError.
ReproductionReport report_from_json(const Json& doc);
std::string report_to_text(const ReproductionReport& report);

Json solution_to_json(const AffineSolution& sol);

/// Sums of terms c*x1^a*x2^b*..., c an integer or "p/q". Repeated factors
/// multiply ("x1*x1" == "x1^2"). Throws ParseError.
PolySpec parse_poly_spec(std::string_view text, std::size_t dim);

}  // namespace subrepro
