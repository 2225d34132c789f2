#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "implreg/dataset.hpp"

namespace implreg {

/// Reads a two-column CSV with a header line. Fields are decimal literals or
/// mixed fractions such as `29 2/16`.
///
/// Throws ParseError (with 1-based line number) on malformed lines,
/// RangeError on non-finite values and InsufficientDataError when fewer than
/// three rows are present.
Dataset read_csv(std::istream& in);
Dataset read_csv_string(std::string_view text);
Dataset read_csv_file(const std::string& path);

/// Parses one numeric field: `12`, `-3.5e2`, `29 2/16`, `7/8`. The fraction
/// part is reduced in integer arithmetic before the single final division.
double parse_field(std::string_view field);

/// Writes header and rows with `decimals` fixed places, `\n` line endings.
void write_csv(std::ostream& out, const Dataset& data, int decimals = 6);
std::string write_csv_string(const Dataset& data, int decimals = 6);

/// FNV-1a 64-bit hash, used as the integrity checksum of bundled resources.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Documented checksum of core/resources/boyle1662.csv.
inline constexpr std::uint64_t kBoyleChecksum = 0x6d5a43f3224a76f6ULL;

/// Boyle's 1662 table: volume (equal spaces in the shorter leg) against the
/// aggregate mercury height, 25 rows, pressures in sixteenths. Verified on
/// every load against its checksum and its three constancy anchors; throws
/// IntegrityError otherwise.
Dataset boyle_dataset();

/// Raw bundled CSV text.
std::string_view boyle_csv();

}  // namespace implreg
