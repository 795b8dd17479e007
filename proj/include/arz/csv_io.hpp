#pragma once

#include <filesystem>
#include <vector>

#include "arz/record.hpp"

namespace arz {

/// Write the record's snapshots as `t,x,k,v` rows ordered by t then x,
/// 17 significant digits (round-trip exact, bitwise reproducible).
void write_field_csv(const SimulationRecord& record, const std::filesystem::path& path);

/// Read a field CSV back into snapshots; the grid is reconstructed from the
/// x column. Throws ParseError on malformed input.
std::vector<FieldSnapshot> read_field_csv(const std::filesystem::path& path);

}  // namespace arz
