// Internal: CSV emission shared by the experiment runners.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dicke::detail {

using CsvRow = std::vector<std::string>;

/// Writes header + rows, creating parent directories. The file is written to a
/// temporary sibling first and renamed, so readers never see a partial file.
void write_csv(const std::filesystem::path& path, const CsvRow& header, const std::vector<CsvRow>& rows);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dicke::detail
