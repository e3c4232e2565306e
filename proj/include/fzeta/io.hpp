#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fzeta {

inline constexpr const char* kSchemaTag = "fzeta/1";

/// Full round-trip decimal formatting (deterministic across runs).
std::string format_full(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
    std::string str() const;
};

/// JSON mirror of a CSV table, with schema versioning.
nlohmann::json table_to_json(const CsvTable& table);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fzeta
