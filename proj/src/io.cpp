#include "fzeta/io.hpp"

#include <cstdio>
#include <fstream>

#include "fzeta/common.hpp"

namespace fzeta {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string CsvTable::str() const {
    std::string out;
    auto join = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    join(header);
    for (const auto& r : rows) join(r);
    return out;
}

nlohmann::json table_to_json(const CsvTable& table) {
    nlohmann::json j;
    j["schema"] = kSchemaTag;
    j["columns"] = table.header;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : table.rows) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : r) {
            // numeric cells stay numeric in the JSON mirror
            try {
                std::size_t used = 0;
                const double v = std::stod(c, &used);
                if (used == c.size()) {
                    row.push_back(v);
                    continue;
                }
            } catch (...) {
            }
            row.push_back(c);
        }
        j["rows"].push_back(std::move(row));
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out.good()) throw ConfigError("failed writing output file: " + path);
}

}  // namespace fzeta
