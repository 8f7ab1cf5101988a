#include "csv.hpp"

#include "dicke/errors.hpp"
#include "dicke/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace dicke {

std::string format_number(double x) {
    if (x == 0.0) return "0";  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("DICKE_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return "out";
}

namespace detail {

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out) throw Error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

void write_csv(const std::filesystem::path& path, const CsvRow& header, const std::vector<CsvRow>& rows) {
    std::string text;
    auto append = [&text](const CsvRow& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) text += ',';
            text += row[i];
        }
        text += '\n';
    };
    append(header);
    for (const auto& r : rows) append(r);
    write_text(path, text);
}

}  // namespace detail
}  // namespace dicke
