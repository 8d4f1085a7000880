#include <collapse/cli/csv.hpp>

#include <fstream>
#include <sstream>

namespace collapse::cli {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string join(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw IoError("csv has no column '" + name + "'");
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::string text = std::string(csv_version_line) + "\n" + join(table.header) + "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw IoError("csv row width mismatch for " + path.string());
        text += join(row) + "\n";
    }
    write_text(path, text);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line) || line != csv_version_line)
        throw IoError(path.string() + ": missing '" + csv_version_line + "' header line");
    CsvTable t;
    if (!std::getline(in, line)) throw IoError(path.string() + ": missing column header");
    t.header = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != t.header.size()) throw IoError(path.string() + ": ragged row '" + line + "'");
        t.rows.push_back(std::move(cells));
    }
    return t;
}

template <class T>
CsvTable events_table(const std::vector<BasicCollisionEvent<T>>& events) {
    CsvTable t;
    t.header = {"index", "t", "pair", "eta_pre", "eta_post", "zeta", "tau"};
    for (const auto& e : events)
        t.rows.push_back({std::to_string(e.index), format17(e.time), pair_label(e.pair), format17(e.eta_pre),
                          format17(e.eta_post), format17(e.zeta), format17(e.tau)});
    return t;
}

template CsvTable events_table(const std::vector<BasicCollisionEvent<double>>&);
template CsvTable events_table(const std::vector<BasicCollisionEvent<HighPrecision>>&);

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace collapse::cli
