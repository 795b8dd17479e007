#include "arz/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "arz/errors.hpp"

namespace arz {

namespace {

void append_g17(std::string& out, double v) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

double field_to_double(std::string_view field, std::size_t line) {
    double v{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("bad number '" + std::string(field) + "'", line);
    return v;
}

}  // namespace

void write_field_csv(const SimulationRecord& record, const std::filesystem::path& path) {
    std::string out = "t,x,k,v\n";
    for (const auto& snap : record.snapshots) {
        for (std::size_t i = 0; i < snap.k.size(); ++i) {
            append_g17(out, snap.t);
            out.push_back(',');
            append_g17(out, snap.grid.cell_center(i));
            out.push_back(',');
            append_g17(out, snap.k[i]);
            out.push_back(',');
            append_g17(out, snap.v[i]);
            out.push_back('\n');
        }
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path.string());
    file << out;
}

std::vector<FieldSnapshot> read_field_csv(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ParseError("cannot open " + path.string());

    std::vector<FieldSnapshot> snapshots;
    std::vector<double> xs;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(file, line)) throw ParseError("empty file: " + path.string());
    ++line_no;
    if (line != "t,x,k,v" && line != "t,x,k,v\r")
        throw ParseError("expected header 't,x,k,v'", line_no);

    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        double vals[4];
        std::string_view rest = line;
        for (int c = 0; c < 4; ++c) {
            const auto comma = rest.find(',');
            if ((c < 3) != (comma != std::string_view::npos))
                throw ParseError("expected 4 comma-separated fields", line_no);
            vals[c] = field_to_double(rest.substr(0, comma), line_no);
            if (c < 3) rest.remove_prefix(comma + 1);
        }

        if (snapshots.empty() || vals[0] != snapshots.back().t) {
            snapshots.push_back(FieldSnapshot{vals[0], {}, {}, Grid{}});
            if (snapshots.size() == 1) xs.clear();
        }
        auto& snap = snapshots.back();
        snap.k.push_back(vals[2]);
        snap.v.push_back(vals[3]);
        if (snapshots.size() == 1) xs.push_back(vals[1]);
    }
    if (snapshots.empty()) throw ParseError("no rows in " + path.string());

    if (xs.size() < 2) throw ParseError("need at least two cells in " + path.string());
    const double dx = xs[1] - xs[0];
    if (!(dx > 0.0)) throw ParseError("x column must ascend in " + path.string());
    const Grid grid{xs.size(), dx};
    for (auto& snap : snapshots) {
        if (snap.k.size() != grid.n_cells)
            throw ParseError("ragged time block at t = " + std::to_string(snap.t));
        snap.grid = grid;
    }
    return snapshots;
}

}  // namespace arz
