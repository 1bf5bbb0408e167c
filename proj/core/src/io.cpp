#include "helixkit/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "helixkit/errors.hpp"

namespace helixkit {

std::string fmt17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string points_csv(const CurveSpec& spec) {
    if (!spec.is_sampled()) throw ValidationError("points_csv needs a sampled curve");
    const auto& sc = spec.sampled();
    std::string out = "# {\"type\":\"points\",\"n\":" + std::to_string(spec.n) + "}\n";
    out += "t";
    for (int c = 1; c <= spec.n; ++c) out += ",x_" + std::to_string(c);
    out += "\n";
    for (std::size_t i = 0; i < sc.params.size(); ++i) {
        out += fmt17(sc.params[i]);
        for (double v : sc.points[i]) {
            out += ",";
            out += fmt17(v);
        }
        out += "\n";
    }
    return out;
}

CurveSpec parse_points_csv(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> params;
    std::vector<std::vector<double>> points;
    int expected_cols = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("t,", 0) == 0) continue;  // header row
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            const std::string cell = line.substr(pos, comma - pos);
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str())
                throw ParseError("malformed CSV cell '" + cell + "'", lineno, 1);
            row.push_back(v);
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        if (expected_cols < 0) expected_cols = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != expected_cols)
            throw ParseError("inconsistent CSV column count", lineno, 1);
        params.push_back(row[0]);
        points.emplace_back(row.begin() + 1, row.end());
    }
    if (params.empty()) throw ParseError("points CSV holds no data rows", lineno, 1);
    return make_sampled_curve(std::move(params), std::move(points), name);
}

}  // namespace helixkit
