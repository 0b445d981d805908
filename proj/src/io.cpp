#include "qdarwin/io.hpp"

#include "qdarwin/mi_curve.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdarwin {

std::vector<double> parse_reals(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> values;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(line.substr(first), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": not a number");
        }
        if (line.find_first_not_of(" \t\r", first + used) != std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": trailing characters");
        }
        values.push_back(x);
    }
    return values;
}

std::string format_reals(const std::vector<double>& values) {
    std::string out;
    for (double v : values) out += format_double(v) + '\n';
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

OverlapVector read_overlaps(const std::string& path) { return OverlapVector(parse_reals(read_file(path))); }

PVector read_pvector(const std::string& path) { return PVector(parse_reals(read_file(path))); }

}  // namespace qdarwin
