#include "qinv/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace qinv::io {

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

TabulatedPdf read_pdf_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");

    std::vector<double> xs, ps;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        // trim trailing CR from Windows line endings
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(path + ": line " + std::to_string(lineno) +
                             ": expected two comma-separated columns");
        size_t px = 0, pp = 0;
        double x, p;
        try {
            x = std::stod(line.substr(0, comma), &px);
            p = std::stod(line.substr(comma + 1), &pp);
        } catch (const std::exception&) {
            throw ParseError(path + ": line " + std::to_string(lineno) + ": not a number");
        }
        // reject trailing garbage such as a third column
        const std::string rest = line.substr(comma + 1);
        for (size_t i = pp; i < rest.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(rest[i])))
                throw ParseError(path + ": line " + std::to_string(lineno) +
                                 ": trailing characters after the second column");
        if (!std::isfinite(x) || !std::isfinite(p) || p < 0.0)
            throw ParseError(path + ": line " + std::to_string(lineno) +
                             ": values must be finite and P non-negative");
        xs.push_back(x);
        ps.push_back(p);
    }
    if (xs.size() < 3) throw ParseError(path + ": need at least 3 data rows");

    const double h = xs[1] - xs[0];
    if (!(h > 0.0))
        throw ParseError(path + ": x must be strictly increasing (rows 2-3, x = " +
                         format_float(xs[0]) + " then " + format_float(xs[1]) + ")");
    for (size_t i = 1; i + 1 < xs.size(); ++i) {
        const double hi = xs[i + 1] - xs[i];
        if (!(hi > 0.0))
            throw ParseError(path + ": x must be strictly increasing (between x = " +
                             format_float(xs[i]) + " and x = " + format_float(xs[i + 1]) +
                             ", lines " + std::to_string(i + 2) + "-" + std::to_string(i + 3) +
                             ")");
        if (std::abs(hi - h) > 1e-9 * std::abs(h))
            throw ParseError(path + ": non-uniform spacing between x = " + format_float(xs[i]) +
                             " and x = " + format_float(xs[i + 1]) + " (lines " +
                             std::to_string(i + 2) + "-" + std::to_string(i + 3) + "): got " +
                             format_float(hi) + ", expected " + format_float(h));
    }

    const Grid1D grid = Grid1D::linear(xs.front(), xs.back(), static_cast<int>(xs.size()));
    return TabulatedPdf(grid, std::move(ps));
}

}  // namespace qinv::io
