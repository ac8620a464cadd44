#include "core/csv.hpp"

#include <cstdio>

#include "core/errors.hpp"

namespace shearwave {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::string& config_hash)
    : ncols_(columns.size()), path_(path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw NumericError("cannot open '" + path + "' for writing");
    file_ = f;
    std::string header = "# ";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) header += ",";
        header += columns[i];
    }
    header += " config=" + config_hash + "\n";
    std::fwrite(header.data(), 1, header.size(), f);
}

CsvWriter::~CsvWriter() { close(); }

void CsvWriter::close() {
    if (file_) {
        std::fclose(static_cast<std::FILE*>(file_));
        file_ = nullptr;
    }
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_)
        throw InvalidInput("csv row width mismatch in '" + path_ + "'");
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ",";
        line += format(values[i]);
    }
    line += "\n";
    std::fwrite(line.data(), 1, line.size(), static_cast<std::FILE*>(file_));
}

void CsvWriter::raw_row(const std::string& line) {
    std::string l = line;
    l += "\n";
    std::fwrite(l.data(), 1, l.size(), static_cast<std::FILE*>(file_));
}

}  // namespace shearwave
