#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shearwave {

/// FNV-1a 64-bit over raw bytes; used to stamp outputs with the config hash.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

/// CSV writer with the reproducibility contract: '#' header line naming the
/// columns and the config hash, 17 significant digits, '.' decimal separator,
/// LF endings (files are opened in binary mode).
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              const std::string& config_hash);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);
    void close();

    static std::string format(double v);

  private:
    void* file_ = nullptr;
    std::size_t ncols_ = 0;
    std::string path_;
};

}  // namespace shearwave
