#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lamfrac {

inline constexpr const char* kVersion = "0.1.0";

// CSV with a fixed header and 17-significant-digit decimals; identical inputs
// give byte-identical files.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void row_with_tag(const std::vector<double>& values, const std::string& tag);
    void close();

  private:
    std::FILE* f_ = nullptr;
};

// Records every emitted file together with the config hash and tolerances.
class Manifest {
  public:
    Manifest(std::string out_dir, std::uint64_t config_hash, double tol);
    void add_file(const std::string& name);
    void note(const std::string& key, const std::string& value);
    void write() const;
    const std::vector<std::string>& files() const { return files_; }

  private:
    std::string dir_;
    std::uint64_t hash_;
    double tol_;
    std::vector<std::string> files_;
    std::vector<std::pair<std::string, std::string>> notes_;
};

std::string format_g17(double v);

} // namespace lamfrac
