#include "lamfrac/csvio.hpp"

#include <cinttypes>
#include <cstdio>
#include <stdexcept>

namespace lamfrac {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& header) {
    f_ = std::fopen(path.c_str(), "w");
    if (!f_) throw std::runtime_error("cannot open output file: " + path);
    std::fprintf(f_, "%s\n", header.c_str());
}

CsvWriter::~CsvWriter() { close(); }

void CsvWriter::close() {
    if (f_) {
        std::fclose(f_);
        f_ = nullptr;
    }
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(f_, "%s%.17g", i ? "," : "", values[i]);
    std::fputc('\n', f_);
}

void CsvWriter::row_with_tag(const std::vector<double>& values, const std::string& tag) {
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(f_, "%s%.17g", i ? "," : "", values[i]);
    std::fprintf(f_, ",%s\n", tag.c_str());
}

Manifest::Manifest(std::string out_dir, std::uint64_t config_hash, double tol)
    : dir_(std::move(out_dir)), hash_(config_hash), tol_(tol) {}

void Manifest::add_file(const std::string& name) { files_.push_back(name); }

void Manifest::note(const std::string& key, const std::string& value) {
    notes_.emplace_back(key, value);
}

void Manifest::write() const {
    const std::string path = dir_ + "/manifest.txt";
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    std::fprintf(f, "lamfrac = %s\n", kVersion);
    std::fprintf(f, "config_hash = %016" PRIx64 "\n", hash_);
    std::fprintf(f, "solver_tol = %.17g\n", tol_);
    for (const auto& [k, v] : notes_) std::fprintf(f, "%s = %s\n", k.c_str(), v.c_str());
    for (const auto& name : files_) std::fprintf(f, "file = %s\n", name.c_str());
    std::fclose(f);
}

} // namespace lamfrac
