#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "rosette/errors.hpp"

namespace rosette {

/// Deterministic CSV writer: a config-hash comment, a header row, then rows
/// formatted with shortest round-trip precision (%.17g).
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              std::uint64_t config_hash)
        : out_(path, std::ios::binary) {
        if (!out_) throw ConfigError("cannot open output file: " + path);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(config_hash));
        out_ << "# config=" << buf << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& values) {
        char buf[40];
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", values[i]);
            out_ << (i ? "," : "") << buf;
        }
        out_ << "\n";
    }

    void row_tagged(const std::string& tag, const std::vector<double>& values) {
        out_ << tag;
        char buf[40];
        for (double v : values) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out_ << "," << buf;
        }
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

}  // namespace rosette
