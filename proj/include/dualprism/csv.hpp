#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dualprism/errors.hpp"

namespace dualprism {

/// Fixed, locale-independent float formatting so report files are
/// byte-stable across runs. %.12g round-trips every value we emit.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string format_csv_field(long long v) { return std::to_string(v); }

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& file) : path_(file), out_(file) {
        if (!out_) throw IoFailure("cannot open " + file.string());
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

    void close() {
        out_.flush();
        if (!out_) throw IoFailure("write failed: " + path_.string());
        out_.close();
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

} // namespace dualprism
