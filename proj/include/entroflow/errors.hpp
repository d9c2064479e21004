#pragma once

#include <stdexcept>
#include <string>

namespace entroflow {

// Config/schema violation; carries the offending key path for fail-fast CLI
// reporting (exit code 2).
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string key_path, const std::string& what)
        : std::runtime_error(what), key_path_(std::move(key_path)) {}
    const std::string& key_path() const { return key_path_; }

private:
    std::string key_path_;
};

// Numeric or solver failure (exit code 3).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncation-boundary mass above the contamination cap (exit code 4 under
// --strict).
class BoundaryContamination : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace entroflow
