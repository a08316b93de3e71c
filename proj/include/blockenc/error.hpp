#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace blockenc {

// All library errors carry a short machine-readable kind ("shape", "spectrum", ...)
// so the CLI can surface the originating check without string-parsing what().
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

inline Error shape_error(const std::string& m) { return Error("shape", m); }
inline Error symmetry_error(const std::string& m) { return Error("symmetry", m); }
inline Error singularity_error(const std::string& m) { return Error("singularity", m); }
inline Error validation_error(const std::string& m) { return Error("validation", m); }
inline Error domain_error(const std::string& m) { return Error("domain", m); }
inline Error spectrum_error(const std::string& m) { return Error("spectrum", m); }
inline Error amplification_error(const std::string& m) { return Error("amplification-domain", m); }
inline Error zero_probability_error(const std::string& m) { return Error("zero-probability", m); }
inline Error gap_error(const std::string& m) { return Error("gap-too-small", m); }
inline Error degenerate_start_error(const std::string& m) { return Error("degenerate-start", m); }
inline Error approximation_error(const std::string& m) { return Error("approximation", m); }
inline Error config_error(const std::string& m) { return Error("config", m); }
inline Error io_error(const std::string& m) { return Error("io", m); }

} // namespace blockenc
