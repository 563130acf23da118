#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lincat {

// Malformed input: bad scalar literal, shape mismatch, unknown name.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Endpoints of two morphisms/forms do not match for composition.
class composition_error : public std::runtime_error {
public:
    explicit composition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A matrix handed in as an idempotent fails e*e == e.
class idempotency_error : public std::runtime_error {
public:
    explicit idempotency_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A request needs forms above the truncation degree of the DG-category.
class truncation_error : public std::runtime_error {
public:
    explicit truncation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A constructive certificate that must exist was not found.
// Reaching this means an engine bug or an invalid table that slipped validation.
class certification_error : public std::runtime_error {
public:
    explicit certification_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A description parsed but some structure fails its axioms; findings name each failure.
class validation_error : public std::runtime_error {
public:
    validation_error(const std::string& msg, std::vector<std::string> findings)
        : std::runtime_error(msg), findings_(std::move(findings)) {}
    const std::vector<std::string>& findings() const { return findings_; }

private:
    std::vector<std::string> findings_;
};

}  // namespace lincat
