#pragma once

// Command dispatch over a description file and the resulting reports.
//
// Exit codes: 0 success, 1 validation failure or malformed input,
// 2 request exceeds the truncation degree, 3 certification failure.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lincat {

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_truncation = 2, exit_certification = 3 };

struct Request {
    std::string command;  // validate | cohomology | trace | chern | invariance | k0
    std::string file;
    std::optional<std::size_t> max_degree;
    std::string module;
    std::string endo;
    std::vector<std::string> connections;
    std::optional<std::size_t> q;
    std::string element;
};

/// Command-line style echo of a request, e.g. "chern f.json --module M --q 1".
std::string echo(const Request& r);

struct Report {
    std::string command;
    int exit_code = exit_ok;
    std::vector<std::string> findings;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<std::string> text;

    friend bool operator==(const Report&, const Report&) = default;
};

/// Runs a request against the document text; never throws for bad input.
Report run(const Request& r, const std::string& document);

std::string to_text(const Report& r);
std::string to_machine(const Report& r);
/// Inverse of to_machine.
Report from_machine(const std::string& text);

}  // namespace lincat
