#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace eblocks {

// 64-bit FNV-1a; used for input digests and fixture checksums.
uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail; // witness or explanation; empty when unremarkable
};

// Machine- and human-renderable outcome of one command or verification run.
// Rendering is deterministic: fixed key order, checks in insertion order.
struct Report {
    std::string command;
    std::string input_digest;
    std::vector<CheckResult> checks;
    nlohmann::ordered_json payload; // command-specific data; may stay null
    bool ok = true;

    void add(std::string name, bool check_ok, std::string detail = "");
};

std::string report_text(const Report& r);
std::string report_json(const Report& r);

} // namespace eblocks
