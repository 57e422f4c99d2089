#include "eblocks/report.hpp"

#include <iomanip>
#include <sstream>

namespace eblocks {

uint64_t fnv1a(std::string_view bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes);
    return out.str();
}

void Report::add(std::string name, bool check_ok, std::string detail) {
    if (!check_ok) ok = false;
    checks.push_back(CheckResult{std::move(name), check_ok, std::move(detail)});
}

std::string report_text(const Report& r) {
    std::ostringstream out;
    out << r.command << "\n";
    if (!r.input_digest.empty()) out << "input: " << r.input_digest << "\n";
    for (const auto& c : r.checks) {
        out << (c.ok ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << "\n";
    }
    if (!r.payload.is_null()) out << r.payload.dump(2) << "\n";
    out << (r.ok ? "OK" : "FAILED") << "\n";
    return out.str();
}

std::string report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    if (!r.input_digest.empty()) j["input"] = r.input_digest;
    j["ok"] = r.ok;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["ok"] = c.ok;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    if (!r.payload.is_null()) j["payload"] = r.payload;
    return j.dump(2) + "\n";
}

} // namespace eblocks
