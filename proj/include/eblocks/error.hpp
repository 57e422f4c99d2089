#pragma once

#include <stdexcept>
#include <string>

namespace eblocks {

// Every failure mode surfaced by the library carries one of these codes so
// callers (and the CLI exit-code mapping) can tell input problems apart from
// violated preconditions.
enum class errc {
    malformed_text,
    unknown_field,
    empty_graph,
    duplicate_vertex,
    duplicate_edge,
    loop_edge,
    disconnected,
    isolated_vertex,
    unknown_vertex,
    bad_weight,
    bad_value,
    not_prime,
    non_square,
    degree_not_invertible,
    weight_not_unit,
    degree_cap_exceeded,
    not_bipartite,
    decoration_violation,
    bad_branch,
    enumeration_cap,
    missing_special,
    bad_boundary,
    not_on_cycle,
    block_invalid,
    insert_mismatch,
    postcheck_failed,
    checksum_mismatch,
    bad_argument,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

} // namespace eblocks
