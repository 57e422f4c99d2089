#include "eblocks/error.hpp"

namespace eblocks {

const char* errc_name(errc c) {
    switch (c) {
        case errc::malformed_text: return "malformed_text";
        case errc::unknown_field: return "unknown_field";
        case errc::empty_graph: return "empty_graph";
        case errc::duplicate_vertex: return "duplicate_vertex";
        case errc::duplicate_edge: return "duplicate_edge";
        case errc::loop_edge: return "loop_edge";
        case errc::disconnected: return "disconnected";
        case errc::isolated_vertex: return "isolated_vertex";
        case errc::unknown_vertex: return "unknown_vertex";
        case errc::bad_weight: return "bad_weight";
        case errc::bad_value: return "bad_value";
        case errc::not_prime: return "not_prime";
        case errc::non_square: return "non_square";
        case errc::degree_not_invertible: return "degree_not_invertible";
        case errc::weight_not_unit: return "weight_not_unit";
        case errc::degree_cap_exceeded: return "degree_cap_exceeded";
        case errc::not_bipartite: return "not_bipartite";
        case errc::decoration_violation: return "decoration_violation";
        case errc::bad_branch: return "bad_branch";
        case errc::enumeration_cap: return "enumeration_cap";
        case errc::missing_special: return "missing_special";
        case errc::bad_boundary: return "bad_boundary";
        case errc::not_on_cycle: return "not_on_cycle";
        case errc::block_invalid: return "block_invalid";
        case errc::insert_mismatch: return "insert_mismatch";
        case errc::postcheck_failed: return "postcheck_failed";
        case errc::checksum_mismatch: return "checksum_mismatch";
        case errc::bad_argument: return "bad_argument";
    }
    return "unknown";
}

} // namespace eblocks
