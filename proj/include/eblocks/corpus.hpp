#pragma once

#include <map>
#include <string>
#include <vector>

#include "eblocks/blocks.hpp"
#include "eblocks/report.hpp"
#include "eblocks/torus_system.hpp"

// Built-in reference inputs: three checksummed building blocks over F_23
// ("G1", "G2", "G3") plus one decorated bipartite graph whose every-branch
// linear system is singular ("singular_example"). The blocks are the seeds
// the planner composes; the verification report re-derives all of their
// claimed properties from scratch.

namespace eblocks {

inline constexpr int64_t corpus_prime = 23;

// Validated blocks, keyed "G1", "G2", "G3". Throws checksum_mismatch if an
// embedded fixture no longer hashes to its frozen value, block_invalid if a
// fixture stops validating.
const std::map<std::string, BuildingBlock>& corpus_blocks();
const BuildingBlock& corpus_block(const std::string& name);

const DecoratedBipartiteGraph& corpus_singular_example();

struct CorpusFixture {
    std::string name;
    std::string note; // one-line description of the entry
    std::string text; // canonical file form
};
std::vector<CorpusFixture> corpus_fixtures();

// Re-derives every claimed property of every corpus entry and reports each
// check individually; never throws on a failing property.
Report verify_corpus();

} // namespace eblocks
