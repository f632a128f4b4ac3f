#pragma once

#include <cstddef>
#include <vector>

#include "stabsel/core.hpp"
#include "stabsel/random.hpp"

namespace stabsel::blocks {

/// Inclusive range of 1-based time indices.
struct IndexRange {
    std::size_t first = 1;
    std::size_t last = 0;

    std::size_t size() const { return last >= first ? last - first + 1 : 0; }
    bool contains(std::size_t i) const { return i >= first && i <= last; }

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/**
 * Split of {1..T} into 2*mu alternating blocks of length a_T.
 *
 * Odd block j (1-based) covers {2(j-1)a_T + 1, ..., (2j-1)a_T} and even block
 * j covers {(2j-1)a_T + 1, ..., 2j a_T}. Indices past 2*mu*a_T form the
 * remainder, which block sampling never touches.
 */
struct BlockPartition {
    std::size_t length = 0;        // T
    std::size_t block_length = 0;  // a_T
    std::size_t odd_count = 0;     // mu_T
    std::vector<IndexRange> odd_blocks;
    std::vector<IndexRange> even_blocks;
    IndexRange remainder;  // empty when T == 2 mu a_T
};

/// Complementary split of the odd-block ids (0-based, ascending in each half).
struct BlockPairSample {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
};

/// Requires 1 <= block_length <= floor(T / 2); throws std::invalid_argument otherwise.
BlockPartition partition(std::size_t length, std::size_t block_length);

/**
 * Draws floor(mu/2) odd blocks without replacement as `first`; the remaining
 * blocks form `second`. Requires mu >= 2.
 */
BlockPairSample sample_pair(const BlockPartition& partition, Rng& rng);

/**
 * Rows of `data` whose response time index lies in the union of the named odd
 * blocks, in ascending time order. Lagged regressors may reach into the
 * neighbouring even block.
 */
RegressionData gather(const RegressionData& data, const BlockPartition& partition,
                      const std::vector<std::size_t>& block_ids);

/// Row positions selected by gather (exposed for disjointness checks).
std::vector<std::size_t> gather_rows(const RegressionData& data, const BlockPartition& partition,
                                     const std::vector<std::size_t>& block_ids);

/// Default block length: `multiple` seasonal periods when a period is known,
/// else ceil(sqrt(T)).
std::size_t default_block_length(std::size_t length, std::size_t seasonality = 0, std::size_t multiple = 1);

}  // namespace stabsel::blocks
