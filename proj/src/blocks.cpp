#include "stabsel/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stabsel::blocks {

BlockPartition partition(std::size_t length, std::size_t block_length)
{
    if (block_length < 1 || block_length > length / 2) {
        throw std::invalid_argument("partition: block length " + std::to_string(block_length) +
                                    " must lie in [1, floor(T/2)] for T = " + std::to_string(length));
    }
    BlockPartition out;
    out.length = length;
    out.block_length = block_length;
    out.odd_count = length / (2 * block_length);
    out.odd_blocks.reserve(out.odd_count);
    out.even_blocks.reserve(out.odd_count);
    for (std::size_t j = 1; j <= out.odd_count; ++j) {
        out.odd_blocks.push_back({2 * (j - 1) * block_length + 1, (2 * j - 1) * block_length});
        out.even_blocks.push_back({(2 * j - 1) * block_length + 1, 2 * j * block_length});
    }
    out.remainder = {2 * out.odd_count * block_length + 1, length};
    return out;
}

BlockPairSample sample_pair(const BlockPartition& partition, Rng& rng)
{
    const std::size_t mu = partition.odd_count;
    if (mu < 2) {
        throw std::invalid_argument("sample_pair: at least two odd blocks are needed for a complementary pair (mu = " +
                                    std::to_string(mu) + ")");
    }
    std::vector<std::size_t> ids(mu);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    const std::size_t half = mu / 2;
    // Partial Fisher-Yates: the first `half` slots end up a uniform subset.
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t j = i + rng.uniform_index(mu - i);
        std::swap(ids[i], ids[j]);
    }
    BlockPairSample out;
    out.first.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(half));
    out.second.assign(ids.begin() + static_cast<std::ptrdiff_t>(half), ids.end());
    std::sort(out.first.begin(), out.first.end());
    std::sort(out.second.begin(), out.second.end());
    return out;
}

std::vector<std::size_t> gather_rows(const RegressionData& data, const BlockPartition& partition,
                                     const std::vector<std::size_t>& block_ids)
{
    if (block_ids.empty()) {
        throw std::invalid_argument("gather: block list is empty");
    }
    const std::size_t a = partition.block_length;
    std::vector<bool> wanted(partition.odd_count, false);
    for (const auto id : block_ids) {
        if (id >= partition.odd_count) {
            throw std::invalid_argument("gather: block id " + std::to_string(id) + " out of range");
        }
        wanted[id] = true;
    }
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < data.response_time.size(); ++r) {
        const std::size_t t = data.response_time[r];
        if (t < 1 || t > 2 * partition.odd_count * a) {
            continue;
        }
        const std::size_t pos = (t - 1) / a;  // 0-based block position, odd blocks at even positions
        if (pos % 2 == 0 && wanted[pos / 2]) {
            rows.push_back(r);
        }
    }
    return rows;
}

RegressionData gather(const RegressionData& data, const BlockPartition& partition,
                      const std::vector<std::size_t>& block_ids)
{
    return data.subset(gather_rows(data, partition, block_ids));
}

std::size_t default_block_length(std::size_t length, std::size_t seasonality, std::size_t multiple)
{
    if (seasonality > 0) {
        return seasonality * std::max<std::size_t>(1, multiple);
    }
    auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(length))));
    while (root * root < length) {
        ++root;
    }
    while (root > 1 && (root - 1) * (root - 1) >= length) {
        --root;
    }
    return root;
}

}  // namespace stabsel::blocks
