#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace newsagg::classifier {

struct DatasetSplit {
    std::vector<std::string> train;
    std::vector<std::string> test;
};

// Uniform in [0, n) from a 64-bit generator, without modulo bias.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n);

// Fisher-Yates shuffle driven by `bounded`, so the permutation depends only
// on the seed.
void shuffle(std::vector<std::string>& v, std::uint64_t seed);

// Shuffles with `seed` and puts the first round(ratio * n) ids in train.
// Throws std::invalid_argument for n < 2 or ratio outside (0, 1).
DatasetSplit split_dataset(std::vector<std::string> ids, double ratio, std::uint64_t seed);

}  // namespace newsagg::classifier
