#include "newsagg/classifier/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace newsagg::classifier {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded: n must be positive");
    // reject the top partial block so every residue is equally likely
    const std::uint64_t limit = (0 - n) % n;
    while (true) {
        auto r = rng();
        if (r >= limit) return r % n;
    }
}

void shuffle(std::vector<std::string>& v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = v.size(); i > 1; --i) {
        auto j = bounded(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

DatasetSplit split_dataset(std::vector<std::string> ids, double ratio, std::uint64_t seed) {
    if (ids.size() < 2) throw std::invalid_argument("split_dataset needs at least two ids");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("split ratio must lie in (0, 1)");
    shuffle(ids, seed);
    auto n_train = static_cast<std::size_t>(std::lround(ratio * static_cast<double>(ids.size())));
    DatasetSplit split;
    split.train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.end());
    return split;
}

}  // namespace newsagg::classifier
