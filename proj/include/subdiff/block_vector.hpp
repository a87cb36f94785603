#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace subdiff {

/// A spatial grid function on the interior nodes, x index fastest:
/// values[(j-1)(Nx-1) + (i-1)] = v(x_i, y_j).
using SpatialField = std::vector<double>;

/// Length-M sequence of spatial fields stored contiguously; the unknown
/// layout of the space-time system and of its two sub-vectors.
struct BlockVector {
    std::vector<double> data;
    int blocks = 0;
    std::size_t block_size = 0;

    BlockVector() = default;
    BlockVector(int n_blocks, std::size_t n_per_block)
        : data(static_cast<std::size_t>(n_blocks) * n_per_block, 0.0),
          blocks(n_blocks),
          block_size(n_per_block) {}

    double* block(int k) { return data.data() + static_cast<std::size_t>(k) * block_size; }
    const double* block(int k) const {
        return data.data() + static_cast<std::size_t>(k) * block_size;
    }
    std::size_t size() const { return data.size(); }

    void set_zero() { std::fill(data.begin(), data.end(), 0.0); }
};

inline double dot(const BlockVector& a, const BlockVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

inline double norm2(const BlockVector& a) { return std::sqrt(dot(a, a)); }

/// y += c * x
inline void axpy(double c, const BlockVector& x, BlockVector& y) {
    for (std::size_t i = 0; i < x.data.size(); ++i) y.data[i] += c * x.data[i];
}

}  // namespace subdiff
