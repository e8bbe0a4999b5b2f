#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgefuse {

/// Dense row-major 2-D grid. Shared storage for every per-pixel quantity in the
/// pipeline (intensities, orientations, feature vectors, binary edge maps).
template <typename T>
class Grid {
public:
    using value_type = T;

    Grid() = default;
    Grid(int rows, int cols, T fill = T{}) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) {
            throw std::invalid_argument("Grid: negative dimension");
        }
        data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
    }
    Grid(int rows, int cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (rows < 0 || cols < 0) {
            throw std::invalid_argument("Grid: negative dimension");
        }
        if (data_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
            throw std::invalid_argument("Grid: data size does not match dimensions");
        }
    }

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    T& operator()(int r, int c) { return data_[index(r, c)]; }
    const T& operator()(int r, int c) const { return data_[index(r, c)]; }

    /// Replicate-padded access: out-of-range coordinates clamp to the nearest border pixel.
    const T& clamped(int r, int c) const {
        return (*this)(std::clamp(r, 0, rows_ - 1), std::clamp(c, 0, cols_ - 1));
    }

    [[nodiscard]] bool contains(int r, int c) const noexcept {
        return r >= 0 && r < rows_ && c >= 0 && c < cols_;
    }

    template <typename U>
    [[nodiscard]] bool same_shape(const Grid<U>& other) const noexcept {
        return rows_ == other.rows() && cols_ == other.cols();
    }

    std::span<T> pixels() noexcept { return data_; }
    std::span<const T> pixels() const noexcept { return data_; }

    bool operator==(const Grid& other) const = default;

private:
    std::size_t index(int r, int c) const noexcept {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

/// Grayscale intensities in [0,1]. The range is checked when an image is built
/// from external data; pipeline stages keep it by construction.
class GrayImage : public Grid<double> {
public:
    GrayImage() = default;
    GrayImage(int rows, int cols, double fill = 0.0);
    GrayImage(int rows, int cols, std::vector<double> data);

    [[nodiscard]] bool in_unit_range() const noexcept;

    /// Copy with rows and columns swapped.
    [[nodiscard]] GrayImage transposed() const;
};

/// Binary edge map; nonzero marks an edge pixel.
using EdgeMap = Grid<std::uint8_t>;

/// Per-pixel edge-normal angle in [0, pi).
using OrientationField = Grid<double>;

[[nodiscard]] std::size_t count_edges(const EdgeMap& map) noexcept;

inline GrayImage::GrayImage(int rows, int cols, double fill) : Grid<double>(rows, cols, fill) {
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("GrayImage: dimensions must be positive");
    }
    if (!(fill >= 0.0 && fill <= 1.0)) {
        throw std::domain_error("GrayImage: fill value outside [0,1]");
    }
}

inline GrayImage::GrayImage(int rows, int cols, std::vector<double> data)
    : Grid<double>(rows, cols, std::move(data)) {
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("GrayImage: dimensions must be positive");
    }
    if (!in_unit_range()) {
        throw std::domain_error("GrayImage: pixel value outside [0,1]");
    }
}

inline bool GrayImage::in_unit_range() const noexcept {
    return std::all_of(pixels().begin(), pixels().end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

inline GrayImage GrayImage::transposed() const {
    GrayImage out(cols(), rows());
    for (int r = 0; r < rows(); ++r) {
        for (int c = 0; c < cols(); ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

inline std::size_t count_edges(const EdgeMap& map) noexcept {
    return static_cast<std::size_t>(
        std::count_if(map.pixels().begin(), map.pixels().end(), [](std::uint8_t v) { return v != 0; }));
}

}  // namespace edgefuse
