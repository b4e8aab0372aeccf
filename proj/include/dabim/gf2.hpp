#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dabim {

/// Dense vector over the field with two elements.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
    void flip(std::size_t i) { w_[i / 64] ^= (std::uint64_t{1} << (i % 64)); }
    void set(std::size_t i) { w_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    bool any() const;
    std::size_t popcount() const;
    /// index of the lowest set bit, or nullopt for the zero vector
    std::optional<std::size_t> lowest() const;
    BitVec& operator^=(const BitVec& o);
    friend bool operator==(const BitVec&, const BitVec&) = default;
    std::vector<std::size_t> support() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Incrementally maintained row echelon basis of a subspace.
class Gf2Span {
public:
    explicit Gf2Span(std::size_t dim) : dim_(dim) {}
    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    /// Returns true when v was independent of the current span.
    bool insert(BitVec v);
    bool contains(BitVec v) const;
    BitVec reduce(BitVec v) const;

private:
    std::size_t dim_;
    std::vector<BitVec> rows_;
    std::unordered_map<std::size_t, std::size_t> pivot_;
};

/// Kernel of the linear map sending basis vector k of the source to images[k].
std::vector<BitVec> gf2_kernel(const std::vector<BitVec>& images, std::size_t target_dim);

}  // namespace dabim
