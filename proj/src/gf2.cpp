#include "dabim/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace dabim {

bool BitVec::any() const {
    for (auto x : w_)
        if (x) return true;
    return false;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
}

std::optional<std::size_t> BitVec::lowest() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
    return std::nullopt;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.n_ != n_) throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
}

std::vector<std::size_t> BitVec::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n_; ++i)
        if (test(i)) s.push_back(i);
    return s;
}

BitVec Gf2Span::reduce(BitVec v) const {
    while (auto p = v.lowest()) {
        auto it = pivot_.find(*p);
        if (it == pivot_.end()) break;
        v ^= rows_[it->second];
    }
    return v;
}

bool Gf2Span::insert(BitVec v) {
    v = reduce(std::move(v));
    auto p = v.lowest();
    if (!p) return false;
    pivot_[*p] = rows_.size();
    rows_.push_back(std::move(v));
    return true;
}

bool Gf2Span::contains(BitVec v) const { return !reduce(std::move(v)).any(); }

std::vector<BitVec> gf2_kernel(const std::vector<BitVec>& images, std::size_t target_dim) {
    const std::size_t n = images.size();
    // augmented rows: [image | unit vector of the source]
    std::vector<BitVec> rows;
    rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (images[k].size() != target_dim) throw std::invalid_argument("gf2_kernel: bad image size");
        BitVec r(target_dim + n);
        for (auto i : images[k].support()) r.set(i);
        r.set(target_dim + k);
        rows.push_back(std::move(r));
    }
    std::unordered_map<std::size_t, std::size_t> pivot;
    std::vector<BitVec> kernel;
    std::vector<BitVec> basis;
    for (auto& r : rows) {
        while (true) {
            auto p = r.lowest();
            if (!p || *p >= target_dim) break;
            auto it = pivot.find(*p);
            if (it == pivot.end()) {
                pivot[*p] = basis.size();
                basis.push_back(r);
                break;
            }
            r ^= basis[it->second];
        }
        auto p = r.lowest();
        if (p && *p >= target_dim) {
            BitVec kv(n);
            for (auto i : r.support()) kv.set(i - target_dim);
            kernel.push_back(std::move(kv));
        }
    }
    return kernel;
}

}  // namespace dabim
