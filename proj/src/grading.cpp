#include "dabim/grading.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dabim {

Grading Grading::from_scaled(std::vector<std::int64_t> scaled) {
    Grading g;
    g.coords_ = std::move(scaled);
    return g;
}

Grading Grading::integer(std::int64_t value) { return from_scaled({value * kGradingScale}); }

bool Grading::is_zero() const {
    for (auto c : coords_)
        if (c != 0) return false;
    return true;
}

std::int64_t Grading::as_integer() const {
    if (coords_.size() != 1) throw std::logic_error("as_integer: grading is not one-dimensional");
    if (coords_[0] % kGradingScale != 0)
        throw std::logic_error("as_integer: grading " + to_string() + " is fractional");
    return coords_[0] / kGradingScale;
}

Grading& Grading::operator+=(const Grading& o) {
    if (o.dim() != dim()) throw std::invalid_argument("grading dimension mismatch");
    for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] += o.coords_[k];
    return *this;
}

Grading& Grading::operator-=(const Grading& o) {
    if (o.dim() != dim()) throw std::invalid_argument("grading dimension mismatch");
    for (std::size_t k = 0; k < coords_.size(); ++k) coords_[k] -= o.coords_[k];
    return *this;
}

Grading Grading::operator-() const {
    Grading g = *this;
    for (auto& c : g.coords_) c = -c;
    return g;
}

Grading Grading::times(std::int64_t n) const {
    Grading g = *this;
    for (auto& c : g.coords_) c *= n;
    return g;
}

std::string format_quarter(std::int64_t scaled) {
    std::int64_t g = std::gcd(scaled < 0 ? -scaled : scaled, kGradingScale);
    if (g == 0) g = kGradingScale;
    std::int64_t num = scaled / g, den = kGradingScale / g;
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string Grading::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (k) os << ", ";
        os << format_quarter(coords_[k]);
    }
    os << ')';
    return os.str();
}

Grading refined_zero(int m) { return Grading(static_cast<std::size_t>(2 * m)); }

Grading tau(int m, int j, std::int64_t multiplicity_scaled) {
    if (j < 1 || j > m) throw std::out_of_range("tau index");
    Grading g = refined_zero(m);
    g.set_scaled(static_cast<std::size_t>(j - 1), multiplicity_scaled);
    return g;
}

Grading beta(int m, int j, std::int64_t multiplicity_scaled) {
    if (j < 1 || j > m) throw std::out_of_range("beta index");
    Grading g = refined_zero(m);
    g.set_scaled(static_cast<std::size_t>(m + j - 1), multiplicity_scaled);
    return g;
}

GradingHom::GradingHom(std::string name, std::size_t rows, std::size_t cols)
    : name_(std::move(name)), rows_(rows), cols_(cols), m_(rows * cols, 0) {}

GradingHom GradingHom::identity(std::size_t dim, std::string name) {
    GradingHom h(std::move(name), dim, dim);
    for (std::size_t k = 0; k < dim; ++k) h.set_entry(k, k, 1);
    return h;
}

GradingHom GradingHom::eta(int m) {
    auto mm = static_cast<std::size_t>(m);
    GradingHom h("eta", mm, 2 * mm);
    for (std::size_t k = 0; k < mm; ++k) {
        h.set_entry(k, k, 1);
        h.set_entry(k, mm + k, 1);
    }
    return h;
}

GradingHom GradingHom::epsilon(int m) {
    auto mm = static_cast<std::size_t>(m);
    GradingHom h("epsilon", 1, 2 * mm);
    for (std::size_t k = 0; k < mm; ++k) h.set_entry(0, mm + k, 2);
    return h;
}

GradingHom GradingHom::swap_refined(int m, int i) {
    if (i < 1 || i >= m) throw std::out_of_range("swap index");
    auto mm = static_cast<std::size_t>(m);
    GradingHom h("swap" + std::to_string(i), 2 * mm, 2 * mm);
    for (std::size_t half = 0; half < 2; ++half)
        for (std::size_t k = 0; k < mm; ++k) {
            std::size_t src = k;
            if (k + 1 == static_cast<std::size_t>(i)) src = k + 1;
            else if (k == static_cast<std::size_t>(i)) src = k - 1;
            h.set_entry(half * mm + k, half * mm + src, 1);
        }
    return h;
}

GradingHom GradingHom::swap_alexander(int m, int i) {
    if (i < 1 || i >= m) throw std::out_of_range("swap index");
    auto mm = static_cast<std::size_t>(m);
    GradingHom h("swap" + std::to_string(i), mm, mm);
    for (std::size_t k = 0; k < mm; ++k) {
        std::size_t src = k;
        if (k + 1 == static_cast<std::size_t>(i)) src = k + 1;
        else if (k == static_cast<std::size_t>(i)) src = k - 1;
        h.set_entry(k, src, 1);
    }
    return h;
}

GradingHom GradingHom::flip_refined(int m) {
    auto mm = static_cast<std::size_t>(m);
    GradingHom h("flip", 2 * mm, 2 * mm);
    for (std::size_t k = 0; k < mm; ++k) {
        h.set_entry(k, mm + k, 1);
        h.set_entry(mm + k, k, 1);
    }
    return h;
}

Grading GradingHom::apply(const Grading& g) const {
    if (g.dim() != cols_)
        throw std::invalid_argument("grading hom " + name_ + ": expected dimension " +
                                    std::to_string(cols_) + ", got " + std::to_string(g.dim()));
    std::vector<std::int64_t> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r] += entry(r, c) * g.scaled(c);
    return Grading::from_scaled(std::move(out));
}

GradingHom GradingHom::after(const GradingHom& other) const {
    if (other.rows_ != cols_) throw std::invalid_argument("grading hom composition mismatch");
    GradingHom h(name_ + "." + other.name_, rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < other.cols_; ++c) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < cols_; ++k) s += entry(r, k) * other.entry(k, c);
            h.set_entry(r, c, s);
        }
    return h;
}

}  // namespace dabim
