#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace dabim {

// Gradings live in Q^n but every value we meet is a multiple of 1/4, so we
// store coordinates multiplied by this factor.
inline constexpr std::int64_t kGradingScale = 4;

class Grading {
public:
    Grading() = default;
    explicit Grading(std::size_t dim) : coords_(dim, 0) {}

    static Grading from_scaled(std::vector<std::int64_t> scaled);
    /// Single coordinate given as an ordinary integer value.
    static Grading integer(std::int64_t value);

    std::size_t dim() const { return coords_.size(); }
    std::int64_t scaled(std::size_t k) const { return coords_.at(k); }
    void set_scaled(std::size_t k, std::int64_t v) { coords_.at(k) = v; }
    const std::vector<std::int64_t>& scaled_coords() const { return coords_; }

    bool is_zero() const;
    /// Value of a one-dimensional grading; throws if fractional or not 1-d.
    std::int64_t as_integer() const;

    Grading& operator+=(const Grading& o);
    Grading& operator-=(const Grading& o);
    friend Grading operator+(Grading a, const Grading& b) { return a += b; }
    friend Grading operator-(Grading a, const Grading& b) { return a -= b; }
    Grading operator-() const;
    Grading times(std::int64_t n) const;

    friend bool operator==(const Grading&, const Grading&) = default;
    friend auto operator<=>(const Grading&, const Grading&) = default;

    /// Human readable form such as "(1/2, 0, -1)".
    std::string to_string() const;

private:
    std::vector<std::int64_t> coords_;
};

std::string format_quarter(std::int64_t scaled);

// Refined gradings of rank m use coordinates (tau_1..tau_m, beta_1..beta_m).
Grading refined_zero(int m);
Grading tau(int m, int j, std::int64_t multiplicity_scaled = kGradingScale);
Grading beta(int m, int j, std::int64_t multiplicity_scaled = kGradingScale);

/// Integer matrix acting on scaled coordinates.
class GradingHom {
public:
    GradingHom() = default;
    GradingHom(std::string name, std::size_t rows, std::size_t cols);

    static GradingHom identity(std::size_t dim, std::string name = "id");
    /// tau_i, beta_i -> e_i
    static GradingHom eta(int m);
    /// tau_i -> 0, beta_i -> 2
    static GradingHom epsilon(int m);
    /// exchanges the i-th and (i+1)-st coordinates in both halves
    static GradingHom swap_refined(int m, int i);
    static GradingHom swap_alexander(int m, int i);
    /// exchanges the tau and beta halves
    static GradingHom flip_refined(int m);

    const std::string& name() const { return name_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t entry(std::size_t r, std::size_t c) const { return m_[r * cols_ + c]; }
    void set_entry(std::size_t r, std::size_t c, std::int64_t v) { m_[r * cols_ + c] = v; }

    Grading apply(const Grading& g) const;
    /// this after other
    GradingHom after(const GradingHom& other) const;

    friend bool operator==(const GradingHom& a, const GradingHom& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.m_ == b.m_;
    }

private:
    std::string name_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> m_;
};

}  // namespace dabim
