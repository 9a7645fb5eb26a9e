#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwcert {

enum class SemiringTag { Arithmetic, Tropical, Arctic };

const char* to_string(SemiringTag tag);

// A value of one of the three semirings: a natural number, or the tag's
// infinite element (+inf under tropical, -inf under arctic; arithmetic has
// none). One flag suffices because a value never crosses semirings.
struct Weight {
    std::uint64_t value = 0;
    bool infinite = false;

    static Weight finite(std::uint64_t v) { return Weight{v, false}; }
    static Weight inf() { return Weight{0, true}; }

    bool operator==(const Weight&) const = default;
};

// Operation table of one ordered semiring.
//   arithmetic: (N, +, *), numeric order
//   tropical:   (N u {inf}, min, +), numeric order with inf greatest
//   arctic:     (N u {-inf}, max, +), numeric order with -inf least
class Semiring {
public:
    explicit Semiring(SemiringTag tag) : tag_(tag) {}

    SemiringTag tag() const { return tag_; }

    Weight zero() const; // additive identity
    Weight one() const;  // multiplicative identity

    Weight add(Weight a, Weight b) const;
    Weight mul(Weight a, Weight b) const;

    // a <= b in the tag's order
    bool leq(Weight a, Weight b) const;
    // a < b; inf < inf and -inf < -inf are both false
    bool lt(Weight a, Weight b) const;

    bool valid(Weight w) const;

private:
    SemiringTag tag_;
};

class WeightMatrix {
public:
    WeightMatrix() = default;
    WeightMatrix(std::size_t dim, Weight fill) : dim_(dim), entries_(dim * dim, fill) {}

    static WeightMatrix identity(SemiringTag tag, std::size_t dim);

    std::size_t dim() const { return dim_; }
    Weight& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    Weight at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    const std::vector<Weight>& entries() const { return entries_; }

    bool all_finite() const;
    // no all-zero row and no all-zero column (arithmetic admissibility)
    bool has_positive_rows_and_columns() const;

    bool operator==(const WeightMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Weight> entries_;
};

WeightMatrix mat_mul(SemiringTag tag, const WeightMatrix& a, const WeightMatrix& b);

// Semiring sum of the diagonal: arithmetic sum, tropical min, arctic max.
Weight trace(SemiringTag tag, const WeightMatrix& m);

} // namespace rwcert
