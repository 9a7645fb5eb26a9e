#include "rwcert/semiring.hpp"

namespace rwcert {

const char* to_string(SemiringTag tag) {
    switch (tag) {
    case SemiringTag::Arithmetic:
        return "arithmetic";
    case SemiringTag::Tropical:
        return "tropical";
    case SemiringTag::Arctic:
        return "arctic";
    }
    return "?";
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("semiring value overflow");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("semiring value overflow");
    return r;
}

} // namespace

Weight Semiring::zero() const {
    switch (tag_) {
    case SemiringTag::Arithmetic:
        return Weight::finite(0);
    case SemiringTag::Tropical:
    case SemiringTag::Arctic:
        return Weight::inf();
    }
    return Weight::finite(0);
}

Weight Semiring::one() const {
    switch (tag_) {
    case SemiringTag::Arithmetic:
        return Weight::finite(1);
    case SemiringTag::Tropical:
    case SemiringTag::Arctic:
        return Weight::finite(0);
    }
    return Weight::finite(0);
}

bool Semiring::valid(Weight w) const {
    return !(w.infinite && tag_ == SemiringTag::Arithmetic);
}

Weight Semiring::add(Weight a, Weight b) const {
    if (!valid(a) || !valid(b))
        throw std::invalid_argument("weight invalid for semiring");
    switch (tag_) {
    case SemiringTag::Arithmetic:
        return Weight::finite(checked_add(a.value, b.value));
    case SemiringTag::Tropical: // min; inf is the identity
        if (a.infinite)
            return b;
        if (b.infinite)
            return a;
        return Weight::finite(a.value < b.value ? a.value : b.value);
    case SemiringTag::Arctic: // max; -inf is the identity
        if (a.infinite)
            return b;
        if (b.infinite)
            return a;
        return Weight::finite(a.value > b.value ? a.value : b.value);
    }
    return a;
}

Weight Semiring::mul(Weight a, Weight b) const {
    if (!valid(a) || !valid(b))
        throw std::invalid_argument("weight invalid for semiring");
    switch (tag_) {
    case SemiringTag::Arithmetic:
        return Weight::finite(checked_mul(a.value, b.value));
    case SemiringTag::Tropical:
    case SemiringTag::Arctic: // plus; the infinite element absorbs
        if (a.infinite || b.infinite)
            return Weight::inf();
        return Weight::finite(checked_add(a.value, b.value));
    }
    return a;
}

bool Semiring::leq(Weight a, Weight b) const {
    switch (tag_) {
    case SemiringTag::Arithmetic:
        return a.value <= b.value;
    case SemiringTag::Tropical: // inf greatest
        if (a.infinite)
            return b.infinite;
        return b.infinite || a.value <= b.value;
    case SemiringTag::Arctic: // -inf least
        if (a.infinite)
            return true;
        return !b.infinite && a.value <= b.value;
    }
    return false;
}

bool Semiring::lt(Weight a, Weight b) const {
    switch (tag_) {
    case SemiringTag::Arithmetic:
        return a.value < b.value;
    case SemiringTag::Tropical:
        if (b.infinite)
            return !a.infinite; // x < inf for finite x; inf < inf is false
        return !a.infinite && a.value < b.value;
    case SemiringTag::Arctic:
        if (a.infinite)
            return !b.infinite; // -inf < x for finite x; -inf < -inf is false
        return !b.infinite && a.value < b.value;
    }
    return false;
}

WeightMatrix WeightMatrix::identity(SemiringTag tag, std::size_t dim) {
    Semiring s(tag);
    WeightMatrix m(dim, s.zero());
    for (std::size_t i = 0; i < dim; ++i)
        m.at(i, i) = s.one();
    return m;
}

bool WeightMatrix::all_finite() const {
    for (const Weight& w : entries_)
        if (w.infinite)
            return false;
    return true;
}

bool WeightMatrix::has_positive_rows_and_columns() const {
    for (std::size_t i = 0; i < dim_; ++i) {
        bool row = false, col = false;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (!at(i, j).infinite && at(i, j).value > 0)
                row = true;
            if (!at(j, i).infinite && at(j, i).value > 0)
                col = true;
        }
        if (!row || !col)
            return false;
    }
    return true;
}

WeightMatrix mat_mul(SemiringTag tag, const WeightMatrix& a, const WeightMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("mat_mul: dimension mismatch");
    Semiring s(tag);
    const std::size_t d = a.dim();
    WeightMatrix out(d, s.zero());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Weight acc = s.zero();
            for (std::size_t k = 0; k < d; ++k)
                acc = s.add(acc, s.mul(a.at(i, k), b.at(k, j)));
            out.at(i, j) = acc;
        }
    }
    return out;
}

Weight trace(SemiringTag tag, const WeightMatrix& m) {
    Semiring s(tag);
    Weight acc = s.zero();
    for (std::size_t i = 0; i < m.dim(); ++i)
        acc = s.add(acc, m.at(i, i));
    return acc;
}

} // namespace rwcert
