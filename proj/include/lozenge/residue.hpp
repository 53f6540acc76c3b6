#pragma once

#include "kernel.hpp"

#include <optional>
#include <string>

namespace lozenge {

// C: counter-clockwise around x2, x2+1, ...
// Cprime: clockwise around x2-1, x2-2, ...
// infinity: large counter-clockwise contour
// twofold: the kernel's double integral with both contours large
enum class ResidueVariant { C, Cprime, infinity, twofold };

inline std::optional<ResidueVariant> parse_variant(const std::string& name)
{
    if (name == "C")
        return ResidueVariant::C;
    if (name == "Cprime")
        return ResidueVariant::Cprime;
    if (name == "infty")
        return ResidueVariant::infinity;
    if (name == "double")
        return ResidueVariant::twofold;
    return std::nullopt;
}

struct ResidueQuery {
    int x1 = 0;
    int n1 = 1;
    int x2 = 0;
    int n2 = 1;
    int depth = 2;
};

namespace detail {

// binomial(a, b) over all integers, with binomial(a, b) = (-1)^(a-b) binomial(-b-1, a-b) for b <= a < 0
inline Rational general_binomial(long a, long b)
{
    if (b >= 0) {
        Rational r = 1;
        for (long i = 0; i < b; ++i)
            r = r * (a - i) / (i + 1);
        return r;
    }
    if (a < 0 && b <= a) {
        const Rational r = general_binomial(-b - 1, a - b);
        return (a - b) % 2 == 0 ? r : Rational(-r);
    }
    return 0;
}

inline void check_query(const ResidueQuery& q)
{
    if (q.n1 < 1 || q.n1 > q.depth)
        throw RowOutOfRange("n1 outside [1, N]");
    if (q.n2 < 1 || q.n2 > q.depth - 1)
        throw RowOutOfRange("n2 outside [1, N-1]");
}

inline Rational infinity_closed(const ResidueQuery& q)
{
    const long dn = q.n1 - q.n2;
    if (dn <= 0)
        return 0;
    return Rational(rising(q.x1 - q.x2 + 1, dn - 1), factorial(dn - 1));
}

}  // namespace detail

inline Rational residue_identity(ResidueVariant v, const ResidueQuery& q)
{
    detail::check_query(q);
    const long dx = q.x1 - q.x2;
    const long dn = q.n1 - q.n2;
    switch (v) {
    case ResidueVariant::C:
        return dx < 0 ? Rational(0) : Rational(rising(dn, dx), factorial(dx));
    case ResidueVariant::Cprime:
        return Rational((dx >= 0 ? 1 : 0) - (dn > 0 ? 1 : 0)) * detail::general_binomial(dn + dx - 1, dx);
    case ResidueVariant::infinity:
    case ResidueVariant::twofold:
        return detail::infinity_closed(q);
    }
    return 0;
}

// explicit residue summation of the same integrals; twofold needs the top row
inline Rational residue_direct(ResidueVariant v, const ResidueQuery& q,
                               const std::optional<Signature>& nu = std::nullopt)
{
    detail::check_query(q);
    if (v == ResidueVariant::twofold) {
        if (!nu || nu->length() != q.depth)
            throw InvalidSignature("the double contour integral needs a signature of length N");
        return detail::residue_sum(nu->positions(), q.x1, q.n1, q.x2, q.n2, true);
    }
    // poles of 1/(z - x1)_{N-n1+1} at z = x1 - t
    const long span = q.depth - q.n1;
    const long tail = q.depth - q.n2 - 1;
    const Rational front(factorial(span), factorial(tail));
    Rational inside = 0, outside = 0;
    for (long t = 0; t <= span; ++t) {
        const long z = q.x1 - t;
        Rational r = front * Rational(rising(z - q.x2 + 1, tail), factorial(t) * factorial(span - t));
        if (t % 2 == 1)
            r = -r;
        (z >= q.x2 ? inside : outside) += r;
    }
    switch (v) {
    case ResidueVariant::C:
        return inside;
    case ResidueVariant::Cprime:
        return -outside;
    default:
        return inside + outside;
    }
}

}  // namespace lozenge
