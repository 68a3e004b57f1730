#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hc/error.hpp"

namespace hc {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

// Truncated power series in one parameter (lambda) with exact rational
// coefficients. Arithmetic is modulo lambda^(order+1).
class Series {
public:
    Series() : coeffs_(1) {}
    explicit Series(int order);

    static Series constant(int order, const Rational& c);
    static Series monomial(int order, int k, const Rational& c);
    static Series from_coeffs(std::vector<Rational> coeffs);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& operator[](int k) const { return coeffs_[k]; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    void set(int k, const Rational& c) { coeffs_[k] = c; }
    void add_to(int k, const Rational& c) { coeffs_[k] += c; }

    bool is_zero() const;
    // Smallest k with a nonzero coefficient; order()+1 for the zero series.
    int valuation() const;
    // Largest k with a nonzero coefficient; -1 for the zero series.
    int degree() const;
    // Zero every coefficient above k (order is kept).
    Series truncated(int k) const;
    // Only the lambda^k coefficient, same order.
    Series component(int k) const;
    // Multiply by lambda^k.
    Series shifted(int k) const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o);
    Series& operator*=(const Rational& c);
    Series operator-() const;

    bool operator==(const Series& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Series& o) const { return !(*this == o); }

private:
    std::vector<Rational> coeffs_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(Series a, const Rational& c);
Series operator*(const Rational& c, Series a);

// a*b keeping only orders <= budget (higher ones are zero in the result).
Series mul_upto(const Series& a, const Series& b, int budget);
// a += b*c keeping only orders <= budget.
void fma_upto(Series& acc, const Series& b, const Series& c, int budget);

Series inverse(const Series& a);
Series exp(const Series& a);

std::string to_string(const Series& s);

} // namespace hc
