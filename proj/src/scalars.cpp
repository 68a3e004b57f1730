#include "hc/scalars.hpp"

#include <sstream>

namespace hc {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::MismatchedOrder: return "MismatchedOrder";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::NoDecomposition: return "NoDecomposition";
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::DeformedInput: return "DeformedInput";
    case Errc::NonNilpotentArgument: return "NonNilpotentArgument";
    case Errc::BadPlacement: return "BadPlacement";
    case Errc::MissingCoassociator: return "MissingCoassociator";
    case Errc::MissingR: return "MissingR";
    case Errc::BadDimension: return "BadDimension";
    case Errc::NotACocycle: return "NotACocycle";
    case Errc::NoSolutionWithinCaps: return "NoSolutionWithinCaps";
    case Errc::GeneratorMismatch: return "GeneratorMismatch";
    case Errc::IncompatibleIso: return "IncompatibleIso";
    case Errc::ResidualNotCocycle: return "ResidualNotCocycle";
    case Errc::DivergentContraction: return "DivergentContraction";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::WindowExceeded: return "WindowExceeded";
    case Errc::InvalidRewriteSystem: return "InvalidRewriteSystem";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& s) {
    Rational q;
    std::string t;
    for (char ch : s)
        if (ch != ' ') t.push_back(ch);
    if (t.empty() || q.set_str(t, 10) != 0)
        throw Error(Errc::ParseError, "bad rational '" + s + "'");
    if (q.get_den() == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

Series::Series(int order) : coeffs_(order < 0 ? 1 : order + 1) {
    if (order < 0) throw Error(Errc::MismatchedOrder, "negative truncation order");
}

Series Series::constant(int order, const Rational& c) {
    Series s(order);
    s.coeffs_[0] = c;
    return s;
}

Series Series::monomial(int order, int k, const Rational& c) {
    Series s(order);
    if (k >= 0 && k <= order) s.coeffs_[k] = c;
    return s;
}

Series Series::from_coeffs(std::vector<Rational> coeffs) {
    if (coeffs.empty()) throw Error(Errc::MismatchedOrder, "empty coefficient list");
    Series s;
    s.coeffs_ = std::move(coeffs);
    return s;
}

bool Series::is_zero() const {
    for (const auto& c : coeffs_)
        if (sgn(c) != 0) return false;
    return true;
}

int Series::valuation() const {
    for (int k = 0; k <= order(); ++k)
        if (sgn(coeffs_[k]) != 0) return k;
    return order() + 1;
}

int Series::degree() const {
    for (int k = order(); k >= 0; --k)
        if (sgn(coeffs_[k]) != 0) return k;
    return -1;
}

Series Series::truncated(int k) const {
    Series s = *this;
    for (int j = std::max(k + 1, 0); j <= order(); ++j) s.coeffs_[j] = 0;
    return s;
}

Series Series::component(int k) const {
    Series s(order());
    if (k >= 0 && k <= order()) s.coeffs_[k] = coeffs_[k];
    return s;
}

Series Series::shifted(int k) const {
    Series s(order());
    for (int j = 0; j + k <= order(); ++j)
        if (j + k >= 0) s.coeffs_[j + k] = coeffs_[j];
    return s;
}

static void check_orders(const Series& a, const Series& b) {
    if (a.order() != b.order())
        throw Error(Errc::MismatchedOrder,
                    "orders " + std::to_string(a.order()) + " and " + std::to_string(b.order()));
}

Series& Series::operator+=(const Series& o) {
    check_orders(*this, o);
    for (size_t k = 0; k < coeffs_.size(); ++k)
        if (sgn(o.coeffs_[k]) != 0) coeffs_[k] += o.coeffs_[k];
    return *this;
}

Series& Series::operator-=(const Series& o) {
    check_orders(*this, o);
    for (size_t k = 0; k < coeffs_.size(); ++k)
        if (sgn(o.coeffs_[k]) != 0) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

Series& Series::operator*=(const Series& o) {
    *this = *this * o;
    return *this;
}

Series& Series::operator*=(const Rational& c) {
    for (auto& x : coeffs_)
        if (sgn(x) != 0) x *= c;
    return *this;
}

Series Series::operator-() const {
    Series s = *this;
    for (auto& x : s.coeffs_)
        if (sgn(x) != 0) x = -x;
    return s;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }
Series operator*(const Series& a, const Series& b) { return mul_upto(a, b, a.order()); }
Series operator*(Series a, const Rational& c) { return a *= c; }
Series operator*(const Rational& c, Series a) { return a *= c; }

Series mul_upto(const Series& a, const Series& b, int budget) {
    check_orders(a, b);
    Series r(a.order());
    fma_upto(r, a, b, budget);
    return r;
}

void fma_upto(Series& acc, const Series& b, const Series& c, int budget) {
    check_orders(b, c);
    check_orders(acc, b);
    const int n = std::min(budget, acc.order());
    Rational t;
    for (int i = 0; i <= n; ++i) {
        if (sgn(b[i]) == 0) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (sgn(c[j]) == 0) continue;
            mpq_mul(t.get_mpq_t(), b[i].get_mpq_t(), c[j].get_mpq_t());
            acc.add_to(i + j, t);
        }
    }
}

Series inverse(const Series& a) {
    if (sgn(a[0]) == 0) throw Error(Errc::NotInvertible, "constant term is zero");
    const int n = a.order();
    Series r(n);
    Rational inv0 = 1 / a[0];
    r.set(0, inv0);
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
        r.set(k, -s * inv0);
    }
    return r;
}

Series exp(const Series& a) {
    if (sgn(a[0]) != 0) throw Error(Errc::NonzeroConstantTerm, "exp needs zero constant term");
    const int n = a.order();
    // r' = a' r, solved coefficientwise
    Series r(n);
    r.set(0, 1);
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int j = 1; j <= k; ++j) s += Rational(j) * a[j] * r[k - j];
        r.set(k, s / k);
    }
    return r;
}

std::string to_string(const Series& s) {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= s.order(); ++k) {
        if (sgn(s[k]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(s[k]) << ")";
        if (k == 1) os << "*l";
        if (k > 1) os << "*l^" << k;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace hc
