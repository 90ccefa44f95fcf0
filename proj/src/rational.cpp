#include "perturb/rational.hpp"

#include <ostream>

#include "perturb/errors.hpp"

namespace perturb {

Rational::Rational(long n, long d) {
    if (d == 0) throw Error(ErrorCode::ParseError, "rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::ParseError, "rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
    auto slash = s.find('/');
    try {
        // Base 10 everywhere; the default constructor would read a leading
        // zero as octal.
        if (slash != std::string::npos) {
            mpz_class n(s.substr(0, slash), 10), d(s.substr(slash + 1), 10);
            if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
            mpq_class q(n, d);
            q.canonicalize();
            return Rational(q);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(mpq_class(mpz_class(s, 10)));
        // Decimal: scale by a power of ten so the value stays exact.
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw Error(ErrorCode::ParseError, "bad decimal '" + text + "'");
        mpz_class n(digits, 10), d(1);
        for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
        mpq_class q(n, d);
        q.canonicalize();
        return Rational(q);
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::ParseError, "bad rational literal '" + text + "'");
    }
}

Rational Rational::pow(std::uint64_t e) const {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), e);
    return Rational(r);  // powers of a canonical rational stay canonical
}

Rational Rational::pow2(std::int64_t e) {
    mpq_class r(1);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return Rational(r);
}

std::string Rational::fraction_string() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return fraction_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace perturb
