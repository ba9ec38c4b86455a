#include "balfact/rational/rat.hpp"

#include "balfact/detail/strings.hpp"

namespace balfact::rational {

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero();
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view s) {
    s = detail::trim(s);
    auto slash = s.find('/');
    auto to_mpz = [](std::string_view t) {
        t = detail::trim(t);
        if (!t.empty() && t.front() == '+') t.remove_prefix(1);
        mpz_class z;
        if (t.empty() || z.set_str(std::string(t), 10) != 0) throw ParseError("cannot parse rational from '" + std::string(t) + "'");
        return z;
    };
    if (slash == std::string_view::npos) return Rat(to_mpz(s), mpz_class(1));
    auto den = to_mpz(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator");
    return Rat(to_mpz(s.substr(0, slash)), den);
}

mpz_class Rat::height() const {
    mpz_class n = ::abs(v_.get_num());
    const mpz_class& d = v_.get_den();
    return n > d ? n : d;
}

Rat Rat::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rat(mpq_class(1 / v_));
}

Rat& Rat::operator/=(const Rat& r) {
    if (r.is_zero()) throw DivisionByZero();
    v_ /= r.v_;
    return *this;
}

bool rational_sqrt(const Rat& a, Rat& out) {
    if (a.sign() < 0) return false;
    mpz_class n = a.num(), d = a.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rat(rn, rd);
    return true;
}

}  // namespace balfact::rational
