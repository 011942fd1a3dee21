#include <lzeta/laurent.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace lzeta {

LaurentPoly LaurentPoly::constant(const BigRational& c, std::vector<std::string> vars) {
    LaurentPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_[ExpVec(p.vars_.size(), 0)] = c;
    return p;
}

LaurentPoly LaurentPoly::monomial(std::vector<std::string> vars, const ExpVec& exps,
                                  const BigRational& c) {
    if (exps.size() != vars.size())
        throw std::invalid_argument("LaurentPoly::monomial: exponent arity mismatch");
    LaurentPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_[exps] = c;
    return p;
}

LaurentPoly LaurentPoly::variable(const std::vector<std::string>& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end())
        throw std::invalid_argument("LaurentPoly::variable: unknown variable " + name);
    ExpVec e(vars.size(), 0);
    e[size_t(it - vars.begin())] = 1;
    return monomial(vars, e);
}

bool LaurentPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const ExpVec& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

BigRational LaurentPoly::constant_value() const {
    if (terms_.empty()) return BigRational(0);
    if (!is_constant()) throw std::domain_error("LaurentPoly: not a constant");
    return terms_.begin()->second;
}

void LaurentPoly::add_term(const ExpVec& exps, const BigRational& c) {
    if (exps.size() != vars_.size())
        throw std::invalid_argument("LaurentPoly::add_term: exponent arity mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::vector<std::string> LaurentPoly::unify_vars(const std::vector<std::string>& a,
                                                 const std::vector<std::string>& b) {
    if (a == b) return a;
    std::vector<std::string> out = a;
    // b's variables must embed into the merged order without reordering the
    // ones shared with a.
    size_t last_common = 0;
    bool have_common = false;
    for (const auto& name : b) {
        auto it = std::find(a.begin(), a.end(), name);
        if (it == a.end()) {
            out.push_back(name);
        } else {
            size_t pos = size_t(it - a.begin());
            if (have_common && pos <= last_common)
                throw std::invalid_argument(
                    "LaurentPoly: variable '" + name + "' declared in a different order");
            last_common = pos;
            have_common = true;
        }
    }
    return out;
}

LaurentPoly LaurentPoly::embedded(const std::vector<std::string>& universe) const {
    if (universe == vars_) return *this;
    std::vector<int> where(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(universe.begin(), universe.end(), vars_[i]);
        if (it == universe.end())
            throw std::invalid_argument("LaurentPoly::embedded: universe misses " + vars_[i]);
        where[i] = int(it - universe.begin());
    }
    LaurentPoly out(universe);
    for (const auto& [e, c] : terms_) {
        ExpVec ne(universe.size(), 0);
        for (size_t i = 0; i < vars_.size(); ++i) ne[size_t(where[i])] = e[i];
        out.terms_[ne] = c;
    }
    return out;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    auto uni = LaurentPoly::unify_vars(a.vars_, b.vars_);
    LaurentPoly ea = a.embedded(uni);
    LaurentPoly out = b.embedded(uni);
    for (const auto& [e, c] : ea.terms_) out.add_term(e, c);
    return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    auto uni = LaurentPoly::unify_vars(a.vars_, b.vars_);
    LaurentPoly ea = a.embedded(uni), eb = b.embedded(uni);
    LaurentPoly out(uni);
    for (const auto& [ea_e, ea_c] : ea.terms_) {
        for (const auto& [eb_e, eb_c] : eb.terms_) {
            ExpVec e(uni.size());
            for (size_t i = 0; i < uni.size(); ++i) e[i] = ea_e[i] + eb_e[i];
            out.add_term(e, ea_c * eb_c);
        }
    }
    return out;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    auto uni = LaurentPoly::unify_vars(a.vars_, b.vars_);
    return a.embedded(uni).terms_ == b.embedded(uni).terms_;
}

LaurentPoly LaurentPoly::scaled(const BigRational& c) const {
    LaurentPoly out(vars_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : terms_) out.terms_[e] = v * c;
    return out;
}

LaurentPoly LaurentPoly::divided_by_monomial(const LaurentPoly& mono) const {
    if (!mono.is_monomial())
        throw std::domain_error("LaurentPoly: divisor is not a single term");
    auto uni = unify_vars(vars_, mono.vars_);
    LaurentPoly num = embedded(uni), m = mono.embedded(uni);
    const auto& [me, mc] = *m.terms_.begin();
    LaurentPoly out(uni);
    for (const auto& [e, c] : num.terms_) {
        ExpVec ne(uni.size());
        for (size_t i = 0; i < uni.size(); ++i) ne[i] = e[i] - me[i];
        out.terms_[ne] = c / mc;
    }
    return out;
}

LaurentPoly LaurentPoly::invert_vars(const std::vector<std::string>& names) const {
    std::vector<bool> flip(vars_.size(), false);
    for (const auto& n : names) {
        auto it = std::find(vars_.begin(), vars_.end(), n);
        if (it != vars_.end()) flip[size_t(it - vars_.begin())] = true;
    }
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        ExpVec ne = e;
        for (size_t i = 0; i < ne.size(); ++i)
            if (flip[i]) ne[i] = -ne[i];
        out.terms_[ne] = c;
    }
    return out;
}

LaurentPoly LaurentPoly::substitute_monomials(const std::vector<std::string>& new_vars,
                                              const std::vector<ExpVec>& images) const {
    if (images.size() != vars_.size())
        throw std::invalid_argument("substitute_monomials: one image per variable required");
    LaurentPoly out(new_vars);
    for (const auto& [e, c] : terms_) {
        ExpVec ne(new_vars.size(), 0);
        for (size_t i = 0; i < vars_.size(); ++i)
            for (size_t j = 0; j < new_vars.size(); ++j) ne[j] += e[i] * images[i][j];
        out.add_term(ne, c);
    }
    return out;
}

BigRational LaurentPoly::evaluate(const std::vector<BigRational>& values) const {
    if (values.size() != vars_.size())
        throw std::invalid_argument("LaurentPoly::evaluate: value arity mismatch");
    BigRational total(0);
    for (const auto& [e, c] : terms_) {
        BigRational term = c;
        for (size_t i = 0; i < vars_.size(); ++i) {
            int k = e[i];
            if (k == 0) continue;
            BigRational base = values[i];
            if (k < 0) {
                base = BigRational(1) / base;
                k = -k;
            }
            for (int j = 0; j < k; ++j) term *= base;
        }
        total += term;
    }
    return total;
}

int LaurentPoly::min_exponent(size_t v) const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (first || e[v] < m) m = e[v];
        first = false;
    }
    return m;
}

int LaurentPoly::max_exponent(size_t v) const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (first || e[v] > m) m = e[v];
        first = false;
    }
    return m;
}

std::map<int, LaurentPoly> LaurentPoly::coefficients_in(size_t v) const {
    std::map<int, LaurentPoly> out;
    for (const auto& [e, c] : terms_) {
        ExpVec rest = e;
        int k = rest[v];
        rest[v] = 0;
        auto it = out.find(k);
        if (it == out.end()) it = out.emplace(k, LaurentPoly(vars_)).first;
        it->second.add_term(rest, c);
    }
    return out;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_fraction_string();
        for (size_t i = 0; i < vars_.size(); ++i)
            if (e[i] != 0) os << "*" << vars_[i] << "^" << e[i];
    }
    return os.str();
}

namespace {

struct PolyParser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& vars;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    LaurentPoly parse_expr() {
        LaurentPoly acc = parse_term();
        for (;;) {
            skip_ws();
            if (eat('+')) {
                acc += parse_term();
            } else if (eat('-')) {
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    LaurentPoly parse_term() {
        LaurentPoly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                acc *= parse_factor();
                continue;
            }
            // implicit multiplication: "2q", "q(1+q)"
            if (pos < s.size() &&
                (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '(')) {
                acc *= parse_factor();
                continue;
            }
            return acc;
        }
    }

    LaurentPoly parse_factor() {
        LaurentPoly base = parse_atom();
        skip_ws();
        if (eat('^')) {
            long e = parse_int();
            LaurentPoly out = LaurentPoly::constant(BigRational(1), vars);
            LaurentPoly b = e < 0 ? invert_monomial(base) : base;
            for (long i = 0; i < (e < 0 ? -e : e); ++i) out *= b;
            return out;
        }
        return base;
    }

    LaurentPoly invert_monomial(const LaurentPoly& p) {
        if (!p.is_monomial())
            throw std::invalid_argument("parse_poly: negative power of a non-monomial");
        return LaurentPoly::constant(BigRational(1), vars).divided_by_monomial(p);
    }

    LaurentPoly parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw std::invalid_argument("parse_poly: unexpected end of input");
        if (eat('(')) {
            LaurentPoly e = parse_expr();
            if (!eat(')')) throw std::invalid_argument("parse_poly: missing ')'");
            return e;
        }
        if (eat('-')) return -parse_atom();
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return LaurentPoly::constant(BigRational(BigInt(s.substr(start, pos - start))), vars);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            return LaurentPoly::variable(vars, s.substr(start, pos - start));
        }
        throw std::invalid_argument(std::string("parse_poly: unexpected character '") + c + "'");
    }

    long parse_int() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("parse_poly: integer expected");
        long v = std::stol(s.substr(start, pos - start));
        return neg ? -v : v;
    }
};

}  // namespace

LaurentPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    PolyParser p{text, 0, vars};
    LaurentPoly out = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw std::invalid_argument("parse_poly: trailing input at position " +
                                    std::to_string(p.pos));
    return out;
}

}  // namespace lzeta
