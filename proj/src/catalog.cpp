#include "ufrac/catalog.hpp"

#include "ufrac/errors.hpp"

#include <algorithm>
#include <type_traits>

namespace ufrac {

namespace {

constexpr unsigned bit(int i) { return 1u << (i - 1); }

ParamId X(unsigned mask) { return ParamId::x(mask); }
ParamId Zp(unsigned mask) { return ParamId::z(mask); }

// Small fluent helper for writing terms.
class T {
public:
    explicit T(Rational c = 1) { term_.coefficient = std::move(c); }

    T& sym(Symbol s, int e = 1) {
        add(term_.symbols, static_cast<std::uint8_t>(s), e);
        return *this;
    }
    T& par(ParamId p, int e = 1) {
        add(term_.params, static_cast<std::uint8_t>(p.index), e);
        return *this;
    }
    template <class Pred>
    T& xs_where(Pred keep) {
        for (unsigned J : kXSets)
            if (keep(J)) par(X(J));
        return *this;
    }
    operator Term() const { return term_; }

private:
    static void add(std::vector<Factor>& fs, std::uint8_t index, int e) {
        for (auto& f : fs) {
            if (f.index == index) {
                f.exponent = static_cast<std::int8_t>(f.exponent + e);
                return;
            }
        }
        fs.push_back({index, static_cast<std::int8_t>(e)});
        std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return a.index < b.index; });
    }

    Term term_;
};

ClosureRule equation(int family, std::vector<Term> lhs, std::vector<Term> rhs) {
    ClosureRule r;
    r.family = family;
    for (const auto& t : lhs) r.outputs = r.outputs | t.support();
    for (const auto& t : rhs) r.inputs = r.inputs | t.support();
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    return r;
}

std::vector<int> members_of(unsigned mask) {
    std::vector<int> out;
    for (int r = 1; r <= 4; ++r)
        if (mask & bit(r)) out.push_back(r);
    return out;
}

int single(unsigned mask) { return __builtin_ctz(mask) + 1; }

}  // namespace

int Term::param_exponent(ParamId p) const {
    for (const auto& f : params)
        if (f.index == p.index) return f.exponent;
    return 0;
}

ParamSet Term::support() const {
    ParamSet s;
    for (const auto& f : params) s.insert(ParamId{f.index});
    return s;
}

std::string Term::str() const {
    std::string num, den;
    auto append = [](std::string& s, const std::string& factor, int e) {
        if (!s.empty()) s += '*';
        s += factor;
        if (e > 1) s += "^" + std::to_string(e);
    };
    if (numerator(coefficient) != 1) num = numerator(coefficient).str();
    if (denominator(coefficient) != 1) den = denominator(coefficient).str();
    for (const auto& f : symbols) {
        const std::string name = symbol_name(static_cast<Symbol>(f.index));
        if (f.exponent > 0) append(num, name, f.exponent);
        if (f.exponent < 0) append(den, name, -f.exponent);
    }
    std::string out = num.empty() ? "1" : num;
    if (!den.empty()) out += den.find('*') == std::string::npos ? "/" + den : "/(" + den + ")";
    std::string ps;
    for (const auto& f : params) append(ps, ParamId{f.index}.name(), f.exponent);
    if (ps.empty()) return out;
    if (out == "1") return ps;
    return out + "*" + ps;
}

namespace {

std::string join(const std::vector<Term>& ts) {
    std::string s;
    for (const auto& t : ts) {
        if (!s.empty()) s += " + ";
        s += t.str();
    }
    return s;
}

}  // namespace

std::string ClosureRule::str() const {
    if (unknowns)
        return "master equation factored in " + unknowns->first.name() + ", " + unknowns->second.name();
    return join(lhs) + " = " + join(rhs);
}

std::string ClosureRule::export_line() const {
    return std::to_string(family) + "|" + inputs.str() + "|" + outputs.str();
}

std::string InequalityTemplate::str() const {
    T left, right(constant);
    for (int i = 0; i < kParamCount; ++i) {
        if (lhs[i]) left.par(ParamId{i}, lhs[i]);
        if (rhs[i]) right.par(ParamId{i}, rhs[i]);
    }
    if (n_exp) right.sym(Symbol::n, n_exp);
    if (m_exp) right.sym(Symbol::m, m_exp);
    for (int s = 0; s < kSymbolCount; ++s)
        if (pattern_factor[s]) right.sym(static_cast<Symbol>(s), -pattern_factor[s]);
    return Term(left).str() + " <= " + Term(right).str();
}

std::pair<Term, std::vector<Term>> master_equation() {
    Term lhs = T().sym(Symbol::m).xs_where([](unsigned) { return true; });
    std::vector<Term> rhs;
    for (int r = 1; r <= 4; ++r)
        rhs.push_back(T().sym(Symbol::n).sym(n_symbol(r), -1).xs_where([r](unsigned J) { return !(J & bit(r)); }));
    return {lhs, rhs};
}

std::vector<ClosureRule> build_rules() {
    std::vector<ClosureRule> rules;

    // 1: any two x unknown; the master equation factors.
    for (int a = 0; a < kXCount; ++a) {
        for (int b = a + 1; b < kXCount; ++b) {
            ClosureRule r;
            r.family = 1;
            r.outputs = ParamSet{ParamId{a}, ParamId{b}};
            r.inputs = ParamSet::xs() - r.outputs;
            r.unknowns = std::make_pair(ParamId{a}, ParamId{b});
            rules.push_back(std::move(r));
        }
    }

    // 2: z_ij x_ij = n/(n_i d_ij) prod_{j in J, i not} x_J + n/(n_j d_ij) prod_{i in J, j not} x_J.
    for (unsigned P : kPairs) {
        const auto ij = members_of(P);
        const int i = ij[0], j = ij[1];
        std::vector<Term> rhs = {
            T().sym(Symbol::n).sym(n_symbol(i), -1).sym(d_symbol(P), -1).xs_where([&](unsigned J) {
                return (J & bit(j)) && !(J & bit(i));
            }),
            T().sym(Symbol::n).sym(n_symbol(j), -1).sym(d_symbol(P), -1).xs_where([&](unsigned J) {
                return (J & bit(i)) && !(J & bit(j));
            }),
        };
        rules.push_back(equation(2, {T().par(Zp(P)).par(X(P))}, std::move(rhs)));
    }

    // 3: z_ijk prod_{J in ijk, |J| >= 2} x_J = sum_{r in ijk} n/(n_r d_ijk) prod_{r not in J} x_J.
    for (unsigned Q : kTriples) {
        std::vector<Term> rhs;
        for (int r : members_of(Q))
            rhs.push_back(T().sym(Symbol::n).sym(n_symbol(r), -1).sym(d_symbol(Q), -1).xs_where([r](unsigned J) {
                return !(J & bit(r));
            }));
        rules.push_back(equation(3, {T().par(Zp(Q)).xs_where([Q](unsigned J) { return (J & Q) == J; })},
                                 std::move(rhs)));
    }

    // 4: for a pair ab inside ijk, c the third index and l the outside one,
    //    z_ijk x_ac x_bc x_ijk = d_ab/d_ijk z_ab x_cl + n/(n_c d_ijk) x_al x_bl x_abl.
    for (unsigned Q : kTriples) {
        const int l = single(complement(Q));
        for (unsigned P : kPairs) {
            if ((P & Q) != P) continue;
            const int c = single(Q & ~P);
            const auto ab = members_of(P);
            const int a = ab[0], b = ab[1];
            Term lhs = T().par(Zp(Q)).par(X(bit(a) | bit(c))).par(X(bit(b) | bit(c))).par(X(Q));
            std::vector<Term> rhs = {
                T().sym(d_symbol(P)).sym(d_symbol(Q), -1).par(Zp(P)).par(X(bit(c) | bit(l))),
                T().sym(Symbol::n)
                    .sym(n_symbol(c), -1)
                    .sym(d_symbol(Q), -1)
                    .par(X(bit(a) | bit(l)))
                    .par(X(bit(b) | bit(l)))
                    .par(X(P | bit(l))),
            };
            rules.push_back(equation(4, {lhs}, std::move(rhs)));
        }
    }

    // 5: m prod_{l in J} x_J = d_ijk z_ijk + n/n_l.
    for (unsigned Q : kTriples) {
        const int l = single(complement(Q));
        rules.push_back(equation(5, {T().sym(Symbol::m).xs_where([l](unsigned J) { return J & bit(l); })},
                                 {T().sym(d_symbol(Q)).par(Zp(Q)), T().sym(Symbol::n).sym(n_symbol(l), -1)}));
    }

    // 6: m prod_{J != ij} x_J = d_ij x_kl z_ij + n/n_k prod_{k not in J, J != ij} x_J
    //                                        + n/n_l prod_{l not in J, J != ij} x_J.
    for (unsigned P : kPairs) {
        const auto kl = members_of(complement(P));
        std::vector<Term> rhs = {T().sym(d_symbol(P)).par(X(complement(P))).par(Zp(P))};
        for (int r : kl)
            rhs.push_back(T().sym(Symbol::n).sym(n_symbol(r), -1).xs_where([r, P](unsigned J) {
                return !(J & bit(r)) && J != P;
            }));
        rules.push_back(equation(6, {T().sym(Symbol::m).xs_where([P](unsigned J) { return J != P; })},
                                 std::move(rhs)));
    }

    // 7: m prod_{J not in {ij, kl}} x_J = d_ij z_ij + d_kl z_kl.
    for (unsigned P : {subset("12"), subset("13"), subset("14")}) {
        const unsigned C = complement(P);
        rules.push_back(equation(7, {T().sym(Symbol::m).xs_where([P, C](unsigned J) { return J != P && J != C; })},
                                 {T().sym(d_symbol(P)).par(Zp(P)), T().sym(d_symbol(C)).par(Zp(C))}));
    }

    // 8: J1 = ijk, J2 = ijl:
    //    z_J1 z_J2 = n^2/(n_k n_l d_J1 d_J2) + m d_ij/(d_J1 d_J2) z_ij x_kl^2 x_ikl x_jkl x_1234.
    for (unsigned P : kPairs) {
        const unsigned C = complement(P);
        const auto ij = members_of(P);
        const auto kl = members_of(C);
        const unsigned J1 = P | bit(kl[0]);
        const unsigned J2 = P | bit(kl[1]);
        std::vector<Term> rhs = {
            T().sym(Symbol::n, 2)
                .sym(n_symbol(kl[0]), -1)
                .sym(n_symbol(kl[1]), -1)
                .sym(d_symbol(J1), -1)
                .sym(d_symbol(J2), -1),
            T().sym(Symbol::m)
                .sym(d_symbol(P))
                .sym(d_symbol(J1), -1)
                .sym(d_symbol(J2), -1)
                .par(Zp(P))
                .par(X(C), 2)
                .par(X(C | bit(ij[0])))
                .par(X(C | bit(ij[1])))
                .par(X(kFull)),
        };
        rules.push_back(equation(8, {T().par(Zp(J1)).par(Zp(J2))}, std::move(rhs)));
    }
    return rules;
}

std::vector<InequalityTemplate> build_inequalities() {
    std::vector<InequalityTemplate> out;
    auto sym = [](Symbol s) { return static_cast<int>(s); };

    // z_ij x_ij <= 2n/(n_i d_ij) prod_{j in J, i not} x_J for i < j.
    auto pair_template = [&](unsigned P) {
        const auto ij = members_of(P);
        const int i = ij[0], j = ij[1];
        InequalityTemplate t;
        t.name = "z" + subset_name(P);
        t.lhs[Zp(P).index] = 1;
        t.lhs[X(P).index] = 1;
        for (unsigned J : kXSets)
            if ((J & bit(j)) && !(J & bit(i))) t.rhs[X(J).index] = 1;
        t.n_exp = 1;
        t.constant = 2;
        t.pattern_factor[sym(n_symbol(i))] = 1;
        t.pattern_factor[sym(d_symbol(P))] = 1;
        return t;
    };
    // With i the least index of ijk and {j,k} the rest, cancel x_jk from
    // z_ijk prod_{J in ijk} x_J <= 3n/(n_i d_ijk) prod_{i not in J} x_J.
    auto triple_template = [&](unsigned Q) {
        const int i = single(Q);
        const unsigned shared = Q & ~bit(i);
        InequalityTemplate t;
        t.name = "z" + subset_name(Q);
        t.lhs[Zp(Q).index] = 1;
        for (unsigned J : kXSets) {
            if (J == shared) continue;
            if ((J & Q) == J) t.lhs[X(J).index] = 1;
            if (!(J & bit(i))) t.rhs[X(J).index] = 1;
        }
        t.n_exp = 1;
        t.constant = 3;
        t.pattern_factor[sym(n_symbol(i))] = 1;
        t.pattern_factor[sym(d_symbol(Q))] = 1;
        return t;
    };
    // t_r = prod_{r in J} x_J <= c n^a / (n_r m^b).
    auto size_template = [&](int r, int c, int a, int b) {
        InequalityTemplate t;
        t.name = "t" + std::to_string(r);
        for (unsigned J : kXSets)
            if (J & bit(r)) t.lhs[X(J).index] = 1;
        t.n_exp = a;
        t.m_exp = -b;
        t.constant = c;
        t.pattern_factor[sym(n_symbol(r))] = 1;
        return t;
    };

    out.push_back(pair_template(subset("23")));
    out.push_back(pair_template(subset("34")));
    out.push_back(triple_template(subset("234")));
    for (const char* p : {"12", "13", "14", "24"}) out.push_back(pair_template(subset(p)));
    for (const char* q : {"123", "124", "134"}) out.push_back(triple_template(subset(q)));
    out.push_back(size_template(1, 4, 1, 1));
    out.push_back(size_template(2, 12, 2, 1));
    out.push_back(size_template(3, 96, 4, 2));
    return out;
}

const Catalog& catalog() {
    static const Catalog c{build_rules(), build_inequalities()};
    return c;
}

// ---------------------------------------------------------------------------
// Numeric evaluation. Values are first tried in checked 128-bit arithmetic;
// an overflow anywhere reruns the whole evaluation exactly.

namespace {

using Wide = __int128;
using UWide = unsigned __int128;
struct Overflow {};

const Wide kWideLimit = Wide{1} << 100;

// |v| < 2^62, so a product of two such values cannot overflow.
inline bool narrow(Wide v) { return static_cast<UWide>(v + (Wide{1} << 62)) < (UWide{1} << 63); }

inline Wide mul(Wide a, Wide b) {
    if (narrow(a) && narrow(b)) return a * b;
    Wide r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline Wide add(Wide a, Wide b) {
    Wide r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline Wide sub(Wide a, Wide b) {
    Wide r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
Wide gcd_of(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Natural mul(const Natural& a, const Natural& b) { return a * b; }
Natural add(const Natural& a, const Natural& b) { return a + b; }
Natural sub(const Natural& a, const Natural& b) { return a - b; }
Natural gcd_of(const Natural& a, const Natural& b) { return gcd(abs(a), abs(b)); }

template <class Int>
Int convert(const Natural& v) {
    if constexpr (std::is_same_v<Int, Natural>) {
        return v;
    } else {
        static const Natural limit(kWideLimit);
        if (v >= limit) throw Overflow{};
        return static_cast<Wide>(v);
    }
}

template <class Int>
Int power(const Int& b, int e) {
    if (e == 1) return b;
    Int r = 1;
    for (int i = 0; i < e; ++i) r = mul(r, b);
    return r;
}

template <class Int>
struct Frac {
    Int num;
    Int den = 1;
};

template <class Int>
Frac<Int> reduced(Int num, Int den) {
    if (den == 1) return {num, den};
    if (num % den == 0) return {num / den, Int(1)};
    Int g = gcd_of(num, den);
    return {num / g, den / g};
}

template <class Int>
Frac<Int> operator+(const Frac<Int>& a, const Frac<Int>& b) {
    if (a.den == 1 && b.den == 1) return {add(a.num, b.num), Int(1)};
    return reduced(add(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den));
}
template <class Int>
Frac<Int> operator-(const Frac<Int>& a, const Frac<Int>& b) {
    if (a.den == 1 && b.den == 1) return {sub(a.num, b.num), Int(1)};
    return reduced(sub(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den));
}
template <class Int>
Frac<Int> operator*(const Frac<Int>& a, const Frac<Int>& b) {
    if (a.den == 1 && b.den == 1) return {mul(a.num, b.num), Int(1)};
    return reduced(mul(a.num, b.num), mul(a.den, b.den));
}
template <class Int>
int compare(const Frac<Int>& a, const Frac<Int>& b) {
    const Int l = mul(a.num, b.den);
    const Int r = mul(b.num, a.den);
    return l < r ? -1 : (l > r ? 1 : 0);
}

// A term with its constant part replaced by an index into the skeleton table.
struct Compiled {
    int skeleton = 0;
    std::vector<Factor> params;
};

struct Skeleton {
    Rational coefficient;
    std::vector<Factor> symbols;
};

}  // namespace

struct CatalogEvaluator::Impl {
    std::vector<Skeleton> skeletons;
    struct Rule {
        std::vector<Compiled> lhs, rhs;
        std::optional<std::pair<ParamId, ParamId>> unknowns;
    };
    std::vector<Rule> rules;
    std::vector<InequalityTemplate> inequalities;
    Compiled master_lhs;
    std::vector<Compiled> master_rhs;

    Compiled compile(const Term& t) {
        int id = -1;
        for (std::size_t i = 0; i < skeletons.size(); ++i)
            if (skeletons[i].coefficient == t.coefficient && skeletons[i].symbols == t.symbols) id = static_cast<int>(i);
        if (id < 0) {
            id = static_cast<int>(skeletons.size());
            skeletons.push_back({t.coefficient, t.symbols});
        }
        return {id, t.params};
    }
    std::vector<Compiled> compile(const std::vector<Term>& ts) {
        std::vector<Compiled> out;
        for (const auto& t : ts) out.push_back(compile(t));
        return out;
    }
};

namespace {

template <class Int>
struct Table {
    std::array<Int, kParamCount> p;
    std::array<Int, kSymbolCount> s;
    std::vector<Frac<Int>> skeletons;

    Table(const Decomposition& d, const std::vector<Skeleton>& sk) {
        for (int i = 0; i < kParamCount; ++i) {
            const ParamId id{i};
            p[i] = convert<Int>(id.kind() == ParamKind::x ? d.x[id.subset()] : d.z_own(id.subset()));
        }
        s[0] = convert<Int>(d.m());
        s[1] = convert<Int>(d.n());
        for (int i = 0; i < 4; ++i) s[2 + i] = convert<Int>(d.pattern[i]);
        for (int i = 0; i < 6; ++i) s[6 + i] = convert<Int>(d.d[kPairs[i]]);
        for (int i = 0; i < 4; ++i) s[12 + i] = convert<Int>(d.d[kTriples[i]]);
        skeletons.reserve(sk.size());
        for (const auto& k : sk) {
            Int num = convert<Int>(numerator(k.coefficient));
            Int den = convert<Int>(denominator(k.coefficient));
            for (const auto& f : k.symbols) {
                if (f.exponent > 0) num = mul(num, power(s[f.index], f.exponent));
                else den = mul(den, power(s[f.index], -f.exponent));
            }
            skeletons.push_back(reduced(num, den));
        }
    }

    Int product(const std::vector<Factor>& fs) const {
        Int r = 1;
        for (const auto& f : fs) r = mul(r, power(p[f.index], f.exponent));
        return r;
    }

    // Value of `t` with the parameters in `skip` left out.
    Frac<Int> value(const Compiled& t, ParamSet skip = {}) const {
        const Frac<Int>& c = skeletons[t.skeleton];
        Int num = c.num;
        for (const auto& f : t.params)
            if (!skip.contains(ParamId{f.index})) num = mul(num, power(p[f.index], f.exponent));
        if (c.den == 1) return {num, Int(1)};
        return reduced(num, c.den);
    }

    Frac<Int> sum(const std::vector<Compiled>& ts) const {
        Frac<Int> acc{Int(0), Int(1)};
        for (const auto& t : ts) acc = acc + value(t);
        return acc;
    }
};

// Master-equation terms as integers (m and n/n_i are whole), shared by all
// family-1 rules of one decomposition.
template <class Int>
struct MasterTerms {
    struct Entry {
        Int value;
        ParamSet support;
    };
    std::array<Entry, 5> e;

    MasterTerms(const Table<Int>& tab, const CatalogEvaluator::Impl& impl) {
        auto fill = [&](Entry& out, const Compiled& t) {
            const Frac<Int>& c = tab.skeletons[t.skeleton];
            if (c.den != 1) throw InvariantViolation("master equation coefficient is not integral");
            out.value = mul(c.num, tab.product(t.params));
            for (const auto& f : t.params) out.support.insert(ParamId{f.index});
        };
        fill(e[0], impl.master_lhs);
        for (int r = 0; r < 4; ++r) fill(e[r + 1], impl.master_rhs[r]);
    }
};

template <class Int>
bool check_factored(const Table<Int>& tab, const MasterTerms<Int>& mt, ParamId J, ParamId K) {
    const Int& xj = tab.p[J.index];
    const Int& xk = tab.p[K.index];
    const Int xjk = mul(xj, xk);
    Int c1 = mt.e[0].value / xjk;
    Int c2 = 0, c3 = 0, c4 = 0;
    for (int r = 1; r <= 4; ++r) {
        const auto& en = mt.e[r];
        const bool hj = en.support.contains(J);
        const bool hk = en.support.contains(K);
        if (hj && hk) c1 = sub(c1, en.value / xjk);
        else if (hj) c2 = add(c2, en.value / xj);
        else if (hk) c3 = add(c3, en.value / xk);
        else c4 = add(c4, en.value);
    }
    const unsigned sj = J.subset(), sk = K.subset();
    // Nested index sets: every term containing the larger x also contains
    // the smaller one, and the equation factors as x_small (C1 x_large - C2) = C4.
    if ((sj & sk) == sj) return mul(xj, sub(mul(c1, xk), c2)) == c4;
    if ((sj & sk) == sk) return mul(xk, sub(mul(c1, xj), c3)) == c4;
    return mul(sub(mul(c1, xj), c3), sub(mul(c1, xk), c2)) == add(mul(c1, c4), mul(c2, c3));
}

template <class Int>
bool check_rule(const Table<Int>& tab, const MasterTerms<Int>& mt, const CatalogEvaluator::Impl& impl,
                std::size_t i) {
    const auto& r = impl.rules[i];
    if (r.unknowns) return check_factored(tab, mt, r.unknowns->first, r.unknowns->second);
    return compare(tab.sum(r.lhs), tab.sum(r.rhs)) == 0;
}

template <class Int>
bool check_inequality(const Table<Int>& tab, const InequalityTemplate& t) {
    using F = Frac<Int>;
    Int left = 1, right = 1;
    for (int i = 0; i < kParamCount; ++i) {
        if (t.lhs[i]) left = mul(left, power(tab.p[i], t.lhs[i]));
        if (t.rhs[i]) right = mul(right, power(tab.p[i], t.rhs[i]));
    }
    for (int s = 0; s < kSymbolCount; ++s)
        if (t.pattern_factor[s]) left = mul(left, power(tab.s[s], t.pattern_factor[s]));
    const Int& m = tab.s[0];
    const Int& n = tab.s[1];
    if (t.m_exp < 0) left = mul(left, power(m, -t.m_exp));
    else right = mul(right, power(m, t.m_exp));
    right = mul(right, power(n, t.n_exp));
    const F c = reduced(convert<Int>(numerator(t.constant)), convert<Int>(denominator(t.constant)));
    return compare(F{left}, c * F{right}) <= 0;
}

}  // namespace

CatalogEvaluator::CatalogEvaluator(const Catalog& c) {
    auto impl = std::make_shared<Impl>();
    for (const auto& r : c.rules) impl->rules.push_back({impl->compile(r.lhs), impl->compile(r.rhs), r.unknowns});
    impl->inequalities = c.inequalities;
    auto [lhs, rhs] = master_equation();
    impl->master_lhs = impl->compile(lhs);
    impl->master_rhs = impl->compile(rhs);
    impl_ = std::move(impl);
}

template <class Fn>
auto CatalogEvaluator::with_table(const Decomposition& d, Fn&& fn) const {
    try {
        return fn(Table<Wide>(d, impl_->skeletons));
    } catch (const Overflow&) {
        return fn(Table<Natural>(d, impl_->skeletons));
    }
}

bool CatalogEvaluator::rule_holds(std::size_t i, const Decomposition& d) const {
    return with_table(d, [&](const auto& tab) { return check_rule(tab, MasterTerms(tab, *impl_), *impl_, i); });
}

bool CatalogEvaluator::inequality_holds(std::size_t i, const Decomposition& d) const {
    return with_table(d, [&](const auto& tab) { return check_inequality(tab, impl_->inequalities[i]); });
}

CatalogCheck CatalogEvaluator::check(const Decomposition& d) const {
    return with_table(d, [&](const auto& tab) {
        CatalogCheck out;
        const MasterTerms mt(tab, *impl_);
        for (std::size_t i = 0; i < impl_->rules.size(); ++i)
            if (!check_rule(tab, mt, *impl_, i)) out.failed_rules.push_back(static_cast<int>(i));
        for (std::size_t i = 0; i < impl_->inequalities.size(); ++i)
            if (!check_inequality(tab, impl_->inequalities[i])) out.failed_inequalities.push_back(static_cast<int>(i));
        return out;
    });
}

bool evaluate_rule(const ClosureRule& rule, const Decomposition& d) {
    return CatalogEvaluator(Catalog{{rule}, {}}).rule_holds(0, d);
}

bool evaluate_rule(const InequalityTemplate& ineq, const Decomposition& d) {
    return CatalogEvaluator(Catalog{{}, {ineq}}).inequality_holds(0, d);
}

CatalogCheck evaluate_catalog(const Catalog& c, const Decomposition& d) { return CatalogEvaluator(c).check(d); }

}  // namespace ufrac
