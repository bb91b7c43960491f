#include "ufrac/bounds.hpp"

#include "ufrac/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <istream>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace ufrac {

using json = nlohmann::ordered_json;

namespace {

const InequalityTemplate& template_at(int i) { return catalog().inequalities.at(static_cast<std::size_t>(i)); }

int template_index(const std::string& name) {
    for (int i = 0; i < kTemplateCount; ++i)
        if (template_at(i).name == name) return i;
    throw InvalidArgument("unknown inequality template '" + name + "'");
}

std::string rational_str(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Natural(s));
        return Rational(Natural(s.substr(0, slash)), Natural(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw InvalidArgument("malformed rational '" + s + "'");
    }
}

}  // namespace

int Combination::total() const {
    int t = 0;
    for (int m : multiplicity) t += m;
    return t;
}

std::string Combination::str() const {
    std::string s;
    for (int i = 0; i < kTemplateCount; ++i) {
        if (multiplicity[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (multiplicity[i] > 1) s += std::to_string(multiplicity[i]) + "*";
        s += template_at(i).name;
    }
    return s.empty() ? "1" : s;
}

bool canonical_less(const Combination& a, const Combination& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return std::lexicographical_compare(a.multiplicity.rbegin(), a.multiplicity.rend(), b.multiplicity.rbegin(),
                                        b.multiplicity.rend());
}

std::string MonomialInequality::str() const {
    std::string left;
    for (int i = 0; i < kParamCount; ++i) {
        if (lhs[i] == 0) continue;
        if (!left.empty()) left += '*';
        left += ParamId{i}.name();
        if (lhs[i] > 1) left += "^" + std::to_string(lhs[i]);
    }
    if (left.empty()) left = "1";
    std::string num = rational_str(constant);
    auto power = [](const std::string& base, int e) { return e == 1 ? base : base + "^" + std::to_string(e); };
    if (n_exp > 0) num += "*" + power("n", n_exp);
    std::string den;
    auto append = [&](const std::string& f) { den += (den.empty() ? "" : "*") + f; };
    if (m_exp < 0) append(power("m", -m_exp));
    for (int s = 0; s < kSymbolCount; ++s)
        if (pattern[s] > 0) append(power(symbol_name(static_cast<Symbol>(s)), pattern[s]));
    if (den.empty()) return left + " <= " + num;
    return left + " <= " + num + "/" + (den.find('*') == std::string::npos ? den : "(" + den + ")");
}

MonomialInequality combine(const Combination& c) {
    MonomialInequality out;
    for (int i = 0; i < kTemplateCount; ++i) {
        const int k = c.multiplicity[i];
        if (k < 0) throw InvalidArgument("negative multiplicity for " + template_at(i).name);
        if (k == 0) continue;
        const InequalityTemplate& t = template_at(i);
        for (int p = 0; p < kParamCount; ++p) out.lhs[p] += k * (t.lhs[p] - t.rhs[p]);
        for (int s = 0; s < kSymbolCount; ++s) out.pattern[s] += k * t.pattern_factor[s];
        out.n_exp += k * t.n_exp;
        out.m_exp += k * t.m_exp;
        for (int j = 0; j < k; ++j) out.constant *= t.constant;
    }
    for (int p = 0; p < kParamCount; ++p)
        if (out.lhs[p] < 0)
            throw InvalidArgument("uncleared denominator: " + ParamId{p}.name() + " has exponent " +
                                  std::to_string(out.lhs[p]) + " in " + c.str());
    return out;
}

namespace {

// Symbol groups whose product is at least n.
struct Reduction {
    std::vector<int> symbols;
};

const std::vector<Reduction>& reductions() {
    static const std::vector<Reduction> rs = [] {
        std::vector<Reduction> out;
        auto members = [](unsigned mask) {
            std::vector<int> v;
            for (int i = 1; i <= 4; ++i)
                if (mask & (1u << (i - 1))) v.push_back(static_cast<int>(n_symbol(i)));
            return v;
        };
        for (unsigned P : kPairs) {
            auto v = members(P);
            v.push_back(static_cast<int>(d_symbol(P)));
            out.push_back({v});
        }
        for (unsigned Q : kTriples) {
            auto v = members(Q);
            v.push_back(static_cast<int>(d_symbol(Q)));
            out.push_back({v});
        }
        return out;
    }();
    return rs;
}

int best_reduction(std::array<int, kSymbolCount>& pattern, std::size_t from) {
    const auto& rs = reductions();
    if (from == rs.size()) return 0;
    const auto& r = rs[from];
    int most = pattern[r.symbols.back()];
    for (int s : r.symbols) most = std::min(most, pattern[s]);
    int best = 0;
    for (int k = most; k >= 0; --k) {
        for (int s : r.symbols) pattern[s] -= k;
        best = std::max(best, k + best_reduction(pattern, from + 1));
        for (int s : r.symbols) pattern[s] += k;
    }
    return best;
}

int pattern_reduction(std::array<int, kSymbolCount> pattern) { return best_reduction(pattern, 0); }

}  // namespace

MonomialInequality simplify_pattern(const MonomialInequality& raw) {
    MonomialInequality out = raw;
    const int r = pattern_reduction(raw.pattern);
    out.n_exp -= r;
    out.reductions += r;
    out.pattern.fill(0);
    return out;
}

// ---------------------------------------------------------------------------
// Packing library sets into a monomial.

namespace {

class Packer {
public:
    Packer(const std::vector<ParamSet>& library, std::atomic<std::uint64_t>* nodes, std::uint64_t node_budget)
        : nodes_(nodes), node_budget_(node_budget) {
        for (ParamSet s : library) {
            if (s.empty()) throw InvalidArgument("library contains the empty set");
            sets_.push_back(s);
        }
        std::sort(sets_.begin(), sets_.end(), [](ParamSet a, ParamSet b) { return canonical_less(a, b); });
        sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
        // A set without z parameters holds at least this many x parameters.
        for (ParamSet s : sets_)
            if ((s & ParamSet::zs()).empty()) min_x_only_ = std::min(min_x_only_, s.size());
    }

    // Largest number of library sets that fit, capped at `cap`.
    int max_fit(const Exponents& lhs, int cap) {
        Key key = key_of(lhs, cap);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Exponents counts = lhs;
        best_ = 0;
        target_ = cap;
        chosen_.clear();
        best_choice_.clear();
        dfs(counts, candidates(lhs), 0, 0);
        memo_.emplace(key, best_);
        return best_;
    }

    std::optional<std::vector<ParamSet>> pack(const Exponents& lhs, int g) {
        Exponents counts = lhs;
        best_ = 0;
        target_ = g;
        chosen_.clear();
        best_choice_.clear();
        dfs(counts, candidates(lhs), 0, 0);
        if (best_ < g) return std::nullopt;
        return best_choice_;
    }

    bool out_of_budget() const { return nodes_ && nodes_->load(std::memory_order_relaxed) > node_budget_; }

    int upper_bound(const Exponents& counts) const {
        int z = 0, x = 0;
        for (int i = 0; i < kParamCount; ++i) (i < kXCount ? x : z) += counts[i];
        return z + (min_x_only_ > 0 && min_x_only_ <= kParamCount ? x / min_x_only_ : 0);
    }

private:
    struct Key {
        std::uint64_t lo = 0, hi = 0;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.lo * 0x9e3779b97f4a7c15ull ^ k.hi); }
    };

    static Key key_of(const Exponents& lhs, int cap) {
        Key k;
        for (int i = 0; i < kParamCount; ++i) {
            const std::uint64_t v = static_cast<std::uint64_t>(std::min(lhs[i], std::min(cap, 15)));
            if (i < 16) k.lo |= v << (4 * i);
            else k.hi |= v << (4 * (i - 16));
        }
        k.hi |= static_cast<std::uint64_t>(cap) << 32;
        return k;
    }

    ParamSet support(const Exponents& counts) const {
        ParamSet s;
        for (int i = 0; i < kParamCount; ++i)
            if (counts[i] > 0) s.insert(ParamId{i});
        return s;
    }

    std::vector<int> candidates(const Exponents& lhs) const {
        const ParamSet sup = support(lhs);
        std::vector<int> out;
        for (std::size_t i = 0; i < sets_.size(); ++i)
            if (sup.contains(sets_[i])) out.push_back(static_cast<int>(i));
        return out;
    }

    void dfs(Exponents& counts, const std::vector<int>& cands, std::size_t from, int depth) {
        if (depth > best_) {
            best_ = depth;
            best_choice_ = chosen_;
        }
        if (best_ >= target_) return;
        if (nodes_ && nodes_->fetch_add(1, std::memory_order_relaxed) > node_budget_) return;
        if (depth + upper_bound(counts) <= best_) return;
        const ParamSet sup = support(counts);
        for (std::size_t i = from; i < cands.size(); ++i) {
            const ParamSet s = sets_[cands[i]];
            if (!sup.contains(s)) continue;
            const auto members = s.members();
            for (ParamId p : members) --counts[p.index];
            chosen_.push_back(s);
            dfs(counts, cands, i, depth + 1);
            chosen_.pop_back();
            for (ParamId p : members) ++counts[p.index];
            if (best_ >= target_) return;
        }
    }

    std::vector<ParamSet> sets_;
    int min_x_only_ = kParamCount + 1;
    std::atomic<std::uint64_t>* nodes_ = nullptr;
    std::uint64_t node_budget_ = 0;
    std::unordered_map<Key, int, KeyHash> memo_;
    int best_ = 0;
    int target_ = 0;
    std::vector<ParamSet> chosen_, best_choice_;
};

std::vector<Part> distribute(const Exponents& lhs, const std::vector<ParamSet>& cores) {
    std::vector<Part> parts;
    Exponents left = lhs;
    for (ParamSet c : cores) {
        Part p;
        p.core = c;
        for (ParamId id : c.members()) {
            p.factors[id.index] = 1;
            --left[id.index];
        }
        parts.push_back(p);
    }
    for (int i = 0; i < kParamCount; ++i) {
        if (left[i] == 0) continue;
        auto it = std::find_if(parts.begin(), parts.end(), [i](const Part& p) { return p.core.contains(ParamId{i}); });
        (it == parts.end() ? parts.front() : *it).factors[i] += left[i];
    }
    return parts;
}

}  // namespace

std::optional<std::vector<Part>> partition(const Exponents& lhs, int g, const std::vector<ParamSet>& library) {
    if (g < 1) return std::nullopt;
    for (int v : lhs)
        if (v < 0) throw InvalidArgument("partition needs nonnegative exponents");
    Packer packer(library, nullptr, 0);
    const auto cores = packer.pack(lhs, g);
    if (!cores) return std::nullopt;
    return distribute(lhs, *cores);
}

int max_parts(const Exponents& lhs, int cap, const std::vector<ParamSet>& library) {
    Packer packer(library, nullptr, 0);
    return packer.max_fit(lhs, cap);
}

// ---------------------------------------------------------------------------
// Search.

namespace {

struct Candidate {
    Combination combination;
    int A = 0;
    int B = 0;
    int g = 0;
};

bool candidate_less(const Candidate& x, const Candidate& y) {
    if (x.combination.total() != y.combination.total()) return x.combination.total() < y.combination.total();
    if (!(x.combination == y.combination)) return canonical_less(x.combination, y.combination);
    return x.g < y.g;
}

// Staircase of points (A/g, B/g) compared by cross-multiplication.
class Frontier {
public:
    struct Point {
        int A, B, g;  // representative ratio
        std::vector<Candidate> witnesses;
    };

    // Some point is at least as good in both coordinates and better in one.
    bool dominated(int A, int B, int g) const {
        for (const auto& p : points_) {
            const long long pa = static_cast<long long>(p.A) * g, qa = static_cast<long long>(A) * p.g;
            const long long pb = static_cast<long long>(p.B) * g, qb = static_cast<long long>(B) * p.g;
            if (pa <= qa && pb >= qb && (pa < qa || pb > qb)) return true;
        }
        return false;
    }

    void insert(const Candidate& c) {
        if (dominated(c.A, c.B, c.g)) return;
        for (auto& p : points_) {
            if (static_cast<long long>(p.A) * c.g == static_cast<long long>(c.A) * p.g &&
                static_cast<long long>(p.B) * c.g == static_cast<long long>(c.B) * p.g) {
                p.witnesses.push_back(c);
                return;
            }
        }
        points_.erase(std::remove_if(points_.begin(), points_.end(),
                                     [&](const Point& p) {
                                         const long long pa = static_cast<long long>(p.A) * c.g;
                                         const long long qa = static_cast<long long>(c.A) * p.g;
                                         const long long pb = static_cast<long long>(p.B) * c.g;
                                         const long long qb = static_cast<long long>(c.B) * p.g;
                                         return qa <= pa && qb >= pb;
                                     }),
                      points_.end());
        points_.push_back({c.A, c.B, c.g, {c}});
    }

    void merge(const Frontier& other) {
        for (const auto& p : other.points_)
            for (const auto& w : p.witnesses) insert(w);
    }

    const std::vector<Point>& points() const { return points_; }

private:
    std::vector<Point> points_;
};

struct TemplateData {
    std::array<Exponents, kTemplateCount> delta;
    std::array<std::array<int, kSymbolCount>, kTemplateCount> pattern;
    std::array<int, kTemplateCount> n_exp, m_exp;

    TemplateData() {
        for (int t = 0; t < kTemplateCount; ++t) {
            const auto& tp = template_at(t);
            for (int p = 0; p < kParamCount; ++p) delta[t][p] = tp.lhs[p] - tp.rhs[p];
            for (int s = 0; s < kSymbolCount; ++s) pattern[t][s] = tp.pattern_factor[s];
            n_exp[t] = tp.n_exp;
            m_exp[t] = tp.m_exp;
        }
    }
};

class Walker {
public:
    Walker(int budget, int g_max, const std::vector<ParamSet>& library, std::atomic<std::uint64_t>& nodes,
           std::uint64_t node_budget)
        : budget_(budget), g_max_(g_max), packer_(library, &nodes, node_budget) {}

    // Enumerates combinations whose first multiplicity is `first`.
    void run(int first) {
        Combination c;
        Exponents e{};
        std::array<int, kSymbolCount> pat{};
        c.multiplicity[0] = first;
        for (int p = 0; p < kParamCount; ++p) e[p] = first * data_.delta[0][p];
        for (int s = 0; s < kSymbolCount; ++s) pat[s] = first * data_.pattern[0][s];
        walk(c, 1, budget_ - first, e, pat, first * data_.n_exp[0], first * data_.m_exp[0]);
    }

    const Frontier& frontier() const { return frontier_; }
    std::uint64_t combinations() const { return combinations_; }
    bool exhausted() const { return packer_.out_of_budget(); }

private:
    void walk(Combination& c, int t, int left, Exponents& e, std::array<int, kSymbolCount>& pat, int n, int m) {
        if (packer_.out_of_budget()) return;
        if (t == kTemplateCount) {
            visit(c, e, pat, n, m);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            c.multiplicity[t] = k;
            walk(c, t + 1, left - k, e, pat, n + k * data_.n_exp[t], m + k * data_.m_exp[t]);
            for (int p = 0; p < kParamCount; ++p) e[p] += data_.delta[t][p];
            for (int s = 0; s < kSymbolCount; ++s) pat[s] += data_.pattern[t][s];
        }
        for (int p = 0; p < kParamCount; ++p) e[p] -= (left + 1) * data_.delta[t][p];
        for (int s = 0; s < kSymbolCount; ++s) pat[s] -= (left + 1) * data_.pattern[t][s];
        c.multiplicity[t] = 0;
    }

    void visit(const Combination& c, const Exponents& e, const std::array<int, kSymbolCount>& pat, int n, int m) {
        if (c.total() == 0) return;
        for (int v : e)
            if (v < 0) return;
        ++combinations_;
        const int A = n - pattern_reduction(pat);
        const int B = -m;
        const int ub = std::min(g_max_, packer_.upper_bound(e));
        bool open = false;
        for (int g = 1; g <= ub && !open; ++g) open = !frontier_.dominated(A, B, g);
        if (!open) return;
        const int g_fit = packer_.max_fit(e, ub);
        for (int g = 1; g <= g_fit; ++g) frontier_.insert({c, A, B, g});
    }

    int budget_;
    int g_max_;
    TemplateData data_;
    Packer packer_;
    Frontier frontier_;
    std::uint64_t combinations_ = 0;
};

DerivedBound realise(const Candidate& c, const std::vector<ParamSet>& library) {
    const MonomialInequality s = simplify_pattern(combine(c.combination));
    DerivedBound d;
    d.witness = c.combination;
    d.lhs = s.lhs;
    d.A = s.n_exp;
    d.B = -s.m_exp;
    d.g = c.g;
    d.constant = s.constant;
    auto parts = partition(s.lhs, c.g, library);
    if (!parts) throw InvariantViolation("witness " + c.combination.str() + " lost its partition");
    d.partition = std::move(*parts);
    return d;
}

}  // namespace

const DerivedBound* SearchResult::find(int A, int B, int g) const {
    for (const auto& p : frontier)
        for (const auto& w : p.witnesses)
            if (w.A == A && w.B == B && w.g == g) return &w;
    return nullptr;
}

SearchResult search(int budget, int g_max, const std::vector<ParamSet>& library, const SearchOptions& options) {
    if (budget < 0) throw InvalidArgument("budget must be nonnegative");
    if (g_max < 1 || g_max > 15) throw InvalidArgument("g_max must lie in [1, 15]");
    SearchResult result;
    if (budget == 0) return result;

    std::atomic<std::uint64_t> nodes{0};
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(budget + 1)));
    std::vector<std::unique_ptr<Walker>> walkers;
    for (unsigned w = 0; w < workers; ++w)
        walkers.push_back(std::make_unique<Walker>(budget, g_max, library, nodes, options.node_budget));
    auto work = [&](unsigned w) {
        for (int first = static_cast<int>(w); first <= budget; first += static_cast<int>(workers)) walkers[w]->run(first);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    Frontier merged;
    for (const auto& w : walkers) {
        merged.merge(w->frontier());
        result.combinations += w->combinations();
        result.exhausted = result.exhausted || w->exhausted();
    }
    for (const auto& p : merged.points()) {
        FrontierPoint fp;
        fp.a = Rational(p.A, p.g);
        fp.b = Rational(p.B, p.g);
        auto ws = p.witnesses;
        std::sort(ws.begin(), ws.end(), candidate_less);
        for (const auto& c : ws) fp.witnesses.push_back(realise(c, library));
        result.frontier.push_back(std::move(fp));
    }
    std::sort(result.frontier.begin(), result.frontier.end(),
              [](const FrontierPoint& x, const FrontierPoint& y) { return x.a < y.a; });
    return result;
}

std::vector<ParamSet> default_library() { return minimal_defining_sets(kParamCount); }

std::vector<ParamSet> read_library(std::istream& in) {
    std::vector<ParamSet> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        ParamSet s;
        if (line[first] == '{') {
            try {
                const auto j = json::parse(line);
                for (const auto& name : j.at("set")) s.insert(ParamId::parse(name.get<std::string>()));
            } catch (const json::exception& e) {
                throw InvalidArgument("library line " + std::to_string(number) + ": " + e.what());
            }
        } else {
            s = ParamSet::parse(line);
        }
        if (!is_defining(s))
            throw InvalidArgument("library line " + std::to_string(number) + ": {" + s.str() + "} is not defining");
        out.push_back(s);
    }
    return out;
}

namespace {

json exponents_json(const Exponents& e) {
    json j = json::object();
    for (int i = 0; i < kParamCount; ++i)
        if (e[i] != 0) j[ParamId{i}.name()] = e[i];
    return j;
}

Exponents exponents_from(const json& j) {
    Exponents e{};
    for (const auto& [name, v] : j.items()) e[ParamId::parse(name).index] = v.get<int>();
    return e;
}

}  // namespace

std::string witness_json(const DerivedBound& d) {
    json j;
    json comb = json::object();
    for (int i = 0; i < kTemplateCount; ++i)
        if (d.witness.multiplicity[i]) comb[template_at(i).name] = d.witness.multiplicity[i];
    j["combination"] = comb;
    j["lhs"] = exponents_json(d.lhs);
    j["constant"] = rational_str(d.constant);
    j["A"] = rational_str(d.A);
    j["B"] = rational_str(d.B);
    j["g"] = d.g;
    j["a"] = rational_str(d.a());
    j["b"] = rational_str(d.b());
    json parts = json::array();
    for (const auto& p : d.partition) {
        json pj;
        pj["core"] = p.core.names();
        pj["factors"] = exponents_json(p.factors);
        parts.push_back(pj);
    }
    j["parts"] = parts;
    return j.dump();
}

ReplayReport replay(const std::string& line) {
    ReplayReport r;
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("witness is not JSON: ") + e.what());
    }
    try {
        Combination c;
        for (const auto& [name, v] : j.at("combination").items()) c.multiplicity[template_index(name)] = v.get<int>();
        MonomialInequality s;
        try {
            s = simplify_pattern(combine(c));
        } catch (const InvalidArgument& e) {
            r.problems.push_back(e.what());
            return r;
        }
        const Exponents lhs = exponents_from(j.at("lhs"));
        if (lhs != s.lhs) r.problems.push_back("exponent vector differs from the recomputed one");
        if (parse_rational(j.at("A").get<std::string>()) != s.n_exp)
            r.problems.push_back("A is not " + std::to_string(s.n_exp));
        if (parse_rational(j.at("B").get<std::string>()) != -s.m_exp)
            r.problems.push_back("B is not " + std::to_string(-s.m_exp));
        if (j.contains("constant") && parse_rational(j.at("constant").get<std::string>()) != s.constant)
            r.problems.push_back("constant is not " + rational_str(s.constant));
        const int g = j.at("g").get<int>();
        const auto& parts = j.at("parts");
        if (g < 1 || static_cast<int>(parts.size()) != g) r.problems.push_back("g does not match the number of parts");
        if (j.contains("a") && g >= 1 && parse_rational(j.at("a").get<std::string>()) != Rational(s.n_exp, g))
            r.problems.push_back("a is not A/g");
        if (j.contains("b") && g >= 1 && parse_rational(j.at("b").get<std::string>()) != Rational(-s.m_exp, g))
            r.problems.push_back("b is not B/g");
        Exponents sum{};
        int index = 0;
        for (const auto& pj : parts) {
            ++index;
            ParamSet core;
            for (const auto& name : pj.at("core")) core.insert(ParamId::parse(name.get<std::string>()));
            const Exponents f = exponents_from(pj.at("factors"));
            ParamSet support;
            for (int i = 0; i < kParamCount; ++i) {
                if (f[i] < 0) r.problems.push_back("part " + std::to_string(index) + " has a negative exponent");
                if (f[i] > 0) support.insert(ParamId{i});
                sum[i] += f[i];
            }
            if (!support.contains(core))
                r.problems.push_back("part " + std::to_string(index) + " does not contain its core");
            if (!is_defining(core))
                r.problems.push_back("part " + std::to_string(index) + " core {" + core.str() + "} is not defining");
        }
        if (sum != s.lhs) r.problems.push_back("parts do not multiply to the left-hand side");
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed witness: ") + e.what());
    }
    return r;
}

bool instantiate(const Combination& c, const Decomposition& d) {
    const MonomialInequality raw = combine(c);
    const MonomialInequality simple = simplify_pattern(raw);
    std::array<Natural, kParamCount> p;
    for (int i = 0; i < kParamCount; ++i) {
        const ParamId id{i};
        p[i] = id.kind() == ParamKind::x ? d.x[id.subset()] : d.z_own(id.subset());
    }
    std::array<Natural, kSymbolCount> s;
    s[0] = d.m();
    s[1] = d.n();
    for (int i = 0; i < 4; ++i) s[2 + i] = d.pattern.parts[i];
    for (int i = 0; i < 6; ++i) s[6 + i] = d.d[kPairs[i]];
    for (int i = 0; i < 4; ++i) s[12 + i] = d.d[kTriples[i]];

    Natural left = 1;
    for (int i = 0; i < kParamCount; ++i) left *= pow(p[i], static_cast<unsigned>(raw.lhs[i]));
    // left <= constant n^a m^-b / P  <=>  left * m^b * P * den <= num * n^a
    auto holds = [&](const MonomialInequality& q) {
        Natural lhs = left * denominator(q.constant) * pow(s[0], static_cast<unsigned>(-q.m_exp));
        for (int k = 0; k < kSymbolCount; ++k) lhs *= pow(s[k], static_cast<unsigned>(q.pattern[k]));
        const Natural rhs = numerator(q.constant) * pow(s[1], static_cast<unsigned>(std::max(q.n_exp, 0)));
        if (q.n_exp < 0) return lhs * pow(s[1], static_cast<unsigned>(-q.n_exp)) <= numerator(q.constant);
        return lhs <= rhs;
    };
    return holds(raw) && holds(simple);
}

}  // namespace ufrac
