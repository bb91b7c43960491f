#include "ufrac/enumerator.hpp"

#include "ufrac/errors.hpp"

#include <algorithm>
#include <future>
#include <type_traits>

namespace ufrac {

SolutionTuple::SolutionTuple(std::vector<Natural> denominators, const Fraction& target)
    : denominators_(std::move(denominators)) {
    if (denominators_.empty()) throw InvalidArgument("solution tuple needs at least one denominator");
    for (std::size_t i = 0; i < denominators_.size(); ++i) {
        if (denominators_[i].sign() <= 0) throw InvalidArgument("denominators must be positive");
        if (i > 0 && denominators_[i] < denominators_[i - 1])
            throw InvalidArgument("denominators must be nondecreasing: " + str());
    }
    if (!sums_to(target))
        throw InvalidArgument("reciprocals of " + str() + " do not sum to " + target.str());
}

Rational SolutionTuple::reciprocal_sum() const {
    Rational s = 0;
    for (const auto& a : denominators_) s += Rational(1, a);
    return s;
}

bool SolutionTuple::sums_to(const Fraction& f) const {
    // m prod a = n sum_i prod_{j != i} a_j
    Natural prefix = 1;
    Natural sum = 0;
    for (const auto& a : denominators_) {
        sum = sum * a + prefix;
        prefix *= a;
    }
    return f.num() * prefix == f.den() * sum;
}

std::string SolutionTuple::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < denominators_.size(); ++i) {
        if (i) s += ',';
        s += denominators_[i].str();
    }
    return s + ")";
}

namespace {

using Wide = __int128;

Wide gcd_of(Wide a, Wide b) {
    while (b != 0) {
        Wide r = a % b;
        a = b;
        b = r;
    }
    return a;
}
Natural gcd_of(const Natural& a, const Natural& b) { return gcd(a, b); }

Natural to_natural(Wide v) { return Natural(v); }
const Natural& to_natural(const Natural& v) { return v; }

template <class Int>
Int from_natural(const Natural& v) {
    if constexpr (std::is_same_v<Int, Natural>) return v;
    else return static_cast<Wide>(v);
}

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = TrialDivisionFactorizer(1u << 16).primes();
    return table;
}

template <class Int>
struct Power {
    Int prime;
    unsigned exponent;
};

template <class Int>
std::vector<Power<Int>> full_factor(const Int& n) {
    std::vector<Power<Int>> out;
    if constexpr (std::is_same_v<Int, Wide>) {
        // Below 2^32 the prime table reaches sqrt(n).
        if (n < (Wide{1} << 32)) {
            Wide r = n;
            for (std::uint32_t p : small_primes()) {
                if (Wide{p} * p > r) break;
                unsigned e = 0;
                while (r % p == 0) {
                    r /= p;
                    ++e;
                }
                if (e) out.push_back({Wide{p}, e});
            }
            if (r > 1) out.push_back({r, 1});
            return out;
        }
    }
    for (const auto& pp : factor(to_natural(n))) out.push_back({from_natural<Int>(pp.prime), pp.exponent});
    return out;
}

template <class Int>
bool factor_with_hints(Int n, const std::vector<Int>& hints, std::vector<Power<Int>>& out) {
    out.clear();
    for (const Int& p : hints) {
        if (n == 1) break;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    }
    return n == 1;
}

// Divisors of the square of the factored number, ascending.
template <class Int>
void square_divisors(const std::vector<Power<Int>>& f, std::vector<Int>& out) {
    out.assign(1, Int(1));
    for (const auto& [p, e] : f) {
        const std::size_t existing = out.size();
        Int pk = 1;
        for (unsigned i = 1; i <= 2 * e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < existing; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
}

// Depth-first walk over the remainder tree. Level state lives in `prefix_`
// and `hints_`; both are restored on the way back up.
template <class Int>
class Walker {
public:
    Walker(const Fraction& f, int k, TailStrategy tail, const SolutionVisitor& visit)
        : tail_(tail), visit_(visit), k_(k) {
        for (const auto& pp : factor(f.den())) hints_.push_back(from_natural<Int>(pp.prime));
        prefix_.reserve(k);
        out_.resize(k);
    }

    bool run(const Natural& p, const Natural& q) {
        return descend(from_natural<Int>(p), from_natural<Int>(q), k_, Int(1));
    }

    /// Runs only the subtree whose first denominator is `a1`.
    bool run_branch(const Natural& p, const Natural& q, const Natural& a1) {
        return step(from_natural<Int>(p), from_natural<Int>(q), k_, from_natural<Int>(a1));
    }

private:
    bool descend(const Int& p, const Int& q, int j, const Int& prev) {
        if (j == 1) {
            if (p == 1 && q >= prev) return emit_with(q);
            return true;
        }
        if (j == 2 && tail_ == TailStrategy::divisor) return pair_tail(p, q, prev);

        Int a = q / p + 1;
        if (a < prev) a = prev;
        const Int hi = Int(j) * q / p;
        for (; a <= hi; ++a) {
            if (!step(p, q, j, a)) return false;
        }
        return true;
    }

    // Fixes the next denominator to `a` and recurses on the remainder.
    bool step(const Int& p, const Int& q, int j, const Int& a) {
        Int np = p * a - q;
        if (np <= 0) return true;
        Int nq = q * a;
        Int g = gcd_of(np, nq);
        np /= g;
        nq /= g;

        const std::size_t hint_mark = hints_.size();
        if (tail_ == TailStrategy::divisor && j > 2) {
            for (const auto& pp : full_factor(a)) hints_.push_back(pp.prime);
        }
        prefix_.push_back(a);
        bool keep_going = descend(np, nq, j - 1, a);
        prefix_.pop_back();
        hints_.resize(hint_mark);
        return keep_going;
    }

    // 1/a + 1/b = p/q with prev <= a <= b, from the factorization of q.
    bool pair_tail(const Int& p, const Int& q, const Int& prev) {
        if (!factor_with_hints(q, hints_, fq_)) fq_ = full_factor(q);
        square_divisors(fq_, ds_);
        const Int q2 = q * q;
        const Int u_min = p * prev - q;

        // u = p*a - q ranges over divisors of q^2 with u <= q (so a <= b).
        auto it = std::lower_bound(ds_.begin(), ds_.end(), u_min);
        for (; it != ds_.end() && *it <= q; ++it) {
            const Int& u = *it;
            const Int sa = u + q;
            if (sa % p != 0) continue;
            const Int sb = q2 / u + q;
            if (sb % p != 0) continue;
            prefix_.push_back(sa / p);
            bool keep_going = emit_with(sb / p);
            prefix_.pop_back();
            if (!keep_going) return false;
        }
        return true;
    }

    bool emit_with(const Int& last) {
        const std::size_t n = prefix_.size();
        for (std::size_t i = 0; i < n; ++i) out_[i] = to_natural(prefix_[i]);
        out_[n] = to_natural(last);
        return visit_(std::span<const Natural>(out_.data(), n + 1));
    }

    TailStrategy tail_;
    const SolutionVisitor& visit_;
    int k_;
    std::vector<Int> prefix_;
    std::vector<Int> hints_;
    std::vector<Natural> out_;
    std::vector<Power<Int>> fq_;
    std::vector<Int> ds_;
};

// Every remainder denominator met before the last two terms is at most
// k^(2^(k-2) - 1) * n^(2^(k-2)); intermediates stay below twice its square.
bool fits_wide(const Fraction& f, int k) {
    const unsigned e = 1u << std::max(k - 2, 0);
    Natural bound = boost::multiprecision::pow(Natural(std::max(k, 1)), e - 1) *
                    boost::multiprecision::pow(f.den(), e);
    return bound <= (Natural(1) << 60);
}

bool walk(const Fraction& f, int k, TailStrategy tail, const SolutionVisitor& visit,
          const std::optional<Natural>& a1 = std::nullopt) {
    auto go = [&](auto&& walker) {
        return a1 ? walker.run_branch(f.num(), f.den(), *a1) : walker.run(f.num(), f.den());
    };
    if (fits_wide(f, k)) return go(Walker<Wide>(f, k, tail, visit));
    return go(Walker<Natural>(f, k, tail, visit));
}

void check_k(int k) {
    if (k < 0 || k > kMaxTerms)
        throw InvalidArgument("k must be between 0 and " + std::to_string(kMaxTerms));
}

// Trivially empty cases: no terms, or m/n beyond what k unit fractions reach.
bool trivially_empty(const Fraction& f, int k) { return k == 0 || f.num() > k * f.den(); }

}  // namespace

bool for_each_solution(const Fraction& f, int k, const SolutionVisitor& visit, TailStrategy tail) {
    check_k(k);
    if (trivially_empty(f, k)) return true;
    return walk(f, k, tail, visit);
}

Enumeration enumerate(const Fraction& f, int k, const EnumerationOptions& options) {
    check_k(k);
    Enumeration result{f, k, {}, false};
    if (trivially_empty(f, k)) return result;
    const std::uint64_t cap = options.cap.value_or(UINT64_MAX);

    auto collect_into = [&](std::vector<SolutionTuple>& sink, std::uint64_t limit) {
        return [&sink, limit](std::span<const Natural> a) {
            if (sink.size() >= limit) return false;
            sink.emplace_back(SolutionTuple::Trusted{}, std::vector<Natural>(a.begin(), a.end()));
            return true;
        };
    };

    if (options.threads <= 1 || k < 2) {
        // Collect one past the cap to tell "exactly cap" from "truncated".
        std::vector<SolutionTuple> sink;
        const std::uint64_t limit = cap == UINT64_MAX ? cap : cap + 1;
        SolutionVisitor visit = collect_into(sink, limit);
        for_each_solution(f, k, visit, options.tail);
        if (sink.size() > cap) {
            sink.erase(sink.begin() + static_cast<std::ptrdiff_t>(cap), sink.end());
            result.truncated = true;
        }
        result.solutions = std::move(sink);
        return result;
    }

    // Parallel: first-level branches in batches, merged in branch order.
    const Natural& p = f.num();
    const Natural& q = f.den();
    Natural a = q / p + 1;
    const Natural hi = k * q / p;
    while (a <= hi) {
        std::vector<Natural> batch;
        for (unsigned t = 0; t < options.threads && a <= hi; ++t, ++a) batch.push_back(a);
        std::vector<std::vector<SolutionTuple>> parts(batch.size());
        std::vector<std::future<void>> jobs;
        const std::uint64_t remaining = cap - std::min<std::uint64_t>(cap, result.solutions.size());
        const std::uint64_t limit = remaining == UINT64_MAX ? remaining : remaining + 1;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            jobs.push_back(std::async(std::launch::async, [&, i] {
                SolutionVisitor visit = collect_into(parts[i], limit);
                walk(f, k, options.tail, visit, batch[i]);
            }));
        }
        for (auto& j : jobs) j.get();
        for (auto& part : parts) {
            for (auto& s : part) {
                if (result.solutions.size() >= cap) {
                    result.truncated = true;
                    return result;
                }
                result.solutions.push_back(std::move(s));
            }
        }
    }
    return result;
}

Enumeration enumerate(const Natural& m, const Natural& n, int k, const EnumerationOptions& options) {
    return enumerate(Fraction::reduce(m, n), k, options);
}

Natural count(const Fraction& f, int k, TailStrategy tail) {
    std::uint64_t c = 0;
    for_each_solution(f, k, [&c](std::span<const Natural>) { ++c; return true; }, tail);
    return Natural(c);
}

Natural count(const Natural& m, const Natural& n, int k, TailStrategy tail) {
    return count(Fraction::reduce(m, n), k, tail);
}

std::vector<Natural> parse_denominators(std::string_view text) {
    std::vector<Natural> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        Natural a = parse_natural(text.substr(start, comma - start));
        if (a.is_zero()) throw InvalidArgument("denominators must be positive");
        if (!out.empty() && a < out.back())
            throw InvalidArgument("denominators must be given in ascending order: '" + std::string(text) + "'");
        out.push_back(std::move(a));
        start = comma + 1;
    }
    return out;
}

}  // namespace ufrac
