#include "ufrac/defining.hpp"

#include "ufrac/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <thread>

namespace ufrac {

ClosureEngine::ClosureEngine(const std::vector<ClosureRule>& rules) {
    for (const auto& r : rules) {
        const int id = static_cast<int>(rules_.size());
        rules_.push_back({r.outputs, r.inputs.size()});
        if (r.inputs.empty()) unconditional_.push_back(id);
        for (ParamId p : r.inputs.members()) by_input_[p.index].push_back(id);
    }
}

ParamSet ClosureEngine::closure(ParamSet s) const {
    std::vector<int> missing(rules_.size());
    for (std::size_t i = 0; i < rules_.size(); ++i) missing[i] = rules_[i].inputs;

    ParamSet known = s;
    std::array<int, kParamCount> queue;
    int head = 0, tail = 0;
    for (ParamId p : s.members()) queue[tail++] = p.index;

    auto fire = [&](int rule) {
        const ParamSet fresh = rules_[rule].outputs - known;
        known = known | fresh;
        for (ParamId p : fresh.members()) queue[tail++] = p.index;
    };
    for (int r : unconditional_) fire(r);
    while (head < tail) {
        for (int r : by_input_[queue[head++]])
            if (--missing[r] == 0) fire(r);
    }
    return known;
}

const ClosureEngine& catalog_engine() {
    static const ClosureEngine engine(catalog().rules);
    return engine;
}

ParamSet closure(ParamSet s, const std::vector<ClosureRule>& rules) { return ClosureEngine(rules).closure(s); }

ParamSet closure(ParamSet s) { return catalog_engine().closure(s); }

bool is_defining(ParamSet s) { return catalog_engine().is_defining(s); }

const std::array<ParamSet, 6>& known_defining_sets() {
    static const std::array<ParamSet, 6> sets = {
        ParamSet::parse("z23,z234"),
        ParamSet::parse("z234,x23,x24"),
        ParamSet::parse("z234,x23,x234"),
        ParamSet::parse("z34,x12,x123,x124,x1234"),
        ParamSet::parse("x12,x13,x24,x34,x123,x124,x134,x1234"),
        ParamSet::parse("x12,x13,x14,x23,x123,x124,x134,x234,x1234"),
    };
    return sets;
}

namespace {

std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

// Next bit pattern with the same popcount.
std::uint32_t next_combination(std::uint32_t v) {
    const std::uint32_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (__builtin_ctz(v) + 1));
}

}  // namespace

std::vector<ParamSet> minimal_defining_sets(int max_size, const DefiningSearchOptions& options) {
    if (max_size < 0 || max_size > kParamCount)
        throw InvalidArgument("max_size must lie in [0, " + std::to_string(kParamCount) + "]");
    std::uint64_t candidates = 0;
    for (int s = 0; s <= max_size; ++s) candidates += binomial(kParamCount, s);
    if (candidates > options.budget)
        throw ResourceExhausted("minimal defining sets up to size " + std::to_string(max_size) + " need " +
                                std::to_string(candidates) + " candidate subsets; budget is " +
                                std::to_string(options.budget));

    const ClosureEngine& engine = catalog_engine();
    const unsigned workers = std::max(1u, options.threads);
    std::vector<ParamSet> found;
    for (int s = 0; s <= max_size; ++s) {
        // Sets of one size cannot contain each other, so each level only
        // prunes against earlier levels and its subsets split freely.
        std::vector<std::uint32_t> level;
        level.reserve(binomial(kParamCount, s));
        if (s == 0) {
            level.push_back(0);
        } else {
            const std::uint32_t last = ((1u << s) - 1) << (kParamCount - s);
            for (std::uint32_t v = (1u << s) - 1;; v = next_combination(v)) {
                level.push_back(v);
                if (v == last) break;
            }
        }
        std::vector<std::vector<ParamSet>> parts(workers);
        auto scan = [&](unsigned w) {
            for (std::size_t i = w; i < level.size(); i += workers) {
                const ParamSet c(level[i]);
                bool covered = false;
                for (ParamSet f : found) {
                    if (c.contains(f)) {
                        covered = true;
                        break;
                    }
                }
                if (!covered && engine.is_defining(c)) parts[w].push_back(c);
            }
        };
        if (workers == 1) {
            scan(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
            for (auto& t : pool) t.join();
        }
        for (const auto& p : parts) found.insert(found.end(), p.begin(), p.end());
    }
    std::sort(found.begin(), found.end(), [](ParamSet a, ParamSet b) { return canonical_less(a, b); });
    return found;
}

std::string defining_json(ParamSet s, const ClosureEngine& engine) {
    const ParamSet c = engine.closure(s);
    nlohmann::ordered_json j;
    j["set"] = s.names();
    j["defining"] = c.contains(ParamSet::xs());
    j["closure_size"] = c.size();
    return j.dump();
}

}  // namespace ufrac
