#pragma once

// Closure of parameter sets under the catalog rules, and defining sets: sets
// whose closure contains every x parameter.

#include "ufrac/catalog.hpp"
#include "ufrac/params.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ufrac {

/// Rules indexed by input parameter; a rule fires once all of its inputs are
/// known and then adds its whole output set.
class ClosureEngine {
public:
    explicit ClosureEngine(const std::vector<ClosureRule>& rules);

    ParamSet closure(ParamSet s) const;
    bool is_defining(ParamSet s) const { return closure(s).contains(ParamSet::xs()); }

private:
    struct Rule {
        ParamSet outputs;
        int inputs = 0;
    };
    std::vector<Rule> rules_;
    std::array<std::vector<int>, kParamCount> by_input_;
    std::vector<int> unconditional_;
};

/// Engine over catalog().rules, built once.
const ClosureEngine& catalog_engine();

ParamSet closure(ParamSet s, const std::vector<ClosureRule>& rules);
ParamSet closure(ParamSet s);
bool is_defining(ParamSet s);

/// The six sets {z23,z234}, {z234,x23,x24}, {z234,x23,x234},
/// {z34,x12,x123,x124,x1234}, {x12,x13,x24,x34,x123,x124,x134,x1234} and
/// {x12,x13,x14,x23,x123,x124,x134,x234,x1234}, in that order.
const std::array<ParamSet, 6>& known_defining_sets();

struct DefiningSearchOptions {
    /// Upper limit on the number of candidate subsets examined; the default
    /// admits the whole power set.
    std::uint64_t budget = std::uint64_t{1} << kParamCount;
    unsigned threads = 1;
};

/// All inclusion-minimal defining sets with at most `max_size` members, in
/// canonical order. Throws ResourceExhausted when the candidate count
/// sum_{s <= max_size} C(21, s) exceeds the budget.
std::vector<ParamSet> minimal_defining_sets(int max_size, const DefiningSearchOptions& options = {});

/// {"set": [...], "defining": ..., "closure_size": ...}
std::string defining_json(ParamSet s, const ClosureEngine& engine = catalog_engine());

}  // namespace ufrac
