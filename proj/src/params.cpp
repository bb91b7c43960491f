#include "ufrac/params.hpp"

#include "ufrac/errors.hpp"
#include "ufrac/parametrization.hpp"

#include <algorithm>

namespace ufrac {

namespace {

unsigned subset_at(int index) {
    if (index < kXCount) return kXSets[index];
    const int z = index - kXCount;
    return z < 6 ? kPairs[z] : kTriples[z - 6];
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

unsigned ParamId::subset() const { return subset_at(index); }

std::string ParamId::name() const {
    return (kind() == ParamKind::x ? "x" : "z") + subset_name(subset());
}

ParamId ParamId::x(unsigned mask) {
    for (int i = 0; i < kXCount; ++i)
        if (kXSets[i] == mask) return ParamId{i};
    throw InvalidArgument("no x parameter for {" + subset_name(mask) + "}");
}

ParamId ParamId::z(unsigned mask) {
    for (int i = kXCount; i < kParamCount; ++i)
        if (subset_at(i) == mask) return ParamId{i};
    throw InvalidArgument("no z parameter for {" + subset_name(mask) + "}");
}

ParamId ParamId::parse(std::string_view name) {
    for (int i = 0; i < kParamCount; ++i)
        if (ParamId{i}.name() == name) return ParamId{i};
    throw InvalidArgument("unknown parameter '" + std::string(name) + "'");
}

ParamSet::ParamSet(std::initializer_list<ParamId> ids) {
    for (ParamId p : ids) insert(p);
}

ParamSet ParamSet::parse(std::string_view names) {
    ParamSet s;
    if (trim(names).empty()) return s;
    std::size_t start = 0;
    while (start <= names.size()) {
        std::size_t comma = names.find(',', start);
        if (comma == std::string_view::npos) comma = names.size();
        s.insert(ParamId::parse(trim(names.substr(start, comma - start))));
        start = comma + 1;
    }
    return s;
}

std::vector<ParamId> ParamSet::members() const {
    std::vector<ParamId> out;
    for (int i = 0; i < kParamCount; ++i)
        if (bits_ >> i & 1u) out.push_back(ParamId{i});
    return out;
}

std::vector<std::string> ParamSet::names() const {
    std::vector<std::string> out;
    for (ParamId p : members()) out.push_back(p.name());
    return out;
}

std::string ParamSet::str() const {
    std::string s;
    for (ParamId p : members()) {
        if (!s.empty()) s += ',';
        s += p.name();
    }
    return s;
}

bool canonical_less(ParamSet a, ParamSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    const auto ma = a.members();
    const auto mb = b.members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

std::string symbol_name(Symbol s) {
    const int i = static_cast<int>(s);
    if (i == 0) return "m";
    if (i == 1) return "n";
    if (i < 6) return "n" + std::to_string(i - 1);
    if (i < 12) return "d" + subset_name(kPairs[i - 6]);
    return "d" + subset_name(kTriples[i - 12]);
}

Symbol n_symbol(int i) {
    if (i < 1 || i > 4) throw InvalidArgument("pattern index out of range");
    return static_cast<Symbol>(1 + i);
}

Symbol d_symbol(unsigned mask) {
    for (int i = 0; i < 6; ++i)
        if (kPairs[i] == mask) return static_cast<Symbol>(6 + i);
    for (int i = 0; i < 4; ++i)
        if (kTriples[i] == mask) return static_cast<Symbol>(12 + i);
    throw InvalidArgument("no d symbol for {" + subset_name(mask) + "}");
}

}  // namespace ufrac
