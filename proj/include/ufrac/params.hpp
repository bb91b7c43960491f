#pragma once

// The 21 parameters of a four-term solution (eleven x_J with |J| >= 2 and ten
// z_J with |J| in {2,3}) and sets of them.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ufrac {

enum class ParamKind : std::uint8_t { x, z };

inline constexpr int kParamCount = 21;
inline constexpr int kXCount = 11;

/// Canonical order: x12 x13 x14 x23 x24 x34 x123 x124 x134 x234 x1234,
/// then z12 z13 z14 z23 z24 z34 z123 z124 z134 z234.
struct ParamId {
    int index = 0;

    ParamKind kind() const { return index < kXCount ? ParamKind::x : ParamKind::z; }
    /// Index-set bitmask, bit i-1 for index i.
    unsigned subset() const;
    std::string name() const;

    static ParamId x(unsigned mask);
    static ParamId z(unsigned mask);
    /// Parses "x12", "z234" and so on; throws InvalidArgument otherwise.
    static ParamId parse(std::string_view name);

    friend bool operator==(ParamId, ParamId) = default;
    friend auto operator<=>(ParamId, ParamId) = default;
};

class ParamSet {
public:
    constexpr ParamSet() = default;
    constexpr explicit ParamSet(std::uint32_t bits) : bits_(bits & kMask) {}
    ParamSet(std::initializer_list<ParamId> ids);

    static constexpr ParamSet all() { return ParamSet(kMask); }
    static constexpr ParamSet xs() { return ParamSet((1u << kXCount) - 1); }
    static constexpr ParamSet zs() { return ParamSet(kMask & ~((1u << kXCount) - 1)); }

    /// Comma-separated names such as "z23,z234"; whitespace around names is ignored.
    static ParamSet parse(std::string_view names);

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool contains(ParamId p) const { return bits_ >> p.index & 1u; }
    constexpr bool contains(ParamSet s) const { return (s.bits_ & ~bits_) == 0; }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return __builtin_popcount(bits_); }

    void insert(ParamId p) { bits_ |= 1u << p.index; }
    void erase(ParamId p) { bits_ &= ~(1u << p.index); }

    /// Members in canonical order.
    std::vector<ParamId> members() const;
    std::vector<std::string> names() const;
    std::string str() const;

    friend constexpr ParamSet operator|(ParamSet a, ParamSet b) { return ParamSet(a.bits_ | b.bits_); }
    friend constexpr ParamSet operator&(ParamSet a, ParamSet b) { return ParamSet(a.bits_ & b.bits_); }
    friend constexpr ParamSet operator-(ParamSet a, ParamSet b) { return ParamSet(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(ParamSet, ParamSet) = default;

private:
    static constexpr std::uint32_t kMask = (1u << kParamCount) - 1;
    std::uint32_t bits_ = 0;
};

/// By size, then lexicographically on the canonical member sequence.
bool canonical_less(ParamSet a, ParamSet b);

/// The constants an equation may carry: m, n, the pattern n_1..n_4 and d_J.
enum class Symbol : std::uint8_t {
    m, n, n1, n2, n3, n4,
    d12, d13, d14, d23, d24, d34,
    d123, d124, d134, d234,
};

inline constexpr int kSymbolCount = 16;

std::string symbol_name(Symbol s);
Symbol n_symbol(int i);
/// d_J for |J| in {2, 3}.
Symbol d_symbol(unsigned mask);

}  // namespace ufrac
