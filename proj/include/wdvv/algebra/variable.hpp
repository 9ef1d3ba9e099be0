#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace wdvv::algebra {

/// Variable families of the jet space.
///
///  u       flat coordinates of the first-order structure
///  a       Casimir (hydrodynamic) coordinates
///  b       potentials, a = b_x
///  p, q, r formal covectors used by the Schouten bracket
///  t       free parameters (spectral parameter, polynomial indeterminates)
enum class Family : std::uint8_t { u = 0, a = 1, b = 2, p = 3, q = 4, r = 5, t = 6 };

inline constexpr int kFamilyCount = 7;

char family_letter(Family f);
std::optional<Family> family_from_letter(char c);

/// A jet variable: family, component index and number of x-derivatives,
/// packed so that integer order equals the global variable order
/// (family, component, derivative order).
class Var {
public:
    constexpr Var() = default;
    constexpr Var(Family f, int component, int order)
        : id_((static_cast<std::uint32_t>(f) << 28) | (static_cast<std::uint32_t>(component) << 16) |
              static_cast<std::uint32_t>(order)) {}

    static constexpr Var from_id(std::uint32_t id) {
        Var v;
        v.id_ = id;
        return v;
    }

    constexpr std::uint32_t id() const { return id_; }
    constexpr Family family() const { return static_cast<Family>(id_ >> 28); }
    constexpr int component() const { return static_cast<int>((id_ >> 16) & 0xfffu); }
    constexpr int order() const { return static_cast<int>(id_ & 0xffffu); }

    /// Same variable with `k` more x-derivatives.
    constexpr Var derived(int k = 1) const { return Var(family(), component(), order() + k); }
    constexpr Var with_order(int k) const { return Var(family(), component(), k); }
    constexpr Var with_family(Family f) const { return Var(f, component(), order()); }

    constexpr auto operator<=>(const Var&) const = default;

    /// `fam[i,k]`, e.g. `a[5,0]`.
    std::string str() const;
    static std::optional<Var> parse(std::string_view text);

private:
    std::uint32_t id_ = 0;
};

inline constexpr int kMaxComponent = 0xfff;
inline constexpr int kMaxOrder = 0xffff;

} // namespace wdvv::algebra

template<>
struct std::hash<wdvv::algebra::Var> {
    std::size_t operator()(wdvv::algebra::Var v) const noexcept { return std::hash<std::uint32_t>{}(v.id()); }
};
