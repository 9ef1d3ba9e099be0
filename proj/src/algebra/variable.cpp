#include <wdvv/algebra/variable.hpp>

#include <charconv>

namespace wdvv::algebra {

namespace {
constexpr char kLetters[kFamilyCount] = {'u', 'a', 'b', 'p', 'q', 'r', 't'};
}

char family_letter(Family f) { return kLetters[static_cast<int>(f)]; }

std::optional<Family> family_from_letter(char c) {
    for (int i = 0; i < kFamilyCount; ++i) {
        if (kLetters[i] == c) return static_cast<Family>(i);
    }
    return std::nullopt;
}

std::string Var::str() const {
    std::string s(1, family_letter(family()));
    s += '[';
    s += std::to_string(component());
    s += ',';
    s += std::to_string(order());
    s += ']';
    return s;
}

std::optional<Var> Var::parse(std::string_view text) {
    if (text.size() < 6 || text[1] != '[' || text.back() != ']') return std::nullopt;
    auto fam = family_from_letter(text[0]);
    if (!fam) return std::nullopt;
    auto body = text.substr(2, text.size() - 3);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    int comp = 0;
    int ord = 0;
    auto first = body.substr(0, comma);
    auto second = body.substr(comma + 1);
    auto r1 = std::from_chars(first.data(), first.data() + first.size(), comp);
    auto r2 = std::from_chars(second.data(), second.data() + second.size(), ord);
    if (r1.ec != std::errc{} || r1.ptr != first.data() + first.size()) return std::nullopt;
    if (r2.ec != std::errc{} || r2.ptr != second.data() + second.size()) return std::nullopt;
    if (comp < 0 || comp > kMaxComponent || ord < 0 || ord > kMaxOrder) return std::nullopt;
    return Var(*fam, comp, ord);
}

} // namespace wdvv::algebra
